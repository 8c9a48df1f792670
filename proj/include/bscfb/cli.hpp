#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "bscfb/simulator.hpp"

namespace bscfb::cli {

inline constexpr const char* kArtifactName = "bscfb";
inline constexpr const char* kArtifactVersion = "0.1.0";

struct SweepSpec {
    std::string quantity;  // e_r e_ex e_sp e_low f1_noiseless f1_noisy p0 t0 t1 p11
    std::optional<double> p;
    std::optional<double> p1;
    int list_size = 1;
    double alpha = 0.1;    // p11 only
    double rate_min = 0.0;
    double rate_max = 0.0; // for p11 the rate axis is reused as the p axis
    int steps = 0;
};

/// One CSV row per grid point: (R, value, breakdown fields when applicable,
/// status). Infeasible points carry status "infeasible:<reason>" and empty
/// value cells, never zeros. Reals print with 12 significant digits.
void run_sweep(const SweepSpec& spec, std::ostream& out);

/// fig2: (R, p0(R, 0.01)) on (0, R_crit); fig3: (R, f1_noiseless, e_ex) on the
/// same range; fig4: (p, p11(p, 0.1)) on (0, 1/2). steps interior grid points.
void run_figure(const std::string& figure, int steps, std::ostream& out);

/// Runs the simulator and prints {"config": ..., "stats": ..., "schema":
/// "simstats-v1"} as JSON. Byte-identical across repeated invocations.
void run_sim(const SimConfig& cfg, std::ostream& out);

/// 12-significant-digit, locale-independent float formatting shared by all
/// CSV output (what the reproducibility contract of the rows is stated in).
std::string fmt12(double v);

}  // namespace bscfb::cli
