#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "bscfb/errors.hpp"

namespace bscfb {

// Desk-scale Monte Carlo realization of the two-phase protocol: n <= 64 total
// channel uses so a codeword packs into one machine word and distances are
// single popcounts; M <= 65536 messages.

struct Codebook {
    int m = 0;                        // phase-I blocklength (bits per word)
    std::vector<std::uint64_t> words; // M distinct codewords, bit i = position i
    std::uint64_t seed = 0;
    int min_distance = 0;             // minimum pairwise Hamming distance
};

struct SimConfig {
    int n = 0;                 // total blocklength
    int M = 0;                 // message count, >= 2
    double gamma = 0.0;        // switch fraction; phase-I length m = round(gamma*n)
    double t = 0.0;            // decision-threshold fraction, >= 0
    double p = 0.0;            // forward crossover in [0, 1/2]
    double p1 = 0.0;           // feedback crossover in [0, 1/2]
    std::int64_t trials = 0;
    std::uint64_t seed = 0;
};

struct SimStats {
    std::int64_t trials = 0;
    std::int64_t case1_count = 0;
    std::int64_t case2_count = 0;
    std::int64_t errors_total = 0;
    std::int64_t errors_case1 = 0;
    std::int64_t errors_case2 = 0;
    // transmitter pair != receiver pair, among case-2 trials
    std::int64_t list_mismatch_count = 0;
    // true message outside the receiver's top two, among case-2 trials
    std::int64_t true_outside_top2_count = 0;
};

/// Everything a single protocol execution decided, for per-trial inspection.
struct TrialResult {
    bool case2 = false;
    int true_msg = 0;
    int decided = 0;
    int rx_top = 0;         // receiver's closest codeword after phase I
    int rx_second = -1;     // receiver's runner-up
    int tx_companion = -1;  // transmitter's chosen rival (case 2 only)
    int dist_y_xprime = 0;  // Hamming distance between y and the fed-back block
    bool error = false;
    bool list_mismatch = false;
    bool true_outside_top2 = false;
};

/// Draw 2M-1 distinct random words of m bits, score each by its aggregate
/// Bhattacharyya weight sum_{j != i} (2 sqrt(p(1-p)))^{d_ij} against the rest,
/// and keep the M best (expurgation). Deterministic in seed. p sets the weight
/// base; degenerate p in {0, 1/2} falls back to base 1/2 since only the
/// ranking matters. Throws when 2M-1 words cannot be distinct (2M-1 > 2^m).
Codebook build_code(int m, int M, std::uint64_t seed, double p);

/// One protocol execution; rng must be the per-trial stream. The phase-I code
/// must satisfy code.m == round(cfg.gamma * cfg.n).
TrialResult run_trial(const SimConfig& cfg, const Codebook& code, std::mt19937_64& rng);

/// The per-trial RNG stream for trial `index` under `seed`; estimate() uses
/// exactly this derivation, so externally driven run_trial loops reproduce it.
std::mt19937_64 trial_rng(std::uint64_t seed, std::int64_t index);

/// Aggregate cfg.trials independent trials. Per-trial streams depend only on
/// (cfg.seed, trial index), so counts are bit-identical for any thread count.
SimStats estimate(const SimConfig& cfg, int threads = 1);

struct TrendRow {
    int n = 0;
    int M = 0;
    std::int64_t trials = 0;
    std::int64_t errors = 0;
    double error_rate = 0.0;
    double wilson_lo = 0.0;
    double wilson_hi = 0.0;
    double norm_log_error = 0.0;  // -ln(error_rate)/n; 0 when degenerate
    bool degenerate = false;      // zero observed errors: flagged, not extrapolated
};

struct TrendResult {
    std::vector<TrendRow> rows;
    double slope = 0.0;  // least-squares slope of -ln(error rate) against n
    bool slope_valid = false;
};

/// Empirical error-rate trend at fixed rate R = ln(M)/n of cfg_base: for each
/// n the message count scales as round(e^{Rn}) and the error rate is estimated
/// with Wilson 95% intervals.
TrendResult exponent_trend(const SimConfig& cfg_base, const std::vector<int>& n_list);

}  // namespace bscfb
