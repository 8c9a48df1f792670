#pragma once

#include <functional>

#include "bscfb/errors.hpp"

namespace bscfb {

inline constexpr double kLn2 = 0.69314718055994530942;

/// Root/optimizer search interval. tol is a tolerance on the argument.
struct Bracket {
    double lo;
    double hi;
    double tol;
};

/// Binary entropy h(x) = -x ln x - (1-x) ln(1-x) in nats, with 0 ln 0 = 0.
/// Throws std::domain_error outside [0, 1].
double binary_entropy(double x);

/// Bernoulli divergence D(x||y) = x ln(x/y) + (1-x) ln((1-x)/(1-y)) in nats.
/// x in [0,1]; y may touch {0,1} only where the corresponding x term vanishes.
double kl_bernoulli(double x, double y);

/// The unique d in [0, 1/2] with h(d) = ln2 - rate, for rate in [0, ln2].
double delta_gv(double rate);

/// Bisection on a monotone f with a sign change over [b.lo, b.hi].
/// Deterministic; throws bracket_error when f(lo) and f(hi) agree in sign.
double bisect_root(const std::function<double(double)>& f, const Bracket& b);

struct ScalarMax {
    double arg;
    double value;
};

/// Maximize f on [b.lo, b.hi]: coarse grid (>= grid_points, both endpoints
/// evaluated) followed by golden-section refinement around the best cell.
/// No unimodality assumed; the grid stage guards against latching onto a
/// shoulder. Deterministic.
ScalarMax maximize_scalar(const std::function<double(double)>& f, const Bracket& b,
                          int grid_points = 512);

}  // namespace bscfb
