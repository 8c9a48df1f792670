#include "bscfb/math.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace bscfb {

double binary_entropy(double x) {
    if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error("binary_entropy: x outside [0,1]");
    double s = 0.0;
    if (x > 0.0) s -= x * std::log(x);
    if (x < 1.0) s -= (1.0 - x) * std::log1p(-x);
    return s;
}

double kl_bernoulli(double x, double y) {
    if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error("kl_bernoulli: x outside [0,1]");
    if (!(y >= 0.0 && y <= 1.0)) throw std::domain_error("kl_bernoulli: y outside [0,1]");
    if (y == 0.0 && x > 0.0) throw std::domain_error("kl_bernoulli: y=0 with x>0");
    if (y == 1.0 && x < 1.0) throw std::domain_error("kl_bernoulli: y=1 with x<1");
    double s = 0.0;
    if (x > 0.0) s += x * std::log(x / y);
    if (x < 1.0) s += (1.0 - x) * std::log((1.0 - x) / (1.0 - y));
    return s < 0.0 ? 0.0 : s;  // D >= 0; tiny negatives are rounding noise near x = y
}

double delta_gv(double rate) {
    if (!(rate >= 0.0 && rate <= kLn2)) throw std::domain_error("delta_gv: rate outside [0, ln2]");
    const double target = kLn2 - rate;
    // h is strictly increasing on [0, 1/2]
    double lo = 0.0, hi = 0.5;
    if (binary_entropy(hi) <= target) return hi;
    for (int i = 0; i < 80 && (hi - lo) > 1e-13; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (binary_entropy(mid) < target)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

double bisect_root(const std::function<double(double)>& f, const Bracket& b) {
    if (!(b.lo < b.hi) || !(b.tol > 0.0)) throw std::invalid_argument("bisect_root: bad bracket");
    double lo = b.lo, hi = b.hi;
    double flo = f(lo), fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0)) throw bracket_error("bisect_root: no sign change over bracket");
    for (int i = 0; i < 200 && (hi - lo) > b.tol; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

ScalarMax maximize_scalar(const std::function<double(double)>& f, const Bracket& b,
                          int grid_points) {
    if (!(b.lo < b.hi) || !(b.tol > 0.0))
        throw std::invalid_argument("maximize_scalar: bad bracket");
    const int n = grid_points < 2 ? 2 : grid_points;
    int best = 0;
    double best_v = -std::numeric_limits<double>::infinity();
    std::vector<double> xs(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double x = b.lo + (b.hi - b.lo) * i / (n - 1);
        xs[static_cast<size_t>(i)] = x;
        const double v = f(x);
        if (v > best_v) {
            best_v = v;
            best = i;
        }
    }
    double bx = xs[static_cast<size_t>(best)];

    // golden-section refinement inside the two cells around the best point
    constexpr double kInvPhi = 0.61803398874989484820;
    double a = xs[static_cast<size_t>(best > 0 ? best - 1 : 0)];
    double c = xs[static_cast<size_t>(best < n - 1 ? best + 1 : n - 1)];
    double x1 = c - kInvPhi * (c - a);
    double x2 = a + kInvPhi * (c - a);
    double f1 = f(x1), f2 = f(x2);
    for (int i = 0; i < 240 && (c - a) > b.tol; ++i) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + kInvPhi * (c - a);
            f2 = f(x2);
        } else {
            c = x2;
            x2 = x1;
            f2 = f1;
            x1 = c - kInvPhi * (c - a);
            f1 = f(x1);
        }
    }
    if (f1 > best_v) {
        best_v = f1;
        bx = x1;
    }
    if (f2 > best_v) {
        best_v = f2;
        bx = x2;
    }
    return {bx, best_v};
}

}  // namespace bscfb
