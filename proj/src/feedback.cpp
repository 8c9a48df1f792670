#include "bscfb/feedback.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bscfb {

namespace {

void check_forward(double p, const char* who) {
    if (!(p > 0.0 && p < 0.5)) throw std::domain_error(std::string(who) + ": p outside (0, 1/2)");
}

void check_feedback(double p1, const char* who) {
    if (!(p1 >= 0.0 && p1 <= 0.5))
        throw std::domain_error(std::string(who) + ": p1 outside [0, 1/2]");
}

constexpr double kP0Floor = 1e-300;

}  // namespace

double t0(double rate, double p) {
    check_forward(p, "t0");
    const double c = capacity(p);
    if (!(rate >= 0.0 && rate < c)) throw std::domain_error("t0: rate outside [0, C(p))");
    const double gap = e_low(rate, p, 2) - e_low(rate, p, 1);
    // both bounds equal E_sp from R_crit up; clamp optimizer noise
    return std::max(0.0, 3.0 * gap / std::log((1.0 - p) / p));
}

double p0(double rate, double p) {
    check_forward(p, "p0");
    if (!(rate >= 0.0 && rate < r_crit(p, 1)))
        throw std::domain_error("p0: rate outside [0, R_crit(p))");
    const double t = t0(rate, p);
    if (rate == 0.0) return t;
    if (!(t > 0.0)) throw infeasible_error("t0_not_positive");
    const double target = 2.0 * rate;
    // D(t || x) -> +inf as x -> 0, so a root always exists; when it sits below
    // the double range (t0 tiny next to R, near the critical rate) the
    // correctly rounded value is zero
    if (!(kl_bernoulli(t, kP0Floor) > target)) return 0.0;
    // D(t || x) falls from +inf to 0 as x rises to t; bisect in log x
    double lo = std::log(kP0Floor), hi = std::log(t);
    for (int i = 0; i < 200 && (hi - lo) > 1e-13; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (kl_bernoulli(t, std::exp(mid)) > target)
            lo = mid;
        else
            hi = mid;
    }
    return std::exp(0.5 * (lo + hi));
}

double t1(double rate, double p1) {
    if (!(p1 > 0.0 && p1 < 1.0)) throw std::domain_error("t1: p1 outside (0, 1)");
    if (!(rate >= 0.0)) throw std::domain_error("t1: negative rate");
    const double target = 2.0 * rate;
    if (target >= std::log(1.0 / p1)) throw infeasible_error("no_threshold_root");
    if (target == 0.0) return p1;
    // D(x || p1) rises from 0 at x = p1 to ln(1/p1) at x = 1
    double lo = p1, hi = 1.0;
    for (int i = 0; i < 200 && (hi - lo) > 1e-14; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (kl_bernoulli(mid, p1) < target)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

namespace {

BoundBreakdown branches_at(double rate, const ChannelPair& ch, double gamma, double t) {
    const double rr = rate / gamma;
    const double penalty = gamma * t / 3.0 * std::log((1.0 - ch.p) / ch.p);
    BoundBreakdown bd;
    bd.branch_list2 = gamma * e_low(rr, ch.p, 2) - penalty;
    bd.branch_pair = gamma * e_low(rr, ch.p, 1) + (1.0 - gamma) * e2(ch.p);
    bd.gamma_star = gamma;
    bd.t_star = t;
    bd.value = std::min(bd.branch_list2, bd.branch_pair);
    return bd;
}

}  // namespace

BoundBreakdown scheme_exponent(double rate, const ChannelPair& ch, double gamma) {
    check_forward(ch.p, "scheme_exponent");
    check_feedback(ch.p1, "scheme_exponent");
    if (!(gamma > 0.0 && gamma <= 1.0))
        throw std::domain_error("scheme_exponent: gamma outside (0, 1]");
    if (!(rate >= 0.0)) throw std::domain_error("scheme_exponent: negative rate");
    if (!(rate / gamma < capacity(ch.p))) throw infeasible_error("phase1_rate_at_capacity");
    const double t = ch.p1 > 0.0 ? t1(rate / gamma, ch.p1) : 0.0;
    return branches_at(rate, ch, gamma, t);
}

BoundBreakdown scheme_exponent(double rate, const ChannelPair& ch, const SchemeParams& sp) {
    check_forward(ch.p, "scheme_exponent");
    check_feedback(ch.p1, "scheme_exponent");
    if (!(sp.gamma > 0.0 && sp.gamma <= 1.0))
        throw std::domain_error("scheme_exponent: gamma outside (0, 1]");
    if (!(sp.t >= 0.0)) throw std::domain_error("scheme_exponent: negative threshold");
    if (!(rate >= 0.0)) throw std::domain_error("scheme_exponent: negative rate");
    if (!(rate / sp.gamma < capacity(ch.p))) throw infeasible_error("phase1_rate_at_capacity");
    if (ch.p1 > 0.0) {
        // list-mismatch term vanishes only when t >= p1 and D(t||p1) >= 2R/gamma
        if (!(sp.t >= ch.p1)) throw infeasible_error("threshold_below_p1");
        if (kl_bernoulli(sp.t, ch.p1) < 2.0 * rate / sp.gamma - 1e-12)
            throw infeasible_error("threshold_below_t1");
    }
    return branches_at(rate, ch, sp.gamma, sp.t);
}

BoundBreakdown f1_noisy(double rate, const ChannelPair& ch) {
    check_forward(ch.p, "f1_noisy");
    check_feedback(ch.p1, "f1_noisy");
    if (!(rate > 0.0 && rate < r_crit(ch.p, 1)))
        throw std::domain_error("f1_noisy: rate outside (0, R_crit(p))");
    double glo = rate / capacity(ch.p) + 1e-6;
    if (ch.p1 > 0.0) glo = std::max(glo, 2.0 * rate / std::log(1.0 / ch.p1) + 1e-9);
    if (!(glo < 1.0)) throw infeasible_error("no_feasible_gamma");

    auto value_at = [&](double g) { return scheme_exponent(rate, ch, g).value; };
    ScalarMax best = maximize_scalar(value_at, {glo, 1.0, 1e-9}, 2048);

    // One branch rises and the other falls in gamma, so when they cross the
    // max of the min sits exactly at the crossing; use it as a candidate.
    auto diff = [&](double g) {
        const BoundBreakdown bd = scheme_exponent(rate, ch, g);
        return bd.branch_list2 - bd.branch_pair;
    };
    if (diff(glo) < 0.0 && diff(1.0) > 0.0) {
        const double gx = bisect_root(diff, {glo, 1.0, 1e-12});
        if (value_at(gx) > best.value) best = {gx, value_at(gx)};
    }
    return scheme_exponent(rate, ch, best.arg);
}

double gamma0(double rate, double p) {
    check_forward(p, "gamma0");
    const double rc = r_crit(p, 1);
    if (!(rate > 0.0 && rate < rc)) throw std::domain_error("gamma0: rate outside (0, R_crit(p))");
    const double pair_e2 = e2(p);
    auto diff = [&](double g) {
        const double rr = rate / g;
        return g * e_low(rr, p, 2) - g * e_low(rr, p, 1) - (1.0 - g) * pair_e2;
    };
    return bisect_root(diff, {rate / rc + 1e-12, 1.0, 1e-12});
}

double f1_noiseless(double rate, double p) {
    const double g0 = gamma0(rate, p);
    return g0 * e_low(rate / g0, p, 2);
}

double straight_line_upper(double rate, double p) {
    check_forward(p, "straight_line_upper");
    const double rc = r_crit(p, 1);
    if (!(rate >= 0.0 && rate <= rc))
        throw std::domain_error("straight_line_upper: rate outside [0, R_crit(p)]");
    const double e0 = 0.25 * std::log(1.0 / (4.0 * p * (1.0 - p)));
    const double ec = e_sp(rc, p);
    return e0 - (e0 - ec) * rate / rc;
}

ParametricGamma gamma0_parametric(double u, double p) {
    check_forward(p, "gamma0_parametric");
    if (!(u > 0.0 && u < r_crit(p, 1)))
        throw std::domain_error("gamma0_parametric: u outside (0, R_crit(p))");
    const double g = e2(p) / (e2(p) + e_ex(u, p, 2) - e_ex(u, p, 1));
    return {g, u * g};
}

double zero_rate_f1(const ChannelPair& ch) {
    check_forward(ch.p, "zero_rate_f1");
    check_feedback(ch.p1, "zero_rate_f1");
    const double q = 1.0 - ch.p;
    const double e0 = 0.25 * std::log(1.0 / (4.0 * ch.p * q));
    const double e02 = e_ex_low_rate(0.0, ch.p, 2);
    const double reduced = e02 - ch.p1 * std::log(q / ch.p) / 3.0;
    if (!(reduced > 0.0)) throw std::domain_error("zero_rate_f1: feedback noise erases the gain");
    return 2.0 * e0 * reduced / (reduced + e0);
}

double p11(double p, double alpha) {
    check_forward(p, "p11");
    if (!(alpha >= 0.0 && alpha < 1.0)) throw std::domain_error("p11: alpha outside [0, 1)");
    const double q = 1.0 - p;
    const double e0 = 0.25 * std::log(1.0 / (4.0 * p * q));
    const double e02 = e_ex_low_rate(0.0, p, 2);
    return 3.0 * alpha * (e02 - e0) / std::log(q / p);
}

double t0_asymptotic(double rate, double eps) {
    if (!(eps > 0.0 && eps < 1.0)) throw std::domain_error("t0_asymptotic: eps outside (0, 1)");
    if (!(rate >= 0.0)) throw std::domain_error("t0_asymptotic: negative rate");
    const double c = eps * eps / 2.0;
    double v = 0.0;
    if (rate <= c / 9.0) {
        v = c - 6.0 * rate;
    } else if (rate <= c / 4.0) {
        const double d = std::sqrt(c) - 2.0 * std::sqrt(rate);
        v = 3.0 * d * d;
    }
    return v / (4.0 * eps);
}

}  // namespace bscfb
