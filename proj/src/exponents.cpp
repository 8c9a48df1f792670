#include "bscfb/exponents.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace bscfb {

namespace {

void check_p(double p, const char* who) {
    if (!(p > 0.0 && p < 0.5)) throw std::domain_error(std::string(who) + ": p outside (0, 1/2)");
}

void check_list(int L, const char* who) {
    if (L < 1) throw std::domain_error(std::string(who) + ": list size below 1");
}

double binom(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// ln a_i and binomial weights of the expurgation inner function, fixed (p, L)
struct ExpTerms {
    std::vector<double> coef;
    std::vector<double> ln_a;
    double norm;

    ExpTerms(double p, int L) : norm(std::ldexp(1.0, -(L + 1))) {
        const double q = 1.0 - p;
        const double lr = std::log(q / p);
        coef.reserve(static_cast<size_t>(L));
        ln_a.reserve(static_cast<size_t>(L));
        for (int i = 1; i <= L; ++i) {
            const double fi = static_cast<double>(i) / (L + 1);
            const double a = p * std::exp(fi * lr) + q * std::exp(-fi * lr);
            coef.push_back(binom(L + 1, i));
            ln_a.push_back(std::log(a));
        }
    }

    // f = 1 + 2^{-(L+1)} sum_i C_i (a_i^{1/rho} - 1); the expm1/log1p route keeps
    // -rho ln f accurate when f sits next to 1 (large rho or p near 1/2), where
    // the direct form loses rho*ulp worth of precision
    double f(double rho) const {
        double u = 0.0;
        for (size_t i = 0; i < coef.size(); ++i) u += coef[i] * std::expm1(ln_a[i] / rho);
        return 1.0 + norm * u;
    }

    double log_f(double rho) const {
        double u = 0.0;
        for (size_t i = 0; i < coef.size(); ++i) u += coef[i] * std::expm1(ln_a[i] / rho);
        return std::log1p(norm * u);
    }

    double objective(double rho, double LR) const { return -rho * LR - rho * log_f(rho); }
};

}  // namespace

double capacity(double p) {
    check_p(p, "capacity");
    return kLn2 - binary_entropy(p);
}

double e_sp(double rate, double p) {
    check_p(p, "e_sp");
    if (!(rate >= 0.0 && rate <= kLn2)) throw std::domain_error("e_sp: rate outside [0, ln2]");
    return kl_bernoulli(delta_gv(rate), p);
}

double r_crit(double p, int list_size) {
    check_p(p, "r_crit");
    check_list(list_size, "r_crit");
    const double q = 1.0 - p;
    const double u = std::pow(p, 1.0 / (list_size + 1));
    const double v = std::pow(q, 1.0 / (list_size + 1));
    return kLn2 - binary_entropy(u / (u + v));
}

double e_r(double rate, double p, int list_size) {
    check_p(p, "e_r");
    check_list(list_size, "e_r");
    const double c = capacity(p);
    if (!(rate >= 0.0 && rate <= c)) throw std::domain_error("e_r: rate outside [0, C(p)]");
    const double rc = r_crit(p, list_size);
    if (rate > rc) return e_sp(rate, p);
    const double q = 1.0 - p;
    const double u = std::pow(p, 1.0 / (list_size + 1));
    const double v = std::pow(q, 1.0 / (list_size + 1));
    return list_size * (kLn2 - rate) - (1 + list_size) * std::log(u + v);
}

double expurgation_f(double p, int list_size, double rho) {
    check_p(p, "expurgation_f");
    check_list(list_size, "expurgation_f");
    if (!(rho >= 1.0)) throw std::domain_error("expurgation_f: rho below 1");
    return ExpTerms(p, list_size).f(rho);
}

double e_ex(double rate, double p, int list_size) {
    check_p(p, "e_ex");
    check_list(list_size, "e_ex");
    if (!(rate >= 0.0)) throw std::domain_error("e_ex: negative rate");
    const ExpTerms terms(p, list_size);
    const double LR = list_size * rate;
    auto g = [&](double rho) { return terms.objective(rho, LR); };

    // The sup is approached as rho -> inf when the rate is small; grow the
    // ceiling until a decade of rho stops paying.
    double hi = 64.0;
    while (hi < 1e12 && g(hi) - g(hi / 10.0) > 1e-10) hi *= 2.0;

    const double tol = std::max(1e-9, hi * 1e-13);
    const ScalarMax m = maximize_scalar(g, {1.0, hi, tol}, 512);
    return m.value;
}

double e_ex_low_rate(double rate, double p, int list_size) {
    check_p(p, "e_ex_low_rate");
    if (list_size != 1 && list_size != 2)
        throw std::domain_error("e_ex_low_rate: closed forms exist for list sizes 1 and 2 only");
    const double rmin = r_min(p, list_size);
    if (!(rate >= 0.0 && rate <= rmin))
        throw std::domain_error("e_ex_low_rate: rate outside [0, R_min,L]");
    const double q = 1.0 - p;
    if (list_size == 1) return 0.5 * delta_gv(rate) * std::log(1.0 / (4.0 * p * q));

    const double a1 = std::cbrt(p) * std::cbrt(q * q) + std::cbrt(p * p) * std::cbrt(q);
    // v in [0, 3/4] with ln4 - h(v) - v ln3 = 2R; the left side falls from ln4
    // to a quadratic tangency with zero at v = 3/4, so the zero-rate endpoint
    // is returned exactly rather than resolved through the flat sign test
    if (rate == 0.0) return -0.75 * std::log(a1);
    const double ln3 = std::log(3.0);
    double lo = 0.0, hi = 0.75;
    for (int i = 0; i < 90 && (hi - lo) > 1e-15; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fv = 2.0 * kLn2 - binary_entropy(mid) - mid * ln3 - 2.0 * rate;
        if (fv > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return -0.5 * (lo + hi) * std::log(a1);
}

double r_min(double p, int list_size) {
    check_p(p, "r_min");
    check_list(list_size, "r_min");
    const int L = list_size;
    const double q = 1.0 - p;
    const double u = std::pow(p, 1.0 / (L + 1));
    const double v = std::pow(q, 1.0 / (L + 1));
    const ExpTerms terms(p, L);
    double s = 0.0;
    for (size_t i = 0; i < terms.coef.size(); ++i)
        s += terms.coef[i] * std::exp(terms.ln_a[i]) * terms.ln_a[i];
    return kLn2 - (L + 1.0) / L * std::log(u + v) + s / (2.0 * L * std::pow(u + v, L + 1));
}

double e_low(double rate, double p, int list_size) {
    return std::max(e_r(rate, p, list_size), e_ex(rate, p, list_size));
}

double e2(double p) {
    check_p(p, "e2");
    return 0.5 * std::log(1.0 / (4.0 * p * (1.0 - p)));
}

double berlekamp_zero_rate(double p) {
    check_p(p, "berlekamp_zero_rate");
    const double q = 1.0 - p;
    return -std::log(std::cbrt(p) * std::cbrt(q * q) + std::cbrt(p * p) * std::cbrt(q));
}

namespace {

// min over feasible tau of [a(1-a) - tau(1-tau)] / [1 + 2 sqrt(tau(1-tau))]
// subject to h(a) = h(tau) + ln2 - R2, a in [tau, 1/2]
double r2_inner_min(double rate2) {
    auto alpha_of = [&](double tau) {
        const double target = binary_entropy(tau) + kLn2 - rate2;
        double lo = tau, hi = 0.5;
        for (int i = 0; i < 80 && (hi - lo) > 1e-14; ++i) {
            const double mid = 0.5 * (lo + hi);
            if (binary_entropy(mid) < target)
                lo = mid;
            else
                hi = mid;
        }
        return 0.5 * (lo + hi);
    };
    auto phi = [&](double tau) {
        const double a = alpha_of(tau);
        return (a * (1.0 - a) - tau * (1.0 - tau)) / (1.0 + 2.0 * std::sqrt(tau * (1.0 - tau)));
    };
    // feasible tau: h(tau) <= R2, i.e. tau <= h^{-1}(R2) on [0, 1/2]
    const double tau_max = rate2 >= kLn2 ? 0.5 : delta_gv(kLn2 - rate2);
    if (tau_max <= 0.0) return phi(0.0);
    const ScalarMax m =
        maximize_scalar([&](double tau) { return -phi(tau); }, {0.0, tau_max, 1e-11}, 2048);
    return -m.value;
}

}  // namespace

double r2(double p) {
    check_p(p, "r2");
    const double spq = std::sqrt(p * (1.0 - p));
    const double target = spq / (1.0 + 2.0 * spq);
    const double rc = r_crit(p, 1);
    auto g = [&](double rate2) { return r2_inner_min(rate2) - target; };
    const double lo = rc * 1e-8, hi = rc * (1.0 - 1e-10);
    if (!(g(lo) > 0.0 && g(hi) < 0.0))
        throw bracket_error("r2: inner minimum shows no sign change over (0, R_crit)");
    return bisect_root(g, {lo, hi, 1e-11});
}

}  // namespace bscfb
