#pragma once

#include "bscfb/exponents.hpp"

namespace bscfb {

// Achievable error exponents of the two-phase transmission scheme over a
// forward BSC(p) with a passive noisy feedback BSC(p1). Phase I sends a block
// code over the first gamma*n channel uses; the transmitter then uses the
// feedback observations to pick the pair {true message, most likely rival}
// and phase II separates the receiver's two leading candidates with opposite
// codewords, unless the receiver already committed after phase I.

struct ChannelPair {
    double p;   // forward crossover, 0 < p < 1/2
    double p1;  // feedback crossover, 0 <= p1 <= 1/2
};

struct SchemeParams {
    double gamma;  // phase-I fraction of the blocklength, in (0, 1]
    double t;      // decision-threshold fraction, >= 0
};

/// The two branches of the scheme bound at a given gamma, for auditability:
/// branch_list2 covers the list-of-two miss (with the feedback penalty),
/// branch_pair covers the pairwise phase-II decision. value = min of the two.
struct BoundBreakdown {
    double branch_list2;
    double branch_pair;
    double gamma_star;
    double t_star;
    double value;
};

/// Critical feedback-noise threshold scale
/// t0(R,p) = 3 [E_low(R,p,2) - E_low(R,p)] / ln(q/p); nonnegative,
/// zero exactly when the two bounds coincide (R >= R_crit).
double t0(double rate, double p);

/// Critical feedback crossover p0(R,p) <= t0(R,p): the unique root of
/// D(t0(R,p) || p0) = 2R; equals t0(0,p) at R = 0.
double p0(double rate, double p);

/// Decision threshold t1(R,p1) >= p1: the unique root of D(t1 || p1) = 2R.
/// Throws infeasible_error when 2R >= ln(1/p1).
double t1(double rate, double p1);

/// Scheme bound at fixed gamma with the canonical threshold t = t1(R/gamma, p1):
///   min{ gamma E_low(R/gamma,p,2) - (gamma t1 / 3) ln(q/p),
///        gamma E_low(R/gamma,p) + (1-gamma) E2(p) }.
/// With p1 = 0 the penalty term vanishes. Throws infeasible_error when
/// R/gamma >= C(p) or the threshold equation has no root.
BoundBreakdown scheme_exponent(double rate, const ChannelPair& ch, double gamma);

/// Same bound with an explicit (gamma, t): requires t >= p1 and
/// D(t || p1) >= 2R/gamma (the list-mismatch term must vanish), so sweeping t
/// jointly with gamma never beats t = t1(R/gamma, p1).
BoundBreakdown scheme_exponent(double rate, const ChannelPair& ch, const SchemeParams& sp);

/// F1(R,p,p1): maximum of scheme_exponent over feasible gamma in (R/C(p), 1],
/// by 2048-point grid plus golden-section refinement; the branch-crossing root
/// is also computed and used as a candidate since one branch rises and the
/// other falls in gamma.
BoundBreakdown f1_noisy(double rate, const ChannelPair& ch);

/// The gamma equalizing the two branches with noiseless feedback: unique
/// root in (R/R_crit(p), 1) of
///   gamma E_low(R/gamma,p,2) = gamma E_low(R/gamma,p) + (1-gamma) E2(p).
double gamma0(double rate, double p);

/// F1(R,p,0) = gamma0 * E_low(R/gamma0, p, 2); strictly above E_low(R,p).
double f1_noiseless(double rate, double p);

/// Chord from (0, E(0,p)) to (R_crit, E_sp(R_crit,p)); an upper bound on the
/// no-feedback reliability function on [0, R_crit].
double straight_line_upper(double rate, double p);

struct ParametricGamma {
    double gamma0;
    double rate;
};

/// Parametric form of gamma0 in u = R/gamma0:
/// gamma0 = E2 / (E2 + E_ex(u,p,2) - E_ex(u,p)), R = u * gamma0.
ParametricGamma gamma0_parametric(double u, double p);

/// Zero-rate closed form
/// F1(0,p,p1) = 2 E(0,p) [E(0,p,2) - p1 ln(q/p)/3] /
///              (E(0,p,2) + E(0,p) - p1 ln(q/p)/3),
/// valid while the bracketed numerator term stays positive.
double zero_rate_f1(const ChannelPair& ch);

/// Feedback-noise level below which the scheme retains a (1-alpha) share of
/// the noiseless zero-rate gain: p11(p,alpha) = 3 alpha [E(0,p,2) - E(0,p)] / ln(q/p).
double p11(double p, double alpha);

/// Small-eps limit of t0 at p = (1-eps)/2 with C = eps^2/2:
/// 4 eps t0 = { C - 6R on [0, C/9]; 3 (sqrt(C) - 2 sqrt(R))^2 on [C/9, C/4]; 0 above }.
double t0_asymptotic(double rate, double eps);

}  // namespace bscfb
