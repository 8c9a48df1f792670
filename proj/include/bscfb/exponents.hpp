#pragma once

#include "bscfb/math.hpp"

namespace bscfb {

// Reliability-function quantities of the BSC(p) without feedback, in nats per
// channel use. p is the crossover probability, 0 < p < 1/2 unless noted;
// list_size is the list-decoding size L >= 1.

/// Channel capacity C(p) = ln2 - h(p).
double capacity(double p);

/// Sphere-packing exponent E_sp(R,p) = D(delta_GV(R) || p). Defined for
/// rate in [0, ln2]; meaningful (and decreasing to 0 at C) for rate <= C(p).
double e_sp(double rate, double p);

/// Critical rate R_crit,L(p) = ln2 - h(p^{1/(L+1)} / (p^{1/(L+1)} + q^{1/(L+1)})).
/// Strictly decreasing in L.
double r_crit(double p, int list_size = 1);

/// List-L random-coding exponent: the straight line
/// L(ln2 - R) - (1+L) ln[p^{1/(1+L)} + q^{1/(1+L)}] below R_crit,L, and
/// E_sp(R,p) from R_crit,L up to capacity. Continuous at the junction.
double e_r(double rate, double p, int list_size = 1);

/// f(p, L, rho) = 2^{-(L+1)} { 2 + sum_i binom(L+1, i) a_i^{1/rho} } with
/// a_i = p (q/p)^{i/(L+1)} + q (p/q)^{i/(L+1)}; the inner function of the
/// expurgation bound. rho >= 1.
double expurgation_f(double p, int list_size, double rho);

/// Expurgated random-coding exponent
/// E_ex(R,p,L) = sup_{rho >= 1} { -rho L R - rho ln f(p,L,rho) }.
/// The search ceiling adapts upward (doubling from 64) until the objective
/// gains less than 1e-10 over the last decade of rho, since the sup for
/// R below R_min,L is approached as rho grows.
double e_ex(double rate, double p, int list_size = 1);

/// Closed forms for E_ex on [0, R_min,L], L in {1, 2}:
/// L=1: (delta_GV(R)/2) ln(1/(4pq));
/// L=2: -v ln a1 with v in [0, 3/4] the root of ln4 - h(v) - v ln3 = 2R,
///      a1 = p^{1/3} q^{2/3} + p^{2/3} q^{1/3}.
/// Exact limits of the rho-maximization; serve as cross-checks for e_ex.
double e_ex_low_rate(double rate, double p, int list_size);

/// R_min,L(p): the rate below which expurgation strictly improves on random
/// coding (stationarity of the rho-objective at rho = 1). R_min,L < R_crit,L.
double r_min(double p, int list_size = 1);

/// Best lower bound E_low(R,p,L) = max{E_r, E_ex}. Rates above C(p) are a
/// domain error rather than a silent zero.
double e_low(double rate, double p, int list_size = 1);

/// Two-codeword exponent E2(p) = (1/2) ln(1/(4pq)).
double e2(double p);

/// The rate above which the reliability function is known exactly: the unique
/// root R2 in (0, R_crit) of
///   min { [a(1-a) - t(1-t)] / [1 + 2 sqrt(t(1-t))] :
///         0 <= t <= a <= 1/2, h(a) - h(t) = ln2 - R2 }  =  sqrt(pq)/(1+2 sqrt(pq)).
/// Inner minimum by grid-plus-refinement over t with a solved by bisection;
/// outer root by bisection (single sign change assumed; bracket_error if not).
double r2(double p);

/// Zero-rate exponent of the BSC with noiseless feedback,
/// -ln(p^{1/3} q^{2/3} + p^{2/3} q^{1/3}); reference constant for comparisons.
double berlekamp_zero_rate(double p);

}  // namespace bscfb
