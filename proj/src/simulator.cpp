#include "bscfb/simulator.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <thread>
#include <unordered_set>

namespace bscfb {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t lowmask(int bits) {
    return bits >= 64 ? ~0ULL : (1ULL << bits) - 1ULL;
}

// unbiased uniform draw from [0, bound)
std::uint64_t bounded_rand(std::mt19937_64& rng, std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
        const std::uint64_t r = rng();
        if (r >= threshold) return r % bound;
    }
}

double unit_double(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// flip each of `bits` positions independently with probability prob
std::uint64_t noise_mask(std::mt19937_64& rng, int bits, double prob) {
    if (prob <= 0.0 || bits <= 0) return 0;
    std::uint64_t m = 0;
    for (int i = 0; i < bits; ++i)
        if (unit_double(rng) < prob) m |= 1ULL << i;
    return m;
}

int hamming(std::uint64_t a, std::uint64_t b) {
    return std::popcount(a ^ b);
}

void check_config(const SimConfig& cfg) {
    if (cfg.n < 2 || cfg.n > 64) throw std::invalid_argument("sim: n outside [2, 64]");
    if (cfg.M < 2 || cfg.M > 65536) throw std::invalid_argument("sim: M outside [2, 65536]");
    if (!(cfg.gamma > 0.0 && cfg.gamma < 1.0))
        throw std::invalid_argument("sim: gamma outside (0, 1)");
    const int m = static_cast<int>(std::lround(cfg.gamma * cfg.n));
    if (m < 1 || m > cfg.n - 1)
        throw std::invalid_argument("sim: round(gamma*n) leaves an empty phase");
    if (!(cfg.t >= 0.0)) throw std::invalid_argument("sim: negative threshold");
    if (!(cfg.p >= 0.0 && cfg.p <= 0.5)) throw std::invalid_argument("sim: p outside [0, 1/2]");
    if (!(cfg.p1 >= 0.0 && cfg.p1 <= 0.5)) throw std::invalid_argument("sim: p1 outside [0, 1/2]");
    if (cfg.trials < 1) throw std::invalid_argument("sim: trials below 1");
}

}  // namespace

Codebook build_code(int m, int M, std::uint64_t seed, double p) {
    if (m < 1 || m > 64) throw std::invalid_argument("build_code: m outside [1, 64]");
    if (M < 2 || M > 65536) throw std::invalid_argument("build_code: M outside [2, 65536]");
    const int draws = 2 * M - 1;
    if (m < 64 && static_cast<std::uint64_t>(draws) > (1ULL << m))
        throw std::invalid_argument("build_code: 2M-1 distinct words do not fit in m bits");

    std::mt19937_64 rng(splitmix64(seed ^ 0xC0DEB00CULL));
    const std::uint64_t mask = lowmask(m);
    std::vector<std::uint64_t> pool;
    pool.reserve(static_cast<size_t>(draws));
    std::unordered_set<std::uint64_t> seen;
    while (static_cast<int>(pool.size()) < draws) {
        const std::uint64_t w = rng() & mask;
        if (seen.insert(w).second) pool.push_back(w);
    }

    // expurgation: keep the M words with the smallest aggregate pairwise
    // Bhattacharyya weight  sum_j base^{d_ij},  base = 2 sqrt(p(1-p))
    double base = 0.5;
    if (p > 0.0 && p < 0.5) base = 2.0 * std::sqrt(p * (1.0 - p));
    const double lnb = std::log(base);
    std::vector<double> score(pool.size(), 0.0);
    for (size_t i = 0; i < pool.size(); ++i) {
        for (size_t j = i + 1; j < pool.size(); ++j) {
            const double w = std::exp(lnb * hamming(pool[i], pool[j]));
            score[i] += w;
            score[j] += w;
        }
    }
    std::vector<int> order(pool.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return score[static_cast<size_t>(a)] <
                                                score[static_cast<size_t>(b)]; });

    Codebook code;
    code.m = m;
    code.seed = seed;
    code.words.reserve(static_cast<size_t>(M));
    for (int k = 0; k < M; ++k) code.words.push_back(pool[static_cast<size_t>(order[static_cast<size_t>(k)])]);
    int dmin = m;
    for (size_t i = 0; i < code.words.size(); ++i)
        for (size_t j = i + 1; j < code.words.size(); ++j)
            dmin = std::min(dmin, hamming(code.words[i], code.words[j]));
    code.min_distance = dmin;
    return code;
}

std::mt19937_64 trial_rng(std::uint64_t seed, std::int64_t index) {
    return std::mt19937_64(
        splitmix64(splitmix64(seed) ^ (0x9e3779b97f4a7c15ULL * (static_cast<std::uint64_t>(index) + 1))));
}

TrialResult run_trial(const SimConfig& cfg, const Codebook& code, std::mt19937_64& rng) {
    const int m = code.m;
    const int k = cfg.n - m;
    const int M = static_cast<int>(code.words.size());
    if (m != static_cast<int>(std::lround(cfg.gamma * cfg.n)))
        throw std::invalid_argument("run_trial: code length does not match round(gamma*n)");

    TrialResult out;
    out.true_msg = static_cast<int>(bounded_rand(rng, static_cast<std::uint64_t>(M)));

    const std::uint64_t x_true = code.words[static_cast<size_t>(out.true_msg)];
    const std::uint64_t y = x_true ^ noise_mask(rng, m, cfg.p);
    const std::uint64_t x_fb = y ^ noise_mask(rng, m, cfg.p1);
    out.dist_y_xprime = hamming(y, x_fb);

    // rank the three closest codewords to y; strict < keeps the lower index
    // first among ties
    int i1 = -1, i2 = -1;
    int d1 = std::numeric_limits<int>::max();
    int d2 = d1, d3 = d1;
    for (int i = 0; i < M; ++i) {
        const int d = hamming(code.words[static_cast<size_t>(i)], y);
        if (d < d1) {
            d3 = d2;
            d2 = d1;
            i2 = i1;
            d1 = d;
            i1 = i;
        } else if (d < d2) {
            d3 = d2;
            d2 = d;
            i2 = i;
        } else if (d < d3) {
            d3 = d;
        }
    }
    out.rx_top = i1;
    out.rx_second = i2;

    // with only two codewords there is no third-ranked distance and the
    // protocol always runs both phases
    const bool case1 = M > 2 && static_cast<double>(d3) <= static_cast<double>(d2) + cfg.t * m;
    if (case1) {
        out.case2 = false;
        out.decided = i1;
        out.error = out.decided != out.true_msg;
        return out;
    }
    out.case2 = true;

    // transmitter pairs the true message with the rival closest to its
    // feedback observation
    int comp = -1;
    int dc = std::numeric_limits<int>::max();
    for (int i = 0; i < M; ++i) {
        if (i == out.true_msg) continue;
        const int d = hamming(code.words[static_cast<size_t>(i)], x_fb);
        if (d < dc) {
            dc = d;
            comp = i;
        }
    }
    out.tx_companion = comp;

    // phase II: opposite blocks, lower message index of the pair -> all-zeros
    const std::uint64_t kmask = lowmask(k);
    const std::uint64_t sent = out.true_msg < comp ? 0ULL : kmask;
    const std::uint64_t z = sent ^ noise_mask(rng, k, cfg.p);

    const int rlow = std::min(i1, i2);
    const std::uint64_t block1 = i1 == rlow ? 0ULL : kmask;
    const std::uint64_t block2 = i2 == rlow ? 0ULL : kmask;
    const int s1 = d1 + hamming(z, block1);
    const int s2 = d2 + hamming(z, block2);
    if (s1 < s2)
        out.decided = i1;
    else if (s2 < s1)
        out.decided = i2;
    else
        out.decided = rlow;

    out.error = out.decided != out.true_msg;
    out.true_outside_top2 = out.true_msg != i1 && out.true_msg != i2;
    const int tlow = std::min(out.true_msg, comp);
    const int thigh = std::max(out.true_msg, comp);
    out.list_mismatch = tlow != rlow || thigh != std::max(i1, i2);
    return out;
}

SimStats estimate(const SimConfig& cfg, int threads) {
    check_config(cfg);
    if (threads < 1) throw std::invalid_argument("estimate: threads below 1");
    const int m = static_cast<int>(std::lround(cfg.gamma * cfg.n));
    const Codebook code = build_code(m, cfg.M, cfg.seed, cfg.p);

    auto run_range = [&](std::int64_t begin, std::int64_t end, SimStats& acc) {
        for (std::int64_t i = begin; i < end; ++i) {
            std::mt19937_64 rng = trial_rng(cfg.seed, i);
            const TrialResult r = run_trial(cfg, code, rng);
            ++acc.trials;
            if (r.case2) {
                ++acc.case2_count;
                if (r.error) {
                    ++acc.errors_case2;
                    ++acc.errors_total;
                }
                if (r.list_mismatch) ++acc.list_mismatch_count;
                if (r.true_outside_top2) ++acc.true_outside_top2_count;
            } else {
                ++acc.case1_count;
                if (r.error) {
                    ++acc.errors_case1;
                    ++acc.errors_total;
                }
            }
        }
    };

    if (threads == 1 || cfg.trials < 2 * threads) {
        SimStats s;
        run_range(0, cfg.trials, s);
        return s;
    }

    std::vector<SimStats> parts(static_cast<size_t>(threads));
    std::vector<std::thread> pool;
    const std::int64_t chunk = (cfg.trials + threads - 1) / threads;
    for (int w = 0; w < threads; ++w) {
        const std::int64_t b = w * chunk;
        const std::int64_t e = std::min<std::int64_t>(cfg.trials, b + chunk);
        if (b >= e) break;
        pool.emplace_back(run_range, b, e, std::ref(parts[static_cast<size_t>(w)]));
    }
    for (auto& th : pool) th.join();

    SimStats s;
    for (const SimStats& q : parts) {
        s.trials += q.trials;
        s.case1_count += q.case1_count;
        s.case2_count += q.case2_count;
        s.errors_total += q.errors_total;
        s.errors_case1 += q.errors_case1;
        s.errors_case2 += q.errors_case2;
        s.list_mismatch_count += q.list_mismatch_count;
        s.true_outside_top2_count += q.true_outside_top2_count;
    }
    return s;
}

TrendResult exponent_trend(const SimConfig& cfg_base, const std::vector<int>& n_list) {
    check_config(cfg_base);
    if (n_list.empty()) throw std::invalid_argument("exponent_trend: empty n list");
    const double rate = std::log(static_cast<double>(cfg_base.M)) / cfg_base.n;

    TrendResult res;
    for (int n : n_list) {
        SimConfig cfg = cfg_base;
        cfg.n = n;
        cfg.M = static_cast<int>(std::max<std::int64_t>(
            2, std::llround(std::exp(rate * n))));
        const SimStats s = estimate(cfg);

        TrendRow row;
        row.n = n;
        row.M = cfg.M;
        row.trials = s.trials;
        row.errors = s.errors_total;
        const double phat = static_cast<double>(s.errors_total) / static_cast<double>(s.trials);
        row.error_rate = phat;
        const double z = 1.959963984540054;  // 95% two-sided
        const double tn = static_cast<double>(s.trials);
        const double denom = 1.0 + z * z / tn;
        const double center = (phat + z * z / (2.0 * tn)) / denom;
        const double half =
            z * std::sqrt(phat * (1.0 - phat) / tn + z * z / (4.0 * tn * tn)) / denom;
        row.wilson_lo = std::max(0.0, center - half);
        row.wilson_hi = std::min(1.0, center + half);
        row.degenerate = s.errors_total == 0;
        row.norm_log_error = row.degenerate ? 0.0 : -std::log(phat) / n;
        res.rows.push_back(row);
    }

    // least squares of -ln(p_hat) against n over the usable rows
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int cnt = 0;
    for (const TrendRow& r : res.rows) {
        if (r.degenerate) continue;
        const double x = r.n;
        const double y = -std::log(r.error_rate);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++cnt;
    }
    if (cnt >= 2 && cnt * sxx - sx * sx > 0) {
        res.slope = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
        res.slope_valid = true;
    }
    return res;
}

}  // namespace bscfb
