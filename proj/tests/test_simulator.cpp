#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "bscfb/simulator.hpp"
#include "oracles.hpp"

using namespace bscfb;

namespace {

template <class F>
void for_trials(const SimConfig& cfg, const Codebook& code, std::int64_t trials, F&& visit) {
    for (std::int64_t i = 0; i < trials; ++i) {
        std::mt19937_64 rng = trial_rng(cfg.seed, i);
        visit(run_trial(cfg, code, rng));
    }
}

Codebook code_for(const SimConfig& cfg) {
    const int m = static_cast<int>(std::lround(cfg.gamma * cfg.n));
    return build_code(m, cfg.M, cfg.seed, cfg.p);
}

double median(std::vector<int> v) {
    std::sort(v.begin(), v.end());
    const size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

TEST_SUITE_BEGIN("simulator");

TEST_CASE("build_code: distinctness, determinism, headroom failure") {
    const Codebook two = build_code(8, 2, 123, 0.1);
    REQUIRE(two.words.size() == 2);
    CHECK(two.words[0] != two.words[1]);
    CHECK(two.min_distance >= 1);

    const Codebook a = build_code(12, 64, 99, 0.05);
    const Codebook b = build_code(12, 64, 99, 0.05);
    CHECK(a.words == b.words);
    const Codebook c = build_code(12, 64, 100, 0.05);
    CHECK(a.words != c.words);

    CHECK_THROWS_AS(build_code(4, 9, 1, 0.1), std::invalid_argument);  // 17 words, 16 patterns
    CHECK_NOTHROW(build_code(4, 8, 1, 0.1));
}

TEST_CASE("build_code: expurgation improves the minimum distance") {
    // baseline: unselected random codes of the same size, test-local generator
    std::mt19937_64 base_rng(2024);
    std::vector<int> base_min, exp_min;
    for (int s = 0; s < 100; ++s) {
        std::vector<std::uint64_t> words;
        while (words.size() < 16) {
            const std::uint64_t w = base_rng() & 0xFFFULL;
            if (std::find(words.begin(), words.end(), w) == words.end()) words.push_back(w);
        }
        int dmin = 12;
        for (size_t i = 0; i < words.size(); ++i)
            for (size_t j = i + 1; j < words.size(); ++j)
                dmin = std::min(dmin, std::popcount(words[i] ^ words[j]));
        base_min.push_back(dmin);
        exp_min.push_back(build_code(12, 16, 3000 + static_cast<std::uint64_t>(s), 0.1).min_distance);
    }
    CHECK(median(exp_min) >= median(base_min));
    const double mean_base = std::accumulate(base_min.begin(), base_min.end(), 0.0) / 100.0;
    const double mean_exp = std::accumulate(exp_min.begin(), exp_min.end(), 0.0) / 100.0;
    CHECK(mean_exp > mean_base);
}

TEST_CASE("run_trial: noiseless channels never err") {
    for (std::uint64_t seed : {1ULL, 7ULL}) {
        const SimConfig cfg{24, 16, 0.5, 0.1, 0.0, 0.0, 2000, seed};
        const Codebook code = code_for(cfg);
        for_trials(cfg, code, cfg.trials, [](const TrialResult& r) {
            CHECK(!r.error);
            CHECK(r.decided == r.true_msg);
        });
    }
}

TEST_CASE("run_trial: threshold at or above one always settles after phase I") {
    const SimConfig cfg{20, 8, 0.5, 1.0, 0.3, 0.1, 3000, 5};
    const Codebook code = code_for(cfg);
    for_trials(cfg, code, cfg.trials, [](const TrialResult& r) { CHECK(!r.case2); });
    const SimStats s = estimate(cfg);
    CHECK(s.case1_count == s.trials);
}

TEST_CASE("run_trial: two messages reduce to full-blocklength pair testing") {
    const SimConfig cfg{12, 2, 0.5, 0.1, 0.08, 0.25, 100000, 11};
    const Codebook code = code_for(cfg);

    // composite codewords: phase-I word in the low bits, opposite blocks above
    const int m = code.m, k = cfg.n - m;
    const std::uint64_t kmask = (1ULL << k) - 1;
    const std::uint64_t c0 = code.words[0];  // message 0 is the lower index: zeros block
    const std::uint64_t c1 = code.words[1] | (kmask << m);
    const double exact = oracle::two_codeword_ml_exact(c0, c1, cfg.n, cfg.p);

    std::int64_t errors = 0;
    for_trials(cfg, code, cfg.trials, [&](const TrialResult& r) {
        CHECK(r.case2);  // no third-ranked distance exists
        errors += r.error ? 1 : 0;
    });
    const double phat = static_cast<double>(errors) / static_cast<double>(cfg.trials);
    const double sigma = std::sqrt(exact * (1.0 - exact) / static_cast<double>(cfg.trials));
    CHECK(std::abs(phat - exact) < 3.0 * sigma);
}

TEST_CASE("run_trial: clean feedback with zero threshold reduces to the pair protocol") {
    const SimConfig cfg{24, 16, 0.5, 0.0, 0.1, 0.0, 100000, 42};
    const Codebook code = code_for(cfg);
    std::int64_t case2 = 0;
    for_trials(cfg, code, cfg.trials, [&](const TrialResult& r) {
        if (!r.case2) return;
        ++case2;
        if (r.rx_top == r.true_msg) {
            // transmitter's pair must be exactly {true, receiver's runner-up}
            CHECK(r.tx_companion == r.rx_second);
            CHECK(!r.list_mismatch);
        }
        // with x' = y the companion is always one of the receiver's top two
        CHECK((r.tx_companion == r.rx_top || r.tx_companion == r.rx_second));
        // and a pair mismatch can only happen when the top-ranked word is wrong
        if (r.list_mismatch) CHECK(r.rx_top != r.true_msg);
        CHECK(r.list_mismatch == r.true_outside_top2);
    });
    CHECK(case2 > 1000);
}

TEST_CASE("run_trial: agreeing feedback pins the companion to the leading pair") {
    const SimConfig cfg{20, 12, 0.6, 0.05, 0.15, 0.3, 30000, 13};
    const Codebook code = code_for(cfg);
    std::int64_t agreeing = 0;
    for_trials(cfg, code, cfg.trials, [&](const TrialResult& r) {
        if (!r.case2 || r.dist_y_xprime != 0) return;
        ++agreeing;
        CHECK((r.tx_companion == r.rx_top || r.tx_companion == r.rx_second));
    });
    CHECK(agreeing > 50);  // the zero-distance event must actually occur
}

TEST_CASE("run_trial: per-trial streams are reproducible") {
    const SimConfig cfg{30, 8, 0.6, 0.05, 0.2, 0.05, 100, 77};
    const Codebook code = code_for(cfg);
    std::vector<int> first, second;
    for_trials(cfg, code, 100, [&](const TrialResult& r) { first.push_back(r.decided); });
    for_trials(cfg, code, 100, [&](const TrialResult& r) { second.push_back(r.decided); });
    CHECK(first == second);
}

TEST_CASE("estimate: accounting identities and single-trial consistency") {
    const SimConfig one{30, 8, 0.6, 0.05, 0.2, 0.0, 1, 9};
    const SimStats s1 = estimate(one);
    std::mt19937_64 rng = trial_rng(one.seed, 0);
    const TrialResult r = run_trial(one, code_for(one), rng);
    CHECK(s1.trials == 1);
    CHECK(s1.errors_total == (r.error ? 1 : 0));
    CHECK(s1.case2_count == (r.case2 ? 1 : 0));

    int cfg_idx = 0;
    for (double p : {0.05, 0.25, 0.5}) {
        for (double p1 : {0.0, 0.1}) {
            const SimConfig cfg{28, 16, 0.55, 0.08, p, p1, 4000,
                                static_cast<std::uint64_t>(100 + cfg_idx++)};
            const SimStats s = estimate(cfg);
            CHECK(s.trials == cfg.trials);
            CHECK(s.case1_count + s.case2_count == s.trials);
            CHECK(s.errors_total == s.errors_case1 + s.errors_case2);
            CHECK(s.errors_case1 <= s.case1_count);
            CHECK(s.errors_case2 <= s.case2_count);
            CHECK(s.list_mismatch_count <= s.case2_count);
            CHECK(s.true_outside_top2_count <= s.case2_count);
        }
    }
    CHECK_THROWS_AS(estimate({30, 8, 0.6, 0.05, 0.2, 0.0, 0, 1}), std::invalid_argument);
}

TEST_CASE("estimate: thread partitioning leaves the counts bit-identical") {
    const SimConfig cfg{32, 32, 0.5, 0.05, 0.15, 0.02, 20000, 31};
    const SimStats a = estimate(cfg, 1);
    const SimStats b = estimate(cfg, 4);
    CHECK(a.trials == b.trials);
    CHECK(a.case1_count == b.case1_count);
    CHECK(a.case2_count == b.case2_count);
    CHECK(a.errors_total == b.errors_total);
    CHECK(a.errors_case1 == b.errors_case1);
    CHECK(a.errors_case2 == b.errors_case2);
    CHECK(a.list_mismatch_count == b.list_mismatch_count);
    CHECK(a.true_outside_top2_count == b.true_outside_top2_count);
}

TEST_CASE("estimate: a useless forward channel guesses at chance level") {
    const SimConfig cfg{30, 8, 0.6, 0.05, 0.5, 0.0, 20000, 3};
    const SimStats s = estimate(cfg);
    const double phat = static_cast<double>(s.errors_total) / static_cast<double>(s.trials);
    const double expect = 1.0 - 1.0 / cfg.M;  // decisions independent of the message
    const double sigma = std::sqrt(expect * (1.0 - expect) / static_cast<double>(s.trials));
    CHECK(std::abs(phat - expect) < 3.0 * sigma);
}

TEST_CASE("exponent_trend: error rate falls with blocklength at fixed rate") {
    SimConfig base{40, 7, 0.7, 0.02, 0.2, 0.0, 200000, 17};
    const TrendResult tr = exponent_trend(base, {20, 30, 40});
    REQUIRE(tr.rows.size() == 3);
    CHECK(tr.rows[0].M == 3);
    CHECK(tr.rows[1].M == 4);
    CHECK(tr.rows[2].M == 7);
    for (size_t i = 0; i + 1 < tr.rows.size(); ++i) {
        const TrendRow& hi = tr.rows[i];
        const TrendRow& lo = tr.rows[i + 1];
        const double s2 = hi.error_rate * (1 - hi.error_rate) / static_cast<double>(hi.trials) +
                          lo.error_rate * (1 - lo.error_rate) / static_cast<double>(lo.trials);
        CHECK(hi.error_rate - lo.error_rate > 3.0 * std::sqrt(s2));
        CHECK(lo.wilson_lo <= lo.error_rate);
        CHECK(lo.error_rate <= lo.wilson_hi);
    }
    CHECK(tr.slope_valid);
    CHECK(tr.slope > 0.0);
}

TEST_CASE("exponent_trend: zero-error rows are flagged, never extrapolated") {
    SimConfig base{30, 4, 0.6, 0.05, 0.0, 0.0, 500, 5};
    const TrendResult tr = exponent_trend(base, {20, 30});
    for (const TrendRow& row : tr.rows) {
        CHECK(row.degenerate);
        CHECK(row.errors == 0);
    }
    CHECK(!tr.slope_valid);
}

TEST_SUITE_END();
