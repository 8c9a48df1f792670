#include <doctest.h>

#include <cmath>
#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include "bscfb/cli.hpp"
#include "bscfb/feedback.hpp"

using namespace bscfb;

namespace {

struct CsvTable {
    std::vector<std::string> meta;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

CsvTable parse_csv(const std::string& text) {
    CsvTable t;
    std::istringstream in(text);
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            t.meta.push_back(line);
            continue;
        }
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream ls(line);
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        if (line.back() == ',') cells.push_back("");
        if (!header_seen) {
            t.header = cells;
            header_seen = true;
        } else {
            t.rows.push_back(cells);
        }
    }
    return t;
}

std::string sweep_text(const cli::SweepSpec& spec) {
    std::ostringstream out;
    cli::run_sweep(spec, out);
    return out.str();
}

}  // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("sweep: metadata lines and a sphere-packing grid ending at zero") {
    cli::SweepSpec spec;
    spec.quantity = "e_sp";
    spec.p = 0.01;
    spec.rate_min = 0.0;
    spec.rate_max = capacity(0.01);
    spec.steps = 9;
    const CsvTable t = parse_csv(sweep_text(spec));
    REQUIRE(t.meta.size() >= 2);
    CHECK(t.meta[0].rfind("# artifact=bscfb version=", 0) == 0);
    CHECK(t.meta[1].find("quantity=e_sp") != std::string::npos);
    REQUIRE(t.header == std::vector<std::string>{"R", "value", "status"});
    REQUIRE(t.rows.size() == 9);
    for (const auto& row : t.rows) CHECK(row[2] == "ok");
    CHECK(std::abs(std::stod(t.rows.back()[1])) < 1e-14);
}

TEST_CASE("sweep: every row reproduces a single-point library call bit-exactly") {
    cli::SweepSpec spec;
    spec.quantity = "e_low";
    spec.p = 0.03;
    spec.list_size = 2;
    spec.rate_min = 0.01;
    spec.rate_max = 0.4;
    spec.steps = 13;
    const CsvTable t = parse_csv(sweep_text(spec));
    REQUIRE(t.rows.size() == 13);
    for (int i = 0; i < 13; ++i) {
        const double r = 0.01 + (0.4 - 0.01) * i / 12.0;
        CHECK(t.rows[static_cast<size_t>(i)][0] == cli::fmt12(r));
        CHECK(t.rows[static_cast<size_t>(i)][1] == cli::fmt12(e_low(r, 0.03, 2)));
    }
}

TEST_CASE("sweep: breakdown columns match direct evaluations") {
    cli::SweepSpec spec;
    spec.quantity = "f1_noisy";
    spec.p = 0.01;
    spec.p1 = 0.002;
    spec.rate_min = 0.05;
    spec.rate_max = 0.3;
    spec.steps = 4;
    const CsvTable t = parse_csv(sweep_text(spec));
    REQUIRE(t.header ==
            std::vector<std::string>{"R", "value", "branch_list2", "branch_pair", "gamma_star",
                                     "t_star", "status"});
    for (int i = 0; i < 4; ++i) {
        const double r = 0.05 + (0.3 - 0.05) * i / 3.0;
        const BoundBreakdown bd = f1_noisy(r, {0.01, 0.002});
        const auto& row = t.rows[static_cast<size_t>(i)];
        CHECK(row[1] == cli::fmt12(bd.value));
        CHECK(row[2] == cli::fmt12(bd.branch_list2));
        CHECK(row[3] == cli::fmt12(bd.branch_pair));
        CHECK(row[4] == cli::fmt12(bd.gamma_star));
        CHECK(row[5] == cli::fmt12(bd.t_star));
        CHECK(row[6] == "ok");
    }
}

TEST_CASE("sweep: infeasible points carry a reason, not a zero") {
    cli::SweepSpec spec;
    spec.quantity = "e_r";
    spec.p = 0.01;
    spec.rate_min = 0.6;
    spec.rate_max = 0.7;  // capacity(0.01) = 0.637 sits inside
    spec.steps = 5;
    const CsvTable t = parse_csv(sweep_text(spec));
    bool saw_ok = false, saw_infeasible = false;
    for (const auto& row : t.rows) {
        if (row[2] == "ok") saw_ok = true;
        if (row[2].rfind("infeasible:", 0) == 0) {
            saw_infeasible = true;
            CHECK(row[1].empty());
        }
    }
    CHECK(saw_ok);
    CHECK(saw_infeasible);

    cli::SweepSpec st1;
    st1.quantity = "t1";
    st1.p1 = 0.1;
    st1.rate_min = 0.2;
    st1.rate_max = 2.0;
    st1.steps = 6;
    const CsvTable u = parse_csv(sweep_text(st1));
    bool saw_root_failure = false;
    for (const auto& row : u.rows)
        if (row[2] == "infeasible:no_threshold_root") saw_root_failure = true;
    CHECK(saw_root_failure);
}

TEST_CASE("sweep: p11 runs over the crossover axis") {
    cli::SweepSpec spec;
    spec.quantity = "p11";
    spec.alpha = 0.1;
    spec.rate_min = 0.05;
    spec.rate_max = 0.45;
    spec.steps = 5;
    const CsvTable t = parse_csv(sweep_text(spec));
    REQUIRE(t.header == std::vector<std::string>{"p", "value", "status"});
    for (int i = 0; i < 5; ++i) {
        const double pv = 0.05 + 0.4 * i / 4.0;
        CHECK(t.rows[static_cast<size_t>(i)][1] == cli::fmt12(p11(pv, 0.1)));
    }
}

TEST_CASE("sweep: missing parameters are usage errors") {
    cli::SweepSpec spec;
    spec.quantity = "e_sp";  // no p
    spec.rate_min = 0.0;
    spec.rate_max = 0.1;
    spec.steps = 3;
    std::ostringstream out;
    CHECK_THROWS_AS(cli::run_sweep(spec, out), std::invalid_argument);
    spec.p = 0.01;
    spec.steps = 1;
    CHECK_THROWS_AS(cli::run_sweep(spec, out), std::invalid_argument);
    spec.steps = 3;
    spec.quantity = "nonsense";
    CHECK_THROWS_AS(cli::run_sweep(spec, out), std::invalid_argument);
}

TEST_CASE("figure: fig4 rows reproduce the library and keep one interior peak") {
    std::ostringstream out;
    cli::run_figure("fig4", 60, out);
    const CsvTable t = parse_csv(out.str());
    REQUIRE(t.rows.size() == 60);
    std::vector<double> vals;
    for (int i = 1; i <= 60; ++i) {
        const double pv = 0.5 * i / 61.0;
        const auto& row = t.rows[static_cast<size_t>(i - 1)];
        CHECK(row[0] == cli::fmt12(pv));
        CHECK(row[1] == cli::fmt12(p11(pv, 0.1)));
        vals.push_back(std::stod(row[1]));
    }
    const size_t peak =
        static_cast<size_t>(std::max_element(vals.begin(), vals.end()) - vals.begin());
    CHECK(peak > 0);
    CHECK(peak + 1 < vals.size());
    for (size_t i = 0; i < peak; ++i) CHECK(vals[i] <= vals[i + 1] + 1e-15);
    for (size_t i = peak; i + 1 < vals.size(); ++i) CHECK(vals[i + 1] <= vals[i] + 1e-15);
    CHECK(vals.back() < 0.05 * vals[peak]);
    CHECK_THROWS_AS(cli::run_figure("fig9", 10, out), std::invalid_argument);
}

TEST_CASE("sim: repeated runs are byte-identical and match the frozen fixture") {
    const SimConfig cfg{30, 8, 0.6, 0.05, 0.2, 0.0, 10000, 1};
    std::ostringstream a, b;
    cli::run_sim(cfg, a);
    cli::run_sim(cfg, b);
    CHECK(a.str() == b.str());
    CHECK(a.str().find("\"schema\": \"simstats-v1\"") != std::string::npos);

    // counts frozen after the first reviewed run of this configuration
    const SimStats s = estimate(cfg);
    CHECK(s.case1_count == 2610);
    CHECK(s.case2_count == 7390);
    CHECK(s.errors_total == 482);
    CHECK(s.errors_case1 == 307);
    CHECK(s.errors_case2 == 175);
    CHECK(s.list_mismatch_count == 142);
    CHECK(s.true_outside_top2_count == 142);

    SimConfig bad = cfg;
    bad.trials = 0;
    std::ostringstream out;
    CHECK_THROWS_AS(cli::run_sim(bad, out), std::invalid_argument);
}

TEST_SUITE_END();
