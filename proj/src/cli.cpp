#include "bscfb/cli.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <vector>

#include <json.hpp>

#include "bscfb/feedback.hpp"

namespace bscfb::cli {

namespace {

void meta_header(std::ostream& out) {
    out << "# artifact=" << kArtifactName << " version=" << kArtifactVersion << "\n";
}

double need(const std::optional<double>& v, const char* flag) {
    if (!v) throw std::invalid_argument(std::string("missing required parameter --") + flag);
    return *v;
}

struct SweepPoint {
    double value = 0.0;
    bool has_breakdown = false;
    BoundBreakdown bd{};
};

}  // namespace

std::string fmt12(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

void run_sweep(const SweepSpec& spec, std::ostream& out) {
    if (spec.steps < 2) throw std::invalid_argument("sweep: steps must be at least 2");
    if (!(spec.rate_min < spec.rate_max))
        throw std::invalid_argument("sweep: rate-min must be below rate-max");

    const std::string& qty = spec.quantity;
    const bool is_p11 = qty == "p11";
    const bool with_breakdown = qty == "f1_noisy" || qty == "f1_noiseless";

    // per-quantity evaluator over the swept axis
    std::function<SweepPoint(double)> eval;
    if (qty == "e_r" || qty == "e_ex" || qty == "e_low") {
        const double p = need(spec.p, "p");
        const int L = spec.list_size;
        auto fn = qty == "e_r" ? &e_r : qty == "e_ex" ? &e_ex : &e_low;
        eval = [fn, p, L](double r) { return SweepPoint{fn(r, p, L), false, {}}; };
    } else if (qty == "e_sp") {
        const double p = need(spec.p, "p");
        eval = [p](double r) { return SweepPoint{e_sp(r, p), false, {}}; };
    } else if (qty == "t0") {
        const double p = need(spec.p, "p");
        eval = [p](double r) { return SweepPoint{t0(r, p), false, {}}; };
    } else if (qty == "p0") {
        const double p = need(spec.p, "p");
        eval = [p](double r) { return SweepPoint{p0(r, p), false, {}}; };
    } else if (qty == "t1") {
        const double p1v = need(spec.p1, "p1");
        eval = [p1v](double r) { return SweepPoint{t1(r, p1v), false, {}}; };
    } else if (qty == "f1_noiseless") {
        const double p = need(spec.p, "p");
        eval = [p](double r) {
            const double g0 = gamma0(r, p);
            BoundBreakdown bd{};
            bd.gamma_star = g0;
            bd.t_star = 0.0;
            bd.branch_list2 = g0 * e_low(r / g0, p, 2);
            bd.branch_pair = g0 * e_low(r / g0, p, 1) + (1.0 - g0) * e2(p);
            bd.value = bd.branch_list2;
            return SweepPoint{bd.value, true, bd};
        };
    } else if (qty == "f1_noisy") {
        const double p = need(spec.p, "p");
        const double p1v = need(spec.p1, "p1");
        eval = [p, p1v](double r) {
            const BoundBreakdown bd = f1_noisy(r, {p, p1v});
            return SweepPoint{bd.value, true, bd};
        };
    } else if (is_p11) {
        const double a = spec.alpha;
        eval = [a](double pv) { return SweepPoint{p11(pv, a), false, {}}; };
    } else {
        throw std::invalid_argument("sweep: unknown quantity '" + qty + "'");
    }

    meta_header(out);
    out << "# quantity=" << qty;
    if (spec.p) out << " p=" << fmt12(*spec.p);
    if (spec.p1) out << " p1=" << fmt12(*spec.p1);
    out << " list_size=" << spec.list_size;
    if (is_p11) out << " alpha=" << fmt12(spec.alpha);
    out << (is_p11 ? " p_min=" : " rate_min=") << fmt12(spec.rate_min)
        << (is_p11 ? " p_max=" : " rate_max=") << fmt12(spec.rate_max)
        << " steps=" << spec.steps << "\n";

    out << (is_p11 ? "p" : "R") << ",value";
    if (with_breakdown) out << ",branch_list2,branch_pair,gamma_star,t_star";
    out << ",status\n";

    for (int i = 0; i < spec.steps; ++i) {
        const double x =
            spec.rate_min + (spec.rate_max - spec.rate_min) * i / (spec.steps - 1);
        out << fmt12(x) << ",";
        try {
            const SweepPoint pt = eval(x);
            out << fmt12(pt.value);
            if (with_breakdown)
                out << "," << fmt12(pt.bd.branch_list2) << "," << fmt12(pt.bd.branch_pair) << ","
                    << fmt12(pt.bd.gamma_star) << "," << fmt12(pt.bd.t_star);
            out << ",ok\n";
        } catch (const infeasible_error& e) {
            if (with_breakdown) out << ",,,,";
            out << ",infeasible:" << e.reason() << "\n";
        } catch (const std::domain_error&) {
            if (with_breakdown) out << ",,,,";
            out << ",infeasible:domain\n";
        }
    }
}

void run_figure(const std::string& figure, int steps, std::ostream& out) {
    if (steps < 2) throw std::invalid_argument("figure: steps must be at least 2");
    meta_header(out);

    if (figure == "fig2" || figure == "fig3") {
        const double p = 0.01;
        const double rc = r_crit(p, 1);
        out << "# figure=" << figure << " p=" << fmt12(p) << " rate_points=" << steps
            << " rate_open_interval=(0," << fmt12(rc) << ")\n";
        out << (figure == "fig2" ? "R,p0,status\n" : "R,f1_noiseless,e_ex,status\n");
        for (int i = 1; i <= steps; ++i) {
            const double r = rc * i / (steps + 1);
            out << fmt12(r) << ",";
            try {
                if (figure == "fig2") {
                    out << fmt12(p0(r, p)) << ",ok\n";
                } else {
                    out << fmt12(f1_noiseless(r, p)) << "," << fmt12(e_ex(r, p, 1)) << ",ok\n";
                }
            } catch (const infeasible_error& e) {
                out << (figure == "fig2" ? "" : ",") << ",infeasible:" << e.reason() << "\n";
            }
        }
        return;
    }
    if (figure == "fig4") {
        const double alpha = 0.1;
        out << "# figure=fig4 alpha=" << fmt12(alpha) << " p_points=" << steps
            << " p_open_interval=(0,0.5)\n";
        out << "p,p11,status\n";
        for (int i = 1; i <= steps; ++i) {
            const double pv = 0.5 * i / (steps + 1);
            out << fmt12(pv) << "," << fmt12(p11(pv, alpha)) << ",ok\n";
        }
        return;
    }
    throw std::invalid_argument("figure: expected one of fig2, fig3, fig4");
}

void run_sim(const SimConfig& cfg, std::ostream& out) {
    const SimStats s = estimate(cfg);
    nlohmann::ordered_json j;
    j["config"] = {
        {"n", cfg.n},       {"M", cfg.M},   {"gamma", cfg.gamma}, {"t", cfg.t},
        {"p", cfg.p},       {"p1", cfg.p1}, {"trials", cfg.trials},
        {"seed", cfg.seed},
    };
    j["stats"] = {
        {"trials", s.trials},
        {"case1_count", s.case1_count},
        {"case2_count", s.case2_count},
        {"errors_total", s.errors_total},
        {"errors_case1", s.errors_case1},
        {"errors_case2", s.errors_case2},
        {"list_mismatch_count", s.list_mismatch_count},
        {"true_outside_top2_count", s.true_outside_top2_count},
    };
    j["schema"] = "simstats-v1";
    out << j.dump(2) << "\n";
}

}  // namespace bscfb::cli
