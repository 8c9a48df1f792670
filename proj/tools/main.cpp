#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include <CLI11.hpp>

#include "bscfb/cli.hpp"

namespace {

// --out <path> redirects; default is standard output
std::ostream& open_out(const std::string& path, std::ofstream& file) {
    if (path.empty()) return std::cout;
    file.open(path);
    if (!file) throw CLI::ValidationError("--out", "cannot open '" + path + "' for writing");
    return file;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Reliability-function bounds and a two-phase protocol simulator "
                 "for the BSC with noisy feedback"};
    app.require_subcommand(1);

    bscfb::cli::SweepSpec spec;
    double sweep_p = 0.0, sweep_p1 = 0.0;
    std::string out_path;

    CLI::App* sweep = app.add_subcommand("sweep", "Tabulate one bound over a rate grid (CSV)");
    sweep->add_option("--quantity", spec.quantity,
                      "One of: e_r, e_ex, e_sp, e_low, f1_noiseless, f1_noisy, p0, t0, t1, p11")
        ->required();
    CLI::Option* o_p = sweep->add_option("--p", sweep_p, "Forward crossover probability");
    CLI::Option* o_p1 = sweep->add_option("--p1", sweep_p1, "Feedback crossover probability");
    sweep->add_option("--list-size", spec.list_size, "List size L (e_r/e_ex/e_low)")
        ->default_val(1);
    sweep->add_option("--alpha", spec.alpha, "Retained gain share (p11 only)")->default_val(0.1);
    sweep->add_option("--rate-min", spec.rate_min, "Grid start (p axis for p11)")->required();
    sweep->add_option("--rate-max", spec.rate_max, "Grid end (p axis for p11)")->required();
    sweep->add_option("--steps", spec.steps, "Grid points")->required();
    sweep->add_option("--out", out_path, "Output path (default stdout)");

    std::string figure;
    int fig_steps = 100;
    CLI::App* fig = app.add_subcommand("figure", "Reproduce a reference curve (CSV)");
    fig->add_option("--figure", figure, "fig2, fig3 or fig4")->required();
    fig->add_option("--steps", fig_steps, "Grid points")->default_val(100);
    fig->add_option("--out", out_path, "Output path (default stdout)");

    bscfb::SimConfig cfg;
    CLI::App* sim = app.add_subcommand("sim", "Run the two-phase protocol simulator (JSON)");
    sim->add_option("--n", cfg.n, "Total blocklength (<= 64)")->required();
    sim->add_option("--messages", cfg.M, "Message count M")->required();
    sim->add_option("--gamma", cfg.gamma, "Phase-I fraction of the blocklength")->required();
    sim->add_option("--t", cfg.t, "Decision-threshold fraction")->required();
    sim->add_option("--p", cfg.p, "Forward crossover probability")->required();
    sim->add_option("--p1", cfg.p1, "Feedback crossover probability")->required();
    sim->add_option("--trials", cfg.trials, "Trial count")->required();
    sim->add_option("--seed", cfg.seed, "RNG seed")->required();
    sim->add_option("--out", out_path, "Output path (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        std::ofstream file;
        std::ostream& out = open_out(out_path, file);
        if (sweep->parsed()) {
            if (o_p->count()) spec.p = sweep_p;
            if (o_p1->count()) spec.p1 = sweep_p1;
            bscfb::cli::run_sweep(spec, out);
        } else if (fig->parsed()) {
            bscfb::cli::run_figure(figure, fig_steps, out);
        } else if (sim->parsed()) {
            bscfb::cli::run_sim(cfg, out);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
