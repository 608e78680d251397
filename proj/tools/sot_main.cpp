#include "sot/runner.hpp"

#include <CLI11.hpp>
#include <iostream>

namespace {

struct Cli {
    sot::RunConfig cfg;
    std::string config_path;
    double theta = 0.0;
    bool theta_set = false;
    double eps = 0.0;
    bool eps_set = false;
    double corrupt_w = 0.0;
    bool corrupt_set = false;
};

void add_common(CLI::App* cmd, Cli& c) {
    cmd->add_option("--config", c.config_path, "key = value config file; flags override it");
    cmd->add_option("--preset", c.cfg.preset,
                    "surface preset: eggbox | smooth-eggbox | miura | curved-crease-miura | "
                    "morph | flat");
    cmd->add_option("--theta", c.theta, "inclination in radians (required for morph)")
        ->each([&c](const std::string&) { c.theta_set = true; });
    cmd->add_option("--mode", c.cfg.mode,
                    "twist | stretch | bend-s | bend-p | bend-pbar | bend-oop | bend-ip | "
                    "combine | all");
    cmd->add_option("--weights", c.cfg.combo_weights,
                    "three weights for mode=combine (on bend-s, bend-p, bend-pbar)")
        ->expected(3);
    cmd->add_option("--periods", c.cfg.periods_x, "periods per direction")
        ->each([&c](const std::string& v) { c.cfg.periods_y = std::stoi(v); });
    cmd->add_option("--res", c.cfg.res, "mesh cells per period and direction");
    cmd->add_option("--eps", c.eps, "deflection amplitude (default: auto from bounding box)")
        ->each([&c](const std::string&) { c.eps_set = true; });
    cmd->add_option("--out", c.cfg.out_dir, "output directory");
    cmd->add_option("--format", c.cfg.format, "mesh format: obj | vtk | both");
    cmd->add_option("--tol-residual", c.cfg.tol_residual_exact,
                    "isometry residual tolerance override")
        ->each([&c](const std::string& v) { c.cfg.tol_residual_quad = std::stod(v); });
    cmd->add_option("--tol-order", c.cfg.tol_order,
                    "allowed deviation of the eps-halving metric ratio from 4");
    cmd->add_option("--corrupt-w", c.corrupt_w,
                    "testing hook: scale the w displacement component to force a failure")
        ->each([&c](const std::string&) { c.corrupt_set = true; });
}

sot::RunConfig finalize(Cli& c, const CLI::App* cmd) {
    sot::RunConfig cfg;
    if (!c.config_path.empty()) cfg = sot::load_config_file(c.config_path);
    // flags override file values; only touched flags are copied over
    for (const auto* opt : cmd->get_options()) {
        if (opt->count() == 0) continue;
        const std::string name = opt->get_name();
        if (name == "--preset") cfg.preset = c.cfg.preset;
        else if (name == "--mode") cfg.mode = c.cfg.mode;
        else if (name == "--weights") cfg.combo_weights = c.cfg.combo_weights;
        else if (name == "--periods") { cfg.periods_x = c.cfg.periods_x; cfg.periods_y = c.cfg.periods_y; }
        else if (name == "--res") cfg.res = c.cfg.res;
        else if (name == "--out") cfg.out_dir = c.cfg.out_dir;
        else if (name == "--format") cfg.format = c.cfg.format;
        else if (name == "--tol-residual") {
            cfg.tol_residual_exact = c.cfg.tol_residual_exact;
            cfg.tol_residual_quad = c.cfg.tol_residual_quad;
        } else if (name == "--tol-order") cfg.tol_order = c.cfg.tol_order;
        else if (name == "--theta-lo") cfg.sweep_lo = c.cfg.sweep_lo;
        else if (name == "--theta-hi") cfg.sweep_hi = c.cfg.sweep_hi;
        else if (name == "--samples") cfg.sweep_samples = c.cfg.sweep_samples;
        else if (name == "--tube-preset") cfg.tube = c.cfg.tube;
    }
    if (c.theta_set) cfg.theta = c.theta;
    if (c.eps_set) cfg.eps = c.eps;
    if (c.corrupt_set) cfg.corrupt_w = c.corrupt_w;
    return cfg;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"surfaces of translation: closed-form inextensional modes, verification and export"};
    app.require_subcommand(1);

    Cli c;
    CLI::App* cmd_export = app.add_subcommand("export", "write reference and deflected meshes");
    CLI::App* cmd_verify =
        app.add_subcommand("verify", "check isometry residuals, perturbation order, edge lengths");
    CLI::App* cmd_sweep =
        app.add_subcommand("sweep", "tabulate effective properties over an inclination range");
    CLI::App* cmd_tube = app.add_subcommand("tube", "seam dislocation report for tubular surfaces");

    for (CLI::App* cmd : {cmd_export, cmd_verify, cmd_sweep, cmd_tube}) add_common(cmd, c);
    cmd_sweep->add_option("--theta-lo", c.cfg.sweep_lo, "sweep start (radians)");
    cmd_sweep->add_option("--theta-hi", c.cfg.sweep_hi, "sweep end (radians)");
    cmd_sweep->add_option("--samples", c.cfg.sweep_samples, "number of sweep samples");
    cmd_tube->add_option("--tube-preset", c.cfg.tube,
                         "square-zigzag | square-sinusoid | kite-sinusoid | open-square-zigzag");

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_export->parsed()) return sot::run_export(finalize(c, cmd_export), std::cout);
        if (cmd_verify->parsed()) return sot::run_verify(finalize(c, cmd_verify), std::cout);
        if (cmd_sweep->parsed()) return sot::run_sweep(finalize(c, cmd_sweep), std::cout);
        if (cmd_tube->parsed()) return sot::run_tube(finalize(c, cmd_tube), std::cout);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
