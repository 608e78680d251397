#ifndef SOT_RUNNER_HPP
#define SOT_RUNNER_HPP

#include "sot/surface.hpp"

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace sot {

/// Flat key=value configuration with dotted sections. Flags override file
/// values; a fully populated config makes a run reproducible bit for bit.
struct RunConfig {
    std::string preset = "eggbox";
    std::optional<double> theta;
    std::map<std::string, std::string> profile_f, profile_g; // optional overrides
    std::string mode = "all";
    std::vector<double> combo_weights;
    int periods_x = 4, periods_y = 4;
    int res = 8;
    std::optional<double> eps;
    std::string out_dir = "out";
    std::string format = "obj"; // obj | vtk | both
    double tol_residual_exact = 1e-9;
    double tol_residual_quad = 1e-6;
    double tol_order = 0.2; // allowed deviation of the eps-halving ratio from 4
    double sweep_lo = 0.6, sweep_hi = 0.95;
    int sweep_samples = 36;
    std::string tube = "square-zigzag";
    std::optional<double> corrupt_w; // verification hook: scales the w component
};

void apply_config_text(RunConfig& cfg, const std::string& text);
RunConfig load_config_file(const std::string& path);
void apply_config_entry(RunConfig& cfg, const std::string& key, const std::string& value);

ProfileCurve make_profile(const std::map<std::string, std::string>& spec);
TranslationSurface configured_surface(const RunConfig& cfg);

/// Mode names for a "mode = all" run, matching the figure layout:
/// stretch, twist, out-of-plane bending, in-plane bending.
std::vector<std::string> export_mode_set(const std::string& mode);

int run_export(const RunConfig& cfg, std::ostream& log);
int run_verify(const RunConfig& cfg, std::ostream& log);
int run_sweep(const RunConfig& cfg, std::ostream& log);
int run_tube(const RunConfig& cfg, std::ostream& log);

/// Writes content to path atomically (temp file + rename).
void atomic_write(const std::string& path, const std::string& content);

} // namespace sot

#endif
