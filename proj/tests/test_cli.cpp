#include "sot/runner.hpp"

#include <doctest.h>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace sot;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const char* name) {
    const fs::path p = fs::temp_directory_path() / name;
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream is(p, std::ios::binary);
    REQUIRE(is.good());
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("config parsing") {
    RunConfig cfg;
    apply_config_text(cfg, R"(
# comment
surface.preset = miura
surface.theta = 0.75
mode.name = bend-p
grid.periods = 3
grid.res = 16
eps = 0.05
out.dir = some/dir
tol.residual = 1e-8
sweep.samples = 12
)");
    CHECK(cfg.preset == "miura");
    CHECK(cfg.theta.value() == doctest::Approx(0.75));
    CHECK(cfg.mode == "bend-p");
    CHECK(cfg.periods_x == 3);
    CHECK(cfg.periods_y == 3);
    CHECK(cfg.res == 16);
    CHECK(cfg.eps.value() == doctest::Approx(0.05));
    CHECK(cfg.out_dir == "some/dir");
    CHECK(cfg.tol_residual_exact == doctest::Approx(1e-8));
    CHECK(cfg.sweep_samples == 12);

    CHECK_THROWS(apply_config_text(cfg, "no_equals_sign_here\n"));
    CHECK_THROWS(apply_config_text(cfg, "bogus.key = 1\n"));
}

TEST_CASE("custom profile specs") {
    RunConfig cfg;
    apply_config_text(cfg, R"(
surface.f.kind = zigzag
surface.f.slope = 2
surface.f.half_period = 0.5
surface.g.kind = sinusoid
surface.g.amplitude = 0.3
surface.g.period = 1.5
surface.theta = 0
)");
    const TranslationSurface surf = configured_surface(cfg);
    CHECK(surf.period_x() == doctest::Approx(1.0));
    CHECK(surf.period_y() == doctest::Approx(1.5));

    RunConfig bad;
    apply_config_text(bad, "surface.f.kind = zigzag\n");
    CHECK_THROWS(configured_surface(bad));
}

TEST_CASE("export writes one reference plus one file per mode") {
    const fs::path out = scratch_dir("sot_cli_export");
    RunConfig cfg;
    cfg.preset = "eggbox";
    cfg.mode = "all";
    cfg.res = 4;
    cfg.periods_x = cfg.periods_y = 3;
    cfg.out_dir = out.string();
    std::ostringstream log;
    CHECK(run_export(cfg, log) == 0);
    CHECK(fs::exists(out / "eggbox_reference.obj"));
    CHECK(fs::exists(out / "eggbox_stretch.obj"));
    CHECK(fs::exists(out / "eggbox_twist.obj"));
    CHECK(fs::exists(out / "eggbox_bend-oop.obj"));
    CHECK(fs::exists(out / "eggbox_bend-ip.obj"));
    size_t count = 0;
    for (auto& e : fs::directory_iterator(out)) {
        (void)e;
        ++count;
    }
    CHECK(count == 5);
    fs::remove_all(out);
}

TEST_CASE("export at zero amplitude reproduces the reference bytes") {
    const fs::path out = scratch_dir("sot_cli_eps0");
    RunConfig cfg;
    cfg.preset = "miura";
    cfg.mode = "twist";
    cfg.res = 2;
    cfg.periods_x = cfg.periods_y = 2;
    cfg.eps = 0.0;
    cfg.out_dir = out.string();
    std::ostringstream log;
    CHECK(run_export(cfg, log) == 0);
    CHECK(slurp(out / "miura_twist.obj") == slurp(out / "miura_reference.obj"));
    fs::remove_all(out);
}

TEST_CASE("identical configs give bit-identical outputs") {
    const fs::path out1 = scratch_dir("sot_cli_det1");
    const fs::path out2 = scratch_dir("sot_cli_det2");
    for (int pass = 0; pass < 2; ++pass) {
        RunConfig cfg;
        cfg.preset = "curved-crease-miura";
        cfg.mode = "bend-oop";
        cfg.res = 4;
        cfg.periods_x = cfg.periods_y = 3;
        cfg.format = "both";
        cfg.out_dir = (pass == 0 ? out1 : out2).string();
        std::ostringstream log;
        RunConfig sweep_cfg = cfg;
        sweep_cfg.sweep_lo = 0.6;
        sweep_cfg.sweep_hi = 0.9;
        sweep_cfg.sweep_samples = 7;
        sweep_cfg.preset = "morph";
        CHECK(run_export(cfg, log) == 0);
        CHECK(run_sweep(sweep_cfg, log) == 0);
    }
    for (const char* name :
         {"curved-crease-miura_reference.obj", "curved-crease-miura_bend-oop.obj",
          "curved-crease-miura_bend-oop.vtk", "sweep.csv"}) {
        CHECK(slurp(out1 / name) == slurp(out2 / name));
    }
    fs::remove_all(out1);
    fs::remove_all(out2);
}

TEST_CASE("verify command pass and fail") {
    RunConfig cfg;
    cfg.preset = "eggbox";
    cfg.mode = "twist";
    cfg.res = 4;
    cfg.periods_x = cfg.periods_y = 2;
    std::ostringstream log;
    CHECK(run_verify(cfg, log) == 0);
    CHECK(log.str().find("verify = pass") != std::string::npos);

    cfg.corrupt_w = 1.1;
    std::ostringstream log2;
    CHECK(run_verify(cfg, log2) != 0);
    CHECK(log2.str().find("FAIL") != std::string::npos);
}

TEST_CASE("verify runs the whole mode set") {
    RunConfig cfg;
    cfg.preset = "morph";
    cfg.theta = 0.5;
    cfg.mode = "all";
    cfg.res = 4;
    cfg.periods_x = cfg.periods_y = 2;
    std::ostringstream log;
    CHECK(run_verify(cfg, log) == 0);
    for (const char* m : {"twist", "stretch", "bend-s", "bend-p", "bend-pbar", "bend-oop"})
        CHECK(log.str().find(std::string("mode = ") + m) != std::string::npos);
}

TEST_CASE("verify passes on smooth presets regardless of the export resolution") {
    RunConfig cfg;
    cfg.preset = "curved-crease-miura";
    cfg.mode = "all";
    cfg.res = 4; // coarse export mesh; the edge check resolves curvature itself
    cfg.periods_x = cfg.periods_y = 2;
    std::ostringstream log;
    CHECK(run_verify(cfg, log) == 0);
}

TEST_CASE("sweep csv brackets the morph transition") {
    const fs::path out = scratch_dir("sot_cli_sweep");
    RunConfig cfg;
    cfg.preset = "morph";
    cfg.sweep_lo = 0.6;
    cfg.sweep_hi = 0.95;
    cfg.sweep_samples = 36;
    cfg.periods_x = cfg.periods_y = 4;
    cfg.out_dir = out.string();
    std::ostringstream log;
    CHECK(run_sweep(cfg, log) == 0);
    const std::string csv = slurp(out / "sweep.csv");
    CHECK(csv.rfind("theta,E11,E22,nu,kappa_x,kappa_y,curvature_ratio,transition", 0) == 0);

    // nu changes sign between the samples bracketing pi/4 and the bracketing
    // rows carry the transition flag
    std::istringstream is(csv);
    std::string line;
    std::getline(is, line); // header
    double prev_theta = 0.0, prev_nu = 0.0;
    bool saw_flip = false;
    bool flagged_near_flip = false;
    bool first = true;
    while (std::getline(is, line)) {
        std::istringstream row(line);
        std::string cell;
        std::vector<std::string> cells;
        while (std::getline(row, cell, ',')) cells.push_back(cell);
        REQUIRE(cells.size() == 8);
        const double th = std::stod(cells[0]);
        const double nu = std::stod(cells[3]);
        if (!first && prev_nu > 0.0 && nu < 0.0) {
            saw_flip = true;
            CHECK(prev_theta < M_PI / 4);
            CHECK(th > M_PI / 4);
        }
        if (cells[7] == "yes" && std::abs(th - M_PI / 4) < 0.02) flagged_near_flip = true;
        prev_theta = th;
        prev_nu = nu;
        first = false;
    }
    CHECK(saw_flip);
    CHECK(flagged_near_flip);
    fs::remove_all(out);
}

TEST_CASE("sweep endpoints reproduce the closed forms") {
    const fs::path out = scratch_dir("sot_cli_sweep2");
    RunConfig cfg;
    cfg.preset = "morph";
    cfg.sweep_lo = 0.0;
    cfg.sweep_hi = M_PI / 2;
    cfg.sweep_samples = 2;
    cfg.periods_x = cfg.periods_y = 4;
    cfg.out_dir = out.string();
    std::ostringstream log;
    CHECK(run_sweep(cfg, log) == 0);
    std::istringstream is(slurp(out / "sweep.csv"));
    std::string header, row0, row1;
    std::getline(is, header);
    std::getline(is, row0);
    std::getline(is, row1);
    // theta = 0: nu = <f'^2>/<g'^2> = 1; theta = pi/2: nu = -<f'^2> = -1
    auto nu_of = [](const std::string& line) {
        std::istringstream row(line);
        std::string cell;
        std::vector<std::string> cells;
        while (std::getline(row, cell, ',')) cells.push_back(cell);
        return std::stod(cells[3]);
    };
    CHECK(nu_of(row0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(nu_of(row1) == doctest::Approx(-1.0).epsilon(1e-12));
    fs::remove_all(out);
}

TEST_CASE("combine mode accepts inline weights") {
    const fs::path out = scratch_dir("sot_cli_combine");
    RunConfig cfg;
    cfg.preset = "eggbox";
    cfg.mode = "combine:-1,0,0"; // equals -(s), the out-of-plane mode here
    cfg.res = 2;
    cfg.periods_x = cfg.periods_y = 2;
    cfg.out_dir = out.string();
    std::ostringstream log;
    CHECK(run_export(cfg, log) == 0);
    CHECK(fs::exists(out / "eggbox_combine:-1,0,0.obj"));
    RunConfig bad = cfg;
    bad.mode = "combine:1,2";
    CHECK_THROWS(run_export(bad, log));
    fs::remove_all(out);
}

TEST_CASE("tube command writes a seam report and tube meshes") {
    const fs::path out = scratch_dir("sot_cli_tube");
    RunConfig cfg;
    cfg.tube = "square-zigzag";
    cfg.periods_x = 2;
    cfg.res = 4;
    cfg.out_dir = out.string();
    std::ostringstream log;
    CHECK(run_tube(cfg, log) == 0);
    const std::string rep = slurp(out / "tube_square-zigzag.txt");
    CHECK(rep.find("tube.twist.max_jump") != std::string::npos);
    CHECK(rep.find("tube.bend-pbar.max_jump") != std::string::npos);
    CHECK(fs::exists(out / "tube_square-zigzag_reference.obj"));
    CHECK(fs::exists(out / "tube_square-zigzag_twist.obj"));
    CHECK(fs::exists(out / "tube_square-zigzag_bend-pbar.obj"));
    fs::remove_all(out);
}
