#include "sot/effective.hpp"

#include "oracles.hpp"

#include <cmath>
#include <doctest.h>

using namespace sot;

TEST_CASE("effective strain of the classic patterns") {
    const TranslationSurface eggbox = TranslationSurface::preset("eggbox", std::nullopt, 4, 4);
    const EffectiveProps pe = effective_strain(eggbox);
    CHECK(pe.E(0, 0) == doctest::Approx(-1.0));
    CHECK(pe.E(1, 1) == doctest::Approx(1.0));
    CHECK(pe.E(0, 1) == 0.0);
    CHECK(poisson(eggbox) == doctest::Approx(1.0));

    const TranslationSurface miura = TranslationSurface::preset("miura", std::nullopt, 4, 4);
    const EffectiveProps pm = effective_strain(miura);
    CHECK(pm.E(0, 0) == doctest::Approx(-1.0));
    CHECK(pm.E(1, 1) == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(poisson(miura) == doctest::Approx(-1.0));

    const TranslationSurface flat = TranslationSurface::make(
        ProfileCurve::flat(), ProfileCurve::flat(), 0.0, Rect{0, 4, 0, 4});
    const EffectiveProps pf = effective_strain(flat);
    CHECK(pf.E(0, 0) == 0.0);
    CHECK(pf.E(1, 1) == doctest::Approx(0.0));
}

TEST_CASE("slope-m zigzags give nu = mf^2/mg^2 at flat inclination") {
    const ProfileCurve f = ProfileCurve::zigzag(1.5, 1.0);
    const ProfileCurve g = ProfileCurve::zigzag(0.5, 1.0);
    const TranslationSurface s = TranslationSurface::make(f, g, 0.0, Rect{0, 8, 0, 8});
    CHECK(poisson(s) == doctest::Approx(1.5 * 1.5 / 0.25));
    // against a quadrature oracle for the averages
    const double mf2 = oracle::integrate([&](double t) { return std::pow(f.derivative(t, Side::Right), 2); }, 0.0, 2.0, {1.0}) / 2.0;
    const double mg2 = oracle::integrate([&](double t) { return std::pow(g.derivative(t, Side::Right), 2); }, 0.0, 2.0, {1.0}) / 2.0;
    CHECK(poisson(s) == doctest::Approx(mf2 / mg2));
}

TEST_CASE("critical inclination") {
    CHECK(critical_theta(ProfileCurve::zigzag(1.0, 1.0)) == doctest::Approx(M_PI / 4).epsilon(1e-10));
    CHECK(critical_theta(ProfileCurve::zigzag(2.0, 1.0)) ==
          doctest::Approx(std::atan(0.5)).epsilon(1e-10));
    CHECK_THROWS_WITH(critical_theta(ProfileCurve::flat()), "no transition");
    // ascending-only sampled path: slope never negative
    CHECK_THROWS_WITH(critical_theta(ProfileCurve::sampled({0.0, 1.0, 2.0}, {0.0, 0.5, 1.5})),
                      "no transition");
    // sinusoid: slopes reach -2 pi A / L
    const double m = 2.0 * M_PI * 0.5 / 2.0;
    CHECK(critical_theta(ProfileCurve::sinusoid(0.5, 2.0)) ==
          doctest::Approx(std::atan(1.0 / m)).epsilon(1e-9));
}

TEST_CASE("poisson changes sign across the morph transition") {
    double last_nu = 0.0;
    for (double th : {M_PI / 4 - 0.05, M_PI / 4 - 0.02}) {
        const TranslationSurface s = TranslationSurface::preset("morph", th, 4, 4);
        last_nu = poisson(s);
        CHECK(last_nu > 0.0);
    }
    for (double th : {M_PI / 4 + 0.02, M_PI / 4 + 0.05}) {
        const TranslationSurface s = TranslationSurface::preset("morph", th, 4, 4);
        CHECK(poisson(s) < 0.0);
    }
}

TEST_CASE("effective strain matches the fitted growth of the stretch mode") {
    for (const char* name : {"eggbox", "miura", "curved-crease-miura", "smooth-eggbox"}) {
        const TranslationSurface s = TranslationSurface::preset(name, std::nullopt, 3, 3);
        const EffectiveProps p = effective_strain(s);
        const Eigen::Vector2d fit = stretch_growth_fit(s, stretch_mode(s), 3, 3);
        INFO(name);
        CHECK(std::abs(fit(0) - p.E(0, 0)) < 1e-6);
        CHECK(std::abs(fit(1) - p.E(1, 1)) < 1e-6);
    }
    const TranslationSurface morph = TranslationSurface::preset("morph", M_PI / 6, 3, 3);
    const EffectiveProps p = effective_strain(morph);
    const Eigen::Vector2d fit = stretch_growth_fit(morph, stretch_mode(morph), 3, 3);
    CHECK(std::abs(fit(0) - p.E(0, 0)) < 1e-6);
    CHECK(std::abs(fit(1) - p.E(1, 1)) < 1e-6);
}

TEST_CASE("quadratic fit of the out-of-plane component") {
    const TranslationSurface eggbox = TranslationSurface::preset("eggbox", std::nullopt, 4, 4);

    SUBCASE("twist is dominated by the mixed term") {
        const QuadraticFit fit = fit_quadratic_out_of_plane(twist_mode(eggbox), eggbox, 4, 4);
        CHECK(std::abs(fit.cxy) > 0.5);
        CHECK(std::abs(fit.cxx) < 1e-8 * std::abs(fit.cxy));
        CHECK(std::abs(fit.cyy) < 1e-8 * std::abs(fit.cxy));
    }
    SUBCASE("stretch has no quadratic content") {
        const QuadraticFit fit = fit_quadratic_out_of_plane(stretch_mode(eggbox), eggbox, 4, 4);
        // the out-of-plane part of stretch is periodic here, so the linear
        // coefficients themselves are tiny; normalize by the unit strain scale
        const double lin = std::max({std::abs(fit.cx), std::abs(fit.cy), 1.0});
        CHECK(std::abs(fit.cxx) < 1e-8 * lin);
        CHECK(std::abs(fit.cyy) < 1e-8 * lin);
        CHECK(std::abs(fit.cxy) < 1e-8 * lin);
    }
    SUBCASE("curvature ratio of the bending combination equals nu") {
        for (const char* name : {"eggbox", "miura"}) {
            const TranslationSurface s = TranslationSurface::preset(name, std::nullopt, 4, 4);
            const QuadraticFit fit = fit_quadratic_out_of_plane(out_of_plane_bend(s), s, 4, 4);
            CHECK(fit.cxx / fit.cyy == doctest::Approx(poisson(s)).epsilon(1e-6));
        }
        const TranslationSurface morph = TranslationSurface::preset("morph", M_PI / 6, 4, 4);
        const QuadraticFit fit = fit_quadratic_out_of_plane(out_of_plane_bend(morph), morph, 4, 4);
        CHECK(fit.cxx / fit.cyy == doctest::Approx(poisson(morph)).epsilon(1e-6));
    }
    SUBCASE("secular residual separates the combination from a raw candidate") {
        const QuadraticFit good = fit_quadratic_out_of_plane(out_of_plane_bend(eggbox), eggbox, 4, 4);
        CHECK(good.secular_residual < 1e-6);
        const QuadraticFit bad = fit_quadratic_out_of_plane(bend_p(eggbox), eggbox, 4, 4);
        CHECK(bad.secular_residual > 1e-2);
    }
    SUBCASE("too few cells") {
        CHECK_THROWS_WITH(fit_quadratic_out_of_plane(twist_mode(eggbox), eggbox, 2, 4),
                          "insufficient support for fit");
    }
}

TEST_CASE("fit is invariant under shifting the sampling window by one period") {
    const ProfileCurve zig = ProfileCurve::zigzag(1.0, 1.0);
    const TranslationSurface a = TranslationSurface::make(zig, zig, 0.0, Rect{0, 8, 0, 8});
    const TranslationSurface b = TranslationSurface::make(zig, zig, 0.0, Rect{2, 10, 2, 10});
    const QuadraticFit fa = fit_quadratic_out_of_plane(out_of_plane_bend(a), a, 3, 3);
    const QuadraticFit fb = fit_quadratic_out_of_plane(out_of_plane_bend(b), b, 3, 3);
    CHECK(fa.cxx == doctest::Approx(fb.cxx).epsilon(1e-9));
    CHECK(fa.cyy == doctest::Approx(fb.cyy).epsilon(1e-9));
    CHECK(fa.cxy == doctest::Approx(fb.cxy).epsilon(1e-9));
}

TEST_CASE("poisson is undefined when the transverse strain vanishes") {
    const TranslationSurface flat = TranslationSurface::make(
        ProfileCurve::flat(), ProfileCurve::flat(), 0.0, Rect{0, 4, 0, 4});
    CHECK_THROWS_WITH(poisson(flat), "Poisson undefined at transition");
}

TEST_CASE("effective properties of a quadrature-backed surface") {
    const ProfileCurve f = ProfileCurve::sinusoid(0.3, 2.0);
    const ProfileCurve g = ProfileCurve::sinusoid(0.3, 2.0);
    const TranslationSurface surf = TranslationSurface::make(f, g, M_PI / 6, Rect{0, 8, 0, 8});
    const EffectiveProps p = effective_strain(surf);
    // E11 = -<f'^2> for any graph profile
    CHECK(p.E(0, 0) == doctest::Approx(-0.5 * std::pow(0.3 * M_PI, 2)).epsilon(1e-10));
    const Eigen::Vector2d fit = stretch_growth_fit(surf, stretch_mode(surf), 3, 3);
    CHECK(std::abs(fit(0) - p.E(0, 0)) < 1e-6);
    CHECK(std::abs(fit(1) - p.E(1, 1)) < 1e-6);
    const QuadraticFit qf = fit_quadratic_out_of_plane(out_of_plane_bend(surf), surf, 4, 4);
    CHECK(qf.cxx / qf.cyy == doctest::Approx(poisson(surf)).epsilon(1e-6));
    CHECK(qf.secular_residual < 1e-6);
}

TEST_CASE("aperiodic surfaces are rejected") {
    const ProfileCurve ramp = ProfileCurve::sampled({0.0, 1.0, 2.0}, {0.0, 0.3, 0.1});
    const TranslationSurface s = TranslationSurface::make(
        ramp, ProfileCurve::zigzag(1.0, 1.0), 0.0, Rect{0, 2, 0, 4});
    CHECK_THROWS(effective_strain(s));
    CHECK_THROWS(out_of_plane_bend(s));
}
