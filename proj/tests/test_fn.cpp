#include "sot/fn.hpp"

#include "oracles.hpp"

#include <cmath>
#include <doctest.h>

using sot::Fn;
using sot::Side;
using sot::detail::Poly;
using sot::detail::TrigPoly;

namespace {

// square-wave panels on [-4, 4]: +1 on [2k, 2k+1), -1 otherwise
Fn square_wave() {
    std::vector<double> knots;
    std::vector<TrigPoly> panels;
    for (int k = -4; k <= 4; ++k) knots.push_back(static_cast<double>(k));
    for (int k = -4; k < 4; ++k) panels.push_back(TrigPoly::constant(k % 2 == 0 ? 1.0 : -1.0));
    return Fn::piecewise(knots, panels);
}

Fn cosine(double omega, double lo, double hi) {
    // cos(omega t) over [lo, hi], one panel per quarter period
    std::vector<double> knots;
    const double step = M_PI / (2.0 * omega);
    double t = lo;
    while (t < hi - 1e-12) {
        knots.push_back(t);
        t += step;
    }
    knots.push_back(hi);
    std::vector<TrigPoly> panels;
    for (size_t i = 0; i + 1 < knots.size(); ++i) {
        TrigPoly seg;
        seg.omega = omega;
        const double wa = omega * knots[i];
        seg.add_harmonic(1, Poly::constant(std::cos(wa)), Poly::constant(-std::sin(wa)));
        panels.push_back(seg);
    }
    return Fn::piecewise(knots, panels);
}

} // namespace

TEST_CASE("polynomial algebra") {
    const Fn f = Fn::linear(2.0, 1.0); // 2t + 1
    CHECK(f(3.0) == doctest::Approx(7.0));
    CHECK(f.deriv(5.0) == doctest::Approx(2.0));
    const Fn g = f * f;
    CHECK(g(2.0) == doctest::Approx(25.0));
    const Fn G = g.antiderivative();
    CHECK(G(0.0) == 0.0);
    // int (2t+1)^2 = (2t+1)^3/6 - 1/6
    CHECK(G(1.0) == doctest::Approx(27.0 / 6.0 - 1.0 / 6.0));
}

TEST_CASE("piecewise antiderivative is continuous and anchored") {
    const Fn sq = square_wave();
    const Fn F = sq.antiderivative();
    CHECK(F(0.0) == 0.0);
    CHECK(F(1.0) == doctest::Approx(1.0));
    CHECK(F(2.0) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(F(-1.0) == doctest::Approx(1.0)); // integrand is -1 on [-1,0)
    // continuity at the jump
    CHECK(F(1.0, Side::Left) == doctest::Approx(F(1.0, Side::Right)).epsilon(1e-15));
    // derivative recovers the one-sided integrand
    CHECK(F.deriv(1.0, Side::Left) == doctest::Approx(1.0));
    CHECK(F.deriv(1.0, Side::Right) == doctest::Approx(-1.0));
}

TEST_CASE("trig antiderivative matches calculus") {
    const Fn c = cosine(1.0, -0.5, 2.0 * M_PI + 0.5);
    const Fn S = c.antiderivative();
    CHECK(S(M_PI) == doctest::Approx(std::sin(M_PI)).epsilon(1e-14));
    CHECK(S(1.3) == doctest::Approx(std::sin(1.3)).epsilon(1e-14));
    CHECK(S(0.0) == 0.0);
    // derivative of the antiderivative gives back the integrand
    CHECK(S.deriv(0.7) == doctest::Approx(std::cos(0.7)).epsilon(1e-14));
}

TEST_CASE("products against a quadrature oracle across breaks") {
    const Fn sq = square_wave();
    const Fn lin = Fn::linear(1.0, 0.0);
    const Fn prod = sq * lin; // t * square(t)
    const Fn F = prod.antiderivative();
    oracle::Rng rng(42);
    auto raw = [&](double t) { return prod(t); };
    std::vector<double> breaks;
    for (int k = -4; k <= 4; ++k) breaks.push_back(k);
    double max_scale = 4.0;
    for (int trial = 0; trial < 20; ++trial) {
        const double a = rng.uniform(-3.9, 3.9);
        const double b = rng.uniform(-3.9, 3.9);
        const double want = oracle::integrate(raw, a, b, breaks);
        CHECK(F(b) - F(a) == doctest::Approx(want).epsilon(1e-10 * std::abs(b - a) * max_scale + 1e-12));
    }
}

TEST_CASE("antiderivative is linear in the integrand") {
    const Fn sq = square_wave();
    const Fn c = cosine(M_PI, -4.0, 4.0);
    const Fn combo = (2.5 * sq + (-1.25) * c).antiderivative();
    const Fn separate_a = sq.antiderivative();
    const Fn separate_b = c.antiderivative();
    oracle::Rng rng(7);
    for (int trial = 0; trial < 25; ++trial) {
        const double t = rng.uniform(-3.9, 3.9);
        const double split = 2.5 * separate_a(t) - 1.25 * separate_b(t);
        CHECK(combo(t) == doctest::Approx(split).epsilon(1e-12));
    }
}

TEST_CASE("panel-constant division is exact") {
    const Fn sq = square_wave();
    const Fn one = Fn::constant(1.0);
    const Fn recip = one.divided_by(sq); // also +-1
    CHECK(recip(0.5) == doctest::Approx(1.0));
    CHECK(recip(1.5) == doctest::Approx(-1.0));
    CHECK(recip.exact());
}

TEST_CASE("generic division falls back to quadrature-backed evaluation") {
    const Fn c = cosine(1.0, 0.1, 1.4); // stays positive, away from zeros
    const Fn one = Fn::constant(1.0);
    const Fn sec = one.divided_by(2.0 * one + c); // 1/(2 + cos)
    CHECK_FALSE(sec.exact());
    CHECK(sec(0.5) == doctest::Approx(1.0 / (2.0 + std::cos(0.5))).epsilon(1e-14));
    const Fn F = sec.antiderivative();
    const double want = oracle::integrate([](double t) { return 1.0 / (2.0 + std::cos(t)); }, 0.2, 1.3);
    CHECK(F(1.3) - F(0.2) == doctest::Approx(want).epsilon(1e-12));
    // derivative of a quadrature-backed antiderivative is still the integrand
    CHECK(F.deriv(0.8) == doctest::Approx(sec(0.8)).epsilon(1e-14));
}

TEST_CASE("average over a period and window invariance") {
    const Fn sq = square_wave();
    const Fn sq2 = sq * sq; // identically 1
    CHECK(sq2.average(2.0) == doctest::Approx(1.0));
    const Fn c = cosine(M_PI, -4.0, 4.0);
    const Fn c2 = c * c;
    CHECK(c2.average(2.0) == doctest::Approx(0.5).epsilon(1e-14));
    // translation invariance of the window
    const Fn F = c2.antiderivative();
    oracle::Rng rng(3);
    for (int trial = 0; trial < 10; ++trial) {
        const double a = rng.uniform(-1.5, 1.5);
        CHECK((F(a + 2.0) - F(a)) / 2.0 == doctest::Approx(0.5).epsilon(1e-10));
    }
}

TEST_CASE("zero function edge cases") {
    const Fn z;
    CHECK(z(0.3) == 0.0);
    const Fn Z = z.antiderivative();
    CHECK(Z(123.0) == 0.0);
    CHECK(z.exact());
}

TEST_CASE("averaging without a period is an error") {
    CHECK_THROWS_WITH(Fn::constant(1.0).average(0.0), "average undefined");
    CHECK_THROWS_WITH(Fn::constant(1.0).average(-2.0), "average undefined");
}
