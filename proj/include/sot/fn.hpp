#ifndef SOT_FN_HPP
#define SOT_FN_HPP

#include <functional>
#include <memory>
#include <vector>

namespace sot {

/// One-sided evaluation selector for points sitting on a crease.
/// Auto resolves to the right-sided limit.
enum class Side { Left, Right, Auto };

namespace detail {

// Dense polynomial in a local panel coordinate, ascending coefficients.
struct Poly {
    std::vector<double> c;

    Poly() = default;
    explicit Poly(std::vector<double> coeffs) : c(std::move(coeffs)) { trim(); }
    static Poly constant(double v);

    double eval(double s) const;
    int degree() const { return static_cast<int>(c.size()) - 1; }
    bool zero() const { return c.empty(); }
    void trim();

    Poly derivative() const;
    Poly antiderivative() const;     // vanishes at s = 0
    Poly shifted(double delta) const; // p(s + delta) as a poly in s

    Poly& operator+=(const Poly& o);
    Poly& operator*=(double a);
    friend Poly operator*(const Poly& a, const Poly& b);
};

// Trigonometric polynomial on one panel:
//   base(s) + sum_k [ cp_k(s) cos(k w s) + sp_k(s) sin(k w s) ]
// Closed under sum, product and integration, which is what keeps the
// nested-integral solution trees exact for the piecewise-linear and
// sinusoidal profile families.
struct TrigPoly {
    Poly base;
    double omega = 0.0;
    struct Harmonic {
        int k = 0;
        Poly cp, sp;
    };
    std::vector<Harmonic> harm; // sorted by k, k >= 1

    static TrigPoly constant(double v);

    double eval(double s) const;
    TrigPoly derivative() const;
    TrigPoly antiderivative() const; // vanishes at s = 0
    TrigPoly shifted(double delta) const;

    bool is_constant(double* value) const;
    void add_harmonic(int k, Poly cp, Poly sp);
    void prune();

    TrigPoly& operator+=(const TrigPoly& o);
    TrigPoly& operator*=(double a);

    // Returns false when the operands carry incompatible frequencies.
    static bool multiply(const TrigPoly& a, const TrigPoly& b, TrigPoly& out);
};

} // namespace detail

/// Immutable real function of one variable with exact one-sided values and
/// derivatives, closed under +, -, *, scalar multiple, division and
/// antidifferentiation. Antiderivatives are anchored at t = 0 and stay
/// continuous across panel breaks even when the integrand jumps.
///
/// Piecewise trig-polynomial panels are used whenever the operands allow it;
/// otherwise the function degrades to a quadrature-backed evaluator
/// (composite 16-point Gauss-Legendre per panel).
class Fn {
public:
    Fn(); // identically zero

    double operator()(double t, Side side = Side::Auto) const;
    double deriv(double t, Side side = Side::Auto) const;

    /// F with F' = this and F(0) = 0 (F(lo) = 0 if 0 is outside the domain).
    Fn antiderivative() const;

    /// Integral over [a, b].
    double integral(double a, double b) const;

    /// Mean value over [0, period].
    double average(double period) const;

    bool exact() const;
    double domain_lo() const;
    double domain_hi() const;

    Fn operator-() const;
    friend Fn operator+(const Fn& a, const Fn& b);
    friend Fn operator-(const Fn& a, const Fn& b);
    friend Fn operator*(const Fn& a, const Fn& b);
    friend Fn operator*(double a, const Fn& b);

    /// Pointwise quotient. Exact when the divisor is constant on every
    /// panel; falls back to quadrature-backed evaluation otherwise.
    Fn divided_by(const Fn& den) const;

    static Fn constant(double v);
    static Fn linear(double slope, double intercept = 0.0); // slope*t + intercept

    /// Piecewise trig-polynomial over the given panel boundaries.
    /// knots must be strictly increasing with panels.size() == knots.size()-1;
    /// each panel polynomial lives in the local coordinate t - knots[i].
    static Fn piecewise(std::vector<double> knots, std::vector<detail::TrigPoly> panels);

    /// Generic evaluator with known one-sided derivative and breakpoints.
    static Fn numeric(std::function<double(double, Side)> value,
                      std::function<double(double, Side)> deriv,
                      std::vector<double> knots);

    class Impl;
    explicit Fn(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
    const Impl& impl() const { return *impl_; }

private:
    std::shared_ptr<const Impl> impl_;
};

} // namespace sot

#endif
