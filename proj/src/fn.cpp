#include "sot/fn.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <limits>
#include <stdexcept>

namespace sot {
namespace detail {

namespace {
constexpr double kCoeffEps = 0.0; // coefficients are kept exactly; only true zeros are pruned
} // namespace

Poly Poly::constant(double v) {
    Poly p;
    if (v != 0.0) p.c = {v};
    return p;
}

void Poly::trim() {
    while (!c.empty() && c.back() == kCoeffEps) c.pop_back();
}

double Poly::eval(double s) const {
    double r = 0.0;
    for (size_t i = c.size(); i-- > 0;) r = r * s + c[i];
    return r;
}

Poly Poly::derivative() const {
    Poly d;
    if (c.size() <= 1) return d;
    d.c.resize(c.size() - 1);
    for (size_t i = 1; i < c.size(); ++i) d.c[i - 1] = c[i] * static_cast<double>(i);
    d.trim();
    return d;
}

Poly Poly::antiderivative() const {
    Poly a;
    if (c.empty()) return a;
    a.c.resize(c.size() + 1);
    a.c[0] = 0.0;
    for (size_t i = 0; i < c.size(); ++i) a.c[i + 1] = c[i] / static_cast<double>(i + 1);
    a.trim();
    return a;
}

Poly Poly::shifted(double delta) const {
    // Synthetic division: repeatedly divides by (s - (-delta)).
    Poly r = *this;
    if (r.c.size() <= 1 || delta == 0.0) return r;
    const size_t n = r.c.size();
    for (size_t j = 0; j + 1 < n; ++j) {
        for (size_t i = n - 1; i > j; --i) r.c[i - 1] += delta * r.c[i];
    }
    r.trim();
    return r;
}

Poly& Poly::operator+=(const Poly& o) {
    if (o.c.size() > c.size()) c.resize(o.c.size(), 0.0);
    for (size_t i = 0; i < o.c.size(); ++i) c[i] += o.c[i];
    trim();
    return *this;
}

Poly& Poly::operator*=(double a) {
    if (a == 0.0) {
        c.clear();
        return *this;
    }
    for (double& x : c) x *= a;
    return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
    Poly r;
    if (a.zero() || b.zero()) return r;
    r.c.assign(a.c.size() + b.c.size() - 1, 0.0);
    for (size_t i = 0; i < a.c.size(); ++i)
        for (size_t j = 0; j < b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
    r.trim();
    return r;
}

TrigPoly TrigPoly::constant(double v) {
    TrigPoly t;
    t.base = Poly::constant(v);
    return t;
}

double TrigPoly::eval(double s) const {
    double r = base.eval(s);
    for (const Harmonic& h : harm) {
        const double a = static_cast<double>(h.k) * omega * s;
        r += h.cp.eval(s) * std::cos(a) + h.sp.eval(s) * std::sin(a);
    }
    return r;
}

void TrigPoly::add_harmonic(int k, Poly cp, Poly sp) {
    if (k == 0) {
        base += cp; // sin(0) term vanishes
        return;
    }
    if (k < 0) {
        k = -k;
        sp *= -1.0;
    }
    auto it = std::lower_bound(harm.begin(), harm.end(), k,
                               [](const Harmonic& h, int key) { return h.k < key; });
    if (it != harm.end() && it->k == k) {
        it->cp += cp;
        it->sp += sp;
    } else {
        harm.insert(it, Harmonic{k, std::move(cp), std::move(sp)});
    }
}

void TrigPoly::prune() {
    harm.erase(std::remove_if(harm.begin(), harm.end(),
                              [](const Harmonic& h) { return h.cp.zero() && h.sp.zero(); }),
               harm.end());
    if (harm.empty()) omega = 0.0;
}

bool TrigPoly::is_constant(double* value) const {
    if (!harm.empty()) return false;
    if (base.degree() > 0) return false;
    if (value) *value = base.c.empty() ? 0.0 : base.c[0];
    return true;
}

TrigPoly& TrigPoly::operator+=(const TrigPoly& o) {
    if (!o.harm.empty()) {
        if (harm.empty())
            omega = o.omega;
        else if (std::abs(omega - o.omega) > 1e-12 * std::max(std::abs(omega), std::abs(o.omega)))
            throw std::logic_error("trig frequency mismatch in sum");
    }
    base += o.base;
    for (const Harmonic& h : o.harm) add_harmonic(h.k, h.cp, h.sp);
    prune();
    return *this;
}

TrigPoly& TrigPoly::operator*=(double a) {
    base *= a;
    for (Harmonic& h : harm) {
        h.cp *= a;
        h.sp *= a;
    }
    prune();
    return *this;
}

TrigPoly TrigPoly::derivative() const {
    TrigPoly d;
    d.omega = omega;
    d.base = base.derivative();
    for (const Harmonic& h : harm) {
        const double a = static_cast<double>(h.k) * omega;
        Poly cp = h.cp.derivative();
        Poly sp_scaled = h.sp;
        sp_scaled *= a;
        cp += sp_scaled;
        Poly sp = h.sp.derivative();
        Poly cp_scaled = h.cp;
        cp_scaled *= -a;
        sp += cp_scaled;
        d.add_harmonic(h.k, std::move(cp), std::move(sp));
    }
    d.prune();
    return d;
}

TrigPoly TrigPoly::antiderivative() const {
    TrigPoly r;
    r.omega = omega;
    r.base = base.antiderivative();
    double at_zero = 0.0;
    for (const Harmonic& h : harm) {
        // Solve A_c' + a A_s = cp, A_s' - a A_c = sp by descending degree.
        const double a = static_cast<double>(h.k) * omega;
        const int deg = std::max(h.cp.degree(), h.sp.degree());
        if (deg < 0) continue;
        Poly ac, as;
        ac.c.assign(deg + 1, 0.0);
        as.c.assign(deg + 1, 0.0);
        auto coeff = [](const Poly& p, int j) {
            return j >= 0 && j < static_cast<int>(p.c.size()) ? p.c[j] : 0.0;
        };
        for (int j = deg; j >= 0; --j) {
            const double ac_up = j + 1 <= deg ? ac.c[j + 1] * (j + 1) : 0.0;
            const double as_up = j + 1 <= deg ? as.c[j + 1] * (j + 1) : 0.0;
            as.c[j] = (coeff(h.cp, j) - ac_up) / a;
            ac.c[j] = (as_up - coeff(h.sp, j)) / a;
        }
        ac.trim();
        as.trim();
        at_zero += ac.eval(0.0);
        r.add_harmonic(h.k, std::move(ac), std::move(as));
    }
    Poly cst = Poly::constant(-at_zero);
    r.base += cst;
    r.prune();
    return r;
}

TrigPoly TrigPoly::shifted(double delta) const {
    TrigPoly r;
    r.omega = omega;
    r.base = base.shifted(delta);
    for (const Harmonic& h : harm) {
        const double phi = static_cast<double>(h.k) * omega * delta;
        const double cph = std::cos(phi), sph = std::sin(phi);
        Poly cp_s = h.cp.shifted(delta);
        Poly sp_s = h.sp.shifted(delta);
        Poly cp = cp_s, sp = sp_s;
        cp *= cph;
        {
            Poly t = sp_s;
            t *= sph;
            cp += t;
        }
        sp *= cph;
        {
            Poly t = cp_s;
            t *= -sph;
            sp += t;
        }
        r.add_harmonic(h.k, std::move(cp), std::move(sp));
    }
    r.prune();
    return r;
}

bool TrigPoly::multiply(const TrigPoly& a, const TrigPoly& b, TrigPoly& out) {
    out = TrigPoly{};
    if (!a.harm.empty() && !b.harm.empty()) {
        if (std::abs(a.omega - b.omega) > 1e-12 * std::max(std::abs(a.omega), std::abs(b.omega)))
            return false;
        out.omega = a.omega;
    } else {
        out.omega = !a.harm.empty() ? a.omega : b.omega;
    }
    out.base = a.base * b.base;
    for (const auto& h : b.harm) out.add_harmonic(h.k, a.base * h.cp, a.base * h.sp);
    for (const auto& h : a.harm) out.add_harmonic(h.k, h.cp * b.base, h.sp * b.base);
    for (const auto& ha : a.harm) {
        for (const auto& hb : b.harm) {
            // product-to-sum on cos/sin pairs
            const int kd = ha.k - hb.k, ks = ha.k + hb.k;
            const Poly cc = ha.cp * hb.cp, cs = ha.cp * hb.sp, sc = ha.sp * hb.cp,
                       ss = ha.sp * hb.sp;
            auto scaled = [](Poly p, double f) {
                p *= f;
                return p;
            };
            // cos cos: 1/2 cos(kd) + 1/2 cos(ks)
            out.add_harmonic(kd, scaled(cc, 0.5), Poly{});
            out.add_harmonic(ks, scaled(cc, 0.5), Poly{});
            // cos sin: 1/2 sin(ks) - 1/2 sin(kd)
            out.add_harmonic(ks, Poly{}, scaled(cs, 0.5));
            out.add_harmonic(kd, Poly{}, scaled(cs, -0.5));
            // sin cos: 1/2 sin(ks) + 1/2 sin(kd)
            out.add_harmonic(ks, Poly{}, scaled(sc, 0.5));
            out.add_harmonic(kd, Poly{}, scaled(sc, 0.5));
            // sin sin: 1/2 cos(kd) - 1/2 cos(ks)
            out.add_harmonic(kd, scaled(ss, 0.5), Poly{});
            out.add_harmonic(ks, scaled(ss, -0.5), Poly{});
        }
    }
    out.prune();
    return true;
}

} // namespace detail

using detail::Poly;
using detail::TrigPoly;

namespace {

// 16-point Gauss-Legendre rule on [-1, 1].
constexpr int kGL = 16;
constexpr double kGLx[kGL] = {
    -0.98940093499164993260, -0.94457502307323257608, -0.86563120238783174388,
    -0.75540440835500303390, -0.61787624440264374845, -0.45801677765722738634,
    -0.28160355077925891323, -0.09501250983763744019, 0.09501250983763744019,
    0.28160355077925891323,  0.45801677765722738634,  0.61787624440264374845,
    0.75540440835500303390,  0.86563120238783174388,  0.94457502307323257608,
    0.98940093499164993260};
constexpr double kGLw[kGL] = {
    0.02715245941175409485, 0.06225352393864789286, 0.09515851168249278481,
    0.12462897125553387205, 0.14959598881657673208, 0.16915651939500253819,
    0.18260341504492358887, 0.18945061045506849629, 0.18945061045506849629,
    0.18260341504492358887, 0.16915651939500253819, 0.14959598881657673208,
    0.12462897125553387205, 0.09515851168249278481, 0.06225352393864789286,
    0.02715245941175409485};

} // namespace

class Fn::Impl {
public:
    enum class Kind { Polynomial, Piecewise, Numeric };

    virtual ~Impl() = default;
    virtual Kind kind() const = 0;
    virtual double value(double t, Side side) const = 0;
    virtual double deriv(double t, Side side) const = 0;
    virtual double lo() const = 0;
    virtual double hi() const = 0;
    virtual bool exact() const = 0;
};

namespace {

using Impl = Fn::Impl;
using ImplPtr = std::shared_ptr<const Impl>;

constexpr double kInf = std::numeric_limits<double>::infinity();

struct PolyImpl final : Impl {
    Poly p; // global coordinate

    explicit PolyImpl(Poly poly) : p(std::move(poly)) {}
    Kind kind() const override { return Kind::Polynomial; }
    double value(double t, Side) const override { return p.eval(t); }
    double deriv(double t, Side) const override { return p.derivative().eval(t); }
    double lo() const override { return -kInf; }
    double hi() const override { return kInf; }
    bool exact() const override { return true; }
};

struct PiecewiseImpl final : Impl {
    std::vector<double> knots;
    std::vector<TrigPoly> panels;
    double knot_tol = 0.0;

    PiecewiseImpl(std::vector<double> k, std::vector<TrigPoly> p)
        : knots(std::move(k)), panels(std::move(p)) {
        if (knots.size() != panels.size() + 1 || panels.empty())
            throw std::invalid_argument("piecewise function needs n+1 knots for n panels");
        knot_tol = 1e-12 * std::max(1.0, std::max(std::abs(knots.front()), std::abs(knots.back())));
    }

    Kind kind() const override { return Kind::Piecewise; }
    double lo() const override { return knots.front(); }
    double hi() const override { return knots.back(); }
    bool exact() const override { return true; }

    size_t locate(double t, Side side) const {
        if (t < knots.front() - knot_tol || t > knots.back() + knot_tol)
            throw std::out_of_range("function evaluated outside materialized domain");
        auto it = std::upper_bound(knots.begin(), knots.end(), t);
        size_t idx = it == knots.begin() ? 0 : static_cast<size_t>(it - knots.begin()) - 1;
        if (idx >= panels.size()) idx = panels.size() - 1;
        if (side == Side::Left && idx > 0 && std::abs(t - knots[idx]) <= knot_tol) --idx;
        return idx;
    }

    double value(double t, Side side) const override {
        const size_t i = locate(t, side);
        return panels[i].eval(t - knots[i]);
    }
    double deriv(double t, Side side) const override {
        const size_t i = locate(t, side);
        return panels[i].derivative().eval(t - knots[i]);
    }
};

struct NumericImpl final : Impl {
    std::function<double(double, Side)> val, der;
    std::vector<double> knots; // sorted breakpoints, >= 2 entries

    NumericImpl(std::function<double(double, Side)> v, std::function<double(double, Side)> d,
                std::vector<double> k)
        : val(std::move(v)), der(std::move(d)), knots(std::move(k)) {
        if (knots.size() < 2) throw std::invalid_argument("numeric function needs a domain");
    }

    Kind kind() const override { return Kind::Numeric; }
    double value(double t, Side side) const override { return val(t, side); }
    double deriv(double t, Side side) const override { return der(t, side); }
    double lo() const override { return knots.front(); }
    double hi() const override { return knots.back(); }
    bool exact() const override { return false; }
};

double gl_panel(const std::function<double(double, Side)>& f, double a, double b) {
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double s = 0.0;
    for (int i = 0; i < kGL; ++i) s += kGLw[i] * f(mid + half * kGLx[i], Side::Auto);
    return s * half;
}

// Quadrature-backed antiderivative: cumulative panel integrals are cached so
// that evaluation costs one partial-panel rule regardless of nesting depth.
struct NumericAntiderivative final : Impl {
    ImplPtr src;
    std::vector<double> knots;
    std::vector<double> prefix; // integral from anchor to each knot
    std::function<double(double, Side)> f;

    explicit NumericAntiderivative(ImplPtr s, std::vector<double> k)
        : src(std::move(s)), knots(std::move(k)) {
        f = [p = src](double t, Side side) { return p->value(t, side); };
        double anchor = 0.0;
        if (knots.front() > 0.0 || knots.back() < 0.0) anchor = knots.front();
        // make the anchor a knot
        auto it = std::lower_bound(knots.begin(), knots.end(), anchor);
        if (it == knots.end() || std::abs(*it - anchor) > 1e-12 * std::max(1.0, std::abs(anchor)))
            knots.insert(it, anchor);
        prefix.assign(knots.size(), 0.0);
        size_t ia = static_cast<size_t>(
            std::lower_bound(knots.begin(), knots.end(), anchor) - knots.begin());
        for (size_t i = ia; i + 1 < knots.size(); ++i)
            prefix[i + 1] = prefix[i] + gl_panel(f, knots[i], knots[i + 1]);
        for (size_t i = ia; i-- > 0;) prefix[i] = prefix[i + 1] - gl_panel(f, knots[i], knots[i + 1]);
    }

    Kind kind() const override { return Kind::Numeric; }
    double lo() const override { return knots.front(); }
    double hi() const override { return knots.back(); }
    bool exact() const override { return false; }

    double value(double t, Side) const override {
        if (t < knots.front() - 1e-12 || t > knots.back() + 1e-12)
            throw std::out_of_range("function evaluated outside materialized domain");
        auto it = std::upper_bound(knots.begin(), knots.end(), t);
        size_t idx = it == knots.begin() ? 0 : static_cast<size_t>(it - knots.begin()) - 1;
        if (idx + 1 >= knots.size()) idx = knots.size() - 2;
        return prefix[idx] + gl_panel(f, knots[idx], t);
    }
    double deriv(double t, Side side) const override { return src->value(t, side); }
};

std::vector<double> merge_knots(const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> m;
    m.reserve(a.size() + b.size());
    std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(m));
    const double tol = 1e-12 * std::max(1.0, std::max(std::abs(m.front()), std::abs(m.back())));
    std::vector<double> out;
    for (double t : m)
        if (out.empty() || t - out.back() > tol) out.push_back(t);
    return out;
}

std::vector<double> domain_knots(const Impl& f) {
    switch (f.kind()) {
        case Impl::Kind::Piecewise:
            return static_cast<const PiecewiseImpl&>(f).knots;
        case Impl::Kind::Numeric: {
            // both NumericImpl and NumericAntiderivative expose knots
            if (auto* n = dynamic_cast<const NumericImpl*>(&f)) return n->knots;
            if (auto* n = dynamic_cast<const NumericAntiderivative*>(&f)) return n->knots;
            break;
        }
        default:
            break;
    }
    return {};
}

ImplPtr make_poly(Poly p) { return std::make_shared<PolyImpl>(std::move(p)); }

ImplPtr numeric_binary(const ImplPtr& a, const ImplPtr& b, bool product) {
    std::vector<double> ka = domain_knots(*a), kb = domain_knots(*b);
    std::vector<double> knots;
    if (ka.empty())
        knots = kb;
    else if (kb.empty())
        knots = ka;
    else {
        const double lo = std::max(ka.front(), kb.front());
        const double hi = std::min(ka.back(), kb.back());
        if (!(lo < hi)) throw std::invalid_argument("function domains do not overlap");
        knots = merge_knots(ka, kb);
        knots.erase(std::remove_if(knots.begin(), knots.end(),
                                   [&](double t) { return t < lo - 1e-12 || t > hi + 1e-12; }),
                    knots.end());
    }
    if (product) {
        auto val = [a, b](double t, Side s) { return a->value(t, s) * b->value(t, s); };
        auto der = [a, b](double t, Side s) {
            return a->deriv(t, s) * b->value(t, s) + a->value(t, s) * b->deriv(t, s);
        };
        return std::make_shared<NumericImpl>(val, der, std::move(knots));
    }
    auto val = [a, b](double t, Side s) { return a->value(t, s) + b->value(t, s); };
    auto der = [a, b](double t, Side s) { return a->deriv(t, s) + b->deriv(t, s); };
    return std::make_shared<NumericImpl>(val, der, std::move(knots));
}

TrigPoly poly_on_panel(const Poly& global, double panel_start) {
    TrigPoly t;
    t.base = global.shifted(panel_start);
    return t;
}

// Re-express both operands on a merged panel grid, then combine panelwise.
ImplPtr piecewise_binary(const ImplPtr& ia, const ImplPtr& ib, bool product) {
    const auto kind_a = ia->kind(), kind_b = ib->kind();
    std::vector<double> knots;
    if (kind_a == Impl::Kind::Piecewise && kind_b == Impl::Kind::Piecewise) {
        const auto& A = static_cast<const PiecewiseImpl&>(*ia);
        const auto& B = static_cast<const PiecewiseImpl&>(*ib);
        const double lo = std::max(A.lo(), B.lo());
        const double hi = std::min(A.hi(), B.hi());
        if (!(lo < hi)) throw std::invalid_argument("function domains do not overlap");
        knots = merge_knots(A.knots, B.knots);
        knots.erase(std::remove_if(knots.begin(), knots.end(),
                                   [&](double t) { return t < lo - 1e-12 || t > hi + 1e-12; }),
                    knots.end());
    } else {
        knots = kind_a == Impl::Kind::Piecewise ? static_cast<const PiecewiseImpl&>(*ia).knots
                                                : static_cast<const PiecewiseImpl&>(*ib).knots;
    }

    auto segment_at = [](const Impl& f, double a) -> TrigPoly {
        if (f.kind() == Impl::Kind::Polynomial)
            return poly_on_panel(static_cast<const PolyImpl&>(f).p, a);
        const auto& W = static_cast<const PiecewiseImpl&>(f);
        auto it = std::upper_bound(W.knots.begin(), W.knots.end(), a + W.knot_tol);
        size_t idx = it == W.knots.begin() ? 0 : static_cast<size_t>(it - W.knots.begin()) - 1;
        if (idx >= W.panels.size()) idx = W.panels.size() - 1;
        return W.panels[idx].shifted(a - W.knots[idx]);
    };

    std::vector<TrigPoly> panels;
    panels.reserve(knots.size() - 1);
    for (size_t i = 0; i + 1 < knots.size(); ++i) {
        TrigPoly pa = segment_at(*ia, knots[i]);
        TrigPoly pb = segment_at(*ib, knots[i]);
        if (product) {
            TrigPoly out;
            if (!TrigPoly::multiply(pa, pb, out)) return numeric_binary(ia, ib, product);
            panels.push_back(std::move(out));
        } else {
            pa += pb;
            panels.push_back(std::move(pa));
        }
    }
    return std::make_shared<PiecewiseImpl>(std::move(knots), std::move(panels));
}

ImplPtr binary_op(const ImplPtr& a, const ImplPtr& b, bool product) {
    const auto ka = a->kind(), kb = b->kind();
    if (ka == Impl::Kind::Numeric || kb == Impl::Kind::Numeric)
        return numeric_binary(a, b, product);
    if (ka == Impl::Kind::Polynomial && kb == Impl::Kind::Polynomial) {
        const auto& pa = static_cast<const PolyImpl&>(*a).p;
        const auto& pb = static_cast<const PolyImpl&>(*b).p;
        if (product) return make_poly(pa * pb);
        Poly s = pa;
        s += pb;
        return make_poly(std::move(s));
    }
    return piecewise_binary(a, b, product);
}

ImplPtr scale_impl(const ImplPtr& f, double a) {
    switch (f->kind()) {
        case Impl::Kind::Polynomial: {
            Poly p = static_cast<const PolyImpl&>(*f).p;
            p *= a;
            return make_poly(std::move(p));
        }
        case Impl::Kind::Piecewise: {
            const auto& W = static_cast<const PiecewiseImpl&>(*f);
            std::vector<TrigPoly> panels = W.panels;
            for (auto& p : panels) p *= a;
            return std::make_shared<PiecewiseImpl>(W.knots, std::move(panels));
        }
        case Impl::Kind::Numeric: {
            auto val = [f, a](double t, Side s) { return a * f->value(t, s); };
            auto der = [f, a](double t, Side s) { return a * f->deriv(t, s); };
            return std::make_shared<NumericImpl>(val, der, domain_knots(*f));
        }
    }
    throw std::logic_error("unreachable");
}

ImplPtr antiderivative_impl(const ImplPtr& f) {
    switch (f->kind()) {
        case Impl::Kind::Polynomial:
            return make_poly(static_cast<const PolyImpl&>(*f).p.antiderivative());
        case Impl::Kind::Piecewise: {
            const auto& W = static_cast<const PiecewiseImpl&>(*f);
            std::vector<TrigPoly> panels;
            panels.reserve(W.panels.size());
            double cum = 0.0;
            std::vector<double> cums(W.panels.size());
            for (size_t i = 0; i < W.panels.size(); ++i) {
                cums[i] = cum;
                TrigPoly A = W.panels[i].antiderivative();
                cum += A.eval(W.knots[i + 1] - W.knots[i]);
                panels.push_back(std::move(A));
            }
            // anchor so the value at t = 0 (or at the left end if 0 is outside) is exactly zero
            double anchor = 0.0;
            if (W.knots.front() > 0.0 || W.knots.back() < 0.0) anchor = W.knots.front();
            auto it = std::upper_bound(W.knots.begin(), W.knots.end(), anchor);
            size_t ia = it == W.knots.begin() ? 0 : static_cast<size_t>(it - W.knots.begin()) - 1;
            if (ia >= panels.size()) ia = panels.size() - 1;
            const double at_anchor = cums[ia] + panels[ia].eval(anchor - W.knots[ia]);
            for (size_t i = 0; i < panels.size(); ++i) {
                Poly c = Poly::constant(cums[i] - at_anchor);
                TrigPoly shift;
                shift.base = std::move(c);
                panels[i] += shift;
            }
            return std::make_shared<PiecewiseImpl>(W.knots, std::move(panels));
        }
        case Impl::Kind::Numeric:
            return std::make_shared<NumericAntiderivative>(f, domain_knots(*f));
    }
    throw std::logic_error("unreachable");
}

} // namespace

Fn::Fn() : impl_(make_poly(Poly{})) {}

Fn Fn::constant(double v) { return Fn(make_poly(Poly::constant(v))); }

Fn Fn::linear(double slope, double intercept) {
    Poly p;
    p.c = {intercept, slope};
    p.trim();
    return Fn(make_poly(std::move(p)));
}

Fn Fn::piecewise(std::vector<double> knots, std::vector<detail::TrigPoly> panels) {
    return Fn(std::make_shared<PiecewiseImpl>(std::move(knots), std::move(panels)));
}

Fn Fn::numeric(std::function<double(double, Side)> value, std::function<double(double, Side)> deriv,
               std::vector<double> knots) {
    return Fn(std::make_shared<NumericImpl>(std::move(value), std::move(deriv), std::move(knots)));
}

double Fn::operator()(double t, Side side) const { return impl_->value(t, side); }
double Fn::deriv(double t, Side side) const { return impl_->deriv(t, side); }
double Fn::domain_lo() const { return impl_->lo(); }
double Fn::domain_hi() const { return impl_->hi(); }
bool Fn::exact() const { return impl_->exact(); }

Fn Fn::antiderivative() const { return Fn(antiderivative_impl(impl_)); }

double Fn::integral(double a, double b) const {
    Fn F = antiderivative();
    return F(b) - F(a);
}

double Fn::average(double period) const {
    if (!(period > 0.0)) throw std::invalid_argument("average undefined");
    return integral(0.0, period) / period;
}

Fn Fn::operator-() const { return Fn(scale_impl(impl_, -1.0)); }

Fn operator+(const Fn& a, const Fn& b) { return Fn(binary_op(a.impl_, b.impl_, false)); }
Fn operator-(const Fn& a, const Fn& b) { return a + (-b); }
Fn operator*(const Fn& a, const Fn& b) { return Fn(binary_op(a.impl_, b.impl_, true)); }
Fn operator*(double a, const Fn& b) { return Fn(scale_impl(b.impl_, a)); }

Fn Fn::divided_by(const Fn& den) const {
    const Impl& d = den.impl();
    if (d.kind() == Impl::Kind::Polynomial) {
        const Poly& p = static_cast<const PolyImpl&>(d).p;
        if (p.degree() == 0 && p.c[0] != 0.0) return (1.0 / p.c[0]) * (*this);
    }
    if (d.kind() == Impl::Kind::Piecewise) {
        const auto& W = static_cast<const PiecewiseImpl&>(d);
        bool all_const = true;
        std::vector<double> vals(W.panels.size());
        for (size_t i = 0; i < W.panels.size(); ++i) {
            if (!W.panels[i].is_constant(&vals[i]) || vals[i] == 0.0) {
                all_const = false;
                break;
            }
        }
        if (all_const) {
            Fn recip = Fn::piecewise(W.knots, [&] {
                std::vector<TrigPoly> ps(vals.size());
                for (size_t i = 0; i < vals.size(); ++i) ps[i] = TrigPoly::constant(1.0 / vals[i]);
                return ps;
            }());
            return (*this) * recip;
        }
    }
    auto num = impl_;
    auto denp = den.impl_;
    std::vector<double> ka = domain_knots(*num), kb = domain_knots(*denp);
    std::vector<double> knots = ka.empty() ? kb : (kb.empty() ? ka : merge_knots(ka, kb));
    if (knots.empty()) throw std::invalid_argument("quotient of unbounded functions needs breakpoints");
    auto val = [num, denp](double t, Side s) { return num->value(t, s) / denp->value(t, s); };
    auto der = [num, denp](double t, Side s) {
        const double n = num->value(t, s), d2 = denp->value(t, s);
        return (num->deriv(t, s) * d2 - n * denp->deriv(t, s)) / (d2 * d2);
    };
    return Fn(std::make_shared<NumericImpl>(val, der, std::move(knots)));
}

} // namespace sot
