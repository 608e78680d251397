#include "sot/surface.hpp"

#include "sot/isometry.hpp"

#include <cmath>
#include <stdexcept>

namespace sot {

namespace {

// materialization margin: one period (or one panel) beyond the working domain
double margin_for(const ProfileCurve& p, double span) {
    if (p.periodic()) return p.period();
    return 0.05 * span;
}

} // namespace

void validate_assumptions(const ProfileCurve& alpha, const ProfileCurve& beta, double theta) {
    if (!(theta >= 0.0 && theta <= M_PI / 2 + 1e-12))
        throw std::invalid_argument("theta must lie in [0, pi/2]");
    const double c = std::cos(theta), s = std::sin(theta);
    if (alpha.min_abs_rotated_tangent(1.0, 0.0) < 1e-9)
        throw std::invalid_argument(
            "assumption violated: profile tangent reaches the planes' intersection");
    if (beta.min_abs_rotated_tangent(c, s) < 1e-9)
        throw std::invalid_argument(
            "assumption violated: path tangent reaches the planes' intersection "
            "(critical inclination)");
}

TranslationSurface TranslationSurface::make(ProfileCurve alpha, ProfileCurve beta, double theta,
                                            Rect dom) {
    validate_assumptions(alpha, beta, theta);
    if (!(dom.x0 < dom.x1) || !(dom.y0 < dom.y1))
        throw std::invalid_argument("empty surface domain");

    TranslationSurface s;
    s.alpha_ = std::move(alpha);
    s.beta_ = std::move(beta);
    s.theta_ = theta;
    s.c_ = std::cos(theta);
    s.s_ = std::sin(theta);
    s.dom_ = dom;

    const double mx = margin_for(s.alpha_, dom.x1 - dom.x0);
    const double my = margin_for(s.beta_, dom.y1 - dom.y0);
    const double xlo = std::min(dom.x0 - mx, 0.0), xhi = std::max(dom.x1 + mx, s.alpha_.periodic() ? s.alpha_.period() : dom.x1 + mx);
    const double ylo = std::min(dom.y0 - my, 0.0), yhi = std::max(dom.y1 + my, s.beta_.periodic() ? s.beta_.period() : dom.y1 + my);

    s.a1_ = s.alpha_.tangent1_fn(xlo, xhi);
    s.a2_ = s.alpha_.tangent2_fn(xlo, xhi);
    const Fn d1 = s.beta_.tangent1_fn(ylo, yhi);
    const Fn d2 = s.beta_.tangent2_fn(ylo, yhi);
    // the path plane stays fixed while the frame rotates with the profile plane
    s.b1_ = s.c_ * d1 + s.s_ * d2;
    s.b2_ = (-s.s_) * d1 + s.c_ * d2;
    return s;
}

Vec3 TranslationSurface::position(double x, double y) const {
    if (!dom_.contains(x, y, 1e-9 * (1.0 + std::abs(x) + std::abs(y))))
        throw std::out_of_range("point outside surface domain");
    Vec3 pa, pb;
    if (alpha_.is_graph()) {
        const double f = alpha_.value(x);
        pa = Vec3(x, -s_ * f, c_ * f);
    } else {
        const Vec2 q = alpha_.point(x); // components along (e1, w-axis)
        pa = q.x() * frame_u() + q.y() * frame_w();
    }
    if (beta_.is_graph()) {
        pb = Vec3(0, y, beta_.value(y));
    } else {
        const Vec2 q = beta_.point(y); // components in the fixed (e2, e3) plane
        pb = Vec3(0, q.x(), q.y());
    }
    return pa + pb;
}

TangentCoeffs TranslationSurface::tangent_coefficients(double x, double y, Side side_x,
                                                       Side side_y) const {
    if (side_x == Side::Auto && alpha_.is_crease(x))
        throw std::domain_error("ambiguous crease derivative");
    if (side_y == Side::Auto && beta_.is_crease(y))
        throw std::domain_error("ambiguous crease derivative");
    TangentCoeffs tc;
    tc.a1 = a1_(x, side_x);
    tc.a2 = a2_(x, side_x);
    tc.b1 = b1_(y, side_y);
    tc.b2 = b2_(y, side_y);
    return tc;
}

Matrix2 TranslationSurface::metric(double x, double y, Side side_x, Side side_y) const {
    const TangentCoeffs t = tangent_coefficients(x, y, side_x, side_y);
    Matrix2 g;
    g << t.a1 * t.a1 + t.a2 * t.a2, t.a2 * t.b2, t.a2 * t.b2, t.b1 * t.b1 + t.b2 * t.b2;
    return g;
}

Matrix2 TranslationSurface::infinitesimal_strain(const DisplacementField& d, double x, double y,
                                                 Side side_x, Side side_y) const {
    const TangentCoeffs t = tangent_coefficients(x, y, side_x, side_y);
    const FieldPartials p = d.partials(x, y, side_x, side_y);
    Matrix2 e;
    const double exx = t.a1 * p.ux + t.a2 * p.wx;
    const double eyy = t.b1 * p.vy + t.b2 * p.wy;
    const double exy = t.a1 * p.uy + t.b1 * p.vx + t.a2 * p.wy + t.b2 * p.wx;
    e << 2.0 * exx, exy, exy, 2.0 * eyy;
    return e;
}

namespace {

std::vector<double> panel_lines(const ProfileCurve& p, double lo, double hi) {
    std::vector<double> lines = p.creases_in(lo, hi);
    auto push = [&](double t) {
        if (t >= lo - 1e-12 && t <= hi + 1e-12) lines.push_back(t);
    };
    push(lo);
    push(hi);
    if (p.periodic() && lines.size() < 3) {
        const double T = p.period();
        const long k0 = static_cast<long>(std::floor(lo / T));
        const long k1 = static_cast<long>(std::ceil(hi / T));
        for (long k = k0; k <= k1; ++k) push(static_cast<double>(k) * T);
    }
    std::sort(lines.begin(), lines.end());
    std::vector<double> out;
    for (double t : lines)
        if (out.empty() || t - out.back() > 1e-12 * std::max(1.0, std::abs(t))) out.push_back(t);
    return out;
}

} // namespace

std::vector<double> TranslationSurface::panel_lines_x() const {
    return panel_lines(alpha_, dom_.x0, dom_.x1);
}

std::vector<double> TranslationSurface::panel_lines_y() const {
    return panel_lines(beta_, dom_.y0, dom_.y1);
}

TranslationSurface TranslationSurface::preset(const std::string& name, std::optional<double> theta,
                                              int periods_x, int periods_y) {
    const double half_pi = M_PI / 2;
    ProfileCurve f = ProfileCurve::zigzag(1.0, 1.0);
    ProfileCurve g = ProfileCurve::zigzag(1.0, 1.0);
    double th = 0.0;
    if (name == "eggbox") {
        th = 0.0;
    } else if (name == "smooth-eggbox") {
        f = ProfileCurve::sinusoid(0.5, 2.0);
        g = ProfileCurve::sinusoid(0.5, 2.0);
        th = 0.0;
    } else if (name == "miura") {
        th = half_pi;
    } else if (name == "curved-crease-miura") {
        f = ProfileCurve::sinusoid(0.5, 2.0);
        th = half_pi;
    } else if (name == "morph") {
        if (!theta) throw std::invalid_argument("morph preset requires theta");
        th = *theta;
    } else if (name == "flat") {
        f = ProfileCurve::flat();
        g = ProfileCurve::flat();
        th = theta.value_or(0.0);
    } else {
        throw std::invalid_argument("unknown preset: " + name);
    }
    if (theta && name != "morph" && name != "flat") th = *theta;
    Rect dom{0.0, periods_x * f.period(), 0.0, periods_y * g.period()};
    return make(std::move(f), std::move(g), th, dom);
}

std::string TranslationSurface::describe() const {
    return "surface{alpha=" + alpha_.describe() + ", beta=" + beta_.describe() +
           ", theta=" + std::to_string(theta_) + "}";
}

} // namespace sot
