#include "sot/isometry.hpp"

#include "cellfit.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

namespace sot {

void Fn2::add_scaled(double a, const Fn2& other) {
    for (const Term& t : other.terms_) terms_.push_back({a * t.X, t.Y});
}

double Fn2::value(double x, double y, Side sx, Side sy) const {
    double r = 0.0;
    for (const Term& t : terms_) r += t.X(x, sx) * t.Y(y, sy);
    return r;
}

double Fn2::dx(double x, double y, Side sx, Side sy) const {
    double r = 0.0;
    for (const Term& t : terms_) r += t.X.deriv(x, sx) * t.Y(y, sy);
    return r;
}

double Fn2::dy(double x, double y, Side sx, Side sy) const {
    double r = 0.0;
    for (const Term& t : terms_) r += t.X(x, sx) * t.Y.deriv(y, sy);
    return r;
}

Fn2 Fn2::scaled(double a) const {
    Fn2 r;
    r.add_scaled(a, *this);
    return r;
}

bool Fn2::exact() const {
    for (const Term& t : terms_)
        if (!t.X.exact() || !t.Y.exact()) return false;
    return true;
}

std::string mode_name(Mode m) {
    switch (m) {
        case Mode::Twist: return "twist";
        case Mode::Stretch: return "stretch";
        case Mode::BendS: return "bend-s";
        case Mode::BendP: return "bend-p";
        case Mode::BendPbar: return "bend-pbar";
        case Mode::Combination: return "combination";
        case Mode::Custom: return "custom";
    }
    return "?";
}

DisplacementField::DisplacementField(Fn2 u, Fn2 v, Fn2 w, Mode mode, Vec3 frame_u, Vec3 frame_v,
                                     Vec3 frame_w)
    : u_(std::move(u)), v_(std::move(v)), w_(std::move(w)), mode_(mode), fu_(frame_u),
      fv_(frame_v), fw_(frame_w) {}

FieldPartials DisplacementField::partials(double x, double y, Side sx, Side sy) const {
    FieldPartials p;
    p.u = u_.value(x, y, sx, sy);
    p.v = v_.value(x, y, sx, sy);
    p.w = w_.value(x, y, sx, sy);
    p.ux = u_.dx(x, y, sx, sy);
    p.uy = u_.dy(x, y, sx, sy);
    p.vx = v_.dx(x, y, sx, sy);
    p.vy = v_.dy(x, y, sx, sy);
    p.wx = w_.dx(x, y, sx, sy);
    p.wy = w_.dy(x, y, sx, sy);
    return p;
}

Vec3 DisplacementField::adapted(double x, double y, Side sx, Side sy) const {
    return Vec3(u_.value(x, y, sx, sy), v_.value(x, y, sx, sy), w_.value(x, y, sx, sy));
}

Vec3 DisplacementField::canonical(double x, double y, Side sx, Side sy) const {
    const Vec3 a = adapted(x, y, sx, sy);
    return a.x() * fu_ + a.y() * fv_ + a.z() * fw_;
}

DisplacementField DisplacementField::scaled(double a) const {
    DisplacementField f(u_.scaled(a), v_.scaled(a), w_.scaled(a), mode_, fu_, fv_, fw_);
    f.amplitude_ = amplitude_ * a;
    return f;
}

DisplacementField DisplacementField::with_w_scaled(double factor) const {
    DisplacementField f(u_, v_, w_.scaled(factor), mode_, fu_, fv_, fw_);
    f.amplitude_ = amplitude_;
    return f;
}

namespace {

// Antiderivative chains shared by all solution formulas. Everything is
// anchored at 0 so the chains agree across modes.
struct SolutionKit {
    Fn a1, a2, b1, b2;
    Fn A1, A2, B1, B2;     // plain antiderivatives
    Fn ra, rb;             // a2^2/a1, b2^2/b1
    Fn Qa, Qb;             // their antiderivatives
    Fn Wa, Wb;             // int(a1 A2 - a2 A1), int(b1 B2 - b2 B1)
    Fn Ua, Ub;             // int(a1 Qa - a2 A2), int(b1 Qb - b2 B2)
    Fn Pa, Pb;             // int(a2 Qa - ra A2), int(b2 Qb - rb B2)
    Fn Sa, Sb;             // int(a2 A2 - ra A1), int(b2 B2 - rb B1)

    explicit SolutionKit(const TranslationSurface& s) {
        a1 = s.a1();
        a2 = s.a2();
        b1 = s.b1();
        b2 = s.b2();
        A1 = a1.antiderivative();
        A2 = a2.antiderivative();
        B1 = b1.antiderivative();
        B2 = b2.antiderivative();
        ra = (a2 * a2).divided_by(a1);
        rb = (b2 * b2).divided_by(b1);
        Qa = ra.antiderivative();
        Qb = rb.antiderivative();
        Wa = (a1 * A2 - a2 * A1).antiderivative();
        Wb = (b1 * B2 - b2 * B1).antiderivative();
        Ua = (a1 * Qa - a2 * A2).antiderivative();
        Ub = (b1 * Qb - b2 * B2).antiderivative();
        Pa = (a2 * Qa - ra * A2).antiderivative();
        Pb = (b2 * Qb - rb * B2).antiderivative();
        Sa = (a2 * A2 - ra * A1).antiderivative();
        Sb = (b2 * B2 - rb * B1).antiderivative();
    }
};

const Fn kOne = Fn::constant(1.0);

void check_divisors(const TranslationSurface& s) {
    if (s.alpha().min_abs_rotated_tangent(1.0, 0.0) < 1e-9 ||
        s.beta().min_abs_rotated_tangent(s.cos_theta(), s.sin_theta()) < 1e-9)
        throw std::domain_error("critical inclination: stretch solution singular");
}

DisplacementField build(const TranslationSurface& s, Fn2 u, Fn2 v, Fn2 w, Mode m) {
    return DisplacementField(std::move(u), std::move(v), std::move(w), m, s.frame_u(), s.frame_v(),
                             s.frame_w());
}

} // namespace

DisplacementField twist_mode(const TranslationSurface& s) {
    SolutionKit k(s);
    Fn2 u, v, w;
    u.add(-1.0 * k.A2, k.B1);
    u.add(kOne, k.Wb);
    v.add(k.A1, -1.0 * k.B2);
    v.add(k.Wa, kOne);
    w.add(k.A1, k.B1);
    return build(s, std::move(u), std::move(v), std::move(w), Mode::Twist);
}

DisplacementField stretch_mode(const TranslationSurface& s) {
    check_divisors(s);
    SolutionKit k(s);
    Fn2 u, v, w;
    u.add(-1.0 * k.Qa, kOne);
    v.add(kOne, k.Qb);
    w.add(k.A2, kOne);
    w.add(kOne, -1.0 * k.B2);
    return build(s, std::move(u), std::move(v), std::move(w), Mode::Stretch);
}

DisplacementField bend_s(const TranslationSurface& s) {
    check_divisors(s);
    SolutionKit k(s);
    Fn2 u, v, w;
    u.add(-1.0 * k.Qa, k.B2);
    u.add(-1.0 * k.Pa, kOne);
    v.add(-1.0 * k.A2, k.Qb);
    v.add(kOne, -1.0 * k.Pb);
    w.add(k.A2, k.B2);
    w.add(kOne, k.Ub);
    w.add(k.Ua, kOne);
    return build(s, std::move(u), std::move(v), std::move(w), Mode::BendS);
}

DisplacementField bend_p(const TranslationSurface& s) {
    check_divisors(s);
    SolutionKit k(s);
    Fn2 u, v, w;
    u.add(-1.0 * k.Qa, k.B1);
    v.add(-1.0 * k.A2, k.B2);
    v.add(kOne, -1.0 * k.Sb);
    v.add(k.Ua, kOne);
    w.add(k.A2, k.B1);
    w.add(kOne, k.Wb);
    return build(s, std::move(u), std::move(v), std::move(w), Mode::BendP);
}

DisplacementField bend_pbar(const TranslationSurface& s) {
    check_divisors(s);
    SolutionKit k(s);
    Fn2 u, v, w;
    u.add(-1.0 * k.A2, k.B2);
    u.add(-1.0 * k.Sa, kOne);
    u.add(kOne, k.Ub);
    v.add(-1.0 * k.A1, k.Qb);
    w.add(k.A1, k.B2);
    w.add(k.Wa, kOne);
    return build(s, std::move(u), std::move(v), std::move(w), Mode::BendPbar);
}

DisplacementField combine(std::span<const DisplacementField> fields,
                          std::span<const double> weights) {
    if (fields.empty() || fields.size() != weights.size())
        throw std::invalid_argument("combine needs matching fields and weights");
    Fn2 u, v, w;
    for (size_t i = 0; i < fields.size(); ++i) {
        u.add_scaled(weights[i], fields[i].u());
        v.add_scaled(weights[i], fields[i].v());
        w.add_scaled(weights[i], fields[i].w());
    }
    const DisplacementField& f0 = fields[0];
    return DisplacementField(std::move(u), std::move(v), std::move(w), Mode::Combination,
                             f0.frame_u(), f0.frame_v(), f0.frame_w());
}

Vec3 secular_free_weights_ls(const TranslationSurface& s) {
    // Pick the combination whose out-of-plane component has a periodic
    // remainder, by least squares on the deviation-from-periodicity samples
    // of the three candidates.
    if (!s.periodic_x() || !s.periodic_y())
        throw std::domain_error("secular elimination requires periodicity");
    const DisplacementField fs = bend_s(s), fp = bend_p(s), fpb = bend_pbar(s);
    const detail::CellGrid grid = detail::make_cell_grid(s, 3, 3);
    Eigen::MatrixXd dev;
    for (int i = 0; i < 3; ++i) {
        const DisplacementField& f = i == 0 ? fs : (i == 1 ? fp : fpb);
        const detail::QuadFitOutcome out = detail::fit_quadratic_cells(s, f, grid);
        if (i == 0) dev.resize(out.deviations.size(), 3);
        dev.col(i) = out.deviations;
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(dev, Eigen::ComputeThinV);
    const Eigen::Vector3d sv = svd.singularValues();
    if (sv(1) < 1e-10 * std::max(sv(0), 1e-300))
        throw std::domain_error("secular elimination rank-deficient");
    return svd.matrixV().col(2);
}

Vec3 out_of_plane_weights(const TranslationSurface& s) {
    if (!s.periodic_x() || !s.periodic_y())
        throw std::domain_error("secular elimination requires periodicity");
    const double mb1 = s.b1().average(s.period_y());
    const double mb2 = s.b2().average(s.period_y());
    const double ma1 = s.a1().average(s.period_x());
    const double ma2 = s.a2().average(s.period_x());
    // The closed-form weights hold when the profile contributes no mean slope
    // and the path-tangent identity <b1>b1 + <b2>b2 = const holds (graph paths).
    if (s.alpha().is_graph() && s.beta().is_graph() && std::abs(ma2) < 1e-12 &&
        std::abs(ma1 - 1.0) < 1e-12)
        return Vec3(-mb1, mb2, 0.0);
    return secular_free_weights_ls(s);
}

DisplacementField out_of_plane_bend(const TranslationSurface& s) {
    const Vec3 w = out_of_plane_weights(s);
    const DisplacementField parts[3] = {bend_s(s), bend_p(s), bend_pbar(s)};
    const double wts[3] = {w.x(), w.y(), w.z()};
    return combine(parts, wts);
}

DisplacementField in_plane_bend(const TranslationSurface& s) {
    if (!s.periodic_x() || !s.periodic_y())
        throw std::domain_error("secular elimination requires periodicity");
    const double mb1 = s.b1().average(s.period_y());
    const double mb2 = s.b2().average(s.period_y());
    const DisplacementField parts[3] = {bend_s(s), bend_p(s), bend_pbar(s)};
    const double wts[3] = {mb2, mb1, 0.0};
    return combine(parts, wts);
}

DisplacementField make_mode(const TranslationSurface& s, const std::string& name,
                            std::span<const double> combo_weights) {
    if (name == "twist") return twist_mode(s);
    if (name == "stretch") return stretch_mode(s);
    if (name == "bend-s") return bend_s(s);
    if (name == "bend-p") return bend_p(s);
    if (name == "bend-pbar") return bend_pbar(s);
    if (name == "bend-oop") return out_of_plane_bend(s);
    if (name == "bend-ip") return in_plane_bend(s);
    if (name == "combine" || name.rfind("combine:", 0) == 0) {
        std::vector<double> wts(combo_weights.begin(), combo_weights.end());
        if (name.size() > 8) {
            // inline weights: combine:w1,w2,w3
            wts.clear();
            std::string rest = name.substr(8);
            size_t pos = 0;
            while (pos <= rest.size()) {
                const size_t comma = rest.find(',', pos);
                const std::string item =
                    rest.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
                if (!item.empty()) wts.push_back(std::stod(item));
                if (comma == std::string::npos) break;
                pos = comma + 1;
            }
        }
        if (wts.size() != 3) throw std::invalid_argument("combine mode needs three weights");
        const DisplacementField parts[3] = {bend_s(s), bend_p(s), bend_pbar(s)};
        return combine(parts, wts);
    }
    throw std::invalid_argument("unknown mode: " + name);
}

} // namespace sot
