#include "sot/profile.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace sot {

using detail::Poly;
using detail::TrigPoly;

namespace {

constexpr double kTwoPi = 6.283185307179586476925287;

double positive_mod(double t, double period) {
    double m = std::fmod(t, period);
    if (m < 0.0) m += period;
    return m;
}

} // namespace

ProfileCurve ProfileCurve::flat() {
    ProfileCurve p;
    p.kind_ = ProfileKind::Flat;
    p.period_ = 1.0; // any value works; keeps averages well defined
    return p;
}

ProfileCurve ProfileCurve::zigzag(double slope, double half_period, double offset) {
    if (!(slope > 0.0) || !(half_period > 0.0))
        throw std::invalid_argument("zigzag needs slope > 0 and half_period > 0");
    ProfileCurve p;
    p.kind_ = ProfileKind::Zigzag;
    p.slope_ = slope;
    p.half_period_ = half_period;
    p.offset_ = offset;
    p.period_ = 2.0 * half_period;
    p.creases_ = {0.0, half_period};
    return p;
}

ProfileCurve ProfileCurve::sinusoid(double amplitude, double period, double phase) {
    if (!(period > 0.0)) throw std::invalid_argument("sinusoid needs period > 0");
    ProfileCurve p;
    p.kind_ = ProfileKind::Sinusoid;
    p.amplitude_ = amplitude;
    p.period_ = period;
    p.phase_ = phase;
    return p;
}

ProfileCurve ProfileCurve::sampled(std::vector<double> ts, std::vector<double> values) {
    if (ts.size() < 2 || ts.size() != values.size())
        throw std::invalid_argument("sampled profile needs matching abscissae and values");
    for (size_t i = 0; i + 1 < ts.size(); ++i)
        if (!(ts[i] < ts[i + 1]))
            throw std::invalid_argument("sampled abscissae must be strictly increasing");
    ProfileCurve p;
    p.kind_ = ProfileKind::Sampled;
    p.ts_ = std::move(ts);
    p.vs_ = std::move(values);
    p.creases_ = p.ts_; // every sample is a crease
    p.period_ = 0.0;
    return p;
}

ProfileCurve ProfileCurve::closed_polygon(std::vector<Vec2> vertices) {
    if (vertices.size() < 3) throw std::invalid_argument("closed polygon needs >= 3 vertices");
    ProfileCurve p;
    p.kind_ = ProfileKind::ClosedPolygon;
    p.verts_ = std::move(vertices);
    const size_t n = p.verts_.size();
    p.arcs_.assign(n + 1, 0.0);
    p.tangents_.resize(n);
    for (size_t i = 0; i < n; ++i) {
        const Vec2 e = p.verts_[(i + 1) % n] - p.verts_[i];
        const double len = e.norm();
        if (!(len > 0.0)) throw std::invalid_argument("degenerate polygon edge");
        p.tangents_[i] = e / len;
        p.arcs_[i + 1] = p.arcs_[i] + len;
    }
    p.period_ = p.arcs_.back();
    p.creases_.assign(p.arcs_.begin(), p.arcs_.end() - 1);
    return p;
}

ProfileCurve ProfileCurve::open_polygon(std::vector<Vec2> vertices) {
    if (vertices.size() < 2) throw std::invalid_argument("open polygon needs >= 2 vertices");
    ProfileCurve p;
    p.kind_ = ProfileKind::OpenPolygon;
    p.verts_ = std::move(vertices);
    const size_t n = p.verts_.size() - 1;
    p.arcs_.assign(n + 1, 0.0);
    p.tangents_.resize(n);
    for (size_t i = 0; i < n; ++i) {
        const Vec2 e = p.verts_[i + 1] - p.verts_[i];
        const double len = e.norm();
        if (!(len > 0.0)) throw std::invalid_argument("degenerate polygon edge");
        p.tangents_[i] = e / len;
        p.arcs_[i + 1] = p.arcs_[i] + len;
    }
    p.period_ = 0.0;
    p.creases_ = p.arcs_;
    return p;
}

ProfileCurve ProfileCurve::ellipse(double rx, double ry, double period) {
    if (!(rx > 0.0) || !(ry > 0.0) || !(period > 0.0))
        throw std::invalid_argument("ellipse needs positive radii and period");
    ProfileCurve p;
    p.kind_ = ProfileKind::ClosedSmooth;
    p.rx_ = rx;
    p.ry_ = ry;
    p.period_ = period;
    return p;
}

bool ProfileCurve::is_graph() const {
    return kind_ == ProfileKind::Flat || kind_ == ProfileKind::Zigzag ||
           kind_ == ProfileKind::Sinusoid || kind_ == ProfileKind::Sampled;
}

bool ProfileCurve::closed() const {
    return kind_ == ProfileKind::ClosedPolygon || kind_ == ProfileKind::ClosedSmooth;
}

double ProfileCurve::domain_lo() const {
    if (kind_ == ProfileKind::Sampled) return ts_.front();
    if (kind_ == ProfileKind::OpenPolygon) return 0.0;
    return -std::numeric_limits<double>::infinity();
}

double ProfileCurve::domain_hi() const {
    if (kind_ == ProfileKind::Sampled) return ts_.back();
    if (kind_ == ProfileKind::OpenPolygon) return arcs_.back();
    return std::numeric_limits<double>::infinity();
}

std::vector<double> ProfileCurve::creases_in(double lo, double hi) const {
    std::vector<double> out;
    if (creases_.empty()) return out;
    if (!periodic()) {
        for (double c : creases_)
            if (c >= lo && c <= hi) out.push_back(c);
        return out;
    }
    const long k0 = static_cast<long>(std::floor(lo / period_)) - 1;
    const long k1 = static_cast<long>(std::ceil(hi / period_)) + 1;
    for (long k = k0; k <= k1; ++k)
        for (double c : creases_) {
            const double t = static_cast<double>(k) * period_ + c;
            if (t >= lo && t <= hi) out.push_back(t);
        }
    std::sort(out.begin(), out.end());
    return out;
}

bool ProfileCurve::is_crease(double t) const {
    if (creases_.empty()) return false;
    const double tol = 1e-12 * std::max(1.0, std::abs(t));
    if (periodic()) {
        const double m = positive_mod(t, period_);
        for (double c : creases_)
            if (std::abs(m - c) <= tol || std::abs(m - c - period_) <= tol ||
                std::abs(m - c + period_) <= tol)
                return true;
        return false;
    }
    for (double c : creases_)
        if (std::abs(t - c) <= tol) return true;
    return false;
}

double ProfileCurve::value(double t) const {
    switch (kind_) {
        case ProfileKind::Flat:
            return 0.0;
        case ProfileKind::Zigzag: {
            const double m = positive_mod(t, period_);
            return offset_ + (m <= half_period_ ? slope_ * m : slope_ * (period_ - m));
        }
        case ProfileKind::Sinusoid:
            return amplitude_ * std::sin(kTwoPi / period_ * t + phase_);
        case ProfileKind::Sampled: {
            const size_t i = sampled_segment(t, Side::Auto);
            const double w = (t - ts_[i]) / (ts_[i + 1] - ts_[i]);
            return vs_[i] + w * (vs_[i + 1] - vs_[i]);
        }
        default:
            throw std::invalid_argument("graph value undefined for parametric profile");
    }
}

size_t ProfileCurve::sampled_segment(double t, Side side) const {
    if (t < ts_.front() - 1e-12 || t > ts_.back() + 1e-12)
        throw std::out_of_range("sampled profile evaluated outside its data range");
    auto it = std::upper_bound(ts_.begin(), ts_.end(), t);
    size_t i = it == ts_.begin() ? 0 : static_cast<size_t>(it - ts_.begin()) - 1;
    if (i + 2 > ts_.size()) i = ts_.size() - 2;
    if (side == Side::Left && i > 0 && std::abs(t - ts_[i]) <= 1e-12 * std::max(1.0, std::abs(t)))
        --i;
    return i;
}

size_t ProfileCurve::polygon_edge(double t, Side side) const {
    double tt = t;
    if (kind_ == ProfileKind::ClosedPolygon) tt = positive_mod(t, period_);
    if (tt < arcs_.front() - 1e-12 || tt > arcs_.back() + 1e-12)
        throw std::out_of_range("polygon evaluated outside its parameter range");
    auto it = std::upper_bound(arcs_.begin(), arcs_.end(), tt);
    size_t i = it == arcs_.begin() ? 0 : static_cast<size_t>(it - arcs_.begin()) - 1;
    if (i >= tangents_.size()) i = tangents_.size() - 1;
    if (side == Side::Left && std::abs(tt - arcs_[i]) <= 1e-12 * std::max(1.0, std::abs(tt))) {
        if (i > 0)
            --i;
        else if (kind_ == ProfileKind::ClosedPolygon)
            i = tangents_.size() - 1; // wrap to the edge ending at the seam vertex
    }
    return i;
}

double ProfileCurve::derivative(double t, Side side) const {
    if (!is_graph()) throw std::invalid_argument("graph derivative undefined for parametric profile");
    if (side == Side::Auto && is_crease(t)) throw std::domain_error("ambiguous crease derivative");
    switch (kind_) {
        case ProfileKind::Flat:
            return 0.0;
        case ProfileKind::Zigzag: {
            double m = positive_mod(t, period_);
            const double tol = 1e-12 * std::max(1.0, std::abs(t));
            if (side == Side::Left) {
                if (m <= tol) m = period_; // wrap
                return m <= half_period_ + tol ? slope_ : -slope_;
            }
            return m < half_period_ - tol ? slope_ : (m >= period_ - tol ? slope_ : -slope_);
        }
        case ProfileKind::Sinusoid:
            return amplitude_ * kTwoPi / period_ * std::cos(kTwoPi / period_ * t + phase_);
        case ProfileKind::Sampled: {
            const size_t i = sampled_segment(t, side == Side::Auto ? Side::Right : side);
            return (vs_[i + 1] - vs_[i]) / (ts_[i + 1] - ts_[i]);
        }
        default:
            break;
    }
    throw std::logic_error("unreachable");
}

Vec2 ProfileCurve::point(double t) const {
    switch (kind_) {
        case ProfileKind::ClosedPolygon: {
            const double m = positive_mod(t, period_);
            const size_t i = polygon_edge(m, Side::Right);
            return verts_[i] + (m - arcs_[i]) * tangents_[i];
        }
        case ProfileKind::OpenPolygon: {
            const size_t i = polygon_edge(t, Side::Right);
            return verts_[i] + (t - arcs_[i]) * tangents_[i];
        }
        case ProfileKind::ClosedSmooth: {
            const double a = kTwoPi / period_ * t;
            return Vec2(rx_ * std::cos(a), ry_ * std::sin(a));
        }
        default:
            return Vec2(t, value(t));
    }
}

Vec2 ProfileCurve::tangent(double t, Side side) const {
    switch (kind_) {
        case ProfileKind::ClosedPolygon:
        case ProfileKind::OpenPolygon:
            return tangents_[polygon_edge(t, side)];
        case ProfileKind::ClosedSmooth: {
            const double w = kTwoPi / period_;
            const double a = w * t;
            return Vec2(-rx_ * w * std::sin(a), ry_ * w * std::cos(a));
        }
        default: {
            const Side s = side == Side::Auto ? Side::Right : side;
            double d;
            if (is_graph() && is_crease(t))
                d = derivative(t, s);
            else
                d = derivative(t, Side::Right);
            return Vec2(1.0, d);
        }
    }
}

namespace {

// Panel boundaries for materializing tangent functions: creases replicated
// across [lo, hi], plus period lines and a subdivision of smooth stretches so
// the quadrature fallback always integrates over short panels.
std::vector<double> build_knots(const ProfileCurve& p, double lo, double hi) {
    if (!(lo < hi)) throw std::invalid_argument("empty materialization interval");
    std::vector<double> knots = p.creases_in(lo, hi);
    auto push = [&](double t) {
        if (t >= lo && t <= hi) knots.push_back(t);
    };
    push(lo);
    push(hi);
    push(0.0);
    if (p.periodic()) {
        const double T = p.period();
        const long k0 = static_cast<long>(std::floor(lo / T));
        const long k1 = static_cast<long>(std::ceil(hi / T));
        for (long k = k0; k <= k1; ++k) {
            for (int j = 0; j < 4; ++j) push((static_cast<double>(k) + 0.25 * j) * T);
        }
    }
    std::sort(knots.begin(), knots.end());
    const double tol = 1e-12 * std::max(1.0, std::max(std::abs(lo), std::abs(hi)));
    std::vector<double> out;
    for (double t : knots)
        if (out.empty() || t - out.back() > tol) out.push_back(t);
    if (out.size() < 2) throw std::invalid_argument("empty materialization interval");
    return out;
}

// Piecewise-constant tangent component (zigzag, sampled, polygons).
Fn materialize_constant_component(const ProfileCurve& p, double lo, double hi, int comp) {
    lo = std::max(lo, p.domain_lo());
    hi = std::min(hi, p.domain_hi());
    const std::vector<double> knots = build_knots(p, lo, hi);
    std::vector<TrigPoly> panels;
    panels.reserve(knots.size() - 1);
    for (size_t i = 0; i + 1 < knots.size(); ++i) {
        const double mid = 0.5 * (knots[i] + knots[i + 1]);
        const Vec2 tg = p.tangent(mid, Side::Auto);
        panels.push_back(TrigPoly::constant(comp == 0 ? tg.x() : tg.y()));
    }
    return Fn::piecewise(knots, std::move(panels));
}

// Single harmonic a*cos(w t + phi0) rebased to panel-local coordinates.
Fn materialize_harmonic(const ProfileCurve& p, double lo, double hi, double amp, double w,
                        double phi0, bool use_sin) {
    const std::vector<double> knots = build_knots(p, std::max(lo, p.domain_lo()),
                                                  std::min(hi, p.domain_hi()));
    std::vector<TrigPoly> panels;
    panels.reserve(knots.size() - 1);
    for (size_t i = 0; i + 1 < knots.size(); ++i) {
        const double wa = w * knots[i] + phi0;
        TrigPoly seg;
        seg.omega = w;
        if (use_sin) // amp*sin(w t + phi0) = amp[sin(wa)cos(ws) + cos(wa)sin(ws)]
            seg.add_harmonic(1, Poly::constant(amp * std::sin(wa)),
                             Poly::constant(amp * std::cos(wa)));
        else // amp*cos(w t + phi0) = amp[cos(wa)cos(ws) - sin(wa)sin(ws)]
            seg.add_harmonic(1, Poly::constant(amp * std::cos(wa)),
                             Poly::constant(-amp * std::sin(wa)));
        panels.push_back(std::move(seg));
    }
    return Fn::piecewise(std::move(knots), std::move(panels));
}

} // namespace

Fn ProfileCurve::tangent1_fn(double lo, double hi) const {
    if (is_graph()) return Fn::constant(1.0);
    if (kind_ == ProfileKind::ClosedSmooth) {
        const double w = kTwoPi / period_;
        return materialize_harmonic(*this, lo, hi, -rx_ * w, w, 0.0, true);
    }
    return materialize_constant_component(*this, lo, hi, 0);
}

Fn ProfileCurve::tangent2_fn(double lo, double hi) const {
    switch (kind_) {
        case ProfileKind::Flat:
            return Fn();
        case ProfileKind::Sinusoid: {
            const double w = kTwoPi / period_;
            return materialize_harmonic(*this, lo, hi, amplitude_ * w, w, phase_, false);
        }
        case ProfileKind::ClosedSmooth: {
            const double w = kTwoPi / period_;
            return materialize_harmonic(*this, lo, hi, ry_ * w, w, 0.0, false);
        }
        default:
            return materialize_constant_component(*this, lo, hi, 1);
    }
}

double ProfileCurve::min_rotated_tangent(double c, double s) const {
    double best = std::numeric_limits<double>::infinity();
    auto take = [&](const Vec2& tg) { best = std::min(best, c * tg.x() + s * tg.y()); };
    switch (kind_) {
        case ProfileKind::Flat:
            return c;
        case ProfileKind::Zigzag:
            take(Vec2(1.0, slope_));
            take(Vec2(1.0, -slope_));
            return best;
        case ProfileKind::ClosedPolygon:
        case ProfileKind::OpenPolygon:
            for (const Vec2& tg : tangents_) take(tg);
            return best;
        case ProfileKind::Sampled:
            for (size_t i = 0; i + 1 < ts_.size(); ++i)
                take(Vec2(1.0, (vs_[i + 1] - vs_[i]) / (ts_[i + 1] - ts_[i])));
            return best;
        default: {
            const double span = periodic() ? period_ : (domain_hi() - domain_lo());
            const double start = periodic() ? 0.0 : domain_lo();
            const int n = 2048;
            for (int i = 0; i <= n; ++i)
                take(tangent(start + span * static_cast<double>(i) / n, Side::Right));
            return best;
        }
    }
}

double ProfileCurve::min_abs_rotated_tangent(double c, double s) const {
    const bool smooth = kind_ == ProfileKind::Sinusoid || kind_ == ProfileKind::ClosedSmooth ||
                        kind_ == ProfileKind::Flat;
    const double lo_signed = min_rotated_tangent(c, s);
    const double hi_signed = -min_rotated_tangent(-c, -s);
    if (smooth) {
        if (lo_signed <= 0.0 && hi_signed >= 0.0) return 0.0;
        return std::min(std::abs(lo_signed), std::abs(hi_signed));
    }
    // piecewise kinds attain finitely many values; take the min over them
    double best = std::numeric_limits<double>::infinity();
    auto take = [&](const Vec2& tg) { best = std::min(best, std::abs(c * tg.x() + s * tg.y())); };
    switch (kind_) {
        case ProfileKind::Zigzag:
            take(Vec2(1.0, slope_));
            take(Vec2(1.0, -slope_));
            break;
        case ProfileKind::ClosedPolygon:
        case ProfileKind::OpenPolygon:
            for (const Vec2& tg : tangents_) take(tg);
            break;
        case ProfileKind::Sampled:
            for (size_t i = 0; i + 1 < ts_.size(); ++i)
                take(Vec2(1.0, (vs_[i + 1] - vs_[i]) / (ts_[i + 1] - ts_[i])));
            break;
        default:
            best = std::min(std::abs(lo_signed), std::abs(hi_signed));
            break;
    }
    return best;
}

std::string ProfileCurve::describe() const {
    switch (kind_) {
        case ProfileKind::Flat:
            return "flat";
        case ProfileKind::Zigzag:
            return "zigzag(slope=" + std::to_string(slope_) +
                   ", half_period=" + std::to_string(half_period_) + ")";
        case ProfileKind::Sinusoid:
            return "sinusoid(amplitude=" + std::to_string(amplitude_) +
                   ", period=" + std::to_string(period_) + ")";
        case ProfileKind::Sampled:
            return "sampled(" + std::to_string(ts_.size()) + " points)";
        case ProfileKind::ClosedPolygon:
            return "closed-polygon(" + std::to_string(verts_.size()) + " vertices)";
        case ProfileKind::OpenPolygon:
            return "open-polygon(" + std::to_string(verts_.size()) + " vertices)";
        case ProfileKind::ClosedSmooth:
            return "closed-smooth(ellipse)";
    }
    return "profile";
}

} // namespace sot
