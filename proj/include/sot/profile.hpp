#ifndef SOT_PROFILE_HPP
#define SOT_PROFILE_HPP

#include "sot/fn.hpp"

#include <Eigen/Core>
#include <Eigen/Geometry>
#include <string>
#include <vector>

namespace sot {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;

enum class ProfileKind { Flat, Zigzag, Sinusoid, Sampled, ClosedPolygon, ClosedSmooth, OpenPolygon };

/// A planar profile curve, smooth or creased. Graph kinds (flat, zigzag,
/// sinusoid, sampled) are the graph of a scalar function over the parameter;
/// polygon and closed-smooth kinds are parametric curves in their plane.
/// Tangent components are reported in the curve's plane basis, first
/// coordinate along the sweep direction, second along the planes'
/// intersection axis.
class ProfileCurve {
public:
    ProfileCurve() = default; // flat

    static ProfileCurve flat();
    static ProfileCurve zigzag(double slope, double half_period, double offset = 0.0);
    static ProfileCurve sinusoid(double amplitude, double period, double phase = 0.0);
    static ProfileCurve sampled(std::vector<double> ts, std::vector<double> values);
    static ProfileCurve closed_polygon(std::vector<Vec2> vertices);
    static ProfileCurve open_polygon(std::vector<Vec2> vertices);
    static ProfileCurve ellipse(double rx, double ry, double period);

    ProfileKind kind() const { return kind_; }
    bool is_graph() const;
    bool closed() const;
    bool periodic() const { return period_ > 0.0; }
    double period() const { return period_; }

    /// Parameter range the curve is defined on (unbounded for periodic kinds).
    double domain_lo() const;
    double domain_hi() const;

    /// Crease parameters within one period (periodic kinds) or over the whole
    /// sampled range. Empty for smooth kinds.
    const std::vector<double>& crease_points() const { return creases_; }
    std::vector<double> creases_in(double lo, double hi) const;
    bool is_crease(double t) const;

    /// Graph height (graph kinds only).
    double value(double t) const;

    /// One-sided slope of the graph at t. Throws "ambiguous crease derivative"
    /// when t is a crease and side is Auto.
    double derivative(double t, Side side) const;

    /// Point on the curve in its plane coordinates. Graph kinds: (t, value).
    Vec2 point(double t) const;

    /// One-sided tangent components in the plane basis.
    Vec2 tangent(double t, Side side) const;

    /// Tangent components materialized as exact function objects over [lo, hi].
    Fn tangent1_fn(double lo, double hi) const;
    Fn tangent2_fn(double lo, double hi) const;

    /// Minimum over a period (or the whole domain) of c*tangent1 + s*tangent2,
    /// one-sided values at creases included.
    double min_rotated_tangent(double c, double s) const;

    /// Minimum of |c*tangent1 + s*tangent2|. For smooth kinds a sign change
    /// implies a zero crossing, so the minimum is reported as 0.
    double min_abs_rotated_tangent(double c, double s) const;

    std::string describe() const;

private:
    ProfileKind kind_ = ProfileKind::Flat;
    double period_ = 0.0;
    std::vector<double> creases_;

    // zigzag
    double slope_ = 0.0, half_period_ = 0.0, offset_ = 0.0;
    // sinusoid / ellipse
    double amplitude_ = 0.0, phase_ = 0.0, rx_ = 0.0, ry_ = 0.0;
    // sampled graph / polygons
    std::vector<double> ts_;
    std::vector<double> vs_;
    std::vector<Vec2> verts_;    // polygon vertices (closed: without repeat)
    std::vector<double> arcs_;   // cumulative arclength at vertices
    std::vector<Vec2> tangents_; // per-edge unit tangents

    size_t polygon_edge(double t, Side side) const;
    size_t sampled_segment(double t, Side side) const;
};

} // namespace sot

#endif
