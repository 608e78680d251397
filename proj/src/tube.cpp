#include "sot/tube.hpp"

#include "sot/verify.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace sot {

TranslationSurface make_tube(const ProfileCurve& cross_section, const ProfileCurve& path,
                             double theta, int path_periods) {
    if (!cross_section.closed() && cross_section.kind() != ProfileKind::OpenPolygon)
        throw std::invalid_argument("tube needs a closed (or cut-open) cross-section");
    const double span_x = path.periodic() ? path_periods * path.period()
                                          : path.domain_hi() - path.domain_lo();
    const double span_y = cross_section.periodic()
                              ? cross_section.period()
                              : cross_section.domain_hi() - cross_section.domain_lo();
    Rect dom{0.0, span_x, 0.0, span_y};
    return TranslationSurface::make(path, cross_section, theta, dom);
}

TranslationSurface tube_preset(const std::string& name, int path_periods) {
    // diamond-oriented square: tangents stay clear of the wrap axis
    const std::vector<Vec2> square = {{0.0, -1.0}, {1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}};
    // closed but not centro-symmetric
    const std::vector<Vec2> kite = {{0.0, 0.0}, {1.0, 2.0}, {2.0, 0.0}, {1.0, -1.0}};
    const ProfileCurve zig = ProfileCurve::zigzag(1.0, 1.0);
    const ProfileCurve sin_path = ProfileCurve::sinusoid(0.5, 2.0);
    if (name == "square-zigzag")
        return make_tube(ProfileCurve::closed_polygon(square), zig, 0.0, path_periods);
    if (name == "square-sinusoid")
        return make_tube(ProfileCurve::closed_polygon(square), sin_path, 0.0, path_periods);
    if (name == "kite-sinusoid")
        return make_tube(ProfileCurve::closed_polygon(kite), sin_path, 0.0, path_periods);
    if (name == "open-square-zigzag")
        return make_tube(ProfileCurve::open_polygon(
                             {{0.0, -1.0}, {1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}}),
                         zig, 0.0, path_periods);
    throw std::invalid_argument("unknown tube preset: " + name);
}

SeamJump seam_jump(const TranslationSurface& tube, const DisplacementField& field,
                   const std::string& label, int stations) {
    SeamJump out;
    out.mode = label;
    if (!tube.periodic_y()) return out; // open section: nothing is identified
    const double y0 = tube.domain().y0;
    const double y1 = y0 + tube.period_y();
    const std::vector<double> xs =
        interior_samples(tube.panel_lines_x(), std::max(stations, 20), 1e-3);

    std::vector<Vec3> points, jumps;
    double scale = 0.0;
    for (double x : xs) {
        const Vec3 d0 = field.canonical(x, y0, Side::Auto, Side::Right);
        const Vec3 d1 = field.canonical(x, y1, Side::Auto, Side::Left);
        scale = std::max({scale, d0.norm(), d1.norm()});
        points.push_back(tube.position(x, y0));
        jumps.push_back(d1 - d0);
    }
    out.scale = scale;
    const double denom = std::max(scale, 1e-300);
    for (const Vec3& j : jumps) out.max_raw = std::max(out.max_raw, j.norm() / denom);
    const RigidFit rigid = fit_rigid(points, jumps);
    for (size_t i = 0; i < jumps.size(); ++i)
        out.max_rigid_removed =
            std::max(out.max_rigid_removed, (jumps[i] - rigid.eval(points[i])).norm() / denom);
    out.samples = std::move(jumps);
    return out;
}

SeamReport tube_report(const TranslationSurface& tube, int stations) {
    SeamReport rep;
    rep.surface = tube.describe();
    const std::pair<std::string, DisplacementField> cases[] = {
        {"twist", twist_mode(tube)},     {"stretch", stretch_mode(tube)},
        {"bend-s", bend_s(tube)},        {"bend-p", bend_p(tube)},
        {"bend-pbar", bend_pbar(tube)},
    };
    for (const auto& [name, field] : cases) rep.modes.push_back(seam_jump(tube, field, name, stations));
    return rep;
}

std::string format_report(const SeamReport& r) {
    std::ostringstream os;
    os.precision(17);
    os << "tube.surface = " << r.surface << "\n";
    for (const SeamJump& m : r.modes) {
        os << "tube." << m.mode << ".max_jump = " << m.max_raw << "\n";
        os << "tube." << m.mode << ".max_jump_rigid_removed = " << m.max_rigid_removed << "\n";
    }
    return os.str();
}

} // namespace sot
