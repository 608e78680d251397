#include "sot/verify.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace sot {

std::vector<double> interior_samples(const std::vector<double>& panel_lines, int n,
                                     double offset_frac) {
    if (panel_lines.size() < 2) throw std::invalid_argument("need at least one panel");
    const double span = panel_lines.back() - panel_lines.front();
    std::vector<double> pts;
    pts.reserve(static_cast<size_t>(n) + panel_lines.size());
    for (size_t i = 0; i + 1 < panel_lines.size(); ++i) {
        const double a = panel_lines[i], b = panel_lines[i + 1];
        const double w = b - a;
        const int k = std::max(1, static_cast<int>(std::ceil(n * w / span)));
        const double inset = offset_frac * w;
        for (int j = 0; j < k; ++j)
            pts.push_back(a + inset + (w - 2.0 * inset) * (j + 0.5) / k);
    }
    return pts;
}

ResidualReport isometry_residual(const TranslationSurface& surf, const DisplacementField& field,
                                 const GridSpec& grid) {
    const std::vector<double> xs = interior_samples(surf.panel_lines_x(), grid.nx, grid.offset_frac);
    const std::vector<double> ys = interior_samples(surf.panel_lines_y(), grid.ny, grid.offset_frac);

    ResidualReport r;
    for (double y : ys) {
        for (double x : xs) {
            const TangentCoeffs t = surf.tangent_coefficients(x, y);
            const FieldPartials p = field.partials(x, y);
            const double c1 = t.a1 * p.ux + t.a2 * p.wx;
            const double c2 = t.b1 * p.vy + t.b2 * p.wy;
            const double c3 = t.a1 * p.uy + t.b1 * p.vx + t.a2 * p.wy + t.b2 * p.wx;
            const double dx = std::sqrt(p.ux * p.ux + p.vx * p.vx + p.wx * p.wx);
            const double dy = std::sqrt(p.uy * p.uy + p.vy * p.vy + p.wy * p.wy);
            r.scale = std::max(r.scale, std::max(dx, dy));
            const double worst = std::max({std::abs(c1), std::abs(c2), std::abs(c3)});
            if (worst > std::max({r.max_c1, r.max_c2, r.max_c3})) {
                r.worst_x = x;
                r.worst_y = y;
            }
            r.max_c1 = std::max(r.max_c1, std::abs(c1));
            r.max_c2 = std::max(r.max_c2, std::abs(c2));
            r.max_c3 = std::max(r.max_c3, std::abs(c3));
        }
    }
    const double m = std::max({r.max_c1, r.max_c2, r.max_c3});
    r.max_normalized = r.scale > 0.0 ? m / r.scale : m;
    return r;
}

namespace {

double min_panel_width(const std::vector<double>& lines) {
    double w = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i + 1 < lines.size(); ++i) w = std::min(w, lines[i + 1] - lines[i]);
    return w;
}

} // namespace

OrderReport perturbation_order(const TranslationSurface& surf, const DisplacementField& field,
                               std::span<const double> eps_list, int n) {
    const std::vector<double> px = surf.panel_lines_x();
    const std::vector<double> py = surf.panel_lines_y();
    // keep samples far enough inside panels that the stencil stays one-sided-free
    const std::vector<double> xs = interior_samples(px, n, 0.2);
    const std::vector<double> ys = interior_samples(py, n, 0.2);
    const double hx = 1e-6 * min_panel_width(px);
    const double hy = 1e-6 * min_panel_width(py);

    auto deflected = [&](double x, double y, double eps) -> Vec3 {
        return surf.position(x, y) + eps * field.canonical(x, y);
    };
    auto metric_fd = [&](double x, double y, double eps) {
        const Vec3 rx = (deflected(x + hx, y, eps) - deflected(x - hx, y, eps)) / (2.0 * hx);
        const Vec3 ry = (deflected(x, y + hy, eps) - deflected(x, y - hy, eps)) / (2.0 * hy);
        Eigen::Vector3d out(rx.dot(rx), rx.dot(ry), ry.dot(ry));
        return out;
    };

    OrderReport rep;
    for (double eps : eps_list) {
        double worst = 0.0;
        for (double y : ys)
            for (double x : xs) {
                const Eigen::Vector3d d = metric_fd(x, y, eps) - metric_fd(x, y, 0.0);
                worst = std::max(worst, d.cwiseAbs().maxCoeff());
            }
        rep.eps.push_back(eps);
        rep.max_metric_change.push_back(worst);
    }
    for (size_t i = 0; i + 1 < rep.max_metric_change.size(); ++i) {
        const double den = rep.max_metric_change[i + 1];
        rep.ratios.push_back(den > 0.0 ? rep.max_metric_change[i] / den
                                       : std::numeric_limits<double>::infinity());
    }
    return rep;
}

double edge_length_check(const QuadMesh& reference, const QuadMesh& deflected) {
    if (reference.vertices.size() != deflected.vertices.size() ||
        reference.quads.size() != deflected.quads.size())
        throw std::invalid_argument("meshes do not share connectivity");
    double worst = 0.0;
    auto scan = [&](int a, int b, const QuadMesh& r, const QuadMesh& d) {
        const double lr = (r.vertices[b] - r.vertices[a]).norm();
        const double ld = (d.vertices[b] - d.vertices[a]).norm();
        if (lr > 0.0) worst = std::max(worst, std::abs(ld - lr) / lr);
    };
    for (size_t q = 0; q < reference.quads.size(); ++q) {
        const auto& f = reference.quads[q];
        scan(f[0], f[1], reference, deflected);
        scan(f[1], f[2], reference, deflected);
        scan(f[2], f[3], reference, deflected);
        scan(f[3], f[0], reference, deflected);
        scan(f[0], f[2], reference, deflected); // facet diagonals
        scan(f[1], f[3], reference, deflected);
    }
    return worst;
}

RigidFit fit_rigid(std::span<const Vec3> points, std::span<const Vec3> values) {
    if (points.size() != values.size() || points.size() < 2)
        throw std::invalid_argument("rigid fit needs matched points and values");
    Eigen::MatrixXd A(3 * points.size(), 6);
    Eigen::VectorXd b(3 * points.size());
    for (size_t i = 0; i < points.size(); ++i) {
        const Vec3& p = points[i];
        Eigen::Matrix3d skew;
        skew << 0, -p.z(), p.y(), p.z(), 0, -p.x(), -p.y(), p.x(), 0;
        A.block<3, 3>(3 * static_cast<long>(i), 0) = Eigen::Matrix3d::Identity();
        A.block<3, 3>(3 * static_cast<long>(i), 3) = skew.transpose(); // (w x p) = skew(w) p
        b.segment<3>(3 * static_cast<long>(i)) = values[i];
    }
    const Eigen::VectorXd sol = A.colPivHouseholderQr().solve(b);
    RigidFit f;
    f.translation = sol.segment<3>(0);
    f.rotation = sol.segment<3>(3);
    return f;
}

std::string format_report(const ResidualReport& r) {
    std::ostringstream os;
    os.precision(17);
    os << "residual.max_c1 = " << r.max_c1 << "\n"
       << "residual.max_c2 = " << r.max_c2 << "\n"
       << "residual.max_c3 = " << r.max_c3 << "\n"
       << "residual.scale = " << r.scale << "\n"
       << "residual.max_normalized = " << r.max_normalized << "\n"
       << "residual.worst_point = " << r.worst_x << " " << r.worst_y << "\n";
    return os.str();
}

std::string format_report(const OrderReport& r) {
    std::ostringstream os;
    os.precision(17);
    for (size_t i = 0; i < r.eps.size(); ++i)
        os << "order.eps_" << r.eps[i] << " = " << r.max_metric_change[i] << "\n";
    for (size_t i = 0; i < r.ratios.size(); ++i)
        os << "order.ratio_" << i << " = " << r.ratios[i] << "\n";
    return os.str();
}

} // namespace sot
