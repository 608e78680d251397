#include "cellfit.hpp"

#include <cmath>
#include <stdexcept>

namespace sot::detail {

namespace {

constexpr int kGLCell = 8;
constexpr double kGx[kGLCell] = {-0.96028985649753623168, -0.79666647741362673959,
                                 -0.52553240991632898582, -0.18343464249564980494,
                                 0.18343464249564980494,  0.52553240991632898582,
                                 0.79666647741362673959,  0.96028985649753623168};
constexpr double kGw[kGLCell] = {0.10122853629037625915, 0.22238103445337447054,
                                 0.31370664587788728734, 0.36268378337836198297,
                                 0.36268378337836198297, 0.31370664587788728734,
                                 0.22238103445337447054, 0.10122853629037625915};

void fill_axis(const ProfileCurve& p, double period, std::vector<double>& nodes,
               std::vector<double>& wts) {
    std::vector<double> lines = p.creases_in(0.0, period);
    auto add = [&](double t) {
        if (t > 1e-12 && t < period - 1e-12) lines.push_back(t);
    };
    if (lines.empty())
        for (int j = 1; j < 4; ++j) add(period * j / 4.0);
    lines.push_back(0.0);
    lines.push_back(period);
    std::sort(lines.begin(), lines.end());
    lines.erase(std::unique(lines.begin(), lines.end(),
                            [](double a, double b) { return std::abs(a - b) < 1e-12; }),
                lines.end());
    for (size_t i = 0; i + 1 < lines.size(); ++i) {
        const double mid = 0.5 * (lines[i] + lines[i + 1]);
        const double half = 0.5 * (lines[i + 1] - lines[i]);
        if (half <= 0.0) continue;
        for (int g = 0; g < kGLCell; ++g) {
            nodes.push_back(mid + half * kGx[g]);
            wts.push_back(half * kGw[g]);
        }
    }
}

} // namespace

CellGrid make_cell_grid(const TranslationSurface& surf, int cells_x, int cells_y) {
    if (!surf.periodic_x() || !surf.periodic_y())
        throw std::domain_error("cell grid requires periodic profiles");
    CellGrid g;
    g.x0 = surf.domain().x0;
    g.y0 = surf.domain().y0;
    g.Tx = surf.period_x();
    g.Ty = surf.period_y();
    g.cells_x = cells_x;
    g.cells_y = cells_y;
    const double need_x = g.x0 + cells_x * g.Tx;
    const double need_y = g.y0 + cells_y * g.Ty;
    if (need_x > surf.domain().x1 + 1e-9 || need_y > surf.domain().y1 + 1e-9)
        throw std::invalid_argument("surface domain too small for requested cell grid");
    fill_axis(surf.alpha(), g.Tx, g.nodes_x, g.wts_x);
    fill_axis(surf.beta(), g.Ty, g.nodes_y, g.wts_y);
    return g;
}

OutOfPlane::OutOfPlane(const TranslationSurface& surf, const DisplacementField& field)
    : surf_(surf), field_(field) {
    const double ma1 = surf.a1().average(surf.period_x());
    const double ma2 = surf.a2().average(surf.period_x());
    const double mb1 = surf.b1().average(surf.period_y());
    const double mb2 = surf.b2().average(surf.period_y());
    cu_ = -ma2 * mb1;
    cv_ = -ma1 * mb2;
    cw_ = ma1 * mb1;
    const Vec3 mean_alpha = ma1 * surf.frame_u() + ma2 * surf.frame_w();
    const Vec3 mean_beta = mb1 * surf.frame_v() + mb2 * surf.frame_w();
    const Vec3 n = mean_alpha.cross(mean_beta);
    e1_ = mean_alpha.normalized();
    e2_ = n.normalized().cross(e1_);
}

double OutOfPlane::operator()(double x, double y) const {
    const Vec3 d = field_.adapted(x, y);
    return cu_ * d.x() + cv_ * d.y() + cw_ * d.z();
}

Eigen::Vector2d OutOfPlane::plane_coords(double x, double y) const {
    const Vec3 r = surf_.position(x, y);
    return Eigen::Vector2d(r.dot(e1_), r.dot(e2_));
}

QuadFitOutcome fit_quadratic_cells(const TranslationSurface& surf, const DisplacementField& field,
                                   const CellGrid& grid) {
    if (grid.cells_x < 3 || grid.cells_y < 3)
        throw std::invalid_argument("insufficient support for fit");
    const OutOfPlane dn(surf, field);
    const int ncell = grid.cells_x * grid.cells_y;
    const size_t nx = grid.nodes_x.size(), ny = grid.nodes_y.size();
    const double cell_area = grid.Tx * grid.Ty;

    Eigen::MatrixXd A(ncell, 6);
    Eigen::VectorXd b(ncell);
    // per-cell node values kept for the periodicity check of the remainder
    std::vector<Eigen::VectorXd> node_vals(static_cast<size_t>(ncell));
    std::vector<Eigen::MatrixXd> node_reg(static_cast<size_t>(ncell));
    double scale = 0.0;

    for (int cj = 0; cj < grid.cells_y; ++cj) {
        for (int ci = 0; ci < grid.cells_x; ++ci) {
            const int cell = cj * grid.cells_x + ci;
            Eigen::VectorXd vals(nx * ny);
            Eigen::MatrixXd reg(nx * ny, 6);
            Eigen::VectorXd avg = Eigen::VectorXd::Zero(6);
            double avg_v = 0.0;
            size_t idx = 0;
            for (size_t jy = 0; jy < ny; ++jy) {
                const double y = grid.y0 + cj * grid.Ty + grid.nodes_y[jy];
                for (size_t jx = 0; jx < nx; ++jx, ++idx) {
                    const double x = grid.x0 + ci * grid.Tx + grid.nodes_x[jx];
                    const double v = dn(x, y);
                    const Eigen::Vector2d q = dn.plane_coords(x, y);
                    Eigen::Matrix<double, 6, 1> row;
                    row << 1.0, q.x(), q.y(), q.x() * q.x(), q.x() * q.y(), q.y() * q.y();
                    vals(idx) = v;
                    reg.row(idx) = row.transpose();
                    const double wgt = grid.wts_x[jx] * grid.wts_y[jy];
                    avg += wgt * row;
                    avg_v += wgt * v;
                    scale = std::max(scale, std::abs(v));
                }
            }
            A.row(cell) = (avg / cell_area).transpose();
            b(cell) = avg_v / cell_area;
            node_vals[static_cast<size_t>(cell)] = std::move(vals);
            node_reg[static_cast<size_t>(cell)] = std::move(reg);
        }
    }

    const Eigen::VectorXd coeff = A.colPivHouseholderQr().solve(b);

    QuadFitOutcome out;
    out.c0 = coeff(0);
    out.cx = coeff(1);
    out.cy = coeff(2);
    out.cxx = coeff(3);
    out.cxy = coeff(4);
    out.cyy = coeff(5);
    out.scale = scale;

    // remainder at every node, then neighbor-cell differences
    std::vector<Eigen::VectorXd> rem(node_vals.size());
    for (size_t c = 0; c < node_vals.size(); ++c) rem[c] = node_vals[c] - node_reg[c] * coeff;

    std::vector<double> devs;
    devs.reserve(node_vals.size() * nx * ny * 2);
    auto cell_at = [&](int ci, int cj) { return static_cast<size_t>(cj * grid.cells_x + ci); };
    for (int cj = 0; cj < grid.cells_y; ++cj)
        for (int ci = 0; ci + 1 < grid.cells_x; ++ci) {
            const Eigen::VectorXd d = rem[cell_at(ci + 1, cj)] - rem[cell_at(ci, cj)];
            for (int k = 0; k < d.size(); ++k) devs.push_back(d(k));
        }
    for (int cj = 0; cj + 1 < grid.cells_y; ++cj)
        for (int ci = 0; ci < grid.cells_x; ++ci) {
            const Eigen::VectorXd d = rem[cell_at(ci, cj + 1)] - rem[cell_at(ci, cj)];
            for (int k = 0; k < d.size(); ++k) devs.push_back(d(k));
        }
    out.deviations = Eigen::Map<Eigen::VectorXd>(devs.data(), static_cast<long>(devs.size()));
    out.secular_residual = out.deviations.size() == 0
                               ? 0.0
                               : out.deviations.cwiseAbs().maxCoeff() / std::max(scale, 1e-300);
    return out;
}

Eigen::Vector2d fit_linear_growth(const TranslationSurface& surf, const DisplacementField& field,
                                  const CellGrid& grid) {
    if (grid.cells_x < 3 || grid.cells_y < 3)
        throw std::invalid_argument("insufficient support for fit");
    const OutOfPlane helper(surf, field); // reuse plane coordinates
    const int ncell = grid.cells_x * grid.cells_y;
    const size_t nx = grid.nodes_x.size(), ny = grid.nodes_y.size();
    const double cell_area = grid.Tx * grid.Ty;

    Eigen::MatrixXd A(ncell, 3);
    Eigen::VectorXd b1(ncell), b2(ncell);
    for (int cj = 0; cj < grid.cells_y; ++cj) {
        for (int ci = 0; ci < grid.cells_x; ++ci) {
            const int cell = cj * grid.cells_x + ci;
            Eigen::Vector3d avg = Eigen::Vector3d::Zero();
            double avg1 = 0.0, avg2 = 0.0;
            for (size_t jy = 0; jy < ny; ++jy) {
                const double y = grid.y0 + cj * grid.Ty + grid.nodes_y[jy];
                for (size_t jx = 0; jx < nx; ++jx) {
                    const double x = grid.x0 + ci * grid.Tx + grid.nodes_x[jx];
                    const double wgt = grid.wts_x[jx] * grid.wts_y[jy];
                    const Eigen::Vector2d q = helper.plane_coords(x, y);
                    const Vec3 d = field.canonical(x, y);
                    avg += wgt * Eigen::Vector3d(1.0, q.x(), q.y());
                    avg1 += wgt * d.dot(helper.in_plane_1());
                    avg2 += wgt * d.dot(helper.in_plane_2());
                }
            }
            A.row(cell) = (avg / cell_area).transpose();
            b1(cell) = avg1 / cell_area;
            b2(cell) = avg2 / cell_area;
        }
    }
    const Eigen::Vector3d s1 = A.colPivHouseholderQr().solve(b1);
    const Eigen::Vector3d s2 = A.colPivHouseholderQr().solve(b2);
    return Eigen::Vector2d(s1(1), s2(2)); // slope of d1 vs x, slope of d2 vs y
}

} // namespace sot::detail
