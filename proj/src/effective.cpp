#include "sot/effective.hpp"

#include "cellfit.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace sot {

EffectiveProps effective_strain(const TranslationSurface& surf) {
    if (!surf.periodic_x() || !surf.periodic_y())
        throw std::domain_error("effective strain requires periodic profiles");
    if (surf.beta().min_abs_rotated_tangent(surf.cos_theta(), surf.sin_theta()) < 1e-9)
        throw std::domain_error("critical inclination");

    EffectiveProps p;
    p.theta = surf.theta();
    const double Tx = surf.period_x(), Ty = surf.period_y();
    const Fn ra = (surf.a2() * surf.a2()).divided_by(surf.a1());
    const Fn rb = (surf.b2() * surf.b2()).divided_by(surf.b1());
    p.mean_a2sq = ra.average(Tx);
    p.mean_rb = rb.average(Ty);
    p.mean_b1 = surf.b1().average(Ty);
    p.mean_b2 = surf.b2().average(Ty);

    const double c = surf.cos_theta(), s = surf.sin_theta();
    p.E.setZero();
    p.E(0, 0) = -p.mean_a2sq;
    p.E(1, 1) = c * p.mean_rb + s * p.mean_b2;
    p.nu = std::abs(p.E(1, 1)) < 1e-300 ? std::numeric_limits<double>::quiet_NaN()
                                        : -p.E(0, 0) / p.E(1, 1);
    return p;
}

double poisson(const TranslationSurface& surf) {
    const EffectiveProps p = effective_strain(surf);
    if (std::abs(p.E(1, 1)) < 1e-14 * std::max(1.0, std::abs(p.E(0, 0))))
        throw std::domain_error("Poisson undefined at transition");
    return -p.E(0, 0) / p.E(1, 1);
}

double critical_theta(const ProfileCurve& path) {
    auto h = [&](double theta) {
        return path.min_rotated_tangent(std::cos(theta), std::sin(theta));
    };
    const double hi = M_PI / 2;
    const int n = 4096;
    double prev_t = 0.0;
    double prev_h = h(prev_t);
    double lo_b = -1.0, hi_b = -1.0;
    for (int i = 1; i <= n; ++i) {
        const double t = hi * static_cast<double>(i) / n;
        const double ht = h(t);
        if (prev_h > 0.0 && ht <= 0.0) {
            lo_b = prev_t;
            hi_b = t;
            break;
        }
        prev_t = t;
        prev_h = ht;
    }
    if (lo_b < 0.0) throw std::domain_error("no transition");
    for (int it = 0; it < 120; ++it) {
        const double mid = 0.5 * (lo_b + hi_b);
        if (h(mid) > 0.0)
            lo_b = mid;
        else
            hi_b = mid;
        if (hi_b - lo_b < 1e-14) break;
    }
    return 0.5 * (lo_b + hi_b);
}

QuadraticFit fit_quadratic_out_of_plane(const DisplacementField& field,
                                        const TranslationSurface& surf, int cells_x, int cells_y) {
    if (cells_x < 3 || cells_y < 3) throw std::invalid_argument("insufficient support for fit");
    const detail::CellGrid grid = detail::make_cell_grid(surf, cells_x, cells_y);
    const detail::QuadFitOutcome out = detail::fit_quadratic_cells(surf, field, grid);
    QuadraticFit f;
    f.cxx = out.cxx;
    f.cyy = out.cyy;
    f.cxy = out.cxy;
    f.cx = out.cx;
    f.cy = out.cy;
    f.c0 = out.c0;
    f.secular_residual = out.secular_residual;
    return f;
}

Eigen::Vector2d stretch_growth_fit(const TranslationSurface& surf, const DisplacementField& field,
                                   int cells_x, int cells_y) {
    if (cells_x < 3 || cells_y < 3) throw std::invalid_argument("insufficient support for fit");
    const detail::CellGrid grid = detail::make_cell_grid(surf, cells_x, cells_y);
    return detail::fit_linear_growth(surf, field, grid);
}

} // namespace sot
