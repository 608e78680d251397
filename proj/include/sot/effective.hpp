#ifndef SOT_EFFECTIVE_HPP
#define SOT_EFFECTIVE_HPP

#include "sot/isometry.hpp"

namespace sot {

/// Homogenized description of the stretching solution: diagonal effective
/// strain, Poisson coefficient, and the period averages they come from.
struct EffectiveProps {
    Matrix2 E;
    double nu = 0.0;
    double theta = 0.0;
    double mean_a2sq = 0.0; // <a2^2/a1>
    double mean_rb = 0.0;   // <b2^2/b1>
    double mean_b1 = 0.0;
    double mean_b2 = 0.0;
};

EffectiveProps effective_strain(const TranslationSurface& surf);
double poisson(const TranslationSurface& surf);

/// Smallest inclination in (0, pi/2) at which the path tangent touches the
/// planes' intersection (the sign change of the effective transverse strain).
/// Throws "no transition" when the tangent stays clear on the whole range.
double critical_theta(const ProfileCurve& path);

struct QuadraticFit {
    double cxx = 0, cyy = 0, cxy = 0; // quadratic coefficients of d.N
    double cx = 0, cy = 0, c0 = 0;
    double secular_residual = 0; // periodicity defect of the remainder, relative
};

/// Least-squares fit of the out-of-plane displacement component against
/// {1, x, y, x^2, xy, y^2} in the in-plane cartesian coordinates, sampled as
/// per-cell averages over an integer-period grid. Needs at least 3x3 cells.
QuadraticFit fit_quadratic_out_of_plane(const DisplacementField& field,
                                        const TranslationSurface& surf, int cells_x, int cells_y);

/// Slopes of the stretch displacement against the in-plane coordinates,
/// fitted over the given cell grid: returns (E11_fit, E22_fit).
Eigen::Vector2d stretch_growth_fit(const TranslationSurface& surf, const DisplacementField& field,
                                   int cells_x, int cells_y);

} // namespace sot

#endif
