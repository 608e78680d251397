#ifndef SOT_CELLFIT_HPP
#define SOT_CELLFIT_HPP

#include "sot/isometry.hpp"

#include <Eigen/Dense>

namespace sot::detail {

// Quadrature template for one period cell, replicated across the grid.
// Nodes are Gauss-Legendre points packed panel by panel so averages of
// creased integrands stay exact.
struct CellGrid {
    double x0 = 0.0, y0 = 0.0;
    double Tx = 1.0, Ty = 1.0;
    int cells_x = 0, cells_y = 0;
    std::vector<double> nodes_x, wts_x; // within [0, Tx], weights sum to Tx
    std::vector<double> nodes_y, wts_y;
};

CellGrid make_cell_grid(const TranslationSurface& surf, int cells_x, int cells_y);

struct QuadFitOutcome {
    double cxx = 0, cyy = 0, cxy = 0, cx = 0, cy = 0, c0 = 0;
    double secular_residual = 0;  // max deviation-from-periodicity of the remainder / scale
    Eigen::VectorXd deviations;   // raw periodic-deviation samples of the remainder
    double scale = 0;             // max |d.N| over the sampled nodes
};

// Out-of-plane component d.N of a displacement field, N being the cross
// product of the period-averaged tangents.
class OutOfPlane {
public:
    OutOfPlane(const TranslationSurface& surf, const DisplacementField& field);
    double operator()(double x, double y) const;
    // cartesian in-plane coordinates serving as fit regressors
    Eigen::Vector2d plane_coords(double x, double y) const;
    const Vec3& in_plane_1() const { return e1_; }
    const Vec3& in_plane_2() const { return e2_; }

private:
    const TranslationSurface& surf_;
    const DisplacementField& field_;
    double cu_, cv_, cw_; // weights of (u,v,w) in d.N
    Vec3 e1_, e2_;        // in-plane directions
};

QuadFitOutcome fit_quadratic_cells(const TranslationSurface& surf, const DisplacementField& field,
                                   const CellGrid& grid);

// Least-squares slopes of the canonical displacement against the in-plane
// cartesian coordinates: first component against x, second against y.
Eigen::Vector2d fit_linear_growth(const TranslationSurface& surf, const DisplacementField& field,
                                  const CellGrid& grid);

} // namespace sot::detail

#endif
