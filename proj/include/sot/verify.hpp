#ifndef SOT_VERIFY_HPP
#define SOT_VERIFY_HPP

#include "sot/isometry.hpp"
#include "sot/mesh.hpp"

#include <span>

namespace sot {

struct GridSpec {
    int nx = 41, ny = 41;
    double offset_frac = 1e-6; // inset from creases, as a fraction of panel width
};

/// Deterministic sample coordinates strictly inside the smooth panels.
std::vector<double> interior_samples(const std::vector<double>& panel_lines, int n,
                                     double offset_frac);

struct ResidualReport {
    double max_c1 = 0, max_c2 = 0, max_c3 = 0; // the three constraint residuals
    double scale = 0;                          // max(|d_x|, |d_y|) over the grid
    double max_normalized = 0;
    double worst_x = 0, worst_y = 0;
};

/// Residuals of the first-order isometry constraints on an interior grid.
ResidualReport isometry_residual(const TranslationSurface& surf, const DisplacementField& field,
                                 const GridSpec& grid = {});

struct OrderReport {
    std::vector<double> eps;
    std::vector<double> max_metric_change;
    std::vector<double> ratios; // successive max changes; ~4 for eps halving
};

/// Metric change of the finitely deflected surface, tangents taken by central
/// finite differences, for a list of amplitudes. Verifies the second-order
/// vanishing of the strain.
OrderReport perturbation_order(const TranslationSurface& surf, const DisplacementField& field,
                               std::span<const double> eps_list, int n = 15);

/// Max relative edge-length change between two meshes of identical
/// connectivity; facet diagonals are scanned along with the quad edges.
double edge_length_check(const QuadMesh& reference, const QuadMesh& deflected);

struct RigidFit {
    Vec3 translation = Vec3::Zero();
    Vec3 rotation = Vec3::Zero();
    Vec3 eval(const Vec3& point) const { return translation + rotation.cross(point); }
};

/// Least-squares infinitesimal rigid motion matching the given values at the
/// given points.
RigidFit fit_rigid(std::span<const Vec3> points, std::span<const Vec3> values);

std::string format_report(const ResidualReport& r);
std::string format_report(const OrderReport& r);

} // namespace sot

#endif
