#ifndef SOT_MESH_HPP
#define SOT_MESH_HPP

#include "sot/isometry.hpp"

#include <array>
#include <string>

namespace sot {

/// Structured, crease-aligned quad mesh. Grid lines sit exactly on every
/// crease parameter so no facet straddles a crease.
struct QuadMesh {
    std::vector<Vec3> vertices;
    std::vector<Vec2> params; // (x,y) parameter of each vertex
    std::vector<std::array<int, 4>> quads;
    std::vector<double> grid_x, grid_y;
    std::vector<bool> crease_x, crease_y; // per grid line

    int nx() const { return static_cast<int>(grid_x.size()); }
    int ny() const { return static_cast<int>(grid_y.size()); }
    /// 1 when any edge of the quad lies on a crease line.
    int quad_crease_flag(size_t q) const;
};

/// Samples the surface over its domain. `res_per_period` counts grid cells
/// per period and direction; it must resolve every smooth panel.
QuadMesh sample_mesh(const TranslationSurface& surf, int res_per_period);

/// Vertices moved to r + eps*d (canonical basis).
QuadMesh deflect(const QuadMesh& mesh, const DisplacementField& field, double eps);

double max_displacement(const QuadMesh& mesh, const DisplacementField& field);

/// Amplitude making the largest deflection a tenth of the bounding-box
/// diagonal.
double auto_eps(const QuadMesh& mesh, const DisplacementField& field);

/// Largest distance of a quad corner from the best plane through the other
/// three, over all facets.
double max_quad_planarity_deviation(const QuadMesh& mesh);

void write_obj(const QuadMesh& mesh, const std::string& path);
void write_vtk(const QuadMesh& mesh, const std::string& path);

} // namespace sot

#endif
