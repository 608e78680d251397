#include "sot/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace sot {

namespace {

// Grid lines along one axis: every crease, plus a uniform subdivision of each
// panel sized from the requested cells-per-period.
std::vector<double> axis_lines(const std::vector<double>& panels, double period, int res) {
    if (panels.size() < 2) throw std::invalid_argument("degenerate axis");
    const int panels_per_period = [&] {
        if (period <= 0.0) return static_cast<int>(panels.size()) - 1;
        int count = 0;
        for (size_t i = 0; i + 1 < panels.size(); ++i)
            if (panels[i] < panels.front() + period - 1e-12) ++count;
        return std::max(count, 1);
    }();
    if (res < panels_per_period) throw std::invalid_argument("resolution too low");
    const double T = period > 0.0 ? period : panels.back() - panels.front();
    std::vector<double> lines;
    for (size_t i = 0; i + 1 < panels.size(); ++i) {
        const double a = panels[i], b = panels[i + 1];
        const int k = std::max(1, static_cast<int>(std::llround(res * (b - a) / T)));
        for (int j = 0; j < k; ++j) lines.push_back(a + (b - a) * j / k);
    }
    lines.push_back(panels.back());
    return lines;
}

} // namespace

int QuadMesh::quad_crease_flag(size_t q) const {
    const auto& f = quads[q];
    const int nxv = nx();
    const int ix = f[0] % nxv, iy = f[0] / nxv;
    return (crease_x[ix] || crease_x[ix + 1] || crease_y[iy] || crease_y[iy + 1]) ? 1 : 0;
}

QuadMesh sample_mesh(const TranslationSurface& surf, int res_per_period) {
    QuadMesh m;
    m.grid_x = axis_lines(surf.panel_lines_x(), surf.period_x(), res_per_period);
    m.grid_y = axis_lines(surf.panel_lines_y(), surf.period_y(), res_per_period);
    m.crease_x.resize(m.grid_x.size());
    m.crease_y.resize(m.grid_y.size());
    for (size_t i = 0; i < m.grid_x.size(); ++i) m.crease_x[i] = surf.alpha().is_crease(m.grid_x[i]);
    for (size_t j = 0; j < m.grid_y.size(); ++j) m.crease_y[j] = surf.beta().is_crease(m.grid_y[j]);

    const int nx = m.nx(), ny = m.ny();
    m.vertices.reserve(static_cast<size_t>(nx) * ny);
    m.params.reserve(static_cast<size_t>(nx) * ny);
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) {
            m.vertices.push_back(surf.position(m.grid_x[i], m.grid_y[j]));
            m.params.emplace_back(m.grid_x[i], m.grid_y[j]);
        }
    m.quads.reserve(static_cast<size_t>(nx - 1) * (ny - 1));
    for (int j = 0; j + 1 < ny; ++j)
        for (int i = 0; i + 1 < nx; ++i)
            m.quads.push_back({j * nx + i, j * nx + i + 1, (j + 1) * nx + i + 1, (j + 1) * nx + i});
    return m;
}

QuadMesh deflect(const QuadMesh& mesh, const DisplacementField& field, double eps) {
    QuadMesh out = mesh;
    for (size_t k = 0; k < mesh.vertices.size(); ++k)
        out.vertices[k] = mesh.vertices[k] +
                          eps * field.canonical(mesh.params[k].x(), mesh.params[k].y());
    return out;
}

double max_displacement(const QuadMesh& mesh, const DisplacementField& field) {
    double m = 0.0;
    for (const Vec2& p : mesh.params) m = std::max(m, field.canonical(p.x(), p.y()).norm());
    return m;
}

double auto_eps(const QuadMesh& mesh, const DisplacementField& field) {
    Vec3 lo = mesh.vertices.front(), hi = lo;
    for (const Vec3& v : mesh.vertices) {
        lo = lo.cwiseMin(v);
        hi = hi.cwiseMax(v);
    }
    const double diag = (hi - lo).norm();
    const double dmax = max_displacement(mesh, field);
    if (dmax <= 0.0) return 0.0;
    return 0.1 * diag / dmax;
}

double max_quad_planarity_deviation(const QuadMesh& mesh) {
    double worst = 0.0;
    for (const auto& f : mesh.quads) {
        const Vec3& a = mesh.vertices[f[0]];
        const Vec3& b = mesh.vertices[f[1]];
        const Vec3& c = mesh.vertices[f[2]];
        const Vec3& d = mesh.vertices[f[3]];
        const Vec3 n = (b - a).cross(d - a);
        const double nn = n.norm();
        if (nn <= 0.0) continue;
        worst = std::max(worst, std::abs((c - a).dot(n)) / nn);
    }
    return worst;
}

void write_obj(const QuadMesh& mesh, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot write " + path);
    char buf[256];
    for (const Vec3& v : mesh.vertices) {
        std::snprintf(buf, sizeof buf, "v %.17g %.17g %.17g\n", v.x(), v.y(), v.z());
        os << buf;
    }
    for (const auto& f : mesh.quads)
        os << "f " << f[0] + 1 << ' ' << f[1] + 1 << ' ' << f[2] + 1 << ' ' << f[3] + 1 << '\n';
    if (!os.good()) throw std::runtime_error("write failed: " + path);
}

void write_vtk(const QuadMesh& mesh, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot write " + path);
    os << "# vtk DataFile Version 3.0\n";
    os << "surface of translation quad mesh\n";
    os << "ASCII\n";
    os << "DATASET UNSTRUCTURED_GRID\n";
    os << "POINTS " << mesh.vertices.size() << " double\n";
    char buf[256];
    for (const Vec3& v : mesh.vertices) {
        std::snprintf(buf, sizeof buf, "%.17g %.17g %.17g\n", v.x(), v.y(), v.z());
        os << buf;
    }
    os << "CELLS " << mesh.quads.size() << ' ' << 5 * mesh.quads.size() << '\n';
    for (const auto& f : mesh.quads)
        os << "4 " << f[0] << ' ' << f[1] << ' ' << f[2] << ' ' << f[3] << '\n';
    os << "CELL_TYPES " << mesh.quads.size() << '\n';
    for (size_t q = 0; q < mesh.quads.size(); ++q) os << "9\n";
    os << "CELL_DATA " << mesh.quads.size() << '\n';
    os << "SCALARS crease int 1\n";
    os << "LOOKUP_TABLE default\n";
    for (size_t q = 0; q < mesh.quads.size(); ++q) os << mesh.quad_crease_flag(q) << '\n';
    if (!os.good()) throw std::runtime_error("write failed: " + path);
}

} // namespace sot
