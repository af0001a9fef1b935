#include "steinhaus/mesh.hpp"

#include <cmath>
#include <stdexcept>

#include "steinhaus/io_util.hpp"

namespace steinhaus {

namespace {

// Edge point of sector k at parameter s in [-1,1], global coordinates.
std::array<double, 2> sector_edge_point(int sector, double s) {
    switch (sector) {
    case 1: return {s, 1.0};
    case 2: return {1.0, -s};
    case 3: return {-s, -1.0};
    default: return {-1.0, s};
    }
}

} // namespace

SurfaceMesh custom_surface_mesh(const Custom3DParams& params, const std::vector<int>& sectors,
                                int grid) {
    if (grid < 1) throw std::invalid_argument("grid must be >= 1");
    if (sectors.empty()) throw std::invalid_argument("no sectors selected");
    for (int s : sectors)
        if (s < 1 || s > 4) throw std::invalid_argument("sector index must be 1..4");
    params.validate();

    SurfaceMesh mesh;
    mesh.grid = grid;
    mesh.sectors = sectors;
    const int g1 = grid + 1;
    mesh.vertices.reserve(sectors.size() * static_cast<size_t>(g1) * static_cast<size_t>(g1));
    for (int sector : sectors) {
        for (int i = 0; i <= grid; ++i) {
            double s = -1.0 + 2.0 * i / grid;
            auto e = sector_edge_point(sector, s);
            for (int j = 0; j <= grid; ++j) {
                double frac = static_cast<double>(j) / grid;
                double x = frac * e[0], y = frac * e[1];
                mesh.vertices.push_back({x, y, example_surface_height(x, y, params)});
            }
        }
    }
    return mesh;
}

std::string mesh_to_csv(const SurfaceMesh& mesh) {
    std::string out = "x,y,z\n";
    for (const auto& v : mesh.vertices) {
        out += format_double(v[0]);
        out += ',';
        out += format_double(v[1]);
        out += ',';
        out += format_double(v[2]);
        out += '\n';
    }
    return out;
}

namespace {

// fixed orthographic camera
std::array<double, 2> project(const std::array<double, 3>& p) {
    const double c30 = 0.8660254037844387, s30 = 0.5;
    double u = (p[0] - p[1]) * c30;
    double v = p[2] + (p[0] + p[1]) * s30 * 0.5;
    return {u, -v}; // SVG y grows downward
}

void svg_path(std::string& out, const std::vector<std::array<double, 2>>& pts, bool close) {
    out += "<path d=\"";
    for (size_t i = 0; i < pts.size(); ++i) {
        out += (i == 0) ? "M " : "L ";
        out += format_double(pts[i][0]);
        out += ' ';
        out += format_double(pts[i][1]);
        out += ' ';
    }
    if (close) out += "Z";
    out += "\" fill=\"none\" stroke=\"black\" stroke-width=\"0.004\"/>\n";
}

std::string svg_document(const std::vector<std::vector<std::array<double, 2>>>& paths, bool close) {
    double x0 = 1e30, y0 = 1e30, x1 = -1e30, y1 = -1e30;
    for (const auto& p : paths)
        for (const auto& q : p) {
            x0 = std::min(x0, q[0]);
            y0 = std::min(y0, q[1]);
            x1 = std::max(x1, q[0]);
            y1 = std::max(y1, q[1]);
        }
    double pad = 0.05 * std::max(x1 - x0, y1 - y0);
    std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"";
    out += format_double(x0 - pad) + " " + format_double(y0 - pad) + " " +
           format_double(x1 - x0 + 2 * pad) + " " + format_double(y1 - y0 + 2 * pad) + "\">\n";
    for (const auto& p : paths) svg_path(out, p, close);
    out += "</svg>\n";
    return out;
}

} // namespace

std::string mesh_to_svg(const SurfaceMesh& mesh) {
    const int g1 = mesh.grid + 1;
    std::vector<std::vector<std::array<double, 2>>> paths;
    for (size_t s = 0; s < mesh.sectors.size(); ++s) {
        const auto* base = mesh.vertices.data() + s * static_cast<size_t>(g1) * static_cast<size_t>(g1);
        for (int i = 0; i < g1; ++i) { // rays
            std::vector<std::array<double, 2>> p;
            for (int j = 0; j < g1; ++j) p.push_back(project(base[i * g1 + j]));
            paths.push_back(std::move(p));
        }
        for (int j = 1; j < g1; ++j) { // level arcs
            std::vector<std::array<double, 2>> p;
            for (int i = 0; i < g1; ++i) p.push_back(project(base[i * g1 + j]));
            paths.push_back(std::move(p));
        }
    }
    return svg_document(paths, false);
}

std::vector<std::array<double, 2>> sphere_polyline_2d(const NormSpec& spec, int segments) {
    if (spec.dim != 2) throw std::invalid_argument("sphere polyline needs dim = 2");
    if (segments < 4) throw std::invalid_argument("too few segments");
    if (spec.kind == NormKind::Linf) {
        return {{1, 1}, {1, -1}, {-1, -1}, {-1, 1}};
    }
    std::vector<std::array<double, 2>> poly;
    poly.reserve(static_cast<size_t>(segments));
    for (int i = 0; i < segments; ++i) {
        double th = 2.0 * M_PI * i / segments;
        Vec d{std::cos(th), std::sin(th)};
        double lam = boundary_scale(spec, d);
        poly.push_back({lam * d[0], lam * d[1]});
    }
    return poly;
}

std::string polyline_to_svg(const std::vector<std::array<double, 2>>& poly) {
    std::vector<std::array<double, 2>> flipped;
    flipped.reserve(poly.size());
    for (auto& p : poly) flipped.push_back({p[0], -p[1]});
    return svg_document({flipped}, true);
}

} // namespace steinhaus
