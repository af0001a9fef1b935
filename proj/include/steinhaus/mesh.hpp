#pragma once

#include <array>
#include <string>
#include <vector>

#include "steinhaus/norms.hpp"

namespace steinhaus {

struct SurfaceMesh {
    int grid = 0;                         // per-sector resolution
    std::vector<int> sectors;             // which square sectors (1..4)
    std::vector<std::array<double, 3>> vertices; // row-major per sector: (i, j) -> sector*(g+1)^2 + i*(g+1) + j
};

/// Samples the upper boundary surface of the custom ball over the selected
/// square sectors (1 = top triangle, then clockwise). Each sector is swept
/// by rays: vertex(i, j) = (j/g) * edge_point(-1 + 2i/g), lifted to the
/// surface. Every vertex has gauge 1 within the bisection tolerance.
SurfaceMesh custom_surface_mesh(const Custom3DParams& params, const std::vector<int>& sectors,
                                int grid);

/// CSV with an `x,y,z` header line and one vertex per row; byte-identical
/// across runs (shortest round-trip decimals).
std::string mesh_to_csv(const SurfaceMesh& mesh);

/// Orthographic wireframe of the parameter grid lines.
std::string mesh_to_svg(const SurfaceMesh& mesh);

/// Closed polyline tracing the 2-D unit sphere of an l_p / l_inf norm.
std::vector<std::array<double, 2>> sphere_polyline_2d(const NormSpec& spec, int segments);

std::string polyline_to_svg(const std::vector<std::array<double, 2>>& poly);

} // namespace steinhaus
