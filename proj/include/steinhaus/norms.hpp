#pragma once

#include <array>
#include <limits>
#include <string>
#include <vector>

#include "steinhaus/rng.hpp"
#include "steinhaus/vec.hpp"

namespace steinhaus {

/// Relative tolerance for gauge computations ("the unit sphere" means
/// |norm - 1| <= tau_gauge everywhere in this library).
inline constexpr double tau_gauge = 1e-12;

enum class NormKind { Lp, Linf, Custom3D };

/// Flattening parameters of the custom 3-D norm.
///
/// The unit ball has the square with vertices (+-1,+-1,0) as its equator,
/// apexes at (0,0,+-1), and an upper surface
///
///     h(x,y) = min( 1 - q^alpha0,  kappa0*t_k - c_f*t_k^2 / beta_k(u_k) )
///
/// where q = max(|x|,|y|), t_k is the inward distance from square edge k and
/// u_k the coordinate along it. beta_k interpolates the corner values
/// linearly; it controls how flat the surface leaves edge k at second order
/// (larger beta = flatter). The equator slope kappa0 is a single global
/// constant -- a convex body cannot vary its first-order slope along a
/// straight boundary segment -- so it is the curvature profile beta that
/// distinguishes points of the same edge. Every piece of the min is concave
/// for any corner values > 1, hence the body is convex by construction.
///
/// Corners are listed clockwise starting at (-1,1); edge k joins corner k to
/// corner k+1 (edge 1 is the top edge y = 1).
struct Custom3DParams {
    std::array<double, 4> beta_corners{1.25, 1.75, 2.25, 1.75};

    /// Linear interpolant of the corner values on edge k (1..4), s in [-1,1].
    double edge_beta(int edge, double s) const;

    double alpha0() const { return 0.5 * (beta_corners[0] + beta_corners[1]); } // cap exponent
    double kappa0() const { return (1.0 + 4.0 * alpha0()) / 5.0; }              // equator slope
    double curvature_scale() const;                                             // c_f

    /// Throws std::invalid_argument unless all corners are > 1 and adjacent
    /// corners are pairwise distinct (strict monotonicity on every edge).
    void validate() const;
};

/// A concrete norm: l_p (p >= 1), l_inf, or the custom 3-D gauge.
struct NormSpec {
    NormKind kind = NormKind::Lp;
    double p = 2.0;
    int dim = 2;
    Custom3DParams custom{};

    static NormSpec lp(double p, int dim);
    static NormSpec linf(int dim);
    static NormSpec custom3d(Custom3DParams params = {});

    /// Per-axis bounds b_j with the unit ball inside prod [-b_j, b_j].
    std::vector<double> outer_box() const;

    /// Canonical name: "l2", "l1.5", "linf", "custom3d;beta=a,b,c,d".
    std::string name() const;
    /// Inverse of name(); also accepts bare "custom3d" (default corners).
    static NormSpec parse(const std::string& name, int dim);

    bool operator==(const NormSpec& o) const;
};

/// ||v|| under `spec`. Errors on dimension mismatch or non-finite input.
double norm_eval(const NormSpec& spec, std::span<const double> v);

/// The scalar lambda > 0 with ||lambda v|| = 1 (gauge inversion). For the
/// custom norm this brackets and bisects the surface-membership predicate
/// along the ray through v; closed form otherwise. Errors on v = 0.
double boundary_scale(const NormSpec& spec, std::span<const double> v);

/// Height of the custom upper surface over (x,y) in the closed square
/// [-1,1]^2: 0 on the square's boundary, 1 at the origin.
double example_surface_height(double x, double y, const Custom3DParams& params);

/// The per-edge flattening profile beta_k(s) (the linear corner
/// interpolant); strictly monotone in s on each edge.
double edge_tangent_slope(int edge, double s, const Custom3DParams& params);

/// `count` gauge-normalized random directions; deterministic given the rng
/// state. Every result satisfies |norm - 1| <= tau_gauge.
std::vector<Vec> sample_unit_sphere(const NormSpec& spec, Rng& rng, int count);

} // namespace steinhaus
