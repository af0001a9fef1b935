#include "steinhaus/norms.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <stdexcept>

#include "steinhaus/io_util.hpp"

namespace steinhaus {

double Custom3DParams::edge_beta(int edge, double s) const {
    if (edge < 1 || edge > 4) throw std::invalid_argument("edge index must be 1..4");
    if (s < -1.0 - 1e-12 || s > 1.0 + 1e-12)
        throw std::invalid_argument("edge parameter outside [-1,1]");
    double a = beta_corners[static_cast<size_t>(edge - 1)];
    double b = beta_corners[static_cast<size_t>(edge % 4)];
    return 0.5 * ((1.0 - s) * a + (1.0 + s) * b);
}

double Custom3DParams::curvature_scale() const {
    double a0 = alpha0();
    double k0 = kappa0();
    double minmid = std::numeric_limits<double>::infinity();
    for (int e = 1; e <= 4; ++e) minmid = std::min(minmid, edge_beta(e, 0.0));
    double slack_apex = (k0 - 1.0) * minmid;
    double slack_cap = 4.0 * edge_beta(1, 0.0) * (0.5 * k0 - 1.0 + std::pow(2.0, -a0));
    return 0.9 * std::min(slack_apex, slack_cap);
}

void Custom3DParams::validate() const {
    for (double c : beta_corners) {
        if (!std::isfinite(c) || c <= 1.0)
            throw std::invalid_argument("beta corner values must be > 1");
    }
    for (int e = 0; e < 4; ++e) {
        if (beta_corners[static_cast<size_t>(e)] == beta_corners[static_cast<size_t>((e + 1) % 4)])
            throw std::invalid_argument("adjacent beta corners must differ (strict monotonicity)");
    }
}

NormSpec NormSpec::lp(double p, int dim) {
    if (!(p >= 1.0) || !std::isfinite(p)) throw std::invalid_argument("l_p requires p >= 1");
    if (dim < 1) throw std::invalid_argument("dim must be >= 1");
    NormSpec s;
    s.kind = NormKind::Lp;
    s.p = p;
    s.dim = dim;
    return s;
}

NormSpec NormSpec::linf(int dim) {
    if (dim < 1) throw std::invalid_argument("dim must be >= 1");
    NormSpec s;
    s.kind = NormKind::Linf;
    s.dim = dim;
    return s;
}

NormSpec NormSpec::custom3d(Custom3DParams params) {
    params.validate();
    NormSpec s;
    s.kind = NormKind::Custom3D;
    s.dim = 3;
    s.custom = params;
    return s;
}

std::vector<double> NormSpec::outer_box() const {
    if (kind == NormKind::Custom3D) return {std::sqrt(2.0), std::sqrt(2.0), 1.0};
    return std::vector<double>(static_cast<size_t>(dim), 1.0);
}

std::string NormSpec::name() const {
    switch (kind) {
    case NormKind::Linf: return "linf";
    case NormKind::Lp: return "l" + format_double(p);
    case NormKind::Custom3D: {
        std::string s = "custom3d;beta=";
        for (int i = 0; i < 4; ++i) {
            if (i) s += ',';
            s += format_double(custom.beta_corners[static_cast<size_t>(i)]);
        }
        return s;
    }
    }
    throw std::logic_error("unreachable");
}

NormSpec NormSpec::parse(const std::string& name, int dim) {
    if (name == "linf") return linf(dim);
    if (name.rfind("custom3d", 0) == 0) {
        if (dim != 3) throw std::invalid_argument("custom3d forces dim = 3");
        Custom3DParams params;
        auto pos = name.find(";beta=");
        if (pos != std::string::npos) {
            const char* s = name.c_str() + pos + 6;
            const char* end = name.c_str() + name.size();
            for (int i = 0; i < 4; ++i) {
                double v;
                auto r = std::from_chars(s, end, v);
                if (r.ec != std::errc{}) throw std::invalid_argument("bad beta list in norm name");
                params.beta_corners[static_cast<size_t>(i)] = v;
                s = r.ptr;
                if (i < 3) {
                    if (s == end || *s != ',') throw std::invalid_argument("bad beta list in norm name");
                    ++s;
                }
            }
            if (s != end) throw std::invalid_argument("trailing junk in norm name");
        } else if (name != "custom3d") {
            throw std::invalid_argument("unknown norm name: " + name);
        }
        return custom3d(params);
    }
    if (!name.empty() && name[0] == 'l') {
        double p;
        const char* s = name.c_str() + 1;
        const char* end = name.c_str() + name.size();
        auto r = std::from_chars(s, end, p);
        if (r.ec == std::errc{} && r.ptr == end) return lp(p, dim);
    }
    throw std::invalid_argument("unknown norm name: " + name);
}

bool NormSpec::operator==(const NormSpec& o) const {
    if (kind != o.kind || dim != o.dim) return false;
    if (kind == NormKind::Lp && p != o.p) return false;
    if (kind == NormKind::Custom3D && custom.beta_corners != o.custom.beta_corners) return false;
    return true;
}

// --- custom 3-D gauge ------------------------------------------------------

namespace {

// Frame of edge k: (u, v) with the edge line at v = 1.
inline void edge_frame(int edge, double x, double y, double& u, double& v) {
    switch (edge) {
    case 1: u = x; v = y; break;
    case 2: u = -y; v = x; break;
    case 3: u = -x; v = -y; break;
    default: u = y; v = -x; break;
    }
}

struct CustomDerived {
    double alpha0, kappa0, cf;
    const Custom3DParams* params;
};

inline double upper_height(const CustomDerived& d, double x, double y) {
    double q = std::max(std::fabs(x), std::fabs(y));
    double h = 1.0 - std::pow(q, d.alpha0);
    for (int k = 1; k <= 4; ++k) {
        double u, v;
        edge_frame(k, x, y, u, v);
        double t = 1.0 - v;
        double strip = d.kappa0 * t - d.cf * t * t / d.params->edge_beta(k, u);
        h = std::min(h, strip);
    }
    return h;
}

// Membership in the (closed) unit ball. Points with z < 0 are reflected
// through the origin.
inline bool custom_inside(const CustomDerived& d, double x, double y, double z) {
    if (z < 0.0) { x = -x; y = -y; z = -z; }
    if (std::max(std::fabs(x), std::fabs(y)) > 1.0) return false;
    if (z == 0.0) return true;
    return z <= upper_height(d, x, y);
}

double custom_boundary_scale(const Custom3DParams& params, double x, double y, double z) {
    CustomDerived d{params.alpha0(), params.kappa0(), params.curvature_scale(), &params};
    double m2 = std::max(std::fabs(x), std::fabs(y));
    if (z == 0.0) return 1.0 / m2; // the equator slice is the l_inf square
    if (m2 == 0.0) return 1.0 / std::fabs(z); // apex ray
    double m = std::max(m2, std::fabs(z));
    double lo = 0.0, hi = 1.0 / m; // gauge >= max coordinate, so hi is on or outside
    for (int it = 0; it < 200 && (hi - lo) > 1e-15 * hi; ++it) {
        double mid = 0.5 * (lo + hi);
        if (custom_inside(d, mid * x, mid * y, mid * z))
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace

double example_surface_height(double x, double y, const Custom3DParams& params) {
    if (!std::isfinite(x) || !std::isfinite(y)) throw std::invalid_argument("non-finite coordinate");
    if (std::fabs(x) > 1.0 || std::fabs(y) > 1.0)
        throw std::invalid_argument("point outside the square [-1,1]^2");
    CustomDerived d{params.alpha0(), params.kappa0(), params.curvature_scale(), &params};
    return upper_height(d, x, y);
}

double edge_tangent_slope(int edge, double s, const Custom3DParams& params) {
    return params.edge_beta(edge, s);
}

double boundary_scale(const NormSpec& spec, std::span<const double> v) {
    if (static_cast<int>(v.size()) != spec.dim) throw std::invalid_argument("dimension mismatch");
    check_finite(v);
    if (is_zero(v)) throw std::invalid_argument("boundary_scale of the zero vector");
    switch (spec.kind) {
    case NormKind::Linf: return 1.0 / max_abs(v);
    case NormKind::Lp: {
        double n = norm_eval(spec, v);
        return 1.0 / n;
    }
    case NormKind::Custom3D: return custom_boundary_scale(spec.custom, v[0], v[1], v[2]);
    }
    throw std::logic_error("unreachable");
}

double norm_eval(const NormSpec& spec, std::span<const double> v) {
    if (static_cast<int>(v.size()) != spec.dim) throw std::invalid_argument("dimension mismatch");
    check_finite(v);
    switch (spec.kind) {
    case NormKind::Linf: return max_abs(v);
    case NormKind::Lp: {
        if (spec.p == 2.0) {
            double s = 0.0;
            for (double c : v) s += c * c;
            return std::sqrt(s);
        }
        if (spec.p == 1.0) {
            double s = 0.0;
            for (double c : v) s += std::fabs(c);
            return s;
        }
        // scale out the max to avoid overflow for large coordinates
        double m = max_abs(v);
        if (m == 0.0) return 0.0;
        double s = 0.0;
        for (double c : v) s += std::pow(std::fabs(c) / m, spec.p);
        return m * std::pow(s, 1.0 / spec.p);
    }
    case NormKind::Custom3D: {
        if (is_zero(v)) return 0.0;
        return 1.0 / custom_boundary_scale(spec.custom, v[0], v[1], v[2]);
    }
    }
    throw std::logic_error("unreachable");
}

std::vector<Vec> sample_unit_sphere(const NormSpec& spec, Rng& rng, int count) {
    if (count < 1) throw std::invalid_argument("count must be >= 1");
    std::vector<Vec> out;
    out.reserve(static_cast<size_t>(count));
    while (static_cast<int>(out.size()) < count) {
        Vec d = rng.gauss_vec(spec.dim);
        if (is_zero(d)) continue;
        double lam = boundary_scale(spec, d);
        out.push_back(scale(d, lam));
    }
    return out;
}

} // namespace steinhaus
