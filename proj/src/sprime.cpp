#include "steinhaus/sprime.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

namespace steinhaus {

using json = nlohmann::json;

std::string strategy_name(WitnessStrategy s) {
    switch (s) {
    case WitnessStrategy::segment: return "segment";
    case WitnessStrategy::tangent: return "tangent";
    case WitnessStrategy::random_search: return "random";
    }
    return "?";
}

namespace {

struct Attempt {
    long count = 0;
    double best = 0.0;
};

// Validates a candidate perturbation; fills the witness on success.
bool check_candidate(const NormSpec& spec, const Vec& x, const Vec& y, const Vec& z, double delta,
                     double tau_sep, const char* strat, Attempt& att, std::optional<Witness>& out) {
    ++att.count;
    double nz = norm_eval(spec, z);
    if (!(nz < delta)) return false;
    double nx = norm_eval(spec, add(x, z));
    double ny = norm_eval(spec, add(y, z));
    if ((nx - 1.0) * (ny - 1.0) < 0.0) {
        double sep = std::min(std::fabs(nx - 1.0), std::fabs(ny - 1.0));
        att.best = std::max(att.best, sep);
        if (sep >= tau_sep) {
            out = Witness{x, y, z, delta, nx, ny, strat};
            return true;
        }
    }
    return false;
}

// z = +-t (y-x)/||y-x||; for strictly convex norms the inner point of the
// segment dips below the sphere while the outer continuation leaves it.
bool segment_strategy(const NormSpec& spec, const Vec& x, const Vec& y, double delta,
                      double tau_sep, Attempt& att, std::optional<Witness>& out) {
    Vec d = sub(y, x);
    double nd = norm_eval(spec, d);
    if (nd == 0.0) return false;
    Vec u = scale(d, 1.0 / nd);
    double t0 = std::min(0.99 * delta, 0.5 * nd);
    for (int sign = 0; sign < 2; ++sign) {
        double t = t0;
        for (int j = 0; j < 40 && t > 1e-300; ++j, t *= 0.5) {
            Vec z = scale(u, sign == 0 ? t : -t);
            if (check_candidate(spec, x, y, z, delta, tau_sep, "segment", att, out)) return true;
        }
    }
    return false;
}

// Detects a point (a, +-1, 0)-style on one edge of the custom equator
// square; returns the edge index and parameter.
bool equator_edge_point(const Vec& p, int& edge, double& s) {
    if (p.size() != 3) return false;
    if (std::fabs(p[2]) > 1e-9) return false;
    double x = p[0], y = p[1];
    const double tol = 1e-9;
    if (std::fabs(y - 1.0) < tol && std::fabs(x) < 1.0 - tol) { edge = 1; s = x; return true; }
    if (std::fabs(x - 1.0) < tol && std::fabs(y) < 1.0 - tol) { edge = 2; s = -y; return true; }
    if (std::fabs(y + 1.0) < tol && std::fabs(x) < 1.0 - tol) { edge = 3; s = -x; return true; }
    if (std::fabs(x + 1.0) < tol && std::fabs(y) < 1.0 - tol) { edge = 4; s = y; return true; }
    return false;
}

// Rotates an edge-1-frame vector (du, dv, dz) into the global frame of edge k.
Vec from_edge_frame(int edge, double du, double dv, double dz) {
    switch (edge) {
    case 1: return {du, dv, dz};
    case 2: return {dv, -du, dz};
    case 3: return {-du, -dv, dz};
    default: return {-dv, du, dz};
    }
}

// Perturbation along the inward edge normal whose vertical component sits
// between the two curvature profiles c_f/beta: the flatter point leaves the
// ball, the steeper one enters.
bool tangent_strategy(const NormSpec& spec, const Vec& x, const Vec& y, double delta,
                      double tau_sep, Attempt& att, std::optional<Witness>& out) {
    if (spec.kind != NormKind::Custom3D) return false;
    int ex, ey;
    double sx, sy;
    if (!equator_edge_point(x, ex, sx) || !equator_edge_point(y, ey, sy)) return false;
    if (ex != ey || sx == sy) return false;

    const auto& params = spec.custom;
    double k0 = params.kappa0();
    double cf = params.curvature_scale();
    double gx = cf / params.edge_beta(ex, sx);
    double gy = cf / params.edge_beta(ex, sy);
    if (gx == gy) return false;

    Vec dir = from_edge_frame(ex, 0.0, -1.0, k0);
    double dir_norm = norm_eval(spec, dir);
    for (double frac : {0.9, 0.6, 0.3, 0.12, 0.05}) {
        double eta = frac * delta / dir_norm;
        for (double w : {0.5, 0.25, 0.75}) {
            double b = gx + (gy - gx) * w;
            Vec z = from_edge_frame(ex, 0.0, -eta, k0 * eta - b * eta * eta);
            if (check_candidate(spec, x, y, z, delta, tau_sep, "tangent", att, out)) return true;
        }
    }
    return false;
}

bool random_strategy(const NormSpec& spec, const Vec& x, const Vec& y, double delta,
                     double tau_sep, long budget, Rng& rng, Attempt& att,
                     std::optional<Witness>& out) {
    while (att.count < budget) {
        Vec d = rng.gauss_vec(spec.dim);
        if (is_zero(d)) continue;
        Vec u = scale(d, boundary_scale(spec, d));
        double t = 0.9 * delta;
        for (int j = 0; j < 12 && att.count < budget; ++j, t *= 0.5) {
            if (check_candidate(spec, x, y, scale(u, t), delta, tau_sep, "random", att, out))
                return true;
        }
    }
    return false;
}

} // namespace

WitnessResult find_witness(const NormSpec& spec, const Vec& x, const Vec& y, double delta,
                           const std::vector<WitnessStrategy>& strategies, long budget, Rng& rng,
                           double tau_sep) {
    if (!(delta > 0)) throw std::invalid_argument("delta must be > 0");
    if (x == y) throw std::invalid_argument("witness pair must be distinct");
    if (std::fabs(norm_eval(spec, x) - 1.0) > 1e-9 || std::fabs(norm_eval(spec, y) - 1.0) > 1e-9)
        throw std::invalid_argument("witness pair must lie on the unit sphere");

    WitnessResult res;
    Attempt att;
    std::optional<Witness> w;
    for (auto strat : strategies) {
        bool ok = false;
        switch (strat) {
        case WitnessStrategy::segment: ok = segment_strategy(spec, x, y, delta, tau_sep, att, w); break;
        case WitnessStrategy::tangent: ok = tangent_strategy(spec, x, y, delta, tau_sep, att, w); break;
        case WitnessStrategy::random_search:
            ok = random_strategy(spec, x, y, delta, tau_sep, budget, rng, att, w);
            break;
        }
        if (ok) break;
    }
    res.witness = w;
    res.report.attempts = att.count;
    res.report.best_separation = att.best;
    return res;
}

std::optional<ImpossibilityCertificate> certify_no_witness_linf(const Vec& x, const Vec& y,
                                                                double delta) {
    if (x.size() != y.size()) throw std::invalid_argument("dimension mismatch");
    if (!(delta > 0)) throw std::invalid_argument("delta must be > 0");
    const int dim = static_cast<int>(x.size());
    for (int j = 0; j < dim; ++j) {
        double xj = x[static_cast<size_t>(j)], yj = y[static_cast<size_t>(j)];
        if (std::fabs(xj) != 1.0 || xj != yj) continue;
        // shared facet candidate; all other coordinates must be strictly interior
        double delta_star = std::numeric_limits<double>::infinity();
        bool ok = true;
        for (int i = 0; i < dim && ok; ++i) {
            if (i == j) continue;
            double m = std::max(std::fabs(x[static_cast<size_t>(i)]), std::fabs(y[static_cast<size_t>(i)]));
            if (m >= 1.0) ok = false;
            delta_star = std::min(delta_star, 1.0 - m);
        }
        if (!ok) continue;
        if (dim == 1) delta_star = std::numeric_limits<double>::infinity(); // no off-axis coordinates
        if (delta <= delta_star)
            return ImpossibilityCertificate{j, xj > 0 ? 1 : -1, delta_star};
        return std::nullopt; // facet pair, but delta exceeds the certified range
    }
    return std::nullopt;
}

PairSource random_pair_source(const NormSpec& spec, long count, uint64_t seed) {
    auto rng = std::make_shared<Rng>(seed);
    auto left = std::make_shared<long>(count);
    return [spec, rng, left]() -> std::optional<std::pair<Vec, Vec>> {
        if (*left <= 0) return std::nullopt;
        --*left;
        while (true) {
            auto pts = sample_unit_sphere(spec, *rng, 2);
            if (pts[0] != pts[1]) return std::make_pair(pts[0], pts[1]);
        }
    };
}

PairSource linf_facet_pair_source(int dim, long count, double delta, uint64_t seed) {
    if (dim < 2) throw std::invalid_argument("facet pairs need dim >= 2");
    if (!(delta > 0) || delta >= 1) throw std::invalid_argument("facet pairs need delta in (0,1)");
    auto rng = std::make_shared<Rng>(seed);
    auto left = std::make_shared<long>(count);
    double range = 1.0 - delta;
    return [dim, range, rng, left]() -> std::optional<std::pair<Vec, Vec>> {
        if (*left <= 0) return std::nullopt;
        --*left;
        Vec x(static_cast<size_t>(dim)), y(static_cast<size_t>(dim));
        do {
            x[0] = y[0] = 1.0;
            for (int i = 1; i < dim; ++i) {
                x[static_cast<size_t>(i)] = rng->uniform(-range, range);
                y[static_cast<size_t>(i)] = rng->uniform(-range, range);
            }
        } while (x == y);
        return std::make_pair(x, y);
    };
}

PairSource custom_equator_pair_source(long count, uint64_t seed) {
    auto rng = std::make_shared<Rng>(seed);
    auto left = std::make_shared<long>(count);
    return [rng, left]() -> std::optional<std::pair<Vec, Vec>> {
        if (*left <= 0) return std::nullopt;
        --*left;
        double a, b;
        do {
            a = rng->uniform(-0.95, 0.95);
            b = rng->uniform(-0.95, 0.95);
        } while (a == b);
        return std::make_pair(Vec{a, 1.0, 0.0}, Vec{b, 1.0, 0.0});
    };
}

std::string ScanReport::to_json() const {
    json j{{"total", total},
           {"witnessed", witnessed},
           {"not_found", not_found},
           {"certified_impossible", certified_impossible},
           {"strategies", strategies},
           {"orientation", {{"x_out", x_out}, {"y_out", y_out}}}};
    return j.dump(2) + "\n";
}

ScanReport sprime_scan(const NormSpec& spec, PairSource source, double delta, long budget,
                       uint64_t seed, const std::vector<WitnessStrategy>& strategies) {
    ScanReport rep;
    for (auto s : strategies) rep.strategies[strategy_name(s)] = 0;
    uint64_t idx = 0;
    while (auto pair = source()) {
        ++rep.total;
        Rng rng(Rng::child_seed(seed, idx++));
        const auto& [x, y] = *pair;
        if (spec.kind == NormKind::Linf) {
            if (auto cert = certify_no_witness_linf(x, y, delta)) {
                (void)cert;
                ++rep.certified_impossible;
                continue;
            }
        }
        auto res = find_witness(spec, x, y, delta, strategies, budget, rng);
        if (res.found()) {
            ++rep.witnessed;
            ++rep.strategies[res.witness->strategy];
            if (res.witness->norm_x_after > 1.0) ++rep.x_out;
            else ++rep.y_out;
        } else {
            ++rep.not_found;
        }
    }
    return rep;
}

bool is_flat_pair(const NormSpec& spec, const Vec& x, const Vec& y) {
    Vec mid = scale(add(x, y), 0.5);
    return norm_eval(spec, mid) >= 1.0 - tau_gauge;
}

ProbeReport strict_convexity_probe(const NormSpec& spec, long trials, Rng& rng) {
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    ProbeReport rep;
    rep.trials = trials;
    for (long i = 0; i < trials; ++i) {
        auto pts = sample_unit_sphere(spec, rng, 2);
        if (pts[0] == pts[1]) { --i; continue; }
        if (is_flat_pair(spec, pts[0], pts[1])) ++rep.flagged;
    }
    return rep;
}

ProbeReport strict_convexity_probe_pairs(const NormSpec& spec,
                                         const std::vector<std::pair<Vec, Vec>>& pairs) {
    ProbeReport rep;
    rep.trials = static_cast<long>(pairs.size());
    for (const auto& [x, y] : pairs)
        if (is_flat_pair(spec, x, y)) ++rep.flagged;
    return rep;
}

} // namespace steinhaus
