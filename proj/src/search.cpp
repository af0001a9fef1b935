#include "steinhaus/search.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

#include "steinhaus/errors.hpp"
#include "steinhaus/sprime.hpp"

namespace steinhaus {

using json = nlohmann::json;

void SearchConfig::validate() const {
    if (!(tau_shell > 0) || !(tau_tie > 0) || !(delta_witness > 0) || !(tau_sep > 0))
        throw std::invalid_argument("tolerances must be positive");
    if (!(shrink > 0) || !(shrink < 1)) throw std::invalid_argument("shrink factor must be in (0,1)");
    if (max_iterations < 1 || witness_budget < 1) throw std::invalid_argument("budgets must be >= 1");
}

// --- JSON -------------------------------------------------------------------

static json step_to_json(const SearchStep& s) {
    json j{{"center", s.center}, {"scale", s.scale}, {"count", s.count},
           {"shell_ids", s.shell_ids}, {"phase", s.phase}};
    if (s.witness) j["witness"] = *s.witness;
    return j;
}

std::string BallCertificate::to_json() const {
    json tr = json::array();
    for (const auto& s : trace) tr.push_back(step_to_json(s));
    json j{{"center", center},     {"radius", radius},         {"n", n},
           {"inside_ids", inside_ids}, {"margin_in", margin_in}, {"margin_out", margin_out},
           {"method", method},     {"trace", tr}};
    return j.dump(2) + "\n";
}

BallCertificate BallCertificate::from_json(const std::string& text) {
    json j = json::parse(text);
    BallCertificate c;
    c.center = j.at("center").get<Vec>();
    c.radius = j.at("radius").get<double>();
    c.n = j.at("n").get<int>();
    c.inside_ids = j.at("inside_ids").get<std::vector<uint32_t>>();
    c.margin_in = j.at("margin_in").get<double>();
    c.margin_out = j.at("margin_out").get<double>();
    c.method = j.at("method").get<std::string>();
    for (const auto& js : j.at("trace")) {
        SearchStep s;
        s.center = js.at("center").get<Vec>();
        s.scale = js.at("scale").get<double>();
        s.count = js.at("count").get<int>();
        s.shell_ids = js.at("shell_ids").get<std::vector<uint32_t>>();
        s.phase = js.value("phase", 0);
        if (js.contains("witness")) s.witness = js.at("witness").get<Vec>();
        c.trace.push_back(std::move(s));
    }
    return c;
}

// --- shared helpers ---------------------------------------------------------

namespace {

struct DistanceView {
    std::vector<std::pair<double, uint32_t>> sorted; // (distance, id) ascending, ties by id
    double certified = 0.0;                          // horizon - ||center||
};

DistanceView distances_from(const IndexedPointSet& ips, const NormSpec& spec, const Vec& center) {
    DistanceView dv;
    auto d = ips.all_distances(center, spec);
    dv.sorted.resize(d.size());
    for (size_t i = 0; i < d.size(); ++i) dv.sorted[i] = {d[i], static_cast<uint32_t>(i)};
    std::sort(dv.sorted.begin(), dv.sorted.end());
    dv.certified =
        ips.points().horizon - norm_eval(ips.points().horizon_norm, center);
    return dv;
}

struct ShellInfo {
    double d_next = 0.0;       // representative shell distance (first in band)
    double d_shell_max = 0.0;  // last distance in the band
    double d_beyond = -1.0;    // first certified distance beyond the band, < 0 if none
    std::vector<uint32_t> shell;
    std::vector<uint32_t> inside;
};

// Shell = points within the relative tau_shell band of the first distance
// beyond r0; fails with HorizonError when that distance is not certified.
ShellInfo find_shell(const DistanceView& dv, double r0, double tau_shell) {
    ShellInfo si;
    size_t i = 0;
    while (i < dv.sorted.size() && dv.sorted[i].first <= r0 * (1.0 + tau_shell)) {
        si.inside.push_back(dv.sorted[i].second);
        ++i;
    }
    if (i == dv.sorted.size())
        throw HorizonError("no points beyond the current radius within the horizon");
    si.d_next = dv.sorted[i].first;
    if (si.d_next > dv.certified * (1.0 + 1e-12))
        throw HorizonError("next critical distance lies beyond the certified horizon");
    double band_hi = si.d_next * (1.0 + tau_shell);
    si.d_shell_max = si.d_next;
    while (i < dv.sorted.size() && dv.sorted[i].first <= band_hi) {
        si.shell.push_back(dv.sorted[i].second);
        si.d_shell_max = dv.sorted[i].first;
        ++i;
    }
    if (i < dv.sorted.size() && dv.sorted[i].first <= dv.certified * (1.0 + 1e-12))
        si.d_beyond = dv.sorted[i].first;
    return si;
}

Vec jitter_center(const Vec& seed, Rng& rng, double magnitude) {
    Vec c = seed;
    for (auto& v : c) v += magnitude * (2.0 * rng.uniform() - 1.0);
    return c;
}

BallCertificate finalize_certificate(const IndexedPointSet& ips, const NormSpec& spec, Vec center,
                                     double radius, int n, std::string method,
                                     std::vector<SearchStep> trace) {
    BallCertificate cert;
    cert.center = std::move(center);
    cert.radius = radius;
    cert.n = n;
    cert.method = std::move(method);
    cert.trace = std::move(trace);
    auto counted = ips.count_in_ball(cert.center, radius, spec, BallMode::open);
    cert.inside_ids = counted.ids;
    auto val = validate_certificate(cert, ips, spec);
    if (!val.ok)
        throw BudgetError("internal error: produced certificate failed validation: " + val.message,
                          cert.to_json());
    cert.margin_in = val.margin_in;
    cert.margin_out = val.margin_out;
    return cert;
}

} // namespace

// --- sorted method ----------------------------------------------------------

BallCertificate find_ball_sorted(const IndexedPointSet& ips, const NormSpec& spec,
                                 const Vec& seed_center, int n, const SearchConfig& cfg) {
    cfg.validate();
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    if (static_cast<int>(seed_center.size()) != ips.points().dim)
        throw std::invalid_argument("dimension mismatch");
    check_finite(seed_center);

    Rng rng(cfg.seed);
    double jitter = 0.0;
    for (int attempt = 0; attempt < cfg.max_iterations; ++attempt) {
        Vec c = (attempt == 0) ? seed_center : jitter_center(seed_center, rng, jitter);
        auto top = ips.sorted_distances(c, spec, static_cast<size_t>(n) + 1);
        double dn = top[static_cast<size_t>(n) - 1].first;
        double dn1 = top[static_cast<size_t>(n)].first;
        if (dn1 - dn > cfg.tau_tie) {
            double r = 0.5 * (dn + dn1);
            return finalize_certificate(ips, spec, c, r, n, "sorted", {});
        }
        jitter = (jitter == 0.0) ? std::max(1e3 * cfg.tau_tie, 1e-7 * (1.0 + max_abs(seed_center)))
                                 : jitter * 4.0;
    }
    throw BudgetError("tie gap unattainable within the perturbation budget");
}

// --- growth method ----------------------------------------------------------

CriticalScale critical_scale(const IndexedPointSet& ips, const NormSpec& spec, const Vec& center,
                             double r0, const SearchConfig& cfg) {
    cfg.validate();
    if (!(r0 > 0)) throw std::invalid_argument("r0 must be > 0");
    auto dv = distances_from(ips, spec, center);
    auto si = find_shell(dv, r0, cfg.tau_shell);
    CriticalScale cs;
    cs.s = si.d_next / r0;
    cs.shell_ids = std::move(si.shell);
    cs.inside_ids = std::move(si.inside);
    return cs;
}

SplitResult split_shell(const IndexedPointSet& ips, const NormSpec& spec, const Vec& center,
                        double r, const std::vector<uint32_t>& shell_ids,
                        const WitnessFinder& witness_finder, const SearchConfig& cfg) {
    cfg.validate();
    if (shell_ids.size() < 2) throw std::invalid_argument("split_shell needs at least 2 shell points");

    auto dv = distances_from(ips, spec, center);
    // the band is derived from the actual shell distances; everything below
    // it must stay inside and everything above must stay outside when the
    // center moves by r * ||z||
    double shell_min = std::numeric_limits<double>::infinity(), shell_max = 0.0;
    {
        auto dist = ips.all_distances(center, spec);
        for (uint32_t id : shell_ids) {
            shell_min = std::min(shell_min, dist[id]);
            shell_max = std::max(shell_max, dist[id]);
        }
    }
    double band_lo = shell_min * (1.0 - 2 * cfg.tau_shell);
    double band_hi = shell_max * (1.0 + 2 * cfg.tau_shell);
    double max_inside = 0.0, d_beyond = -1.0;
    std::vector<uint32_t> prior;
    for (const auto& [d, id] : dv.sorted) {
        if (d < band_lo) {
            max_inside = std::max(max_inside, d);
            prior.push_back(id);
        } else if (d > band_hi) {
            d_beyond = d;
            break;
        }
    }
    if (d_beyond < 0) d_beyond = dv.certified;
    std::sort(prior.begin(), prior.end());
    double gap_in = (r - max_inside) / r;
    double gap_out = (d_beyond - r) / r;
    double delta0 = std::min(cfg.delta_witness, 0.5 * std::min(gap_in, gap_out));
    if (!(delta0 > 0)) throw BudgetError("no safety margin available for a split");

    const size_t k = shell_ids.size();
    const size_t m_prior = prior.size();

    for (size_t a = 0; a < k; ++a) {
        for (size_t b = a + 1; b < k; ++b) {
            Vec pa = sub(ips.points().point(shell_ids[a]), center);
            Vec pb = sub(ips.points().point(shell_ids[b]), center);
            Vec ua = scale(pa, boundary_scale(spec, pa));
            Vec ub = scale(pb, boundary_scale(spec, pb));
            double delta = delta0;
            for (int round = 0; round < 20; ++round, delta *= cfg.shrink) {
                auto z = witness_finder(ua, ub, delta);
                if (!z) continue;
                // the witness separates ua, ub; moving the center by -r*z
                // scales that separation back onto the shell points
                Vec c2 = sub(center, scale(*z, r));
                auto probe = ips.count_in_ball(c2, r, spec, BallMode::open);
                size_t m2 = probe.count;
                if (m2 <= m_prior || m2 >= m_prior + k) continue;
                if (probe.boundary_gap < r * 10 * cfg.tau_sep) continue; // tie-fragile, shrink
                bool prior_kept = std::includes(probe.ids.begin(), probe.ids.end(),
                                                prior.begin(), prior.end());
                if (!prior_kept) continue;
                SplitResult res;
                res.center = std::move(c2);
                res.radius = r;
                res.inside_ids = probe.ids;
                res.witness = *z;
                return res;
            }
        }
    }
    throw BudgetError("witness search exhausted while splitting the shell (possible (S') failure "
                      "at these sphere points)");
}

namespace {

WitnessFinder default_witness_finder(const NormSpec& spec, const SearchConfig& cfg,
                                     uint64_t stream) {
    return [&spec, cfg, stream](const Vec& x, const Vec& y, double delta) -> std::optional<Vec> {
        Rng rng(Rng::child_seed(cfg.seed, stream));
        auto res =
            find_witness(spec, x, y, delta, all_strategies, cfg.witness_budget, rng, cfg.tau_sep);
        if (!res.found()) return std::nullopt;
        return res.witness->z;
    };
}

} // namespace

BallCertificate find_ball_growth(const IndexedPointSet& ips, const NormSpec& spec, const Vec& x0,
                                 int n, const SearchConfig& cfg) {
    cfg.validate();
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    if (static_cast<int>(x0.size()) != ips.points().dim)
        throw std::invalid_argument("dimension mismatch");
    check_finite(x0);
    if (static_cast<size_t>(n) > ips.points().size())
        throw std::invalid_argument("n exceeds the number of certified points");

    std::vector<SearchStep> trace;
    Vec center = x0;
    int phase = 0;
    int steps_used = 0;
    int escapes = 0;
    Rng rng(Rng::child_seed(cfg.seed, 0x657363ULL));

    auto partial_json = [&](double r) {
        BallCertificate partial;
        partial.center = center;
        partial.radius = r;
        partial.n = n;
        partial.method = "growth";
        partial.trace = trace;
        return partial.to_json();
    };

    while (true) {
        ++phase;
        auto dv = distances_from(ips, spec, center);
        // phase start: shrink to the smallest ball around the center
        size_t m = 0;
        while (m < dv.sorted.size() && dv.sorted[m].first == 0.0) ++m; // center on a point
        double r;
        std::vector<uint32_t> inside;
        for (size_t i = 0; i < m; ++i) inside.push_back(dv.sorted[i].second);
        if (m >= static_cast<size_t>(n)) {
            // n == 1 and the center sits on a point: half the next distance
            if (m == dv.sorted.size()) throw HorizonError("point set exhausted");
            r = 0.5 * dv.sorted[m].first;
            if (static_cast<size_t>(n) == m)
                return finalize_certificate(ips, spec, center, r, n, "growth", trace);
            throw BudgetError("degenerate start: more coincident points than n", partial_json(0));
        }
        r = (m < dv.sorted.size()) ? 0.5 * dv.sorted[m].first : 0.0;
        if (!(r > 0)) throw HorizonError("no points reachable from the start center");

        bool restart = false;
        while (!restart) {
            if (static_cast<int>(inside.size()) == n)
                return finalize_certificate(ips, spec, center, r, n, "growth", trace);
            if (++steps_used > cfg.max_iterations)
                throw BudgetError("growth iteration budget exhausted", partial_json(r));

            auto si = find_shell(dv, r, cfg.tau_shell);
            size_t m_now = si.inside.size();
            size_t k = si.shell.size();
            double s = si.d_next / r;

            if (m_now + k <= static_cast<size_t>(n)) {
                // absorb the whole shell
                double r_new;
                if (si.d_beyond > 0) {
                    r_new = 0.5 * (si.d_shell_max + si.d_beyond);
                } else if (m_now + k == static_cast<size_t>(n)) {
                    r_new = si.d_shell_max + 0.5 * (dv.certified - si.d_shell_max);
                } else {
                    throw HorizonError("not enough certified points to continue the growth");
                }
                r = r_new;
                inside = si.inside;
                inside.insert(inside.end(), si.shell.begin(), si.shell.end());
                std::sort(inside.begin(), inside.end());
                trace.push_back(SearchStep{center, s, static_cast<int>(inside.size()), si.shell,
                                           std::nullopt, phase});
            } else {
                // too many arrivals at once: split the shell with a witness
                double R = si.d_next;
                SplitResult split;
                try {
                    split = split_shell(ips, spec, center, R, si.shell,
                                        default_witness_finder(spec, cfg, static_cast<uint64_t>(steps_used)), cfg);
                } catch (const BudgetError& e) {
                    // an unsplittable shell (points on a flat part of the
                    // sphere stay tied for every nearby center): move the
                    // phase anchor so the distance ranking reshuffles
                    if (++escapes > cfg.max_iterations)
                        throw BudgetError(e.what(), partial_json(r));
                    double mag = std::min(R * 0.35 * std::pow(1.5, escapes), R * 4.0);
                    center = jitter_center(center, rng, mag);
                    restart = true;
                    break;
                }
                size_t m2 = split.inside_ids.size();
                if (m2 > static_cast<size_t>(n)) {
                    // overshoot: restart the growth from the recentered ball
                    center = split.center;
                    restart = true;
                    break;
                }
                center = split.center;
                inside = split.inside_ids;
                dv = distances_from(ips, spec, center);
                // renormalize the radius to the midpoint of the surrounding gap
                if (m2 >= dv.sorted.size()) throw HorizonError("point set exhausted after split");
                double d_in = (m2 == 0) ? 0.0 : dv.sorted[m2 - 1].first;
                double d_out = dv.sorted[m2].first;
                r = 0.5 * (d_in + d_out);
                trace.push_back(SearchStep{center, s, static_cast<int>(m2), si.shell,
                                           split.witness, phase});
            }
        }
    }
}

ValidationResult validate_certificate(const BallCertificate& cert, const IndexedPointSet& ips,
                                      const NormSpec& spec) {
    ValidationResult v;
    if (cert.radius <= 0) {
        v.message = "non-positive radius";
        return v;
    }
    double cnorm = norm_eval(ips.points().horizon_norm, cert.center);
    if (cnorm + cert.radius > ips.points().horizon * (1.0 + 1e-12)) {
        v.message = "ball leaves the certified horizon";
        return v;
    }

    auto dist = ips.all_distances(cert.center, spec);
    std::vector<char> listed(ips.points().size(), 0);
    for (uint32_t id : cert.inside_ids) {
        if (id >= listed.size()) {
            v.message = "certificate lists an unknown id";
            return v;
        }
        listed[id] = 1;
    }

    v.margin_in = std::numeric_limits<double>::infinity();
    v.margin_out = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < dist.size(); ++i) {
        bool inside = dist[i] < cert.radius;
        if (inside && !listed[i]) v.missing.push_back(static_cast<uint32_t>(i));
        if (!inside && listed[i]) v.extra.push_back(static_cast<uint32_t>(i));
        if (inside) v.margin_in = std::min(v.margin_in, cert.radius - dist[i]);
        else v.margin_out = std::min(v.margin_out, dist[i] - cert.radius);
    }
    if (ips.points().size() == cert.inside_ids.size())
        v.margin_out = (ips.points().horizon - cnorm) - cert.radius; // no certified outside point

    if (!v.missing.empty() || !v.extra.empty()) {
        v.message = "inside set mismatch";
        return v;
    }
    if (static_cast<int>(cert.inside_ids.size()) != cert.n) {
        v.message = "count differs from n";
        return v;
    }
    if (!(v.margin_in > 0) || !(v.margin_out > 0)) {
        v.message = "zero margin";
        return v;
    }
    v.ok = true;
    return v;
}

} // namespace steinhaus
