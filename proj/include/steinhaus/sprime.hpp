#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "steinhaus/norms.hpp"
#include "steinhaus/rng.hpp"

namespace steinhaus {

/// Default strict separation margin: a witness must push the norms at least
/// this far from 1 on both sides.
inline constexpr double tau_sep_default = 1e-10;

/// A perturbation z with ||z|| < delta such that exactly one of x+z, y+z
/// leaves the unit ball while the other enters it.
struct Witness {
    Vec x, y, z;
    double delta = 0.0;
    double norm_x_after = 0.0;
    double norm_y_after = 0.0;
    std::string strategy;
};

/// Search report when no witness was found. Absence of a witness is NOT
/// proven by this; it only records the attempt.
struct NotFoundReport {
    long attempts = 0;
    double best_separation = 0.0;
};

struct WitnessResult {
    std::optional<Witness> witness;
    NotFoundReport report;
    bool found() const { return witness.has_value(); }
};

enum class WitnessStrategy { segment, tangent, random_search };

inline const std::vector<WitnessStrategy> all_strategies{
    WitnessStrategy::segment, WitnessStrategy::tangent, WitnessStrategy::random_search};

std::string strategy_name(WitnessStrategy s);

/// Tries the strategies in order on the unit pair (x, y):
///   segment -- z = +-t (y-x)/||y-x||, t on a shrink ladder below delta;
///   tangent -- custom-norm equator pairs on a common square edge only:
///              perturbations along the edge's inward tangent with a
///              z-component between the two curvature profiles;
///   random  -- unit directions with magnitudes on a geometric ladder.
/// Every returned witness is revalidated by direct norm evaluation with
/// margin >= tau_sep.
WitnessResult find_witness(const NormSpec& spec, const Vec& x, const Vec& y, double delta,
                           const std::vector<WitnessStrategy>& strategies, long budget, Rng& rng,
                           double tau_sep = tau_sep_default);

/// Analytic impossibility on an l_inf facet: x_j = y_j = sign, all other
/// coordinates strictly inside (-1,1); no witness exists for any
/// delta <= delta_star = min_{i != j} (1 - max(|x_i|, |y_i|)).
struct ImpossibilityCertificate {
    int axis = 0;
    int sign = 0;
    double delta_star = 0.0;
};

/// Returns the certificate when the pair shares a facet and delta is within
/// its validity range; nullopt otherwise (not applicable -- no claim made).
std::optional<ImpossibilityCertificate> certify_no_witness_linf(const Vec& x, const Vec& y,
                                                                double delta);

/// Yields unit pairs until exhausted.
using PairSource = std::function<std::optional<std::pair<Vec, Vec>>()>;

PairSource random_pair_source(const NormSpec& spec, long count, uint64_t seed);
/// Pairs on the +x1 facet of the l_inf ball with off-axis coordinates inside
/// (-(1-delta), 1-delta), so the facet certificate applies at `delta`.
PairSource linf_facet_pair_source(int dim, long count, double delta, uint64_t seed);
/// Pairs (x1,1,0), (x2,1,0) on the top equator edge of the custom ball.
PairSource custom_equator_pair_source(long count, uint64_t seed);

struct ScanReport {
    long total = 0;
    long witnessed = 0;
    long not_found = 0;
    long certified_impossible = 0;
    std::map<std::string, long> strategies; // hits per strategy
    long x_out = 0, y_out = 0;               // which of the pair left the ball

    std::string to_json() const;
};

/// Runs find_witness (and, for l_inf, the facet certificate first) over the
/// pair source. Deterministic: the RNG stream is split per pair index.
ScanReport sprime_scan(const NormSpec& spec, PairSource source, double delta, long budget,
                       uint64_t seed,
                       const std::vector<WitnessStrategy>& strategies = all_strategies);

struct ProbeReport {
    long trials = 0;
    long flagged = 0;
};

/// True when the midpoint of the two unit vectors still has norm
/// >= 1 - tau_gauge, i.e. the pair spans a flat segment of the sphere.
bool is_flat_pair(const NormSpec& spec, const Vec& x, const Vec& y);

/// Samples `trials` distinct unit pairs and counts flat ones.
ProbeReport strict_convexity_probe(const NormSpec& spec, long trials, Rng& rng);
/// Same check over explicitly given pairs.
ProbeReport strict_convexity_probe_pairs(const NormSpec& spec,
                                         const std::vector<std::pair<Vec, Vec>>& pairs);

} // namespace steinhaus
