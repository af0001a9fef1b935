#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "steinhaus/pointset.hpp"

namespace steinhaus {

/// Tolerances, budgets and seeding for the ball searches.
struct SearchConfig {
    double tau_shell = 1e-9;        // relative boundary-shell thickness
    double tau_tie = 1e-9;          // required distinct-distance gap
    double delta_witness = 0.05;    // initial witness delta, relative to the ball radius
    double shrink = 0.5;            // geometric shrink factor for delta ladders
    int max_iterations = 64;        // growth/split step budget (also retry budget)
    uint64_t seed = 0;              // master RNG seed
    double tau_sep = 1e-10;         // strict separation margin for witnesses
    long witness_budget = 2000;     // attempts per witness search

    void validate() const;
};

/// One accepted step of the growth procedure.
struct SearchStep {
    Vec center;
    double scale = 0.0; // critical scale s of this step
    int count = 0;      // points strictly inside after the step
    std::vector<uint32_t> shell_ids;
    std::optional<Vec> witness; // present for split steps
    int phase = 0;              // restarts open a new phase
};

/// A checkable exactly-n ball: open ball B(center, radius) containing
/// exactly the n listed points, with positive margins on both sides.
struct BallCertificate {
    Vec center;
    double radius = 0.0;
    int n = 0;
    std::vector<uint32_t> inside_ids;
    double margin_in = 0.0;  // min over inside points of (r - dist)
    double margin_out = 0.0; // min over certified outside points of (dist - r)
    std::string method;      // "sorted" | "growth"
    std::vector<SearchStep> trace;

    std::string to_json() const;
    static BallCertificate from_json(const std::string& text);
};

struct ValidationResult {
    bool ok = false;
    double margin_in = 0.0;
    double margin_out = 0.0;
    std::vector<uint32_t> missing; // certified inside but not listed
    std::vector<uint32_t> extra;   // listed but not inside
    std::string message;
};

/// Classical sorted-distance method: perturb the seed center until the n-th
/// and (n+1)-th distances split by more than tau_tie, then take the midpoint
/// radius.
BallCertificate find_ball_sorted(const IndexedPointSet& ips, const NormSpec& spec,
                                 const Vec& seed_center, int n, const SearchConfig& cfg);

struct CriticalScale {
    double s = 0.0;                  // next strictly larger distance ratio
    std::vector<uint32_t> shell_ids; // points within the tau_shell band of r0*s
    std::vector<uint32_t> inside_ids;
};

/// Smallest scaling of B(center, r0) that reaches new points: s = d_next/r0
/// with d_next the smallest distance > r0*(1+tau_shell).
CriticalScale critical_scale(const IndexedPointSet& ips, const NormSpec& spec, const Vec& center,
                             double r0, const SearchConfig& cfg);

/// Tries (x, y, delta) -> perturbation z with ||z|| < delta splitting the
/// two unit vectors, or nullopt.
using WitnessFinder = std::function<std::optional<Vec>(const Vec& x, const Vec& y, double delta)>;

struct SplitResult {
    Vec center;
    double radius = 0.0;
    std::vector<uint32_t> inside_ids;
    Vec witness;
};

/// Recenters the ball using a witness for two normalized shell points so
/// that at least one but not all shell points fall inside; prior inside
/// points are kept by capping delta at half the normalized safety margins.
SplitResult split_shell(const IndexedPointSet& ips, const NormSpec& spec, const Vec& center,
                        double r, const std::vector<uint32_t>& shell_ids,
                        const WitnessFinder& witness_finder, const SearchConfig& cfg);

/// Growth procedure: shrink to an empty ball, expand through critical
/// scales, split boundary shells via witnesses, restart from the recentered
/// ball on overshoot; budget-capped.
BallCertificate find_ball_growth(const IndexedPointSet& ips, const NormSpec& spec, const Vec& x0,
                                 int n, const SearchConfig& cfg);

/// Independent oracle: recounts by linear scan and recomputes margins.
ValidationResult validate_certificate(const BallCertificate& cert, const IndexedPointSet& ips,
                                      const NormSpec& spec);

} // namespace steinhaus
