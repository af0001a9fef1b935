#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "steinhaus/norms.hpp"
#include "steinhaus/vec.hpp"

namespace steinhaus {

/// Finite realization of a quasi-finite set: every conceptual point with
/// ||p|| <= horizon (under horizon_norm) is listed, and nothing else is
/// certified. Ids are dense 0..N-1 in storage order.
struct PointSet {
    int dim = 0;
    std::vector<double> coords; // row-major, N * dim
    double horizon = 0.0;
    NormSpec horizon_norm;

    size_t size() const { return dim == 0 ? 0 : coords.size() / static_cast<size_t>(dim); }
    std::span<const double> point(size_t id) const {
        return {coords.data() + static_cast<size_t>(dim) * id, static_cast<size_t>(dim)};
    }
    void push_back(std::span<const double> p) { coords.insert(coords.end(), p.begin(), p.end()); }
};

/// All integer lattice points p with ||p|| <= H. Enumerates the outer box
/// |p_j| <= H * b_j and filters by norm. Throws if the box holds more than
/// `cap` candidates.
PointSet lattice_window(int dim, double H, const NormSpec& horizon_norm, size_t cap = 100000000);

/// Text format: `# dim=<d> horizon=<H> norm=<name>` header, one point per
/// line, space-separated decimal coordinates, '#' comments ignored.
void save_points(const PointSet& ps, const std::string& path);
PointSet load_points(const std::string& path);

struct BallQueryResult {
    size_t count = 0;
    std::vector<uint32_t> ids; // sorted ascending
    /// Smallest |dist - r| seen, saturated at the index cell size (in norm
    /// units); a small value warns that the count is tie-fragile.
    double boundary_gap = 0.0;
};

enum class BallMode { open, closed };

/// PointSet plus a uniform-grid index over the coordinate bounding box.
/// Immutable after construction; queries are safe to run concurrently.
class IndexedPointSet {
  public:
    /// cell_size <= 0 selects the default H / max(1, N^(1/dim)).
    explicit IndexedPointSet(PointSet ps, double cell_size = 0.0);

    const PointSet& points() const { return ps_; }
    double cell_size() const { return cell_; }

    /// Exact count of set points in the ball B(center, r) under `spec`.
    /// Errors (HorizonError) unless ||center|| + r <= horizon, since the
    /// count could otherwise miss uncertified points.
    BallQueryResult count_in_ball(std::span<const double> center, double r, const NormSpec& spec,
                                  BallMode mode = BallMode::open) const;

    /// Linear-scan twin of count_in_ball; same contract, no index. Used as
    /// the independent oracle and by the benchmark.
    BallQueryResult count_in_ball_scan(std::span<const double> center, double r,
                                       const NormSpec& spec, BallMode mode = BallMode::open) const;

    /// First k (distance, id) pairs ascending, ties by id. Errors when the
    /// k-th distance is not certified complete (beyond horizon - ||center||).
    std::vector<std::pair<double, uint32_t>>
    sorted_distances(std::span<const double> center, const NormSpec& spec, size_t k) const;

    /// Distances from `center` to every point, unsorted, indexed by id.
    std::vector<double> all_distances(std::span<const double> center, const NormSpec& spec) const;

  private:
    PointSet ps_;
    double cell_;
    std::vector<double> origin_;
    std::vector<int> grid_n_;
    std::vector<uint32_t> cell_start_; // CSR offsets
    std::vector<uint32_t> cell_ids_;

    size_t cell_count() const;
    size_t flat_index(const std::vector<int>& c) const;
    void horizon_check(std::span<const double> center, double r) const;

    template <typename F> void for_candidates(std::span<const double> center, double reach, F&& f) const;
};

/// Exact-arithmetic check that all pairwise distances from the center
/// (sqrt(2), 1/3) to distinct lattice points differ: the squared distance
/// decomposes as rational + integer*sqrt(2), and both parts are compared
/// exactly. Supports the classical plane demo; 2-D integer points only.
bool sqrt2_center_distances_distinct(const PointSet& ps);

} // namespace steinhaus
