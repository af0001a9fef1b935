#include "steinhaus/pointset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>

#include "steinhaus/errors.hpp"
#include "steinhaus/io_util.hpp"

namespace steinhaus {

PointSet lattice_window(int dim, double H, const NormSpec& horizon_norm, size_t cap) {
    if (dim < 1) throw std::invalid_argument("dim must be >= 1");
    if (!(H > 0.0)) throw std::invalid_argument("horizon must be > 0");
    if (horizon_norm.dim != dim) throw std::invalid_argument("norm dimension mismatch");

    auto box = horizon_norm.outer_box();
    std::vector<long> lo(static_cast<size_t>(dim)), hi(static_cast<size_t>(dim));
    double candidates = 1.0;
    for (int j = 0; j < dim; ++j) {
        long b = static_cast<long>(std::floor(H * box[static_cast<size_t>(j)] + 1e-9));
        lo[static_cast<size_t>(j)] = -b;
        hi[static_cast<size_t>(j)] = b;
        candidates *= static_cast<double>(2 * b + 1);
    }
    if (candidates > static_cast<double>(cap))
        throw std::invalid_argument("lattice window too large (candidate count exceeds cap)");

    PointSet ps;
    ps.dim = dim;
    ps.horizon = H;
    ps.horizon_norm = horizon_norm;

    std::vector<long> c(lo);
    Vec p(static_cast<size_t>(dim));
    while (true) {
        for (int j = 0; j < dim; ++j) p[static_cast<size_t>(j)] = static_cast<double>(c[static_cast<size_t>(j)]);
        if (norm_eval(horizon_norm, p) <= H) ps.push_back(p);
        int j = dim - 1;
        while (j >= 0 && c[static_cast<size_t>(j)] == hi[static_cast<size_t>(j)]) {
            c[static_cast<size_t>(j)] = lo[static_cast<size_t>(j)];
            --j;
        }
        if (j < 0) break;
        ++c[static_cast<size_t>(j)];
    }
    return ps;
}

void save_points(const PointSet& ps, const std::string& path) {
    std::string out = "# dim=" + std::to_string(ps.dim) + " horizon=" + format_double(ps.horizon) +
                      " norm=" + ps.horizon_norm.name() + "\n";
    for (size_t i = 0; i < ps.size(); ++i) {
        auto p = ps.point(i);
        for (int j = 0; j < ps.dim; ++j) {
            if (j) out += ' ';
            out += format_double(p[static_cast<size_t>(j)]);
        }
        out += '\n';
    }
    atomic_write(path, out);
}

PointSet load_points(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open point file: " + path);

    PointSet ps;
    bool have_header = false;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        if (line[0] == '#') {
            if (!have_header && line.find("dim=") != std::string::npos) {
                int dim = 0;
                double H = 0.0;
                std::string norm_name;
                std::istringstream hs(line.substr(1));
                std::string tok;
                while (hs >> tok) {
                    if (tok.rfind("dim=", 0) == 0) dim = std::stoi(tok.substr(4));
                    else if (tok.rfind("horizon=", 0) == 0) H = std::stod(tok.substr(8));
                    else if (tok.rfind("norm=", 0) == 0) norm_name = tok.substr(5);
                }
                if (dim < 1 || !(H > 0.0) || norm_name.empty())
                    throw IoError("malformed point file header at line " + std::to_string(lineno));
                ps.dim = dim;
                ps.horizon = H;
                ps.horizon_norm = NormSpec::parse(norm_name, dim);
                have_header = true;
            }
            continue;
        }
        if (!have_header) throw IoError("point file is missing the horizon header");
        Vec p;
        p.reserve(static_cast<size_t>(ps.dim));
        const char* s = line.c_str();
        const char* end = s + line.size();
        while (s < end) {
            while (s < end && *s == ' ') ++s;
            if (s == end) break;
            double v;
            auto r = std::from_chars(s, end, v);
            if (r.ec != std::errc{})
                throw IoError("malformed coordinate at line " + std::to_string(lineno));
            p.push_back(v);
            s = r.ptr;
        }
        if (static_cast<int>(p.size()) != ps.dim)
            throw IoError("wrong coordinate count at line " + std::to_string(lineno));
        check_finite(p);
        if (norm_eval(ps.horizon_norm, p) > ps.horizon * (1.0 + 1e-12))
            throw IoError("point beyond declared horizon at line " + std::to_string(lineno));
        ps.push_back(p);
    }
    if (!have_header) throw IoError("point file is missing the horizon header");
    return ps;
}

// --- IndexedPointSet --------------------------------------------------------

IndexedPointSet::IndexedPointSet(PointSet ps, double cell_size) : ps_(std::move(ps)) {
    const int dim = ps_.dim;
    const size_t n = ps_.size();
    if (dim < 1) throw std::invalid_argument("empty point set");
    if (cell_size <= 0.0) {
        double per_axis = std::pow(static_cast<double>(std::max<size_t>(n, 1)), 1.0 / dim);
        cell_size = ps_.horizon / std::max(1.0, per_axis);
    }
    cell_ = cell_size;

    origin_.assign(static_cast<size_t>(dim), 0.0);
    grid_n_.assign(static_cast<size_t>(dim), 1);
    if (n > 0) {
        for (int j = 0; j < dim; ++j) {
            double mn = ps_.point(0)[static_cast<size_t>(j)], mx = mn;
            for (size_t i = 1; i < n; ++i) {
                double v = ps_.point(i)[static_cast<size_t>(j)];
                mn = std::min(mn, v);
                mx = std::max(mx, v);
            }
            origin_[static_cast<size_t>(j)] = mn;
            grid_n_[static_cast<size_t>(j)] =
                std::max(1, static_cast<int>(std::floor((mx - mn) / cell_)) + 1);
        }
    }

    // counting sort into CSR layout
    const size_t cells = cell_count();
    cell_start_.assign(cells + 1, 0);
    std::vector<uint32_t> cell_of(n);
    std::vector<int> c(static_cast<size_t>(dim));
    for (size_t i = 0; i < n; ++i) {
        auto p = ps_.point(i);
        for (int j = 0; j < dim; ++j) {
            int cj = static_cast<int>(std::floor((p[static_cast<size_t>(j)] - origin_[static_cast<size_t>(j)]) / cell_));
            c[static_cast<size_t>(j)] = std::clamp(cj, 0, grid_n_[static_cast<size_t>(j)] - 1);
        }
        cell_of[i] = static_cast<uint32_t>(flat_index(c));
        ++cell_start_[cell_of[i] + 1];
    }
    for (size_t i = 1; i <= cells; ++i) cell_start_[i] += cell_start_[i - 1];
    cell_ids_.resize(n);
    std::vector<uint32_t> cursor(cell_start_.begin(), cell_start_.end() - 1);
    for (size_t i = 0; i < n; ++i) cell_ids_[cursor[cell_of[i]]++] = static_cast<uint32_t>(i);
}

size_t IndexedPointSet::cell_count() const {
    size_t c = 1;
    for (int nj : grid_n_) c *= static_cast<size_t>(nj);
    return c;
}

size_t IndexedPointSet::flat_index(const std::vector<int>& c) const {
    size_t idx = 0;
    for (size_t j = 0; j < c.size(); ++j) idx = idx * static_cast<size_t>(grid_n_[j]) + static_cast<size_t>(c[j]);
    return idx;
}

void IndexedPointSet::horizon_check(std::span<const double> center, double r) const {
    double c = norm_eval(ps_.horizon_norm, center);
    if (c + r > ps_.horizon * (1.0 + 1e-12))
        throw HorizonError("query ball leaves the certified horizon: ||center|| + r = " +
                           std::to_string(c + r) + " > " + std::to_string(ps_.horizon));
}

namespace {
inline double point_distance(const NormSpec& spec, std::span<const double> a,
                             std::span<const double> c, Vec& tmp) {
    for (size_t j = 0; j < a.size(); ++j) tmp[j] = a[j] - c[j];
    return norm_eval(spec, tmp);
}
} // namespace

template <typename F>
void IndexedPointSet::for_candidates(std::span<const double> center, double reach, F&& f) const {
    const int dim = ps_.dim;
    std::vector<int> lo(static_cast<size_t>(dim)), hi(static_cast<size_t>(dim)), c(static_cast<size_t>(dim));
    auto box = ps_.horizon_norm.outer_box(); // bounds valid for any spec whose ball fits the box
    for (int j = 0; j < dim; ++j) {
        double w = reach * box[static_cast<size_t>(j)];
        int a = static_cast<int>(std::floor((center[static_cast<size_t>(j)] - w - origin_[static_cast<size_t>(j)]) / cell_));
        int b = static_cast<int>(std::floor((center[static_cast<size_t>(j)] + w - origin_[static_cast<size_t>(j)]) / cell_));
        lo[static_cast<size_t>(j)] = std::clamp(a, 0, grid_n_[static_cast<size_t>(j)] - 1);
        hi[static_cast<size_t>(j)] = std::clamp(b, 0, grid_n_[static_cast<size_t>(j)] - 1);
        c[static_cast<size_t>(j)] = lo[static_cast<size_t>(j)];
    }
    while (true) {
        size_t cell = flat_index(c);
        for (uint32_t k = cell_start_[cell]; k < cell_start_[cell + 1]; ++k) f(cell_ids_[k]);
        int j = dim - 1;
        while (j >= 0 && c[static_cast<size_t>(j)] == hi[static_cast<size_t>(j)]) {
            c[static_cast<size_t>(j)] = lo[static_cast<size_t>(j)];
            --j;
        }
        if (j < 0) break;
        ++c[static_cast<size_t>(j)];
    }
}

// The candidate box for radius r is padded by one cell (in norm units): any
// point outside it has |dist - r| > cell, which makes the saturated
// boundary_gap identical between the indexed and scan paths.
BallQueryResult IndexedPointSet::count_in_ball(std::span<const double> center, double r,
                                               const NormSpec& spec, BallMode mode) const {
    if (static_cast<int>(center.size()) != ps_.dim) throw std::invalid_argument("dimension mismatch");
    if (r < 0.0) throw std::invalid_argument("radius must be >= 0");
    horizon_check(center, r);

    BallQueryResult res;
    res.boundary_gap = cell_;
    Vec tmp(static_cast<size_t>(ps_.dim));

    const bool fast_l2 = (spec.kind == NormKind::Lp && spec.p == 2.0);
    if (fast_l2) {
        // the gap only matters below its cell-size ceiling, so the sqrt is
        // confined to the band [r - cell, r + cell]
        const double rr = r * r;
        const double blo = std::max(0.0, r - cell_), bhi = r + cell_;
        const double blo2 = blo * blo, bhi2 = bhi * bhi;
        for_candidates(center, r + cell_, [&](uint32_t id) {
            auto p = ps_.point(id);
            double d2 = 0.0;
            for (size_t j = 0; j < p.size(); ++j) {
                double t = p[j] - center[j];
                d2 += t * t;
            }
            if (d2 >= blo2 && d2 <= bhi2)
                res.boundary_gap = std::min(res.boundary_gap, std::fabs(std::sqrt(d2) - r));
            bool in = (mode == BallMode::open) ? d2 < rr : d2 <= rr;
            if (in) res.ids.push_back(id);
        });
    } else {
        for_candidates(center, r + cell_, [&](uint32_t id) {
            double d = point_distance(spec, ps_.point(id), center, tmp);
            res.boundary_gap = std::min(res.boundary_gap, std::fabs(d - r));
            bool in = (mode == BallMode::open) ? d < r : d <= r;
            if (in) res.ids.push_back(id);
        });
    }
    std::sort(res.ids.begin(), res.ids.end());
    res.count = res.ids.size();
    return res;
}

BallQueryResult IndexedPointSet::count_in_ball_scan(std::span<const double> center, double r,
                                                    const NormSpec& spec, BallMode mode) const {
    if (static_cast<int>(center.size()) != ps_.dim) throw std::invalid_argument("dimension mismatch");
    if (r < 0.0) throw std::invalid_argument("radius must be >= 0");
    horizon_check(center, r);

    BallQueryResult res;
    res.boundary_gap = cell_;
    const size_t n = ps_.size();

    const bool fast_l2 = (spec.kind == NormKind::Lp && spec.p == 2.0);
    if (fast_l2 && ps_.dim == 2) {
        const double rr = r * r, cx = center[0], cy = center[1];
        const double blo = std::max(0.0, r - cell_), bhi = r + cell_;
        const double blo2 = blo * blo, bhi2 = bhi * bhi;
        const double* pc = ps_.coords.data();
        double gap = res.boundary_gap;
        for (size_t i = 0; i < n; ++i) {
            double dx = pc[2 * i] - cx, dy = pc[2 * i + 1] - cy;
            double d2 = dx * dx + dy * dy;
            if (d2 >= blo2 && d2 <= bhi2) gap = std::min(gap, std::fabs(std::sqrt(d2) - r));
            bool in = (mode == BallMode::open) ? d2 < rr : d2 <= rr;
            if (in) res.ids.push_back(static_cast<uint32_t>(i));
        }
        res.boundary_gap = gap;
    } else {
        Vec tmp(static_cast<size_t>(ps_.dim));
        for (size_t i = 0; i < n; ++i) {
            double d = point_distance(spec, ps_.point(i), center, tmp);
            res.boundary_gap = std::min(res.boundary_gap, std::fabs(d - r));
            bool in = (mode == BallMode::open) ? d < r : d <= r;
            if (in) res.ids.push_back(static_cast<uint32_t>(i));
        }
    }
    res.count = res.ids.size();
    return res;
}

std::vector<double> IndexedPointSet::all_distances(std::span<const double> center,
                                                   const NormSpec& spec) const {
    if (static_cast<int>(center.size()) != ps_.dim) throw std::invalid_argument("dimension mismatch");
    std::vector<double> d(ps_.size());
    Vec tmp(static_cast<size_t>(ps_.dim));
    for (size_t i = 0; i < ps_.size(); ++i) d[i] = point_distance(spec, ps_.point(i), center, tmp);
    return d;
}

std::vector<std::pair<double, uint32_t>>
IndexedPointSet::sorted_distances(std::span<const double> center, const NormSpec& spec,
                                  size_t k) const {
    if (k > ps_.size()) throw std::invalid_argument("k exceeds point count");
    auto dist = all_distances(center, spec);
    std::vector<std::pair<double, uint32_t>> all(dist.size());
    for (size_t i = 0; i < dist.size(); ++i) all[i] = {dist[i], static_cast<uint32_t>(i)};
    size_t take = std::min(k, all.size());
    std::partial_sort(all.begin(), all.begin() + static_cast<long>(take), all.end());
    all.resize(take);

    // distances are certified complete only up to horizon - ||center||
    double certified = ps_.horizon - norm_eval(ps_.horizon_norm, center);
    if (!all.empty() && all.back().first > certified * (1.0 + 1e-12))
        throw HorizonError("requested distance rank reaches beyond the certified horizon");
    return all;
}

bool sqrt2_center_distances_distinct(const PointSet& ps) {
    if (ps.dim != 2) throw std::invalid_argument("sqrt2 distinctness check is 2-D only");
    // d^2 to (p,q) = (sqrt2 - p)^2 + (1/3 - q)^2
    //             = [p^2 + q^2 + 2 + 1/9 - 2q/3] + (-2p) * sqrt2.
    // Two points collide iff both the rational part (scaled by 9) and the
    // sqrt2 coefficient agree; sqrt2 is irrational so the parts split.
    std::vector<std::pair<long long, long long>> keys;
    keys.reserve(ps.size());
    for (size_t i = 0; i < ps.size(); ++i) {
        auto pt = ps.point(i);
        long long p = llround(pt[0]), q = llround(pt[1]);
        if (static_cast<double>(p) != pt[0] || static_cast<double>(q) != pt[1])
            throw std::invalid_argument("point set is not integral");
        long long rational9 = 9 * (p * p + q * q + 2) + 1 - 6 * q;
        long long root2_coeff = -2 * p;
        keys.emplace_back(rational9, root2_coeff);
    }
    std::sort(keys.begin(), keys.end());
    return std::adjacent_find(keys.begin(), keys.end()) == keys.end();
}

// explicit instantiation not needed; template is used only in this TU

} // namespace steinhaus
