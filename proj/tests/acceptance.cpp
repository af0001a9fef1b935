// Acceptance suite: runs every acceptance criterion at its stated tolerance
// and prints one PASS/FAIL line per criterion. Criteria that exercise the
// command-line interface need the path to the built binary as argv[1];
// argv[2] optionally names a scratch directory.

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <thread>
#include <vector>

#include "steinhaus/io_util.hpp"
#include "steinhaus/mesh.hpp"
#include "steinhaus/pointset.hpp"
#include "steinhaus/search.hpp"
#include "steinhaus/sprime.hpp"

using namespace steinhaus;
namespace fs = std::filesystem;
using clock_type = std::chrono::steady_clock;

namespace {

std::string g_cli;
fs::path g_dir;
int g_failures = 0;

void report(int idx, const std::string& name, bool ok, const std::string& detail) {
    std::printf("[%s] criterion %d: %s%s%s\n", ok ? "PASS" : "FAIL", idx, name.c_str(),
                detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
    if (!ok) ++g_failures;
}

void run_criterion(int idx, const std::string& name, const std::function<std::string()>& body) {
    try {
        std::string detail = body(); // throws on failure
        report(idx, name, true, detail);
    } catch (const std::exception& e) {
        report(idx, name, false, e.what());
    }
}

[[noreturn]] void fail(const std::string& msg) { throw std::runtime_error(msg); }

void require(bool cond, const std::string& msg) {
    if (!cond) fail(msg);
}

int cli(const std::string& args) {
    std::string cmd = g_cli + " " + args + " > /dev/null 2>&1";
    int rc = std::system(cmd.c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string path_of(const std::string& name) { return (g_dir / name).string(); }

double seconds_since(clock_type::time_point t0) {
    return std::chrono::duration<double>(clock_type::now() - t0).count();
}

// ---------------------------------------------------------------------------
// 1. classical plane reproduction: sorted method, n = 1..50, margins > 1e-9,
//    under 10 seconds in total
std::string criterion1() {
    require(cli("gen-points --dim 2 --horizon 64 --norm l2 --out " + path_of("z2_l2.txt")) == 0,
            "gen-points failed");
    IndexedPointSet ips(load_points(path_of("z2_l2.txt")));
    auto spec = NormSpec::lp(2, 2);
    require(sqrt2_center_distances_distinct(ips.points()),
            "exact check: distances from (sqrt2, 1/3) must be pairwise distinct");

    auto t0 = clock_type::now();
    for (int n = 1; n <= 50; ++n) {
        auto cert_path = path_of("c1_" + std::to_string(n) + ".json");
        int rc = cli("find-ball --points " + path_of("z2_l2.txt") +
                     " --center 1.4142135623730951,0.3333333333333333 --n " + std::to_string(n) +
                     " --method sorted --out " + cert_path);
        require(rc == 0, "find-ball exited with code " + std::to_string(rc) + " at n=" +
                             std::to_string(n));
        auto cert = BallCertificate::from_json(read_file(cert_path));
        require(cert.n == n, "wrong n in certificate");
        auto val = validate_certificate(cert, ips, spec);
        require(val.ok, "revalidation failed at n=" + std::to_string(n) + ": " + val.message);
        auto recount = ips.count_in_ball_scan(cert.center, cert.radius, spec);
        require(recount.ids == cert.inside_ids, "linear recount mismatch");
        require(val.margin_in > 1e-9 && val.margin_out > 1e-9,
                "margins below 1e-9 at n=" + std::to_string(n));
    }
    double dt = seconds_since(t0);
    require(dt < 10.0, "runtime " + std::to_string(dt) + "s exceeds 10s");
    char buf[64];
    std::snprintf(buf, sizeof buf, "50/50 certificates, %.2fs", dt);
    return buf;
}

// ---------------------------------------------------------------------------
// 2. growth procedure on three spaces, n = 1..20 each
std::string criterion2() {
    struct Space {
        std::string gen_args, points, norm_flag, center;
    };
    std::vector<Space> spaces{
        {"--dim 2 --horizon 64 --norm l2", "z2_l2.txt", "", "0.5,0.5"},
        {"--dim 2 --horizon 64 --norm l1.5", "z2_l15.txt", "", "0.5,0.5"},
        {"--dim 3 --horizon 16 --norm custom3d", "z3_custom.txt", "", "0.4,0.3,0.2"},
    };
    for (const auto& sp : spaces) {
        if (!fs::exists(g_dir / sp.points))
            require(cli("gen-points " + sp.gen_args + " --out " + path_of(sp.points)) == 0,
                    "gen-points failed for " + sp.points);
        IndexedPointSet ips(load_points(path_of(sp.points)));
        const auto& spec = ips.points().horizon_norm;
        for (int n = 1; n <= 20; ++n) {
            auto cert_path = path_of("c2.json");
            int rc = cli("find-ball --points " + path_of(sp.points) + " --center " + sp.center +
                         " --n " + std::to_string(n) + " --method growth --out " + cert_path);
            require(rc == 0, sp.points + ": growth exited with code " + std::to_string(rc) +
                                 " at n=" + std::to_string(n));
            auto cert = BallCertificate::from_json(read_file(cert_path));
            auto val = validate_certificate(cert, ips, spec);
            require(val.ok && cert.n == n, sp.points + ": validation failed at n=" +
                                               std::to_string(n) + ": " + val.message);
            require(cert.trace.size() <= 64, "more than 64 steps in the trace");
            int prev = 0, prev_phase = 0;
            for (const auto& step : cert.trace) {
                if (step.phase != prev_phase) prev = 0;
                require(step.count > prev && step.count <= n,
                        sp.points + ": trace counts not strictly increasing at n=" +
                            std::to_string(n));
                prev = step.count;
                prev_phase = step.phase;
            }
        }
    }
    return "3 spaces x 20 certificates";
}

// ---------------------------------------------------------------------------
// 3. segment witnesses across the strictly convex l_p family
std::string criterion3() {
    for (double p : {1.5, 2.0, 3.0}) {
        for (int dim : {2, 3}) {
            auto spec = NormSpec::lp(p, dim);
            uint64_t seed = static_cast<uint64_t>(p * 100) + static_cast<uint64_t>(dim);
            auto rep = sprime_scan(spec, random_pair_source(spec, 100, Rng::child_seed(seed, 1)),
                                   0.1, 2000, seed, {WitnessStrategy::segment});
            require(rep.witnessed == 100, "p=" + std::to_string(p) + " dim=" +
                                              std::to_string(dim) + ": witnessed " +
                                              std::to_string(rep.witnessed) + "/100");
        }
    }
    // separation >= 1e-10 is re-checked pair by pair
    auto spec = NormSpec::lp(1.5, 3);
    auto src = random_pair_source(spec, 100, Rng::child_seed(7, 1));
    while (auto pair = src()) {
        Rng rng(8);
        auto res = find_witness(spec, pair->first, pair->second, 0.1,
                                {WitnessStrategy::segment}, 2000, rng);
        require(res.found(), "witness missing in the revalidation pass");
        const auto& w = *res.witness;
        require(norm_eval(spec, w.z) < 0.1, "witness norm exceeds delta");
        double nx = norm_eval(spec, add(w.x, w.z));
        double ny = norm_eval(spec, add(w.y, w.z));
        require((nx - 1.0) * (ny - 1.0) < 0, "witness does not split the pair");
        require(std::min(std::fabs(nx - 1.0), std::fabs(ny - 1.0)) >= 1e-10,
                "separation below 1e-10");
    }
    return "600/600 witnesses, separation >= 1e-10";
}

// ---------------------------------------------------------------------------
// 4. l_inf facet impossibility: certificate and exhaustive grid agree
std::string criterion4() {
    Vec x{1.0, 0.0}, y{1.0, 0.5};
    auto cert = certify_no_witness_linf(x, y, 0.4);
    require(cert.has_value(), "certificate not applicable");
    require(cert->delta_star == 0.5, "delta_star != 1/2");

    auto spec = NormSpec::linf(2);
    long split = 0;
    for (int i = -40; i <= 40; ++i) {
        for (int j = -40; j <= 40; ++j) {
            Vec z{0.01 * i, 0.01 * j};
            double nx = norm_eval(spec, add(x, z));
            double ny = norm_eval(spec, add(y, z));
            if ((nx - 1.0) * (ny - 1.0) < 0.0) ++split;
        }
    }
    require(split == 0, std::to_string(split) + " grid witnesses found");
    return "delta_star = 1/2, 0 witnesses in 6561 grid points";
}

// ---------------------------------------------------------------------------
// 5. custom norm integrity with the shipped default corners
std::string criterion5() {
    auto spec = NormSpec::custom3d();
    const auto& params = spec.custom;

    // surface membership on a 100 x 100 ray grid over the top sector
    for (int i = 0; i < 100; ++i) {
        double X = -1.0 + 2.0 * i / 99.0;
        for (int j = 0; j < 100; ++j) {
            double s = static_cast<double>(j) / 99.0;
            double x = s * X, y = s;
            double z = example_surface_height(x, y, params);
            double g = norm_eval(spec, Vec{x, y, z});
            require(std::fabs(g - 1.0) <= 1e-6, "surface membership gauge off at (" +
                                                    std::to_string(x) + "," + std::to_string(y) + ")");
        }
    }

    // homogeneity and symmetry at 1e-9 over 1e4 samples
    Rng rng(500);
    for (int i = 0; i < 10000; ++i) {
        Vec v = rng.gauss_vec(3);
        double t = rng.uniform(-3.0, 3.0);
        double lhs = norm_eval(spec, scale(v, t));
        double nv = norm_eval(spec, v);
        require(std::fabs(lhs - std::fabs(t) * nv) <= 1e-9 * (1.0 + std::fabs(t) * nv),
                "homogeneity violated");
        require(std::fabs(norm_eval(spec, scale(v, -1.0)) - nv) <= 1e-9 * (1.0 + nv),
                "symmetry violated");
    }

    // 1e5 sampled triangle inequalities, zero violations at 1e-9
    Rng rng2(501);
    for (int i = 0; i < 100000; ++i) {
        Vec u = rng2.gauss_vec(3), v = rng2.gauss_vec(3);
        double lhs = norm_eval(spec, add(u, v));
        double rhs = norm_eval(spec, u) + norm_eval(spec, v);
        require(lhs <= rhs + 1e-9, "triangle inequality violated by " + std::to_string(lhs - rhs));
    }

    // per-edge tangent slope strictly monotone at 50 samples
    for (int edge = 1; edge <= 4; ++edge) {
        double prev = edge_tangent_slope(edge, -1.0, params);
        int direction = 0;
        for (int i = 1; i < 50; ++i) {
            double s = -1.0 + 2.0 * i / 49.0;
            double v = edge_tangent_slope(edge, s, params);
            int d = (v > prev) ? 1 : (v < prev ? -1 : 0);
            require(d != 0 && (direction == 0 || d == direction),
                    "edge slope not strictly monotone");
            if (direction == 0) direction = d;
            prev = v;
        }
    }
    return "membership 1e4 pts, homogeneity/symmetry 1e4, triangle 1e5, slopes 4x50";
}

// ---------------------------------------------------------------------------
// 6. flat-edge witnesses via the tangent strategy; the probe flags the pairs
std::string criterion6() {
    auto spec = NormSpec::custom3d();
    std::vector<std::pair<double, double>> pairs{{-0.5, -0.1}, {0.0, 0.4}};
    for (auto [x1, x2] : pairs) {
        Vec x{x1, 1.0, 0.0}, y{x2, 1.0, 0.0};
        Rng rng(600);
        auto res = find_witness(spec, x, y, 0.05, {WitnessStrategy::tangent}, 2000, rng);
        require(res.found(), "no tangent witness for the pair (" + std::to_string(x1) + "," +
                                 std::to_string(x2) + ")");
        require(res.witness->strategy == "tangent", "wrong strategy");
        double nx = norm_eval(spec, add(x, res.witness->z));
        double ny = norm_eval(spec, add(y, res.witness->z));
        require(norm_eval(spec, res.witness->z) < 0.05, "witness norm exceeds delta");
        require((nx - 1.0) * (ny - 1.0) < 0, "no strict split");
        require(std::min(std::fabs(nx - 1.0), std::fabs(ny - 1.0)) >= 1e-10,
                "separation below 1e-10");
    }
    std::vector<std::pair<Vec, Vec>> flat{{Vec{-0.5, 1, 0}, Vec{-0.1, 1, 0}},
                                          {Vec{0.0, 1, 0}, Vec{0.4, 1, 0}}};
    auto probe = strict_convexity_probe_pairs(spec, flat);
    require(probe.flagged == 2, "probe did not flag the equator pairs as flat");
    return "2/2 tangent witnesses, 2/2 pairs flagged flat";
}

// ---------------------------------------------------------------------------
// 7. counting engine at scale: equality and >= 10x speedup
std::string criterion7() {
    auto spec = NormSpec::lp(2, 2);
    const double H = 570.0;
    IndexedPointSet ips(lattice_window(2, H, spec));
    size_t n_points = ips.points().size();
    require(n_points >= 1000000, "point set smaller than 1e6");

    const long Q = 10000;
    Rng rng(700);
    std::vector<Vec> centers(Q);
    std::vector<double> radii(Q);
    for (long i = 0; i < Q; ++i) {
        while (true) {
            Vec c{rng.uniform(-H, H), rng.uniform(-H, H)};
            double r = rng.uniform(0.5, 2.5);
            if (norm_eval(spec, c) + r <= H) {
                centers[static_cast<size_t>(i)] = std::move(c);
                radii[static_cast<size_t>(i)] = r;
                break;
            }
        }
    }

    unsigned threads = std::max(1u, std::thread::hardware_concurrency());
    auto run_phase = [&](bool indexed, std::vector<BallQueryResult>& out) {
        out.resize(static_cast<size_t>(Q));
        std::vector<std::thread> pool;
        std::atomic<long> next{0};
        for (unsigned t = 0; t < threads; ++t)
            pool.emplace_back([&] {
                long i;
                while ((i = next.fetch_add(64)) < Q) {
                    long hi = std::min(Q, i + 64);
                    for (long q = i; q < hi; ++q)
                        out[static_cast<size_t>(q)] =
                            indexed ? ips.count_in_ball(centers[static_cast<size_t>(q)], radii[static_cast<size_t>(q)], spec)
                                    : ips.count_in_ball_scan(centers[static_cast<size_t>(q)], radii[static_cast<size_t>(q)], spec);
                }
            });
        for (auto& th : pool) th.join();
    };

    std::vector<BallQueryResult> indexed, scanned;
    auto t0 = clock_type::now();
    run_phase(true, indexed);
    double dt_indexed = seconds_since(t0);
    auto t1 = clock_type::now();
    run_phase(false, scanned);
    double dt_scan = seconds_since(t1);

    for (long i = 0; i < Q; ++i) {
        require(indexed[static_cast<size_t>(i)].ids == scanned[static_cast<size_t>(i)].ids,
                "id mismatch at query " + std::to_string(i));
        require(indexed[static_cast<size_t>(i)].boundary_gap == scanned[static_cast<size_t>(i)].boundary_gap,
                "boundary gap mismatch at query " + std::to_string(i));
    }
    double speedup = dt_scan / std::max(dt_indexed, 1e-9);
    require(speedup >= 10.0, "speedup only " + std::to_string(speedup) + "x");
    char buf[160];
    std::snprintf(buf, sizeof buf, "%zu points, 10^4 queries identical, %.0fx faster (%.3fs vs %.3fs, %u threads)",
                  n_points, speedup, dt_indexed, dt_scan, threads);
    return buf;
}

// ---------------------------------------------------------------------------
// 8. figure mesh: every vertex on the sphere, byte-identical CSV
std::string criterion8() {
    auto csv1 = path_of("fig1.csv");
    auto csv2 = path_of("fig1_again.csv");
    auto svg = path_of("fig1.svg");
    require(cli("norm-info --norm custom3d --triangles 1,2 --grid 64 --svg " + svg + " --csv " +
                csv1) == 0,
            "norm-info failed");
    require(cli("norm-info --norm custom3d --triangles 1,2 --grid 64 --svg " + svg + " --csv " +
                csv2) == 0,
            "norm-info re-run failed");
    require(read_file(csv1) == read_file(csv2), "CSV differs between runs");

    auto spec = NormSpec::custom3d();
    std::ifstream in(csv1);
    std::string line;
    std::getline(in, line);
    require(line == "x,y,z", "missing CSV header");
    long rows = 0;
    while (std::getline(in, line)) {
        double x, y, z;
        require(std::sscanf(line.c_str(), "%lf,%lf,%lf", &x, &y, &z) == 3, "bad CSV row");
        double g = norm_eval(spec, Vec{x, y, z});
        require(std::fabs(g - 1.0) <= 1e-6, "vertex gauge off the sphere: " + std::to_string(g));
        ++rows;
    }
    require(rows == 2 * 65 * 65, "unexpected vertex count");
    return "8450 vertices on the sphere, CSV byte-identical";
}

} // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: acceptance <path-to-cli> [scratch-dir]\n");
        return 2;
    }
    g_cli = argv[1];
    g_dir = (argc > 2) ? fs::path(argv[2]) : fs::temp_directory_path() / "steinhaus_acceptance";
    fs::create_directories(g_dir);

    run_criterion(1, "classical plane reproduction (sorted, n=1..50)", criterion1);
    run_criterion(2, "growth procedure on three spaces (n=1..20)", criterion2);
    run_criterion(3, "segment witnesses for strictly convex l_p", criterion3);
    run_criterion(4, "l_inf facet impossibility certificate vs grid", criterion4);
    run_criterion(5, "custom norm integrity with shipped defaults", criterion5);
    run_criterion(6, "flat-edge tangent witnesses and flatness probe", criterion6);
    run_criterion(7, "counting engine equality and speedup", criterion7);
    run_criterion(8, "surface mesh export on the sphere", criterion8);

    if (g_failures == 0) std::printf("all 8 acceptance criteria passed\n");
    else std::printf("%d criteria FAILED\n", g_failures);
    return g_failures == 0 ? 0 : 1;
}
