#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "steinhaus/errors.hpp"
#include "steinhaus/io_util.hpp"
#include "steinhaus/pointset.hpp"

using namespace steinhaus;

namespace {

// brute-force window oracle, independent of the production enumeration path
size_t brute_count(int dim, double H, const NormSpec& spec) {
    long b = static_cast<long>(std::floor(H * 2 + 2));
    size_t count = 0;
    std::vector<long> c(static_cast<size_t>(dim), -b);
    Vec p(static_cast<size_t>(dim));
    while (true) {
        for (int j = 0; j < dim; ++j) p[static_cast<size_t>(j)] = static_cast<double>(c[static_cast<size_t>(j)]);
        if (norm_eval(spec, p) <= H) ++count;
        int j = dim - 1;
        while (j >= 0 && c[static_cast<size_t>(j)] == b) { c[static_cast<size_t>(j)] = -b; --j; }
        if (j < 0) break;
        ++c[static_cast<size_t>(j)];
    }
    return count;
}

std::filesystem::path tmp_file(const char* name) {
    return std::filesystem::temp_directory_path() / name;
}

} // namespace

TEST_CASE("lattice_window counts match brute force") {
    auto e2 = NormSpec::lp(2, 2);
    CHECK(lattice_window(2, 1.5, e2).size() == 9);
    CHECK(lattice_window(2, 1.5, e2).size() == brute_count(2, 1.5, e2));
    CHECK(lattice_window(2, 1.0, NormSpec::linf(2)).size() == 9);
    CHECK(lattice_window(1, 3.2, NormSpec::lp(1, 1)).size() == 7);
    CHECK(lattice_window(2, 7.3, e2).size() == brute_count(2, 7.3, e2));
    auto l15 = NormSpec::lp(1.5, 2);
    CHECK(lattice_window(2, 4.7, l15).size() == brute_count(2, 4.7, l15));
}

TEST_CASE("lattice_window cap and argument checks") {
    CHECK_THROWS_AS(lattice_window(2, 1e6, NormSpec::lp(2, 2), 1000), std::invalid_argument);
    CHECK_THROWS_AS(lattice_window(0, 1.0, NormSpec::lp(2, 2)), std::invalid_argument);
    CHECK_THROWS_AS(lattice_window(2, -1.0, NormSpec::lp(2, 2)), std::invalid_argument);
}

TEST_CASE("point file round trip") {
    auto ps = lattice_window(2, 5, NormSpec::lp(2, 2));
    auto path = tmp_file("roundtrip_pts.txt");
    save_points(ps, path.string());
    auto ps2 = load_points(path.string());
    CHECK(ps2.dim == ps.dim);
    CHECK(ps2.horizon == ps.horizon);
    CHECK(ps2.horizon_norm == ps.horizon_norm);
    CHECK(ps2.coords == ps.coords);

    // byte-identical on re-save
    auto path2 = tmp_file("roundtrip_pts2.txt");
    save_points(ps2, path2.string());
    CHECK(read_file(path.string()) == read_file(path2.string()));
    std::filesystem::remove(path);
    std::filesystem::remove(path2);
}

TEST_CASE("point file custom beta round trips through the header") {
    Custom3DParams params{{1.3, 1.9, 2.1, 1.6}};
    auto ps = lattice_window(3, 2.0, NormSpec::custom3d(params));
    auto path = tmp_file("roundtrip_custom.txt");
    save_points(ps, path.string());
    auto ps2 = load_points(path.string());
    CHECK(ps2.horizon_norm.custom.beta_corners == params.beta_corners);
    std::filesystem::remove(path);
}

TEST_CASE("point file errors") {
    auto path = tmp_file("bad_pts.txt");
    {
        std::ofstream f(path);
        f << "# dim=2 horizon=5 norm=l2\n1 2\n3\n";
    }
    CHECK_THROWS_AS(load_points(path.string()), IoError); // wrong arity
    {
        std::ofstream f(path);
        f << "1 2\n";
    }
    CHECK_THROWS_AS(load_points(path.string()), IoError); // missing header
    {
        std::ofstream f(path);
        f << "# dim=2 horizon=5 norm=l2\n1 x\n";
    }
    CHECK_THROWS_AS(load_points(path.string()), IoError); // malformed coordinate
    {
        std::ofstream f(path);
        f << "# dim=2 horizon=1 norm=l2\n5 5\n";
    }
    CHECK_THROWS_AS(load_points(path.string()), IoError); // beyond declared horizon
    CHECK_THROWS_AS(load_points("/nonexistent/file.txt"), IoError);
    std::filesystem::remove(path);
}

TEST_CASE("count_in_ball basics against brute force") {
    auto spec = NormSpec::lp(2, 2);
    IndexedPointSet ips(lattice_window(2, 8, spec));
    Vec origin{0.0, 0.0};

    auto open1 = ips.count_in_ball(origin, 1.0, spec, BallMode::open);
    CHECK(open1.count == 1); // origin only
    auto closed1 = ips.count_in_ball(origin, 1.0, spec, BallMode::closed);
    CHECK(closed1.count == 5); // plus the four unit points
    CHECK(closed1.boundary_gap == 0.0);
    CHECK(ips.count_in_ball(origin, 0.0, spec, BallMode::open).count == 0);
}

TEST_CASE("indexed and scan paths are identical") {
    auto spec = NormSpec::lp(2, 2);
    IndexedPointSet ips(lattice_window(2, 24, spec));
    Rng rng(11);
    for (int q = 0; q < 1000; ++q) {
        Vec c{rng.uniform(-14.0, 14.0), rng.uniform(-14.0, 14.0)};
        double r = rng.uniform(0.0, 6.0);
        if (norm_eval(spec, c) + r > 24) { --q; continue; }
        auto mode = (q % 2 == 0) ? BallMode::open : BallMode::closed;
        auto a = ips.count_in_ball(c, r, spec, mode);
        auto b = ips.count_in_ball_scan(c, r, spec, mode);
        REQUIRE(a.count == b.count);
        REQUIRE(a.ids == b.ids);
        REQUIRE(a.boundary_gap == b.boundary_gap);
    }
}

TEST_CASE("index equivalence under the custom norm") {
    auto spec = NormSpec::custom3d();
    IndexedPointSet ips(lattice_window(3, 6, spec));
    Rng rng(12);
    for (int q = 0; q < 50; ++q) {
        Vec c{rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0), rng.uniform(-1.0, 1.0)};
        double r = rng.uniform(0.0, 2.0);
        if (norm_eval(spec, c) + r > 6) { --q; continue; }
        auto a = ips.count_in_ball(c, r, spec);
        auto b = ips.count_in_ball_scan(c, r, spec);
        REQUIRE(a.ids == b.ids);
        REQUIRE(a.boundary_gap == b.boundary_gap);
    }
}

TEST_CASE("count monotone in r on nested ladders") {
    auto spec = NormSpec::lp(2, 2);
    IndexedPointSet ips(lattice_window(2, 16, spec));
    Rng rng(13);
    for (int trial = 0; trial < 20; ++trial) {
        Vec c{rng.uniform(-4.0, 4.0), rng.uniform(-4.0, 4.0)};
        size_t prev = 0;
        for (int i = 0; i <= 40; ++i) {
            double r = 0.25 * i;
            auto res = ips.count_in_ball(c, r, spec);
            REQUIRE(res.count >= prev);
            prev = res.count;
        }
    }
}

TEST_CASE("horizon safety") {
    auto spec = NormSpec::lp(2, 2);
    IndexedPointSet ips(lattice_window(2, 8, spec));
    CHECK_THROWS_AS(ips.count_in_ball(Vec{6.0, 0.0}, 3.0, spec), HorizonError);
    CHECK_THROWS_AS(ips.count_in_ball(Vec{9.0, 0.0}, 0.1, spec), HorizonError);
    CHECK_NOTHROW(ips.count_in_ball(Vec{6.0, 0.0}, 2.0, spec));
}

TEST_CASE("sorted_distances") {
    auto spec = NormSpec::lp(2, 2);
    IndexedPointSet ips(lattice_window(2, 8, spec));

    auto one = ips.sorted_distances(Vec{0.0, 0.0}, spec, 1);
    CHECK(one.size() == 1);
    CHECK(one[0].first == 0.0);

    // symmetric center: exact tie, stable id order
    auto tie = ips.sorted_distances(Vec{0.5, 0.0}, spec, 2);
    CHECK(tie[0].first == tie[1].first);
    CHECK(tie[0].second < tie[1].second);

    // prefix consistency
    auto a = ips.sorted_distances(Vec{0.3, 0.7}, spec, 5);
    auto b = ips.sorted_distances(Vec{0.3, 0.7}, spec, 6);
    CHECK(std::equal(a.begin(), a.end(), b.begin()));

    // k beyond the certified range
    CHECK_THROWS_AS(ips.sorted_distances(Vec{7.5, 0.0}, spec, 60), HorizonError);
    CHECK_THROWS_AS(ips.sorted_distances(Vec{0.0, 0.0}, spec, 100000), std::invalid_argument);
}

TEST_CASE("sqrt2 center distances are pairwise distinct") {
    auto ps = lattice_window(2, 12, NormSpec::lp(2, 2));
    CHECK(sqrt2_center_distances_distinct(ps));

    // sanity: the irrational-center argument needs the sqrt2 coefficient;
    // distances from (0.5, 0) do collide, and the sorted query shows the tie
    IndexedPointSet ips(lattice_window(2, 8, NormSpec::lp(2, 2)));
    auto tie = ips.sorted_distances(Vec{std::sqrt(2.0), 1.0 / 3.0}, NormSpec::lp(2, 2), 2);
    CHECK(tie[0].first < tie[1].first);
}

TEST_CASE("default cell size and explicit cell size agree") {
    auto spec = NormSpec::lp(2, 2);
    auto ps = lattice_window(2, 12, spec);
    IndexedPointSet a(ps, 0.0);
    IndexedPointSet b(ps, 2.5);
    Rng rng(14);
    for (int q = 0; q < 200; ++q) {
        Vec c{rng.uniform(-6.0, 6.0), rng.uniform(-6.0, 6.0)};
        double r = rng.uniform(0.0, 3.0);
        if (norm_eval(spec, c) + r > 12) { --q; continue; }
        REQUIRE(a.count_in_ball(c, r, spec).ids == b.count_in_ball(c, r, spec).ids);
    }
}
