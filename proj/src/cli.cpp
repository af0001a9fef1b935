#include "steinhaus/cli.hpp"

#include <algorithm>
#include <chrono>
#include <charconv>
#include <cstdio>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "steinhaus/errors.hpp"
#include "steinhaus/io_util.hpp"
#include "steinhaus/mesh.hpp"
#include "steinhaus/pointset.hpp"
#include "steinhaus/search.hpp"
#include "steinhaus/sprime.hpp"

namespace steinhaus {

using json = nlohmann::json;

namespace {

Vec parse_coords(const std::string& text) {
    Vec v;
    const char* s = text.c_str();
    const char* end = s + text.size();
    while (s < end) {
        double x;
        auto r = std::from_chars(s, end, x);
        if (r.ec != std::errc{}) throw CLI::ValidationError("coords", "bad coordinate list: " + text);
        v.push_back(x);
        s = r.ptr;
        if (s < end) {
            if (*s != ',') throw CLI::ValidationError("coords", "bad coordinate list: " + text);
            ++s;
        }
    }
    if (v.empty()) throw CLI::ValidationError("coords", "empty coordinate list");
    return v;
}

NormSpec make_norm(const std::string& name, int dim, const std::string& beta) {
    if (name.rfind("custom3d", 0) == 0 && !beta.empty())
        return NormSpec::parse("custom3d;beta=" + beta, 3);
    return NormSpec::parse(name, name == "custom3d" ? 3 : dim);
}

// Expands `--config FILE` (flat key=value lines, '#' comments) into ordinary
// flags appended after the original arguments. Keys already given as flags
// are skipped, so command-line values override the file. Unknown keys become
// unknown flags and are rejected by the parser.
std::vector<std::string> expand_config_args(const std::vector<std::string>& args) {
    std::vector<std::string> out;
    std::string config_path;
    for (size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config") {
            if (i + 1 >= args.size()) throw IoError("--config needs a file path");
            config_path = args[++i];
            continue;
        }
        out.push_back(args[i]);
    }
    if (config_path.empty()) return out;

    std::string text = read_file(config_path);
    std::istringstream in(text);
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        " is not key=value");
        auto trim = [](std::string s) {
            auto a = s.find_first_not_of(" \t");
            auto b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string{} : s.substr(a, b - a + 1);
        };
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw std::invalid_argument("empty key in config");
        std::string flag = "--" + key;
        if (std::find(out.begin(), out.end(), flag) != out.end()) continue; // flag overrides
        out.push_back(flag);
        out.push_back(value);
    }
    return out;
}

struct CommonSearchFlags {
    double tau_shell = 1e-9, tau_tie = 1e-9, delta_witness = 0.05, shrink = 0.5;
    int max_iter = 64;
    uint64_t seed = 0;

    void attach(CLI::App* cmd) {
        cmd->add_option("--tau-shell", tau_shell, "boundary shell thickness (relative)");
        cmd->add_option("--tau-tie", tau_tie, "distinct-distance gap");
        cmd->add_option("--delta-witness", delta_witness, "initial witness delta (relative)");
        cmd->add_option("--shrink", shrink, "delta shrink factor");
        cmd->add_option("--max-iter", max_iter, "iteration budget");
        cmd->add_option("--seed", seed, "RNG seed");
    }
    SearchConfig config() const {
        SearchConfig cfg;
        cfg.tau_shell = tau_shell;
        cfg.tau_tie = tau_tie;
        cfg.delta_witness = delta_witness;
        cfg.shrink = shrink;
        cfg.max_iterations = max_iter;
        cfg.seed = seed;
        return cfg;
    }
};

} // namespace

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"Toolkit for exactly-n ball search and unit-sphere separation checks in "
                 "finite-dimensional normed spaces"};
    app.require_subcommand(1);

    // gen-points
    auto* gen = app.add_subcommand("gen-points", "enumerate the integer lattice inside a norm ball");
    int gen_dim = 2;
    double gen_h = 0.0;
    std::string gen_norm = "l2", gen_beta, gen_out;
    size_t gen_cap = 100000000;
    gen->add_option("--dim", gen_dim, "dimension")->check(CLI::PositiveNumber);
    gen->add_option("--horizon", gen_h, "horizon radius H")->required()->check(CLI::PositiveNumber);
    gen->add_option("--norm", gen_norm, "norm name: l<p>, linf, custom3d");
    gen->add_option("--beta", gen_beta, "custom3d corner values c1,c2,c3,c4");
    gen->add_option("--out", gen_out, "output point file")->required();
    gen->add_option("--cap", gen_cap, "candidate count cap");

    // find-ball
    auto* fb = app.add_subcommand("find-ball", "find a ball containing exactly n points");
    std::string fb_points, fb_norm, fb_beta, fb_center, fb_method = "sorted", fb_out;
    int fb_n = 0;
    CommonSearchFlags fb_flags;
    fb->add_option("--points", fb_points, "point file")->required();
    fb->add_option("--norm", fb_norm, "norm name (default: the point file's norm)");
    fb->add_option("--beta", fb_beta, "custom3d corner values");
    fb->add_option("--center", fb_center, "seed center, comma-separated")->required();
    fb->add_option("--n", fb_n, "target count")->required();
    fb->add_option("--method", fb_method, "sorted | growth")
        ->check(CLI::IsMember({"sorted", "growth"}));
    fb->add_option("--out", fb_out, "certificate JSON path")->required();
    fb_flags.attach(fb);

    // check-sprime
    auto* cs = app.add_subcommand("check-sprime", "survey separation witnesses on the unit sphere");
    std::string cs_norm = "l2", cs_beta, cs_out;
    int cs_dim = 2;
    long cs_pairs = 0, cs_facet = 0, cs_equator = 0, cs_budget = 2000;
    double cs_delta = 0.0;
    uint64_t cs_seed = 0;
    cs->add_option("--norm", cs_norm, "norm name");
    cs->add_option("--beta", cs_beta, "custom3d corner values");
    cs->add_option("--dim", cs_dim, "dimension")->check(CLI::PositiveNumber);
    cs->add_option("--pairs", cs_pairs, "number of random unit pairs");
    cs->add_option("--facet-pairs", cs_facet, "pairs on one l_inf facet");
    cs->add_option("--equator-pairs", cs_equator, "pairs on the custom ball's top equator edge");
    cs->add_option("--delta", cs_delta, "perturbation bound delta")->required();
    cs->add_option("--budget", cs_budget, "witness attempts per pair");
    cs->add_option("--seed", cs_seed, "RNG seed");
    cs->add_option("--out", cs_out, "report JSON path")->required();

    // norm-info
    auto* ni = app.add_subcommand("norm-info", "export unit-sphere geometry");
    std::string ni_norm, ni_beta, ni_svg, ni_csv, ni_triangles = "1,2";
    int ni_dim = 2, ni_grid = 64;
    ni->add_option("--norm", ni_norm, "norm name")->required();
    ni->add_option("--beta", ni_beta, "custom3d corner values");
    ni->add_option("--dim", ni_dim, "dimension (2-D spheres only for l_p/l_inf)");
    ni->add_option("--triangles", ni_triangles, "custom3d sectors to mesh, e.g. 1,2");
    ni->add_option("--grid", ni_grid, "mesh resolution per sector");
    ni->add_option("--svg", ni_svg, "SVG output path");
    ni->add_option("--csv", ni_csv, "CSV output path (custom3d mesh only)");

    // bench
    auto* be = app.add_subcommand("bench", "compare indexed and linear-scan ball counting");
    std::string be_points, be_norm, be_beta, be_out;
    long be_queries = 0;
    double be_radius = 0.0;
    uint64_t be_seed = 0;
    be->add_option("--points", be_points, "point file")->required();
    be->add_option("--queries", be_queries, "number of random queries")->required();
    be->add_option("--norm", be_norm, "norm name (default: the point file's norm)");
    be->add_option("--beta", be_beta, "custom3d corner values");
    be->add_option("--radius", be_radius, "max query radius (default: 3 index cells)");
    be->add_option("--seed", be_seed, "RNG seed");
    be->add_option("--out", be_out, "deterministic summary JSON path");

    std::string config_doc;
    for (auto* cmd : {gen, fb, cs, ni, be})
        cmd->add_option("--config", config_doc,
                        "flat key=value config file; flags override it; unknown keys rejected")
            ->expected(1)
            ->type_name("FILE");

    std::vector<std::string> expanded;
    try {
        expanded = expand_config_args(args);
    } catch (const IoError& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    }

    std::vector<std::string> reversed(expanded.rbegin(), expanded.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e); // prints help, returns 0
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (gen->parsed()) {
            auto spec = make_norm(gen_norm, gen_dim, gen_beta);
            auto ps = lattice_window(spec.dim, gen_h, spec, gen_cap);
            save_points(ps, gen_out);
            std::cout << "wrote " << ps.size() << " points to " << gen_out << "\n";
        } else if (fb->parsed()) {
            if (fb_n < 1) throw std::invalid_argument("--n must be >= 1");
            auto ps = load_points(fb_points);
            NormSpec spec = fb_norm.empty() ? ps.horizon_norm : make_norm(fb_norm, ps.dim, fb_beta);
            IndexedPointSet ips(std::move(ps));
            Vec center = parse_coords(fb_center);
            auto cfg = fb_flags.config();
            BallCertificate cert = (fb_method == "sorted")
                                       ? find_ball_sorted(ips, spec, center, fb_n, cfg)
                                       : find_ball_growth(ips, spec, center, fb_n, cfg);
            atomic_write(fb_out, cert.to_json());
            std::cout << "certificate: n=" << cert.n << " radius=" << format_double(cert.radius)
                      << " margin_in=" << format_double(cert.margin_in)
                      << " margin_out=" << format_double(cert.margin_out) << "\n";
        } else if (cs->parsed()) {
            if (!(cs_delta > 0)) throw std::invalid_argument("--delta must be > 0");
            long modes = (cs_pairs > 0) + (cs_facet > 0) + (cs_equator > 0);
            if (modes != 1)
                throw std::invalid_argument("choose exactly one of --pairs/--facet-pairs/--equator-pairs");
            NormSpec spec = make_norm(cs_norm, cs_dim, cs_beta);
            PairSource src;
            if (cs_pairs > 0) src = random_pair_source(spec, cs_pairs, Rng::child_seed(cs_seed, 1));
            else if (cs_facet > 0) {
                if (spec.kind != NormKind::Linf)
                    throw std::invalid_argument("--facet-pairs requires --norm linf");
                src = linf_facet_pair_source(spec.dim, cs_facet, cs_delta, Rng::child_seed(cs_seed, 2));
            } else {
                if (spec.kind != NormKind::Custom3D)
                    throw std::invalid_argument("--equator-pairs requires --norm custom3d");
                src = custom_equator_pair_source(cs_equator, Rng::child_seed(cs_seed, 3));
            }
            auto rep = sprime_scan(spec, src, cs_delta, cs_budget, cs_seed);
            atomic_write(cs_out, rep.to_json());
            std::cout << "scan: total=" << rep.total << " witnessed=" << rep.witnessed
                      << " not_found=" << rep.not_found
                      << " certified_impossible=" << rep.certified_impossible << "\n";
        } else if (ni->parsed()) {
            if (ni_grid < 1) throw std::invalid_argument("--grid must be >= 1");
            NormSpec spec = make_norm(ni_norm, ni_dim, ni_beta);
            if (spec.kind == NormKind::Custom3D) {
                std::vector<int> sectors;
                for (const char* s = ni_triangles.c_str(); *s;) {
                    int v;
                    auto r = std::from_chars(s, ni_triangles.c_str() + ni_triangles.size(), v);
                    if (r.ec != std::errc{}) throw std::invalid_argument("bad --triangles list");
                    sectors.push_back(v);
                    s = r.ptr;
                    if (*s == ',') ++s;
                }
                auto mesh = custom_surface_mesh(spec.custom, sectors, ni_grid);
                if (!ni_csv.empty()) atomic_write(ni_csv, mesh_to_csv(mesh));
                if (!ni_svg.empty()) atomic_write(ni_svg, mesh_to_svg(mesh));
                std::cout << "meshed " << mesh.vertices.size() << " vertices\n";
            } else {
                if (!ni_csv.empty())
                    throw std::invalid_argument("--csv mesh output is custom3d-only");
                if (spec.dim != 2)
                    throw std::invalid_argument("sphere polylines are 2-D only");
                if (ni_svg.empty()) throw std::invalid_argument("--svg path required");
                auto poly = sphere_polyline_2d(spec, std::max(ni_grid, 4));
                atomic_write(ni_svg, polyline_to_svg(poly));
                std::cout << "wrote sphere polyline (" << poly.size() << " vertices)\n";
            }
        } else if (be->parsed()) {
            if (be_queries < 0) throw std::invalid_argument("--queries must be >= 0");
            auto ps = load_points(be_points);
            NormSpec spec = be_norm.empty() ? ps.horizon_norm : make_norm(be_norm, ps.dim, be_beta);
            IndexedPointSet ips(std::move(ps));
            double rmax = be_radius > 0 ? be_radius : 3.0 * ips.cell_size();
            Rng rng(be_seed);
            const auto& pts = ips.points();
            std::vector<Vec> centers;
            std::vector<double> radii;
            for (long i = 0; i < be_queries; ++i) {
                // rejection-sample a certified center
                while (true) {
                    Vec c(static_cast<size_t>(pts.dim));
                    for (auto& v : c) v = rng.uniform(-pts.horizon, pts.horizon);
                    double r = rng.uniform(0.0, rmax);
                    if (norm_eval(pts.horizon_norm, c) + r <= pts.horizon) {
                        centers.push_back(std::move(c));
                        radii.push_back(r);
                        break;
                    }
                }
            }
            using clock = std::chrono::steady_clock;
            std::vector<size_t> counts(static_cast<size_t>(be_queries));
            size_t sum_indexed = 0;
            auto t0 = clock::now();
            for (long i = 0; i < be_queries; ++i) {
                counts[static_cast<size_t>(i)] =
                    ips.count_in_ball(centers[static_cast<size_t>(i)], radii[static_cast<size_t>(i)], spec).count;
                sum_indexed += counts[static_cast<size_t>(i)];
            }
            auto t1 = clock::now();
            bool equal = true;
            for (long i = 0; i < be_queries; ++i) {
                auto r = ips.count_in_ball_scan(centers[static_cast<size_t>(i)], radii[static_cast<size_t>(i)], spec);
                if (r.count != counts[static_cast<size_t>(i)]) equal = false;
            }
            auto t2 = clock::now();
            double ms_indexed = std::chrono::duration<double, std::milli>(t1 - t0).count();
            double ms_scan = std::chrono::duration<double, std::milli>(t2 - t1).count();
            json stdout_rep{{"queries", be_queries},
                            {"equal", equal},
                            {"count_checksum", sum_indexed},
                            {"indexed_ms", ms_indexed},
                            {"scan_ms", ms_scan}};
            std::cout << stdout_rep.dump(2) << "\n";
            if (!be_out.empty()) {
                // timings are excluded so the file is byte-identical across runs
                json file_rep{{"queries", be_queries}, {"equal", equal},
                              {"count_checksum", sum_indexed}};
                atomic_write(be_out, file_rep.dump(2) + "\n");
            }
            if (!equal) return 1;
        }
        return 0;
    } catch (const HorizonError& e) {
        std::cerr << "horizon error: " << e.what() << "\n";
        return 3;
    } catch (const BudgetError& e) {
        std::cerr << "budget exhausted: " << e.what() << "\n";
        if (!e.payload.empty()) std::cerr << e.payload;
        return 2;
    } catch (const IoError& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return 4;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace steinhaus
