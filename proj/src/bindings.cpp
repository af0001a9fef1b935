#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "steinhaus/errors.hpp"
#include "steinhaus/mesh.hpp"
#include "steinhaus/norms.hpp"
#include "steinhaus/pointset.hpp"
#include "steinhaus/search.hpp"
#include "steinhaus/sprime.hpp"

namespace py = pybind11;
using namespace steinhaus;

namespace {

std::vector<WitnessStrategy> strategies_from_names(const std::vector<std::string>& names) {
    if (names.empty()) return all_strategies;
    std::vector<WitnessStrategy> out;
    for (const auto& n : names) {
        if (n == "segment") out.push_back(WitnessStrategy::segment);
        else if (n == "tangent") out.push_back(WitnessStrategy::tangent);
        else if (n == "random") out.push_back(WitnessStrategy::random_search);
        else throw std::invalid_argument("unknown strategy: " + n);
    }
    return out;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Exactly-n ball search and unit-sphere separation checks in finite-dimensional "
              "normed spaces";

    py::register_exception<HorizonError>(m, "HorizonError");
    py::register_exception<BudgetError>(m, "BudgetError");

    py::class_<Custom3DParams>(m, "Custom3DParams")
        .def(py::init([](std::array<double, 4> corners) {
                 Custom3DParams p{corners};
                 p.validate();
                 return p;
             }),
             py::arg("beta_corners") = std::array<double, 4>{1.25, 1.75, 2.25, 1.75})
        .def_readonly("beta_corners", &Custom3DParams::beta_corners)
        .def("edge_beta", &Custom3DParams::edge_beta);

    py::class_<NormSpec>(m, "NormSpec")
        .def_static("lp", &NormSpec::lp, py::arg("p"), py::arg("dim"))
        .def_static("linf", &NormSpec::linf, py::arg("dim"))
        .def_static("custom3d", &NormSpec::custom3d, py::arg("params") = Custom3DParams{})
        .def_static("parse", &NormSpec::parse, py::arg("name"), py::arg("dim"))
        .def_readonly("dim", &NormSpec::dim)
        .def_property_readonly("name", &NormSpec::name)
        .def("outer_box", &NormSpec::outer_box)
        .def("__repr__", [](const NormSpec& s) { return "<NormSpec " + s.name() + ">"; });

    m.def("norm_eval", [](const NormSpec& s, const Vec& v) { return norm_eval(s, v); });
    m.def("boundary_scale", [](const NormSpec& s, const Vec& v) { return boundary_scale(s, v); });
    m.def("surface_height", &example_surface_height, py::arg("x"), py::arg("y"),
          py::arg("params") = Custom3DParams{});
    m.def("edge_tangent_slope", &edge_tangent_slope, py::arg("edge"), py::arg("s"),
          py::arg("params") = Custom3DParams{});
    m.def(
        "sample_unit_sphere",
        [](const NormSpec& s, uint64_t seed, int count) {
            Rng rng(seed);
            return sample_unit_sphere(s, rng, count);
        },
        py::arg("spec"), py::arg("seed"), py::arg("count"));

    py::class_<PointSet>(m, "PointSet")
        .def_readonly("dim", &PointSet::dim)
        .def_readonly("horizon", &PointSet::horizon)
        .def_property_readonly("norm", [](const PointSet& ps) { return ps.horizon_norm; })
        .def("__len__", &PointSet::size)
        .def("point", [](const PointSet& ps, size_t i) {
            if (i >= ps.size()) throw py::index_error();
            auto p = ps.point(i);
            return Vec(p.begin(), p.end());
        });

    m.def("lattice_window", &lattice_window, py::arg("dim"), py::arg("horizon"), py::arg("norm"),
          py::arg("cap") = size_t{100000000});
    m.def("save_points", &save_points);
    m.def("load_points", &load_points);

    py::class_<BallQueryResult>(m, "BallQueryResult")
        .def_readonly("count", &BallQueryResult::count)
        .def_readonly("ids", &BallQueryResult::ids)
        .def_readonly("boundary_gap", &BallQueryResult::boundary_gap);

    py::class_<IndexedPointSet>(m, "IndexedPointSet")
        .def(py::init<PointSet, double>(), py::arg("points"), py::arg("cell_size") = 0.0)
        .def_property_readonly("points", &IndexedPointSet::points,
                               py::return_value_policy::reference_internal)
        .def_property_readonly("cell_size", &IndexedPointSet::cell_size)
        .def(
            "count_in_ball",
            [](const IndexedPointSet& ips, const Vec& c, double r, const NormSpec& spec,
               const std::string& mode, bool use_index) {
                BallMode m = (mode == "closed") ? BallMode::closed : BallMode::open;
                return use_index ? ips.count_in_ball(c, r, spec, m)
                                 : ips.count_in_ball_scan(c, r, spec, m);
            },
            py::arg("center"), py::arg("r"), py::arg("spec"), py::arg("mode") = "open",
            py::arg("use_index") = true)
        .def("sorted_distances", &IndexedPointSet::sorted_distances, py::arg("center"),
             py::arg("spec"), py::arg("k"));

    py::class_<SearchConfig>(m, "SearchConfig")
        .def(py::init<>())
        .def_readwrite("tau_shell", &SearchConfig::tau_shell)
        .def_readwrite("tau_tie", &SearchConfig::tau_tie)
        .def_readwrite("delta_witness", &SearchConfig::delta_witness)
        .def_readwrite("shrink", &SearchConfig::shrink)
        .def_readwrite("max_iterations", &SearchConfig::max_iterations)
        .def_readwrite("seed", &SearchConfig::seed)
        .def_readwrite("tau_sep", &SearchConfig::tau_sep)
        .def_readwrite("witness_budget", &SearchConfig::witness_budget);

    py::class_<SearchStep>(m, "SearchStep")
        .def_readonly("center", &SearchStep::center)
        .def_readonly("scale", &SearchStep::scale)
        .def_readonly("count", &SearchStep::count)
        .def_readonly("shell_ids", &SearchStep::shell_ids)
        .def_readonly("witness", &SearchStep::witness)
        .def_readonly("phase", &SearchStep::phase);

    py::class_<BallCertificate>(m, "BallCertificate")
        .def_readonly("center", &BallCertificate::center)
        .def_readonly("radius", &BallCertificate::radius)
        .def_readonly("n", &BallCertificate::n)
        .def_readonly("inside_ids", &BallCertificate::inside_ids)
        .def_readonly("margin_in", &BallCertificate::margin_in)
        .def_readonly("margin_out", &BallCertificate::margin_out)
        .def_readonly("method", &BallCertificate::method)
        .def_readonly("trace", &BallCertificate::trace)
        .def("to_json", &BallCertificate::to_json)
        .def_static("from_json", &BallCertificate::from_json);

    m.def("find_ball_sorted", &find_ball_sorted, py::arg("index"), py::arg("spec"),
          py::arg("seed_center"), py::arg("n"), py::arg("config") = SearchConfig{});
    m.def("find_ball_growth", &find_ball_growth, py::arg("index"), py::arg("spec"), py::arg("x0"),
          py::arg("n"), py::arg("config") = SearchConfig{});

    py::class_<ValidationResult>(m, "ValidationResult")
        .def_readonly("ok", &ValidationResult::ok)
        .def_readonly("margin_in", &ValidationResult::margin_in)
        .def_readonly("margin_out", &ValidationResult::margin_out)
        .def_readonly("missing", &ValidationResult::missing)
        .def_readonly("extra", &ValidationResult::extra)
        .def_readonly("message", &ValidationResult::message);

    m.def("validate_certificate", &validate_certificate);

    py::class_<Witness>(m, "Witness")
        .def_readonly("x", &Witness::x)
        .def_readonly("y", &Witness::y)
        .def_readonly("z", &Witness::z)
        .def_readonly("delta", &Witness::delta)
        .def_readonly("norm_x_after", &Witness::norm_x_after)
        .def_readonly("norm_y_after", &Witness::norm_y_after)
        .def_readonly("strategy", &Witness::strategy);

    m.def(
        "find_witness",
        [](const NormSpec& spec, const Vec& x, const Vec& y, double delta,
           const std::vector<std::string>& strategies, long budget, uint64_t seed)
            -> py::object {
            Rng rng(seed);
            auto res =
                find_witness(spec, x, y, delta, strategies_from_names(strategies), budget, rng);
            if (res.found()) return py::cast(*res.witness);
            return py::make_tuple(res.report.attempts, res.report.best_separation);
        },
        py::arg("spec"), py::arg("x"), py::arg("y"), py::arg("delta"),
        py::arg("strategies") = std::vector<std::string>{}, py::arg("budget") = 2000,
        py::arg("seed") = 0,
        "Returns a Witness, or an (attempts, best_separation) tuple when none was found.");

    py::class_<ImpossibilityCertificate>(m, "ImpossibilityCertificate")
        .def_readonly("axis", &ImpossibilityCertificate::axis)
        .def_readonly("sign", &ImpossibilityCertificate::sign)
        .def_readonly("delta_star", &ImpossibilityCertificate::delta_star);

    m.def("certify_no_witness_linf", [](const Vec& x, const Vec& y, double delta) -> py::object {
        auto c = certify_no_witness_linf(x, y, delta);
        if (c) return py::cast(*c);
        return py::none();
    });

    py::class_<ScanReport>(m, "ScanReport")
        .def_readonly("total", &ScanReport::total)
        .def_readonly("witnessed", &ScanReport::witnessed)
        .def_readonly("not_found", &ScanReport::not_found)
        .def_readonly("certified_impossible", &ScanReport::certified_impossible)
        .def_readonly("strategies", &ScanReport::strategies)
        .def_readonly("x_out", &ScanReport::x_out)
        .def_readonly("y_out", &ScanReport::y_out)
        .def("to_json", &ScanReport::to_json);

    m.def(
        "sprime_scan_random",
        [](const NormSpec& spec, long pairs, double delta, long budget, uint64_t seed) {
            return sprime_scan(spec, random_pair_source(spec, pairs, Rng::child_seed(seed, 1)),
                               delta, budget, seed);
        },
        py::arg("spec"), py::arg("pairs"), py::arg("delta"), py::arg("budget") = 2000,
        py::arg("seed") = 0);
    m.def(
        "sprime_scan_facet",
        [](int dim, long pairs, double delta, long budget, uint64_t seed) {
            auto spec = NormSpec::linf(dim);
            return sprime_scan(spec, linf_facet_pair_source(dim, pairs, delta, Rng::child_seed(seed, 2)),
                               delta, budget, seed);
        },
        py::arg("dim"), py::arg("pairs"), py::arg("delta"), py::arg("budget") = 2000,
        py::arg("seed") = 0);

    m.def("is_flat_pair", &is_flat_pair);
    m.def(
        "strict_convexity_probe",
        [](const NormSpec& spec, long trials, uint64_t seed) {
            Rng rng(seed);
            auto rep = strict_convexity_probe(spec, trials, rng);
            return py::make_tuple(rep.trials, rep.flagged);
        },
        py::arg("spec"), py::arg("trials"), py::arg("seed") = 0);

    m.def(
        "surface_mesh_csv",
        [](const Custom3DParams& params, const std::vector<int>& sectors, int grid) {
            return mesh_to_csv(custom_surface_mesh(params, sectors, grid));
        },
        py::arg("params"), py::arg("sectors"), py::arg("grid"));
}
