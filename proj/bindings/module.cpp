#include "dppr/diffusion.hpp"
#include "dppr/eval.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

namespace py = pybind11;
using namespace dppr;

namespace {

std::vector<Method> methods_from_names(const std::vector<std::string>& names) {
    std::vector<Method> out;
    for (const auto& name : names) {
        const auto m = parse_method(name);
        if (!m) throw std::invalid_argument("unknown method '" + name + "'");
        out.push_back(*m);
    }
    return out;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Link prediction via diffusion distance over personalized-PageRank signals";

    py::register_exception<ParseError>(m, "EdgelistParseError", PyExc_ValueError);
    py::register_exception<GenerationError>(m, "GenerationError", PyExc_RuntimeError);
    py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_RuntimeError);

    py::class_<Graph>(m, "Graph")
        .def_static(
            "from_edges",
            [](NodeId n, const std::vector<Edge>& edges) { return Graph::from_edges(n, edges); },
            py::arg("n"), py::arg("edges"))
        .def_property_readonly("num_nodes", &Graph::num_nodes)
        .def_property_readonly("num_edges", &Graph::num_edges)
        .def_property_readonly("average_degree", &Graph::average_degree)
        .def("degree", &Graph::degree, py::arg("u"))
        .def(
            "neighbors",
            [](const Graph& g, NodeId u) {
                const auto nb = g.neighbors(u);
                return std::vector<NodeId>(nb.begin(), nb.end());
            },
            py::arg("u"))
        .def("has_edge", &Graph::has_edge, py::arg("u"), py::arg("v"))
        .def("edge_list", &Graph::edge_list)
        .def("labels", &Graph::labels)
        .def("index_of", [](const Graph& g, const std::string& s) { return g.index_of(s); },
             py::arg("label"))
        .def("label_of", &Graph::label_of, py::arg("u"))
        .def("structure_hash", &Graph::structure_hash)
        .def("serialize",
             [](const Graph& g) {
                 std::ostringstream os;
                 serialize_edgelist(g, os);
                 return os.str();
             })
        .def("__repr__", [](const Graph& g) {
            return "Graph(n=" + std::to_string(g.num_nodes()) +
                   ", m=" + std::to_string(g.num_edges()) + ")";
        });

    m.def(
        "parse_edgelist",
        [](const std::string& text) {
            std::istringstream in(text);
            return parse_edgelist(in);
        },
        py::arg("text"));
    m.def(
        "parse_edgelist_file",
        [](const std::string& path) { return parse_edgelist_file(path); }, py::arg("path"));

    m.def("laplacian_apply", &laplacian_apply, py::arg("graph"), py::arg("x"));
    m.def("walk_apply", &walk_apply, py::arg("graph"), py::arg("x"));
    m.def("resolvent_apply", &resolvent_apply, py::arg("graph"), py::arg("alpha"), py::arg("x"));

    py::class_<CgConfig>(m, "CgConfig")
        .def(py::init<>())
        .def(py::init([](double alpha, double tol, std::size_t max_iter) {
                 return CgConfig{alpha, tol, max_iter};
             }),
             py::arg("alpha") = 1.0, py::arg("tol") = 1e-8, py::arg("max_iter") = 0)
        .def_readwrite("alpha", &CgConfig::alpha)
        .def_readwrite("tol", &CgConfig::tol)
        .def_readwrite("max_iter", &CgConfig::max_iter);

    py::class_<SolveReport>(m, "SolveReport")
        .def_readonly("solution", &SolveReport::solution)
        .def_readonly("iterations", &SolveReport::iterations)
        .def_readonly("final_residual", &SolveReport::final_residual);

    m.def("cg_solve", &cg_solve, py::arg("graph"), py::arg("b"), py::arg("config") = CgConfig{});
    m.def("dense_resolvent_solve", &dense_resolvent_solve, py::arg("graph"), py::arg("b"),
          py::arg("alpha"));

    py::class_<PprConfig>(m, "PprConfig")
        .def(py::init([](double beta, double tol, std::size_t max_iter) {
                 return PprConfig{beta, tol, max_iter};
             }),
             py::arg("beta") = 0.85, py::arg("tol") = 1e-10, py::arg("max_iter") = 1000)
        .def_readwrite("beta", &PprConfig::beta)
        .def_readwrite("tol", &PprConfig::tol)
        .def_readwrite("max_iter", &PprConfig::max_iter);

    py::class_<PprVector>(m, "PprVector")
        .def_readonly("source", &PprVector::source)
        .def_readonly("values", &PprVector::values);

    m.def("ppr_solve", &ppr_solve, py::arg("graph"), py::arg("source"),
          py::arg("config") = PprConfig{});
    m.def(
        "ppr_batch",
        [](const Graph& g, const std::vector<NodeId>& sources, const PprConfig& cfg,
           unsigned jobs) {
            py::list out;
            for (const auto& r : ppr_batch(g, sources, cfg, jobs)) {
                py::dict d;
                d["source"] = r.source;
                d["values"] = r.vector ? py::cast(r.vector->values) : py::none();
                d["error"] = r.error;
                out.append(d);
            }
            return out;
        },
        py::arg("graph"), py::arg("sources"), py::arg("config") = PprConfig{},
        py::arg("jobs") = 1);

    py::class_<SolverConfig>(m, "SolverConfig")
        .def(py::init([](double alpha, double beta, double epsilon) {
                 SolverConfig cfg;
                 cfg.alpha = alpha;
                 cfg.beta = beta;
                 cfg.epsilon = epsilon;
                 return cfg;
             }),
             py::arg("alpha") = 1.0, py::arg("beta") = 0.85, py::arg("epsilon") = 1e-10)
        .def_readwrite("alpha", &SolverConfig::alpha)
        .def_readwrite("beta", &SolverConfig::beta)
        .def_readwrite("epsilon", &SolverConfig::epsilon)
        .def_readwrite("ppr", &SolverConfig::ppr)
        .def_readwrite("cg", &SolverConfig::cg);

    py::class_<PairScore>(m, "PairScore")
        .def_readonly("u", &PairScore::u)
        .def_readonly("v", &PairScore::v)
        .def_readonly("distance", &PairScore::distance)
        .def_readonly("score", &PairScore::score)
        .def("__repr__", [](const PairScore& p) {
            return "PairScore(u=" + std::to_string(p.u) + ", v=" + std::to_string(p.v) +
                   ", distance=" + std::to_string(p.distance) +
                   ", score=" + std::to_string(p.score) + ")";
        });

    m.def("dppr_distance", &dppr_distance, py::arg("graph"), py::arg("su"), py::arg("sv"),
          py::arg("config") = SolverConfig{});
    m.def("dppr_score", &dppr_score, py::arg("graph"), py::arg("u"), py::arg("v"),
          py::arg("config") = SolverConfig{});
    m.def(
        "dppr_score_pairs",
        [](const Graph& g, const std::vector<Edge>& pairs, const SolverConfig& cfg,
           unsigned jobs) {
            py::list out;
            for (const auto& r : dppr_score_pairs(g, pairs, cfg, jobs)) {
                if (r.score) out.append(py::cast(*r.score));
                else out.append(py::cast(r.error));
            }
            return out;
        },
        py::arg("graph"), py::arg("pairs"), py::arg("config") = SolverConfig{},
        py::arg("jobs") = 1);

    py::enum_<KatzMode>(m, "KatzMode")
        .value("exact_solve", KatzMode::exact_solve)
        .value("truncated_series", KatzMode::truncated_series);

    py::class_<KatzConfig>(m, "KatzConfig")
        .def(py::init([](double damping, std::size_t max_len, KatzMode mode) {
                 return KatzConfig{damping, max_len, mode};
             }),
             py::arg("damping") = 0.005, py::arg("max_len") = 10,
             py::arg("mode") = KatzMode::exact_solve)
        .def_readwrite("damping", &KatzConfig::damping)
        .def_readwrite("max_len", &KatzConfig::max_len)
        .def_readwrite("mode", &KatzConfig::mode);

    m.def("common_neighbors", &common_neighbors, py::arg("graph"), py::arg("u"), py::arg("v"));
    m.def("adamic_adar", &adamic_adar, py::arg("graph"), py::arg("u"), py::arg("v"));
    m.def("katz_score", &katz_score, py::arg("graph"), py::arg("u"), py::arg("v"),
          py::arg("config") = KatzConfig{});
    m.def("spectral_radius_estimate", &spectral_radius_estimate, py::arg("graph"),
          py::arg("iters") = 100);

    py::class_<BaParams>(m, "BaParams")
        .def(py::init([](NodeId n, NodeId m_attach, std::uint64_t seed) {
                 return BaParams{n, m_attach, seed};
             }),
             py::arg("n") = 500, py::arg("m") = 2, py::arg("seed") = 1)
        .def_readwrite("n", &BaParams::n)
        .def_readwrite("m", &BaParams::m)
        .def_readwrite("seed", &BaParams::seed);

    m.def("generate_ba", &generate_ba, py::arg("params"));

    py::class_<LfrParams>(m, "LfrParams")
        .def(py::init([](NodeId n, double tau1, double tau2, double mu, double avg_degree,
                         NodeId min_community, NodeId max_degree, NodeId max_community,
                         std::uint64_t seed) {
                 return LfrParams{n, tau1, tau2, mu, avg_degree, min_community,
                                  max_degree, max_community, seed};
             }),
             py::arg("n") = 250, py::arg("tau1") = 3.0, py::arg("tau2") = 1.5,
             py::arg("mu") = 0.1, py::arg("avg_degree") = 5.0, py::arg("min_community") = 20,
             py::arg("max_degree") = 0, py::arg("max_community") = 0, py::arg("seed") = 1)
        .def_readwrite("n", &LfrParams::n)
        .def_readwrite("tau1", &LfrParams::tau1)
        .def_readwrite("tau2", &LfrParams::tau2)
        .def_readwrite("mu", &LfrParams::mu)
        .def_readwrite("avg_degree", &LfrParams::avg_degree)
        .def_readwrite("min_community", &LfrParams::min_community)
        .def_readwrite("max_degree", &LfrParams::max_degree)
        .def_readwrite("max_community", &LfrParams::max_community)
        .def_readwrite("seed", &LfrParams::seed);

    m.def(
        "generate_lfr",
        [](const LfrParams& params) {
            LfrResult r = generate_lfr(params);
            return py::make_tuple(std::move(r.graph), std::move(r.community));
        },
        py::arg("params"));
    m.def("mean_mixing_fraction", &mean_mixing_fraction, py::arg("graph"), py::arg("community"));

    py::class_<SplitDataset>(m, "SplitDataset")
        .def_readonly("train", &SplitDataset::train)
        .def_readonly("positives", &SplitDataset::positives)
        .def_readonly("negatives", &SplitDataset::negatives)
        .def_readonly("holdout_fraction", &SplitDataset::holdout_fraction)
        .def_readonly("seed", &SplitDataset::seed);

    m.def("holdout_split", &holdout_split, py::arg("graph"), py::arg("fraction"), py::arg("seed"));
    m.def(
        "aupr",
        [](const std::vector<int>& labels, const std::vector<double>& scores) {
            return aupr(labels, scores);
        },
        py::arg("labels"), py::arg("scores"));

    py::class_<Protocol>(m, "Protocol")
        .def(py::init([](double fraction, std::size_t repeats, std::uint64_t seed, unsigned jobs) {
                 return Protocol{fraction, repeats, seed, jobs};
             }),
             py::arg("fraction") = 0.1, py::arg("repeats") = 30, py::arg("seed") = 1,
             py::arg("jobs") = 1)
        .def_readwrite("fraction", &Protocol::fraction)
        .def_readwrite("repeats", &Protocol::repeats)
        .def_readwrite("base_seed", &Protocol::base_seed)
        .def_readwrite("jobs", &Protocol::jobs);

    m.def(
        "run_benchmark",
        [](const Graph& g, const std::vector<std::string>& methods, const Protocol& protocol,
           const SolverConfig& solver, const KatzConfig& katz) {
            py::list out;
            for (const auto& r : run_benchmark(g, methods_from_names(methods), protocol, solver,
                                               katz)) {
                py::dict d;
                d["method"] = std::string(method_name(r.method));
                d["repeat"] = r.repeat;
                d["seed"] = r.split_seed;
                d["aupr"] = r.aupr;
                d["n_pos"] = r.n_pos;
                d["n_neg"] = r.n_neg;
                d["runtime_ms"] = r.runtime_ms;
                d["ok"] = r.ok;
                d["error"] = r.error;
                out.append(d);
            }
            return out;
        },
        py::arg("graph"), py::arg("methods"), py::arg("protocol") = Protocol{},
        py::arg("solver") = SolverConfig{}, py::arg("katz") = KatzConfig{});

    py::class_<DiffusionTrace>(m, "DiffusionTrace")
        .def_readonly("times", &DiffusionTrace::times)
        .def_readonly("snapshots", &DiffusionTrace::snapshots);

    m.def(
        "diffuse_trace",
        [](const Graph& g, const NodeSignal& s0, const std::vector<double>& times,
           unsigned steps_per_unit) { return diffuse_trace(g, s0, times, steps_per_unit); },
        py::arg("graph"), py::arg("s0"), py::arg("times"), py::arg("steps_per_unit") = 1000);

    m.attr("__version__") = "0.1.0";
}
