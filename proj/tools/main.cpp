// dppr — link prediction via diffusion distance over personalized-PageRank
// signals, with CN/AA/Katz baselines, synthetic generators, and a seeded
// AUPR benchmark harness.
#include "dppr/diffusion.hpp"
#include "dppr/eval.hpp"
#include "dppr/rng.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

constexpr const char* kVersion = "0.1.0";

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Run configuration: JSON file merged first, command-line flags win.
// ---------------------------------------------------------------------------

struct RunConfig {
    std::string edgelist;              // exactly one input source
    std::optional<dppr::BaParams> ba;
    std::optional<dppr::LfrParams> lfr;

    std::vector<std::string> methods{"dppr", "cn", "aa", "katz"};
    dppr::SolverConfig solver{};
    dppr::KatzConfig katz{};
    dppr::Protocol protocol{};
    std::string out_dir = "out";
    unsigned jobs = 1;
};

json solver_to_json(const dppr::SolverConfig& s) {
    return json{{"alpha", s.alpha},
                {"beta", s.beta},
                {"epsilon", s.epsilon},
                {"ppr_tol", s.ppr.tol},
                {"ppr_max_iter", s.ppr.max_iter},
                {"cg_tol", s.cg.tol},
                {"cg_max_iter", s.cg.max_iter}};
}

json katz_to_json(const dppr::KatzConfig& k) {
    return json{{"damping", k.damping},
                {"max_len", k.max_len},
                {"mode", k.mode == dppr::KatzMode::exact_solve ? "exact" : "series"}};
}

json config_to_json(const RunConfig& c) {
    json input = json::object();
    if (!c.edgelist.empty()) input["edgelist"] = c.edgelist;
    if (c.ba)
        input["ba"] = {{"n", c.ba->n}, {"m", c.ba->m}, {"seed", c.ba->seed}};
    if (c.lfr)
        input["lfr"] = {{"n", c.lfr->n},
                        {"tau1", c.lfr->tau1},
                        {"tau2", c.lfr->tau2},
                        {"mu", c.lfr->mu},
                        {"avg_degree", c.lfr->avg_degree},
                        {"min_community", c.lfr->min_community},
                        {"max_degree", c.lfr->max_degree},
                        {"max_community", c.lfr->max_community},
                        {"seed", c.lfr->seed}};
    return json{{"input", input},
                {"methods", c.methods},
                {"solver", solver_to_json(c.solver)},
                {"katz", katz_to_json(c.katz)},
                {"protocol",
                 {{"fraction", c.protocol.fraction},
                  {"repeats", c.protocol.repeats},
                  {"seed", c.protocol.base_seed}}},
                {"output", {{"dir", c.out_dir}}},
                {"jobs", c.jobs}};
}

template <typename T>
void fetch(const json& j, const char* key, T& into, const std::string& where) {
    if (!j.contains(key)) return;
    try {
        into = j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ConfigError("config field '" + where + "." + key + "': " + e.what());
    }
}

void apply_config_json(const json& j, RunConfig& c) {
    if (j.contains("input")) {
        const json& in = j.at("input");
        fetch(in, "edgelist", c.edgelist, "input");
        if (in.contains("ba")) {
            dppr::BaParams p;
            fetch(in.at("ba"), "n", p.n, "input.ba");
            fetch(in.at("ba"), "m", p.m, "input.ba");
            fetch(in.at("ba"), "seed", p.seed, "input.ba");
            c.ba = p;
        }
        if (in.contains("lfr")) {
            dppr::LfrParams p;
            const json& lj = in.at("lfr");
            fetch(lj, "n", p.n, "input.lfr");
            fetch(lj, "tau1", p.tau1, "input.lfr");
            fetch(lj, "tau2", p.tau2, "input.lfr");
            fetch(lj, "mu", p.mu, "input.lfr");
            fetch(lj, "avg_degree", p.avg_degree, "input.lfr");
            fetch(lj, "min_community", p.min_community, "input.lfr");
            fetch(lj, "max_degree", p.max_degree, "input.lfr");
            fetch(lj, "max_community", p.max_community, "input.lfr");
            fetch(lj, "seed", p.seed, "input.lfr");
            c.lfr = p;
        }
    }
    fetch(j, "methods", c.methods, "");
    if (j.contains("solver")) {
        const json& s = j.at("solver");
        fetch(s, "alpha", c.solver.alpha, "solver");
        fetch(s, "beta", c.solver.beta, "solver");
        fetch(s, "epsilon", c.solver.epsilon, "solver");
        fetch(s, "ppr_tol", c.solver.ppr.tol, "solver");
        fetch(s, "ppr_max_iter", c.solver.ppr.max_iter, "solver");
        fetch(s, "cg_tol", c.solver.cg.tol, "solver");
        fetch(s, "cg_max_iter", c.solver.cg.max_iter, "solver");
    }
    if (j.contains("katz")) {
        const json& k = j.at("katz");
        fetch(k, "damping", c.katz.damping, "katz");
        fetch(k, "max_len", c.katz.max_len, "katz");
        std::string mode;
        fetch(k, "mode", mode, "katz");
        if (!mode.empty()) {
            if (mode == "exact") c.katz.mode = dppr::KatzMode::exact_solve;
            else if (mode == "series") c.katz.mode = dppr::KatzMode::truncated_series;
            else throw ConfigError("config field 'katz.mode': expected exact|series, got " + mode);
        }
    }
    if (j.contains("protocol")) {
        const json& p = j.at("protocol");
        fetch(p, "fraction", c.protocol.fraction, "protocol");
        fetch(p, "repeats", c.protocol.repeats, "protocol");
        fetch(p, "seed", c.protocol.base_seed, "protocol");
    }
    if (j.contains("output")) fetch(j.at("output"), "dir", c.out_dir, "output");
    fetch(j, "jobs", c.jobs, "");
}

json load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("config file " + path + ": " + e.what());
    }
}

// ---------------------------------------------------------------------------
// Shared plumbing
// ---------------------------------------------------------------------------

std::vector<dppr::Method> resolve_methods(const std::vector<std::string>& names) {
    if (names.empty()) throw ConfigError("method list must not be empty");
    std::vector<dppr::Method> out;
    for (const auto& name : names) {
        const auto m = dppr::parse_method(name);
        if (!m) throw ConfigError("unknown method '" + name + "' (use dppr|cn|aa|katz)");
        out.push_back(*m);
    }
    return out;
}

dppr::Graph load_input_graph(const RunConfig& c, json* provenance = nullptr) {
    const int sources = int(!c.edgelist.empty()) + int(c.ba.has_value()) + int(c.lfr.has_value());
    if (sources != 1)
        throw ConfigError("exactly one input source required (edgelist, ba, or lfr); got " +
                          std::to_string(sources));
    if (!c.edgelist.empty()) {
        if (!fs::exists(c.edgelist)) throw ConfigError("input path does not exist: " + c.edgelist);
        dppr::ParseStats stats;
        dppr::Graph g = dppr::parse_edgelist_file(c.edgelist, &stats);
        if (stats.duplicate_edges || stats.self_loops)
            std::cerr << "warning: dropped " << stats.duplicate_edges << " duplicate edges and "
                      << stats.self_loops << " self-loops from " << c.edgelist << "\n";
        if (provenance) (*provenance)["edgelist"] = c.edgelist;
        return g;
    }
    if (c.ba) {
        if (provenance) (*provenance)["generator"] = "ba";
        return dppr::generate_ba(*c.ba);
    }
    if (provenance) (*provenance)["generator"] = "lfr";
    return dppr::generate_lfr(*c.lfr).graph;
}

dppr::NodeId resolve_node(const dppr::Graph& g, const std::string& token) {
    if (const auto idx = g.index_of(token)) return *idx;
    // dense numeric index fallback for label-free graphs
    if (!token.empty() && token.find_first_not_of("0123456789") == std::string::npos) {
        const unsigned long v = std::stoul(token);
        if (v < g.num_nodes()) return dppr::NodeId(v);
    }
    throw ConfigError("unknown node label '" + token + "'");
}

void write_file(const fs::path& path, const std::string& contents) {
    if (!path.parent_path().empty()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << contents;
}

/// <file>.meta.json sidecar: resolved config + command, so a run can be
/// reconstructed from its artifacts alone.
void write_sidecar(const fs::path& target, const std::string& command, const RunConfig& c,
                   const json& extra = json::object()) {
    json meta{{"tool", "dppr"},
              {"version", kVersion},
              {"command", command},
              {"config", config_to_json(c)}};
    for (auto it = extra.begin(); it != extra.end(); ++it) meta[it.key()] = it.value();
    write_file(target.string() + ".meta.json", meta.dump(2) + "\n");
}

json summary_to_json(std::span<const dppr::BenchmarkResult> rows,
                     std::span<const dppr::MethodSummary> summary) {
    json methods = json::object();
    for (const auto& s : summary)
        methods[std::string(dppr::method_name(s.method))] = {
            {"mean_aupr", s.mean_aupr},
            {"std_aupr", s.std_aupr},
            {"repeats_ok", s.repeats_ok},
            {"repeats_failed", s.repeats_failed}};
    json detail = json::array();
    for (const auto& r : rows) {
        json row{{"axis", r.axis},
                 {"method", std::string(dppr::method_name(r.method))},
                 {"repeat", r.repeat},
                 {"seed", r.split_seed},
                 {"n_pos", r.n_pos},
                 {"n_neg", r.n_neg},
                 {"runtime_ms", r.runtime_ms},
                 {"katz_damping_used", r.katz.damping}};
        if (r.ok) row["aupr"] = r.aupr;
        else row["error"] = r.error;
        detail.push_back(row);
    }
    return json{{"methods", methods}, {"rows", detail}};
}

void print_summary_table(std::span<const dppr::MethodSummary> summary) {
    std::printf("%-8s %12s %12s %8s %8s\n", "method", "mean_aupr", "std_aupr", "ok", "failed");
    for (const auto& s : summary)
        std::printf("%-8s %12.4f %12.4f %8zu %8zu\n",
                    std::string(dppr::method_name(s.method)).c_str(), s.mean_aupr, s.std_aupr,
                    s.repeats_ok, s.repeats_failed);
}

bool any_failure(std::span<const dppr::BenchmarkResult> rows) {
    for (const auto& r : rows)
        if (!r.ok) return true;
    return false;
}

// ---------------------------------------------------------------------------
// Subcommands
// ---------------------------------------------------------------------------

int cmd_score(const RunConfig& cfg, const std::string& u_label, const std::string& v_label) {
    const dppr::Graph g = load_input_graph(cfg);
    const dppr::NodeId u = resolve_node(g, u_label);
    const dppr::NodeId v = resolve_node(g, v_label);
    const dppr::PairScore ps = dppr::dppr_score(g, u, v, cfg.solver);
    json out{{"u", u_label},
             {"v", v_label},
             {"distance", ps.distance},
             {"score", ps.score},
             {"config", config_to_json(cfg)}};
    std::cout << out.dump(2) << "\n";
    return 0;
}

int cmd_ppr(const RunConfig& cfg, const std::string& source_label, const std::string& out_path) {
    const dppr::Graph g = load_input_graph(cfg);
    const dppr::NodeId source = resolve_node(g, source_label);
    const dppr::PprConfig pcfg = cfg.solver.ppr_resolved();
    const dppr::PprCacheKey key{g.structure_hash(), source, pcfg.beta, pcfg.tol};

    std::optional<dppr::PprCache> cache;
    if (const char* dir = std::getenv("DPPR_CACHE_DIR"); dir && *dir) cache.emplace(dir);

    std::optional<dppr::PprVector> vec;
    if (cache) vec = cache->load(key);
    const bool hit = vec.has_value();
    if (!vec) vec = dppr::ppr_solve(g, source, pcfg);
    if (cache && !hit) cache->store(key, *vec);

    std::ostringstream csv;
    csv << "node,label,value\n";
    for (dppr::NodeId i = 0; i < g.num_nodes(); ++i)
        csv << i << ',' << g.label_of(i) << ',' << dppr::format_double(vec->values[i]) << '\n';
    if (out_path.empty() || out_path == "-") {
        std::cout << csv.str();
    } else {
        write_file(out_path, csv.str());
        write_sidecar(out_path, "ppr", cfg, json{{"source", source_label}, {"cache_hit", hit}});
        std::cout << "wrote " << out_path << (hit ? " (cache hit)" : "") << "\n";
    }
    return 0;
}

int cmd_split(const RunConfig& cfg, std::uint64_t seed) {
    const dppr::Graph g = load_input_graph(cfg);
    const dppr::SplitDataset split = dppr::holdout_split(g, cfg.protocol.fraction, seed);

    std::ostringstream train;
    dppr::serialize_edgelist(split.train, train);
    auto dump_pairs = [](const std::vector<dppr::Edge>& pairs) {
        std::ostringstream os;
        for (const auto& [u, v] : pairs) os << u << ' ' << v << '\n';
        return os.str();
    };
    const fs::path dir(cfg.out_dir);
    write_file(dir / "train.edges", train.str());
    write_file(dir / "positives.txt", dump_pairs(split.positives));
    write_file(dir / "negatives.txt", dump_pairs(split.negatives));
    const json extra{{"seed", seed},
                     {"fraction", cfg.protocol.fraction},
                     {"n_pos", split.positives.size()},
                     {"train_edges", split.train.num_edges()}};
    for (const char* name : {"train.edges", "positives.txt", "negatives.txt"})
        write_sidecar(dir / name, "split", cfg, extra);
    std::cout << "wrote " << (dir / "train.edges").string() << " (+positives/negatives), "
              << split.positives.size() << " held-out edges\n";
    return 0;
}

int cmd_generate(const RunConfig& cfg, const std::string& out_path,
                 const std::string& community_path) {
    if (!cfg.ba && !cfg.lfr) throw ConfigError("generate: choose a model via --model ba|lfr");
    std::ostringstream os;
    json extra;
    if (cfg.ba) {
        const dppr::Graph g = dppr::generate_ba(*cfg.ba);
        dppr::serialize_edgelist(g, os);
        extra = {{"model", "ba"}, {"nodes", g.num_nodes()}, {"edges", g.num_edges()}};
        write_file(out_path, os.str());
        std::cout << "ba graph: n=" << g.num_nodes() << " m=" << g.num_edges()
                  << " avg_degree=" << dppr::format_double(g.average_degree()) << " -> "
                  << out_path << "\n";
    } else {
        const dppr::LfrResult r = dppr::generate_lfr(*cfg.lfr);
        dppr::serialize_edgelist(r.graph, os);
        const double mixing = dppr::mean_mixing_fraction(r.graph, r.community);
        extra = {{"model", "lfr"},
                 {"nodes", r.graph.num_nodes()},
                 {"edges", r.graph.num_edges()},
                 {"mean_mixing", mixing}};
        write_file(out_path, os.str());
        const std::string cpath =
            community_path.empty() ? out_path + ".communities" : community_path;
        std::ostringstream cs;
        dppr::write_communities(cs, r.community);
        write_file(cpath, cs.str());
        write_sidecar(cpath, "generate", cfg, extra);
        std::cout << "lfr graph: n=" << r.graph.num_nodes() << " m=" << r.graph.num_edges()
                  << " mixing=" << dppr::format_double(mixing) << " -> " << out_path << " (+ "
                  << cpath << ")\n";
    }
    write_sidecar(out_path, "generate", cfg, extra);
    return 0;
}

int cmd_diffuse(const RunConfig& cfg, const std::string& source_label, std::vector<double> times,
                unsigned steps_per_unit, const std::string& out_path) {
    const dppr::Graph g = load_input_graph(cfg);
    const dppr::NodeId source = resolve_node(g, source_label);
    dppr::NodeSignal s0(g.num_nodes(), 0.0);
    s0[source] = 1.0;
    if (times.empty()) times = {0.0, 0.5, 1.0, 2.0, 5.0};
    const dppr::DiffusionTrace trace = dppr::diffuse_trace(g, s0, times, steps_per_unit);
    std::ostringstream csv;
    dppr::write_trace_csv(csv, trace);
    if (out_path.empty() || out_path == "-") {
        std::cout << csv.str();
    } else {
        write_file(out_path, csv.str());
        write_sidecar(out_path, "diffuse", cfg,
                      json{{"source", source_label},
                           {"times", times},
                           {"steps_per_unit", steps_per_unit}});
        std::cout << "wrote " << out_path << "\n";
    }
    return 0;
}

int cmd_benchmark(const RunConfig& cfg) {
    json provenance = json::object();
    const dppr::Graph g = load_input_graph(cfg, &provenance);
    const auto methods = resolve_methods(cfg.methods);

    const auto t0 = std::chrono::steady_clock::now();
    const auto rows = dppr::run_benchmark(g, methods, cfg.protocol, cfg.solver, cfg.katz);
    const auto summary = dppr::summarize(rows);
    const double wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

    const fs::path dir(cfg.out_dir);
    std::ostringstream csv;
    dppr::write_results_csv(csv, rows);
    write_file(dir / "results.csv", csv.str());
    write_sidecar(dir / "results.csv", "benchmark", cfg, json{{"input", provenance}});

    json summary_json = summary_to_json(rows, summary);
    summary_json["config"] = config_to_json(cfg);
    summary_json["input"] = provenance;
    summary_json["wall_ms"] = wall_ms;
    write_file(dir / "summary.json", summary_json.dump(2) + "\n");

    print_summary_table(summary);
    std::cout << "results: " << (dir / "results.csv").string() << "\n";
    return any_failure(rows) ? 1 : 0;
}

int cmd_sweep(const RunConfig& cfg, const std::string& axis_name,
              const std::vector<double>& values) {
    const auto axis = dppr::parse_axis(axis_name);
    if (!axis)
        throw ConfigError("unknown sweep axis '" + axis_name + "' (use ba_m|lfr_mu|alpha|beta)");
    if (values.empty()) throw ConfigError("sweep: no axis values given");
    dppr::SweepSpec spec;
    spec.axis = *axis;
    spec.values = values;
    if (cfg.ba) spec.ba = *cfg.ba;
    if (cfg.lfr) spec.lfr = *cfg.lfr;

    std::optional<dppr::Graph> input;
    const bool generator_axis =
        *axis == dppr::SweepAxis::ba_m || *axis == dppr::SweepAxis::lfr_mu;
    if (!generator_axis) input = load_input_graph(cfg);

    const auto methods = resolve_methods(cfg.methods);
    const auto cells = dppr::sweep(input, spec, methods, cfg.protocol, cfg.solver, cfg.katz);

    const fs::path dir(cfg.out_dir);
    std::vector<dppr::BenchmarkResult> all_rows;
    bool failed = false;
    json cell_summaries = json::array();
    for (const auto& cell : cells) {
        if (!cell.ok) {
            failed = true;
            cell_summaries.push_back(json{{"axis", cell.axis_value}, {"error", cell.error}});
            std::cerr << "cell " << axis_name << "=" << cell.axis_value
                      << " failed: " << cell.error << "\n";
            continue;
        }
        failed = failed || any_failure(cell.rows);
        all_rows.insert(all_rows.end(), cell.rows.begin(), cell.rows.end());
        json cj = summary_to_json(cell.rows, cell.summary);
        cj["axis"] = cell.axis_value;
        cj.erase("rows");
        cell_summaries.push_back(cj);
    }

    std::ostringstream detail;
    dppr::write_results_csv(detail, all_rows);
    write_file(dir / "results.csv", detail.str());
    write_sidecar(dir / "results.csv", "sweep", cfg,
                  json{{"axis", axis_name}, {"values", values}});

    std::ostringstream tidy;
    dppr::write_sweep_summary_csv(tidy, cells);
    write_file(dir / "sweep_summary.csv", tidy.str());
    write_sidecar(dir / "sweep_summary.csv", "sweep", cfg,
                  json{{"axis", axis_name}, {"values", values}});

    json summary_json{{"axis", axis_name},
                      {"values", values},
                      {"cells", cell_summaries},
                      {"config", config_to_json(cfg)}};
    write_file(dir / "summary.json", summary_json.dump(2) + "\n");

    std::cout << tidy.str();
    std::cout << "results: " << (dir / "results.csv").string() << "\n";
    return failed ? 1 : 0;
}

void print_defaults() {
    RunConfig defaults;
    json j = config_to_json(defaults);
    j["defaults_note"] = "solver/katz values are overridable per run via flags or config file";
    std::cout << j.dump(2) << "\n";
}

} // namespace

int main(int argc, char** argv) {
    RunConfig cfg;

    // config file first, flags override
    try {
        for (int i = 1; i + 1 < argc; ++i)
            if (std::string_view(argv[i]) == "--config" || std::string_view(argv[i]) == "-c")
                apply_config_json(load_config_file(argv[i + 1]), cfg);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    CLI::App app{"link prediction toolkit: diffusion-distance scoring over "
                 "personalized-PageRank signals, baselines, generators, benchmarks"};
    app.set_version_flag("--version", kVersion);
    bool show_config = false;
    app.add_flag("--show-config", show_config, "print the resolved defaults table and exit");
    std::string config_path;
    app.add_option("-c,--config", config_path, "JSON config file (flags override its values)");
    app.require_subcommand(0, 1);

    auto add_common = [&](CLI::App* sub, bool with_generators) {
        sub->add_option("--edgelist", cfg.edgelist, "input edgelist path");
        sub->add_option("--alpha", cfg.solver.alpha, "diffusion coefficient");
        sub->add_option("--beta", cfg.solver.beta, "PPR continuation probability");
        sub->add_option("--epsilon", cfg.solver.epsilon, "score regularizer");
        sub->add_option("--ppr-tol", cfg.solver.ppr.tol, "PPR L1 tolerance");
        sub->add_option("--ppr-max-iter", cfg.solver.ppr.max_iter, "PPR iteration cap");
        sub->add_option("--cg-tol", cfg.solver.cg.tol, "CG relative residual tolerance");
        sub->add_option("--cg-max-iter", cfg.solver.cg.max_iter, "CG iteration cap (0 = 10n)");
        sub->add_option("--katz-damping", cfg.katz.damping, "Katz path-discount factor");
        sub->add_option("--katz-max-len", cfg.katz.max_len, "Katz series truncation");
        sub->add_option_function<std::string>(
               "--katz-mode",
               [&](const std::string& mode) {
                   if (mode == "exact") cfg.katz.mode = dppr::KatzMode::exact_solve;
                   else if (mode == "series") cfg.katz.mode = dppr::KatzMode::truncated_series;
                   else throw CLI::ValidationError("--katz-mode", "expected exact|series");
               },
               "exact|series");
        sub->add_option("--jobs", cfg.jobs, "worker thread cap (results identical for any value)");
        if (with_generators) {
            auto ba = [&]() -> dppr::BaParams& {
                if (!cfg.ba) cfg.ba = dppr::BaParams{};
                return *cfg.ba;
            };
            auto lfr = [&]() -> dppr::LfrParams& {
                if (!cfg.lfr) cfg.lfr = dppr::LfrParams{};
                return *cfg.lfr;
            };
            sub->add_option_function<dppr::NodeId>(
                "--ba-n", [ba](dppr::NodeId v) { ba().n = v; }, "BA node count");
            sub->add_option_function<dppr::NodeId>(
                "--ba-m", [ba](dppr::NodeId v) { ba().m = v; }, "BA attachment parameter");
            sub->add_option_function<dppr::NodeId>(
                "--lfr-n", [lfr](dppr::NodeId v) { lfr().n = v; }, "LFR node count");
            sub->add_option_function<double>(
                "--lfr-mu", [lfr](double v) { lfr().mu = v; }, "LFR mixing parameter");
            sub->add_option_function<double>(
                "--lfr-tau1", [lfr](double v) { lfr().tau1 = v; }, "LFR degree exponent");
            sub->add_option_function<double>(
                "--lfr-tau2", [lfr](double v) { lfr().tau2 = v; }, "LFR community exponent");
            sub->add_option_function<double>(
                "--lfr-avg-degree", [lfr](double v) { lfr().avg_degree = v; },
                "LFR target mean degree");
            sub->add_option_function<dppr::NodeId>(
                "--lfr-min-community", [lfr](dppr::NodeId v) { lfr().min_community = v; },
                "LFR minimum community size");
            sub->add_option_function<dppr::NodeId>(
                "--lfr-max-degree", [lfr](dppr::NodeId v) { lfr().max_degree = v; },
                "LFR degree cap (0 = n/10)");
            sub->add_option_function<dppr::NodeId>(
                "--lfr-max-community", [lfr](dppr::NodeId v) { lfr().max_community = v; },
                "LFR community cap (0 = n/2)");
        }
    };

    // score
    auto* score = app.add_subcommand("score", "D-PPR distance and score for one node pair");
    std::string u_label, v_label;
    score->add_option("u", u_label, "first node (external label)")->required();
    score->add_option("v", v_label, "second node (external label)")->required();
    add_common(score, false);

    // ppr
    auto* pprc = app.add_subcommand("ppr", "dump a personalized-PageRank vector as CSV");
    std::string source_label, out_path;
    pprc->add_option("source", source_label, "source node (external label)")->required();
    pprc->add_option("-o,--out", out_path, "output CSV path (default stdout)");
    add_common(pprc, false);

    // split
    auto* split = app.add_subcommand("split", "seeded edge holdout to train/positives/negatives");
    std::uint64_t split_seed = 1;
    split->add_option("--fraction", cfg.protocol.fraction, "holdout fraction");
    split->add_option("--seed", split_seed, "split seed");
    split->add_option("-o,--out-dir", cfg.out_dir, "output directory");
    add_common(split, false);

    // generate
    auto* gen = app.add_subcommand("generate", "synthetic network generation (ba | lfr)");
    std::string model, gen_out = "graph.edges", community_out;
    std::uint64_t gen_seed = 1;
    gen->add_option("--model", model, "ba|lfr")->required();
    gen->add_option("--seed", gen_seed, "generator seed");
    gen->add_option("-o,--out", gen_out, "output edgelist path");
    gen->add_option("--community-out", community_out, "LFR community file path");
    add_common(gen, true);

    // diffuse
    auto* diff = app.add_subcommand("diffuse", "emit diffusion snapshots as plot-ready CSV");
    std::string diffuse_source;
    std::vector<double> diffuse_times;
    unsigned steps_per_unit = 1000;
    std::string diffuse_out;
    diff->add_option("source", diffuse_source, "impulse node (external label)")->required();
    diff->add_option("--times", diffuse_times, "snapshot times (default 0,0.5,1,2,5)")
        ->delimiter(',');
    diff->add_option("--steps-per-unit", steps_per_unit, "implicit-Euler steps per unit time");
    diff->add_option("-o,--out", diffuse_out, "output CSV path (default stdout)");
    add_common(diff, false);

    // benchmark
    auto* bench = app.add_subcommand("benchmark", "holdout benchmark with AUPR per method");
    bench->add_option("--methods", cfg.methods, "methods to run")->delimiter(',');
    bench->add_option("--fraction", cfg.protocol.fraction, "holdout fraction");
    bench->add_option("--repeats", cfg.protocol.repeats, "number of seeded splits");
    bench->add_option("--seed", cfg.protocol.base_seed, "base seed (split r uses seed + r)");
    bench->add_option("-o,--out-dir", cfg.out_dir, "output directory");
    add_common(bench, true);

    // sweep
    auto* sweep_cmd =
        app.add_subcommand("sweep", "benchmark along an axis (ba_m|lfr_mu|alpha|beta)");
    std::string axis;
    std::vector<double> axis_values;
    sweep_cmd->add_option("--axis", axis, "sweep axis")->required();
    sweep_cmd->add_option("--values", axis_values, "axis values")->delimiter(',')->required();
    sweep_cmd->add_option("--methods", cfg.methods, "methods to run")->delimiter(',');
    sweep_cmd->add_option("--fraction", cfg.protocol.fraction, "holdout fraction");
    sweep_cmd->add_option("--repeats", cfg.protocol.repeats, "repeats per cell");
    sweep_cmd->add_option("--seed", cfg.protocol.base_seed, "base seed");
    sweep_cmd->add_option("-o,--out-dir", cfg.out_dir, "output directory");
    add_common(sweep_cmd, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2; // usage errors are exit 2
    }

    try {
        cfg.protocol.jobs = cfg.jobs;
        if (show_config && app.get_subcommands().empty()) {
            print_defaults();
            return 0;
        }
        if (gen->parsed()) {
            if (model == "ba") {
                if (!cfg.ba) cfg.ba = dppr::BaParams{};
                if (gen->count("--seed")) cfg.ba->seed = gen_seed;
                cfg.lfr.reset();
            } else if (model == "lfr") {
                if (!cfg.lfr) cfg.lfr = dppr::LfrParams{};
                if (gen->count("--seed")) cfg.lfr->seed = gen_seed;
                cfg.ba.reset();
            } else {
                throw ConfigError("generate: unknown model '" + model + "' (use ba|lfr)");
            }
            return cmd_generate(cfg, gen_out, community_out);
        }
        if (score->parsed()) return cmd_score(cfg, u_label, v_label);
        if (pprc->parsed()) return cmd_ppr(cfg, source_label, out_path);
        if (split->parsed()) return cmd_split(cfg, split_seed);
        if (diff->parsed())
            return cmd_diffuse(cfg, diffuse_source, diffuse_times, steps_per_unit, diffuse_out);
        if (bench->parsed()) return cmd_benchmark(cfg);
        if (sweep_cmd->parsed()) return cmd_sweep(cfg, axis, axis_values);
        if (show_config) {
            print_defaults();
            return 0;
        }
        std::cerr << app.help();
        return 2;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const dppr::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "computation failed: " << e.what() << "\n";
        return 1;
    }
}
