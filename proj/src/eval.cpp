#include "dppr/eval.hpp"

#include "dppr/parallel.hpp"
#include "dppr/rng.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>
#include <unordered_map>
#include <unordered_set>

namespace dppr {

namespace {

std::uint64_t pack_pair(NodeId a, NodeId b) {
    const NodeId u = std::min(a, b), v = std::max(a, b);
    return (std::uint64_t(u) << 32) | std::uint64_t(v);
}

} // namespace

SplitDataset holdout_split(const Graph& g, double fraction, std::uint64_t seed) {
    if (!(fraction > 0.0 && fraction < 1.0))
        throw std::invalid_argument("holdout_split: fraction must be in (0,1)");
    const std::size_t m = g.num_edges();
    const std::size_t n_pos = std::size_t(std::floor(fraction * double(m)));
    if (n_pos == 0)
        throw std::invalid_argument("holdout_split: graph too small, fraction " +
                                    std::to_string(fraction) + " of " + std::to_string(m) +
                                    " edges rounds to zero positives");
    if (n_pos >= m)
        throw std::invalid_argument("holdout_split: holdout would empty the train graph");

    const std::uint64_t n = g.num_nodes();
    const std::uint64_t all_pairs = n * (n - 1) / 2;
    if (all_pairs - m < n_pos)
        throw std::invalid_argument("holdout_split: non-edge pool (" +
                                    std::to_string(all_pairs - m) +
                                    ") smaller than required negatives (" +
                                    std::to_string(n_pos) + ")");

    Rng rng(seed);
    std::vector<Edge> edges = g.edge_list(); // canonical order
    // partial Fisher–Yates: the first n_pos entries become the positives
    for (std::size_t i = 0; i < n_pos; ++i) {
        const std::size_t j = i + rand_below(rng, edges.size() - i);
        std::swap(edges[i], edges[j]);
    }
    std::vector<Edge> positives(edges.begin(), edges.begin() + n_pos);
    std::vector<Edge> train_edges(edges.begin() + n_pos, edges.end());

    // negatives: uniform over non-edges of the ORIGINAL graph, distinct
    std::unordered_set<std::uint64_t> taken;
    taken.reserve(n_pos * 2);
    std::vector<Edge> negatives;
    negatives.reserve(n_pos);
    std::size_t attempts = 0;
    const std::size_t attempt_cap = 100 * n_pos + 10000;
    while (negatives.size() < n_pos && attempts < attempt_cap) {
        ++attempts;
        const NodeId u = NodeId(rand_below(rng, n));
        const NodeId v = NodeId(rand_below(rng, n));
        if (u == v) continue;
        const Edge e{std::min(u, v), std::max(u, v)};
        if (g.has_edge(e.first, e.second)) continue;
        if (!taken.insert(pack_pair(e.first, e.second)).second) continue;
        negatives.push_back(e);
    }
    if (negatives.size() < n_pos) {
        // dense graph: enumerate the pool and sample exactly
        std::vector<Edge> pool;
        for (NodeId u = 0; u < g.num_nodes(); ++u)
            for (NodeId v = u + 1; v < g.num_nodes(); ++v)
                if (!g.has_edge(u, v) && !taken.contains(pack_pair(u, v)))
                    pool.emplace_back(u, v);
        while (negatives.size() < n_pos) {
            const std::size_t j = rand_below(rng, pool.size());
            negatives.push_back(pool[j]);
            pool[j] = pool.back();
            pool.pop_back();
        }
    }

    SplitDataset split;
    split.train = Graph::from_edges(g.num_nodes(), train_edges, nullptr,
                                    std::vector<std::string>(g.labels()));
    split.positives = std::move(positives);
    split.negatives = std::move(negatives);
    split.holdout_fraction = fraction;
    split.seed = seed;
    return split;
}

double aupr(std::span<const int> labels, std::span<const double> scores) {
    if (labels.size() != scores.size())
        throw std::invalid_argument("aupr: labels and scores must have equal length");
    if (labels.empty()) throw std::invalid_argument("aupr: empty input");
    const std::size_t n_pos = std::size_t(std::count(labels.begin(), labels.end(), 1));
    if (n_pos == 0) throw std::invalid_argument("aupr: no positive labels");

    std::vector<std::size_t> order(labels.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });

    double sum = 0.0;
    std::size_t hits = 0;
    for (std::size_t rank = 1; rank <= order.size(); ++rank) {
        if (labels[order[rank - 1]] == 1) {
            ++hits;
            sum += double(hits) / double(rank);
        }
    }
    return sum / double(n_pos);
}

std::string_view method_name(Method m) {
    switch (m) {
        case Method::dppr: return "dppr";
        case Method::cn: return "cn";
        case Method::aa: return "aa";
        case Method::katz: return "katz";
    }
    return "?";
}

std::optional<Method> parse_method(std::string_view name) {
    if (name == "dppr" || name == "d-ppr") return Method::dppr;
    if (name == "cn" || name == "common-neighbors") return Method::cn;
    if (name == "aa" || name == "adamic-adar") return Method::aa;
    if (name == "katz") return Method::katz;
    return std::nullopt;
}

std::vector<Method> all_methods() {
    return {Method::dppr, Method::cn, Method::aa, Method::katz};
}

std::vector<ScoreRow> score_method(const Graph& train, Method method,
                                   std::span<const Edge> positives,
                                   std::span<const Edge> negatives,
                                   const SolverConfig& solver, const KatzConfig& katz,
                                   unsigned jobs) {
    std::vector<Edge> pairs(positives.begin(), positives.end());
    pairs.insert(pairs.end(), negatives.begin(), negatives.end());
    std::vector<ScoreRow> rows(pairs.size());
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        rows[i].u = pairs[i].first;
        rows[i].v = pairs[i].second;
        rows[i].label = i < positives.size() ? 1 : 0;
    }

    switch (method) {
        case Method::cn:
            for (std::size_t i = 0; i < pairs.size(); ++i)
                rows[i].score = double(common_neighbors(train, rows[i].u, rows[i].v));
            break;
        case Method::aa:
            for (std::size_t i = 0; i < pairs.size(); ++i)
                rows[i].score = adamic_adar(train, rows[i].u, rows[i].v);
            break;
        case Method::katz: {
            const KatzConfig resolved = resolve_katz_config(train, katz);
            // one column solve per distinct second endpoint, reused across pairs
            std::vector<NodeId> columns;
            columns.reserve(pairs.size());
            for (const auto& [u, v] : pairs) columns.push_back(v);
            std::sort(columns.begin(), columns.end());
            columns.erase(std::unique(columns.begin(), columns.end()), columns.end());
            std::unordered_map<NodeId, NodeSignal> cache;
            cache.reserve(columns.size());
            std::vector<NodeSignal> results(columns.size());
            parallel_for(columns.size(), jobs,
                         [&](std::size_t i) { results[i] = katz_column(train, columns[i], resolved); });
            for (std::size_t i = 0; i < columns.size(); ++i)
                cache.emplace(columns[i], std::move(results[i]));
            for (std::size_t i = 0; i < pairs.size(); ++i)
                rows[i].score = cache.at(rows[i].v)[rows[i].u];
            break;
        }
        case Method::dppr: {
            const auto outcomes = dppr_score_pairs(train, pairs, solver, jobs);
            for (std::size_t i = 0; i < outcomes.size(); ++i) {
                if (!outcomes[i].score)
                    throw std::runtime_error("dppr scoring failed for pair (" +
                                             std::to_string(rows[i].u) + ", " +
                                             std::to_string(rows[i].v) + "): " +
                                             outcomes[i].error);
                rows[i].score = outcomes[i].score->score;
            }
            break;
        }
    }
    return rows;
}

std::vector<BenchmarkResult> run_benchmark(const Graph& g, std::span<const Method> methods,
                                           const Protocol& protocol,
                                           const SolverConfig& solver,
                                           const KatzConfig& katz) {
    if (methods.empty()) throw std::invalid_argument("run_benchmark: no methods given");
    if (protocol.repeats < 1) throw std::invalid_argument("run_benchmark: repeats must be >= 1");
    solver.validate();

    std::vector<BenchmarkResult> results;
    results.reserve(methods.size() * protocol.repeats);
    for (std::size_t rep = 0; rep < protocol.repeats; ++rep) {
        const std::uint64_t split_seed = protocol.base_seed + rep;
        const SplitDataset split = holdout_split(g, protocol.fraction, split_seed);
        for (Method method : methods) {
            BenchmarkResult r;
            r.method = method;
            r.repeat = rep;
            r.split_seed = split_seed;
            r.solver = solver;
            r.katz = method == Method::katz ? resolve_katz_config(split.train, katz) : katz;
            r.n_pos = split.positives.size();
            r.n_neg = split.negatives.size();
            const auto t0 = std::chrono::steady_clock::now();
            try {
                r.scores = score_method(split.train, method, split.positives, split.negatives,
                                        solver, katz, protocol.jobs);
                std::vector<int> labels(r.scores.size());
                std::vector<double> values(r.scores.size());
                for (std::size_t i = 0; i < r.scores.size(); ++i) {
                    labels[i] = r.scores[i].label;
                    values[i] = r.scores[i].score;
                }
                if (labels.size() != r.n_pos + r.n_neg)
                    throw std::logic_error("run_benchmark: score table size mismatch");
                r.aupr = aupr(labels, values);
                r.ok = true;
            } catch (const std::exception& e) {
                r.ok = false;
                r.error = e.what();
            }
            const auto t1 = std::chrono::steady_clock::now();
            r.runtime_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
            results.push_back(std::move(r));
        }
    }
    return results;
}

std::vector<MethodSummary> summarize(std::span<const BenchmarkResult> rows) {
    std::vector<MethodSummary> out;
    for (Method m : all_methods()) {
        MethodSummary s;
        s.method = m;
        std::vector<double> values;
        for (const auto& r : rows) {
            if (r.method != m) continue;
            if (r.ok) values.push_back(r.aupr);
            else ++s.repeats_failed;
        }
        if (values.empty() && s.repeats_failed == 0) continue;
        s.repeats_ok = values.size();
        if (!values.empty()) {
            s.mean_aupr = std::accumulate(values.begin(), values.end(), 0.0) / values.size();
            double var = 0.0;
            for (double v : values) var += (v - s.mean_aupr) * (v - s.mean_aupr);
            s.std_aupr = std::sqrt(var / values.size());
        }
        out.push_back(s);
    }
    return out;
}

std::string_view axis_name(SweepAxis a) {
    switch (a) {
        case SweepAxis::ba_m: return "ba_m";
        case SweepAxis::lfr_mu: return "lfr_mu";
        case SweepAxis::alpha: return "alpha";
        case SweepAxis::beta: return "beta";
    }
    return "?";
}

std::optional<SweepAxis> parse_axis(std::string_view name) {
    if (name == "ba_m") return SweepAxis::ba_m;
    if (name == "lfr_mu") return SweepAxis::lfr_mu;
    if (name == "alpha") return SweepAxis::alpha;
    if (name == "beta") return SweepAxis::beta;
    return std::nullopt;
}

std::vector<SweepCell> sweep(const std::optional<Graph>& input, const SweepSpec& spec,
                             std::span<const Method> methods, const Protocol& protocol,
                             const SolverConfig& solver, const KatzConfig& katz) {
    if (spec.values.empty()) throw std::invalid_argument("sweep: no axis values");
    const bool generator_axis =
        spec.axis == SweepAxis::ba_m || spec.axis == SweepAxis::lfr_mu;
    if (!generator_axis && !input)
        throw std::invalid_argument("sweep: axis " + std::string(axis_name(spec.axis)) +
                                    " needs an input graph");

    std::vector<SweepCell> cells;
    cells.reserve(spec.values.size());
    for (std::size_t ci = 0; ci < spec.values.size(); ++ci) {
        const double value = spec.values[ci];
        SweepCell cell;
        cell.axis_value = value;
        try {
            SolverConfig cell_solver = solver;
            const Graph* graph = nullptr;
            Graph generated;
            switch (spec.axis) {
                case SweepAxis::ba_m: {
                    BaParams bp = spec.ba;
                    bp.m = NodeId(std::llround(value));
                    bp.seed = derive_seed(protocol.base_seed, 0xba, ci);
                    generated = generate_ba(bp);
                    graph = &generated;
                    break;
                }
                case SweepAxis::lfr_mu: {
                    LfrParams lp = spec.lfr;
                    lp.mu = value;
                    lp.seed = derive_seed(protocol.base_seed, 0x1f8, ci);
                    generated = generate_lfr(lp).graph;
                    graph = &generated;
                    break;
                }
                case SweepAxis::alpha:
                    cell_solver.alpha = value;
                    graph = &*input;
                    break;
                case SweepAxis::beta:
                    cell_solver.beta = value;
                    graph = &*input;
                    break;
            }
            cell.rows = run_benchmark(*graph, methods, protocol, cell_solver, katz);
            for (auto& r : cell.rows) r.axis = format_double(value);
            cell.summary = summarize(cell.rows);
            cell.ok = true;
        } catch (const std::exception& e) {
            cell.ok = false;
            cell.error = e.what();
        }
        cells.push_back(std::move(cell));
    }
    return cells;
}

std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

void write_results_csv(std::ostream& out, std::span<const BenchmarkResult> rows) {
    out << "axis,method,repeat,seed,aupr,n_pos,n_neg,runtime_ms\n";
    char timing[32];
    for (const auto& r : rows) {
        std::snprintf(timing, sizeof timing, "%.3f", r.runtime_ms);
        out << r.axis << ',' << method_name(r.method) << ',' << r.repeat << ',' << r.split_seed
            << ',' << (r.ok ? format_double(r.aupr) : "failed") << ',' << r.n_pos << ','
            << r.n_neg << ',' << timing << '\n';
    }
}

void write_sweep_summary_csv(std::ostream& out, std::span<const SweepCell> cells) {
    out << "axis,method,mean_aupr,std_aupr\n";
    for (const auto& cell : cells) {
        if (!cell.ok) {
            out << format_double(cell.axis_value) << ",-,failed,failed\n";
            continue;
        }
        for (const auto& s : cell.summary)
            out << format_double(cell.axis_value) << ',' << method_name(s.method) << ','
                << format_double(s.mean_aupr) << ',' << format_double(s.std_aupr) << '\n';
    }
}

} // namespace dppr
