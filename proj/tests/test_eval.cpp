#include "dppr/eval.hpp"

#include "doctest.h"
#include "oracles.hpp"

#include <set>
#include <sstream>

using namespace dppr;

#ifndef DPPR_DATA_DIR
#define DPPR_DATA_DIR "data"
#endif

// =============================================================================
// holdout_split
// =============================================================================

TEST_CASE("split: karate at 10% gives 7 positives, 7 negatives, train m=71") {
    const Graph g = parse_edgelist_file(std::string(DPPR_DATA_DIR) + "/karate.edges");
    const SplitDataset s = holdout_split(g, 0.1, 42);
    CHECK(s.positives.size() == 7);
    CHECK(s.negatives.size() == 7);
    CHECK(s.train.num_edges() == 71);
    CHECK(s.train.num_nodes() == g.num_nodes()); // isolated nodes stay
}

TEST_CASE("split: identical seeds reproduce the dataset") {
    const Graph g = oracle::random_connected_graph(40, 0.15, 3);
    const SplitDataset a = holdout_split(g, 0.2, 7);
    const SplitDataset b = holdout_split(g, 0.2, 7);
    CHECK(a.positives == b.positives);
    CHECK(a.negatives == b.negatives);
    CHECK(a.train.edge_list() == b.train.edge_list());
    const SplitDataset c = holdout_split(g, 0.2, 8);
    CHECK(a.positives != c.positives);
}

TEST_CASE("split: complete graph has no non-edges to sample") {
    const Graph k4 = oracle::complete(4); // m=6, zero non-edges
    CHECK_THROWS_WITH_AS(holdout_split(k4, 0.2, 1), doctest::Contains("non-edge"),
                         std::invalid_argument);
}

TEST_CASE("split: train plus positives reconstructs the original edge set") {
    const Graph g = oracle::random_connected_graph(30, 0.2, 9);
    const SplitDataset s = holdout_split(g, 0.15, 5);
    std::set<Edge> rebuilt(s.positives.begin(), s.positives.end());
    for (const auto& e : s.train.edge_list()) rebuilt.insert(e);
    const auto original = g.edge_list();
    CHECK(rebuilt == std::set<Edge>(original.begin(), original.end()));
}

TEST_CASE("split: negatives are non-edges of the original graph, distinct") {
    const Graph g = oracle::random_connected_graph(25, 0.25, 11);
    const SplitDataset s = holdout_split(g, 0.2, 13);
    std::set<Edge> seen;
    for (const auto& [u, v] : s.negatives) {
        CHECK_FALSE(g.has_edge(u, v));
        CHECK(u < v);
        CHECK(seen.insert({u, v}).second);
    }
    CHECK(s.negatives.size() == s.positives.size());
}

TEST_CASE("split: tiny graphs and bad fractions are rejected") {
    const Graph g = oracle::path(4); // m = 3
    CHECK_THROWS_AS(holdout_split(g, 0.1, 1), std::invalid_argument);  // 0 positives
    CHECK_THROWS_AS(holdout_split(g, 0.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(holdout_split(g, 1.0, 1), std::invalid_argument);
}

TEST_CASE("split: dense graph falls back to exact non-edge enumeration") {
    // 12 nodes, all but 8 edges present: rejection sampling cannot finish
    Graph g;
    {
        std::vector<Edge> edges;
        for (NodeId u = 0; u < 12; ++u)
            for (NodeId v = u + 1; v < 12; ++v) edges.emplace_back(u, v);
        edges.resize(edges.size() - 8);
        g = Graph::from_edges(12, edges);
    }
    const SplitDataset s = holdout_split(g, 0.1, 17);
    CHECK(s.negatives.size() == s.positives.size());
    for (const auto& [u, v] : s.negatives) CHECK_FALSE(g.has_edge(u, v));
}

// =============================================================================
// aupr
// =============================================================================

TEST_CASE("aupr: perfect ranking scores 1") {
    const std::vector<int> labels{1, 1, 0, 0};
    const std::vector<double> scores{0.9, 0.8, 0.2, 0.1};
    CHECK(aupr(labels, scores) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("aupr: positive ranked last on two items scores 0.5") {
    const std::vector<int> labels{1, 0};
    const std::vector<double> scores{0.2, 0.9};
    CHECK(aupr(labels, scores) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("aupr: matches the quadratic brute force on random sets with ties") {
    Rng rng(123);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = 20 + rand_below(rng, 180);
        std::vector<int> labels(n);
        std::vector<double> scores(n);
        bool any_pos = false;
        for (std::size_t i = 0; i < n; ++i) {
            labels[i] = rand_unit(rng) < 0.4 ? 1 : 0;
            any_pos |= labels[i] == 1;
            // coarse grid forces plenty of tied scores
            scores[i] = double(rand_below(rng, 12)) / 10.0;
        }
        if (!any_pos) labels[0] = 1;
        const double expected = oracle::average_precision(labels, scores);
        CHECK(aupr(labels, scores) == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("aupr: invariant under strictly monotone score transforms") {
    Rng rng(5);
    std::vector<int> labels(60);
    std::vector<double> scores(60);
    for (std::size_t i = 0; i < 60; ++i) {
        labels[i] = i % 3 == 0;
        scores[i] = rand_unit(rng);
    }
    const double base = aupr(labels, scores);
    std::vector<double> transformed(60);
    for (std::size_t i = 0; i < 60; ++i) transformed[i] = std::exp(3.0 * scores[i]) + 7.0;
    CHECK(aupr(labels, transformed) == doctest::Approx(base).epsilon(1e-15));
}

TEST_CASE("aupr: reversed-perfect ranking equals the brute-force value") {
    // balanced set, every negative ahead of every positive
    std::vector<int> labels;
    std::vector<double> scores;
    for (int i = 0; i < 10; ++i) { labels.push_back(0); scores.push_back(100.0 - i); }
    for (int i = 0; i < 10; ++i) { labels.push_back(1); scores.push_back(10.0 - i); }
    CHECK(aupr(labels, scores) == doctest::Approx(oracle::average_precision(labels, scores)).epsilon(1e-15));
}

TEST_CASE("aupr: input validation") {
    CHECK_THROWS_AS(aupr(std::vector<int>{}, std::vector<double>{}), std::invalid_argument);
    CHECK_THROWS_AS(aupr(std::vector<int>{0, 0}, std::vector<double>{1.0, 2.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(aupr(std::vector<int>{1}, std::vector<double>{1.0, 2.0}),
                    std::invalid_argument);
}

// =============================================================================
// run_benchmark / sweep
// =============================================================================

namespace {

SolverConfig fast_solver() {
    SolverConfig cfg;
    cfg.ppr.tol = 1e-9;
    cfg.cg.tol = 1e-9;
    return cfg;
}

} // namespace

TEST_CASE("benchmark: single CN repeat on karate is reproducible") {
    const Graph g = parse_edgelist_file(std::string(DPPR_DATA_DIR) + "/karate.edges");
    const std::vector<Method> methods{Method::cn};
    const Protocol protocol{0.1, 1, 42, 1};
    const auto a = run_benchmark(g, methods, protocol, fast_solver(), KatzConfig{});
    const auto b = run_benchmark(g, methods, protocol, fast_solver(), KatzConfig{});
    REQUIRE(a.size() == 1);
    CHECK(a[0].ok);
    CHECK(a[0].aupr == b[0].aupr);
    CHECK(a[0].n_pos == 7);
    CHECK(a[0].scores.size() == 14);
}

TEST_CASE("benchmark: all methods produce a row per repeat") {
    const Graph g = oracle::random_connected_graph(40, 0.15, 21);
    const auto methods = all_methods();
    const Protocol protocol{0.2, 3, 9, 2};
    const auto rows = run_benchmark(g, methods, protocol, fast_solver(), KatzConfig{});
    CHECK(rows.size() == methods.size() * protocol.repeats);
    for (const auto& r : rows) {
        CHECK(r.ok);
        CHECK(r.aupr >= 0.0);
        CHECK(r.aupr <= 1.0);
        CHECK(r.n_pos == r.n_neg);
    }
    const auto summary = summarize(rows);
    CHECK(summary.size() == methods.size());
    for (const auto& s : summary) CHECK(s.repeats_ok == protocol.repeats);
}

TEST_CASE("sweep: alpha cells share splits, so baseline columns are identical") {
    const Graph g = oracle::random_connected_graph(40, 0.15, 33);
    SweepSpec spec;
    spec.axis = SweepAxis::alpha;
    spec.values = {0.1, 1.0, 10.0};
    const std::vector<Method> methods{Method::dppr, Method::cn, Method::katz};
    const Protocol protocol{0.15, 2, 5, 1};
    const auto cells = sweep(g, spec, methods, protocol, fast_solver(), KatzConfig{});
    REQUIRE(cells.size() == 3);
    for (const auto& cell : cells) REQUIRE(cell.ok);

    auto auprs_of = [&](const SweepCell& cell, Method m) {
        std::vector<double> out;
        for (const auto& r : cell.rows)
            if (r.method == m) out.push_back(r.aupr);
        return out;
    };
    for (Method m : {Method::cn, Method::katz}) {
        const auto a = auprs_of(cells[0], m);
        CHECK(a == auprs_of(cells[1], m));
        CHECK(a == auprs_of(cells[2], m));
    }
    // D-PPR must actually respond to alpha somewhere on the grid
    const auto d0 = auprs_of(cells[0], Method::dppr);
    const auto d2 = auprs_of(cells[2], Method::dppr);
    CHECK(d0 != d2);
}

TEST_CASE("sweep: a single-value sweep equals the direct benchmark") {
    const Graph g = oracle::random_connected_graph(35, 0.18, 55);
    SweepSpec spec;
    spec.axis = SweepAxis::alpha;
    spec.values = {1.0};
    const std::vector<Method> methods{Method::dppr, Method::aa};
    const Protocol protocol{0.2, 2, 77, 1};
    const SolverConfig solver = fast_solver();
    const auto cells = sweep(g, spec, methods, protocol, solver, KatzConfig{});
    const auto direct = run_benchmark(g, methods, protocol, solver, KatzConfig{});
    REQUIRE(cells.size() == 1);
    REQUIRE(cells[0].rows.size() == direct.size());
    for (std::size_t i = 0; i < direct.size(); ++i) {
        CHECK(cells[0].rows[i].aupr == direct[i].aupr);
        CHECK(cells[0].rows[i].method == direct[i].method);
    }
}

TEST_CASE("sweep: generator axis produces decreasing mu cells deterministically") {
    SweepSpec spec;
    spec.axis = SweepAxis::lfr_mu;
    spec.values = {0.1, 0.4};
    spec.lfr.n = 250;
    spec.lfr.seed = 1;
    const std::vector<Method> methods{Method::cn};
    const Protocol protocol{0.1, 2, 3, 1};
    const auto a = sweep(std::nullopt, spec, methods, protocol, fast_solver(), KatzConfig{});
    const auto b = sweep(std::nullopt, spec, methods, protocol, fast_solver(), KatzConfig{});
    REQUIRE(a.size() == 2);
    for (std::size_t c = 0; c < 2; ++c) {
        REQUIRE(a[c].ok);
        for (std::size_t i = 0; i < a[c].rows.size(); ++i)
            CHECK(a[c].rows[i].aupr == b[c].rows[i].aupr);
    }
}

// =============================================================================
// result emission
// =============================================================================

TEST_CASE("csv: stable header and one row per method×repeat") {
    const Graph g = oracle::random_connected_graph(30, 0.2, 71);
    const std::vector<Method> methods{Method::cn, Method::aa};
    const auto rows = run_benchmark(g, methods, Protocol{0.2, 2, 4, 1}, fast_solver(), KatzConfig{});
    std::ostringstream out;
    write_results_csv(out, rows);
    std::istringstream in(out.str());
    std::string line;
    std::getline(in, line);
    CHECK(line == "axis,method,repeat,seed,aupr,n_pos,n_neg,runtime_ms");
    std::size_t count = 0;
    while (std::getline(in, line)) ++count;
    CHECK(count == rows.size());
}
