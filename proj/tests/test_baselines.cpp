#include "dppr/baselines.hpp"

#include "doctest.h"
#include "oracles.hpp"

using namespace dppr;

// =============================================================================
// common neighbors / adamic-adar
// =============================================================================

TEST_CASE("cn: small fixtures") {
    const Graph k3 = oracle::complete(3);
    CHECK(common_neighbors(k3, 0, 1) == 1);

    const Graph p3 = oracle::path(3);
    CHECK(common_neighbors(p3, 0, 2) == 1);
    CHECK(common_neighbors(p3, 0, 1) == 0);
}

TEST_CASE("cn: brute-force agreement over all pairs of a random 50-node graph") {
    const Graph g = oracle::random_graph(50, 0.12, 31);
    for (NodeId u = 0; u < g.num_nodes(); ++u)
        for (NodeId v = u + 1; v < g.num_nodes(); ++v)
            CHECK(common_neighbors(g, u, v) == oracle::common_neighbors(g, u, v));
}

TEST_CASE("aa: no common neighbors gives zero") {
    const Graph p3 = oracle::path(3);
    CHECK(adamic_adar(p3, 0, 1) == 0.0);
}

TEST_CASE("aa: a single degree-2 common neighbor contributes 1/ln 2") {
    const Graph p3 = oracle::path(3); // 0–1–2, the middle node has degree 2
    CHECK(adamic_adar(p3, 0, 2) == doctest::Approx(1.0 / std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("aa: brute-force agreement on a random 50-node graph") {
    const Graph g = oracle::random_graph(50, 0.12, 37);
    for (NodeId u = 0; u < g.num_nodes(); ++u)
        for (NodeId v = u + 1; v < g.num_nodes(); ++v)
            CHECK(adamic_adar(g, u, v) ==
                  doctest::Approx(oracle::adamic_adar(g, u, v)).epsilon(1e-12));
}

TEST_CASE("cn/aa invariants: symmetry, degree bound, zero sets coincide") {
    const Graph g = oracle::random_graph(40, 0.15, 41);
    for (NodeId u = 0; u < g.num_nodes(); ++u)
        for (NodeId v = u + 1; v < g.num_nodes(); ++v) {
            const auto cn = common_neighbors(g, u, v);
            CHECK(cn == common_neighbors(g, v, u));
            CHECK(cn <= std::min(g.degree(u), g.degree(v)));
            const double aa = adamic_adar(g, u, v);
            CHECK(aa == adamic_adar(g, v, u));
            CHECK((aa == 0.0) == (cn == 0));
        }
}

// =============================================================================
// katz
// =============================================================================

TEST_CASE("katz: K2 closed form") {
    const Graph k2 = Graph::from_edges(2, std::vector<Edge>{{0, 1}});
    // odd path counts are all 1: Σ c^(2k+1) = c/(1−c²)
    const double expected = 0.1 / (1.0 - 0.01);
    SUBCASE("exact") {
        const KatzConfig cfg{0.1, 10, KatzMode::exact_solve};
        CHECK(katz_score(k2, 0, 1, cfg) == doctest::Approx(expected).epsilon(1e-9));
    }
    SUBCASE("truncated converges to the same value") {
        const KatzConfig cfg{0.1, 40, KatzMode::truncated_series};
        CHECK(katz_score(k2, 0, 1, cfg) == doctest::Approx(expected).epsilon(1e-9));
    }
}

TEST_CASE("katz: disconnected pair scores zero") {
    const Graph g = Graph::from_edges(4, std::vector<Edge>{{0, 1}, {2, 3}});
    for (KatzMode mode : {KatzMode::exact_solve, KatzMode::truncated_series}) {
        const KatzConfig cfg{0.1, 20, mode};
        CHECK(katz_score(g, 0, 2, cfg) == doctest::Approx(0.0).epsilon(1e-12));
    }
}

TEST_CASE("katz: truncated series tracks the exact solve") {
    const Graph g = oracle::random_connected_graph(30, 0.15, 43);
    const KatzConfig exact{0.05, 10, KatzMode::exact_solve};
    const KatzConfig series{0.05, 20, KatzMode::truncated_series};
    for (NodeId u = 0; u < 10; ++u)
        for (NodeId v = u + 1; v < 10; ++v)
            CHECK(katz_score(g, u, v, exact) ==
                  doctest::Approx(katz_score(g, u, v, series)).epsilon(1e-6));
}

TEST_CASE("katz: exact mode matches the dense inverse up to n=200") {
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
        const NodeId n = NodeId(30 + seed * 55);
        const Graph g = oracle::random_connected_graph(n, 4.0 / double(n), seed + 50);
        const KatzConfig cfg{0.02, 10, KatzMode::exact_solve};
        Rng rng(seed);
        for (int k = 0; k < 10; ++k) {
            const NodeId u = NodeId(rand_below(rng, n));
            const NodeId v = NodeId(rand_below(rng, n));
            if (u == v) continue;
            const double expected = oracle::katz(g, u, v, cfg.damping);
            CHECK(katz_score(g, u, v, cfg) == doctest::Approx(expected).epsilon(1e-8));
        }
    }
}

TEST_CASE("katz: symmetry") {
    const Graph g = oracle::random_connected_graph(25, 0.2, 61);
    const KatzConfig cfg{0.03, 10, KatzMode::exact_solve};
    for (NodeId u = 0; u < 8; ++u)
        for (NodeId v = u + 1; v < 8; ++v)
            CHECK(katz_score(g, u, v, cfg) == doctest::Approx(katz_score(g, v, u, cfg)).epsilon(1e-10));
}

TEST_CASE("katz: spectral guard errors name the estimate") {
    const Graph g = oracle::complete(10); // λ_max = 9
    const KatzConfig cfg{0.5, 10, KatzMode::exact_solve};
    CHECK_THROWS_WITH_AS(katz_score(g, 0, 1, cfg), doctest::Contains("lambda_max"),
                         std::invalid_argument);
}

TEST_CASE("katz: resolve_katz_config falls back to 0.85/lambda") {
    const Graph g = oracle::complete(10);
    const double lambda = spectral_radius_estimate(g);
    CHECK(lambda == doctest::Approx(9.0).epsilon(1e-6));
    const KatzConfig resolved = resolve_katz_config(g, KatzConfig{0.5, 10, KatzMode::exact_solve});
    CHECK(resolved.damping == doctest::Approx(0.85 / lambda).epsilon(1e-9));
    // in-guard configs pass through untouched
    const KatzConfig kept = resolve_katz_config(g, KatzConfig{0.005, 10, KatzMode::exact_solve});
    CHECK(kept.damping == 0.005);
}

TEST_CASE("katz: spectral radius on K2 is 1") {
    const Graph k2 = Graph::from_edges(2, std::vector<Edge>{{0, 1}});
    CHECK(spectral_radius_estimate(k2) == doctest::Approx(1.0).epsilon(1e-9));
}
