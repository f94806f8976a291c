#include "dppr/diffusion.hpp"

#include "doctest.h"
#include "oracles.hpp"

#include <sstream>

using namespace dppr;

namespace {

double variance(const NodeSignal& s) {
    double mean = 0.0;
    for (double v : s) mean += v;
    mean /= double(s.size());
    double acc = 0.0;
    for (double v : s) acc += (v - mean) * (v - mean);
    return acc / double(s.size());
}

double sum(const NodeSignal& s) {
    double acc = 0.0;
    for (double v : s) acc += v;
    return acc;
}

} // namespace

TEST_CASE("diffuse: t=0 snapshot is the initial signal") {
    const Graph g = oracle::random_connected_graph(15, 0.25, 2);
    NodeSignal s0(g.num_nodes(), 0.0);
    s0[3] = 1.0;
    const DiffusionTrace trace = diffuse_trace(g, s0, std::vector<double>{0.0, 0.5}, 100);
    CHECK(trace.snapshots[0] == s0);
}

TEST_CASE("diffuse: long-time limit is uniform on connected graphs") {
    const Graph g = oracle::random_connected_graph(20, 0.25, 6);
    NodeSignal s0(g.num_nodes(), 0.0);
    s0[0] = 1.0;
    const DiffusionTrace trace = diffuse_trace(g, s0, std::vector<double>{100.0}, 50);
    const double uniform = 1.0 / double(g.num_nodes());
    for (double v : trace.snapshots[0]) CHECK(std::abs(v - uniform) <= 1e-4);
}

TEST_CASE("diffuse: K3 against the eigendecomposition oracle") {
    const Graph k3 = oracle::complete(3);
    const NodeSignal s0{1.0, 0.0, 0.0};
    const DiffusionTrace trace = diffuse_trace(k3, s0, std::vector<double>{1.0}, 1000);
    const NodeSignal expected = oracle::heat_kernel(k3, s0, 1.0); // eigenvalues 0, 3, 3
    CHECK(oracle::max_abs_diff(trace.snapshots[0], expected) <= 1e-3);
    // closed form: s(t) = 1/3 + e^{-3t}(s0 - 1/3)
    CHECK(expected[0] == doctest::Approx(1.0 / 3.0 + std::exp(-3.0) * 2.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("diffuse: mass conservation and monotone smoothing") {
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
        const Graph g = oracle::random_connected_graph(25, 0.2, seed);
        Rng rng(seed);
        NodeSignal s0(g.num_nodes());
        for (auto& v : s0) v = rand_unit(rng);
        const std::vector<double> times{0.0, 0.2, 0.5, 1.0, 2.0};
        const DiffusionTrace trace = diffuse_trace(g, s0, times, 200);
        const double mass = sum(s0);
        double prev_variance = std::numeric_limits<double>::infinity();
        for (const auto& snap : trace.snapshots) {
            CHECK(std::abs(sum(snap) - mass) <= 1e-9);
            const double var = variance(snap);
            CHECK(var <= prev_variance + 1e-12);
            prev_variance = var;
            for (double v : snap) CHECK(v >= -1e-12); // nonnegative s0 stays nonnegative
        }
    }
}

TEST_CASE("diffuse: dense heat-kernel agreement on random graphs up to n=50") {
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
        const NodeId n = NodeId(20 + seed * 15);
        const Graph g = oracle::random_connected_graph(n, 4.0 / double(n), seed + 30);
        NodeSignal s0(g.num_nodes(), 0.0);
        s0[seed % n] = 1.0;
        const std::vector<double> times{0.5, 1.0, 2.0};
        const DiffusionTrace trace = diffuse_trace(g, s0, times, 1000);
        for (std::size_t k = 0; k < times.size(); ++k) {
            const NodeSignal expected = oracle::heat_kernel(g, s0, times[k]);
            CHECK(oracle::max_abs_diff(trace.snapshots[k], expected) <= 1e-3);
        }
    }
}

TEST_CASE("diffuse: validation") {
    const Graph g = oracle::complete(3);
    const NodeSignal s0{1.0, 0.0, 0.0};
    CHECK_THROWS_AS(diffuse_trace(g, s0, std::vector<double>{1.0, 0.5}, 100),
                    std::invalid_argument); // not ascending
    CHECK_THROWS_AS(diffuse_trace(g, s0, std::vector<double>{-1.0}, 100), std::invalid_argument);
    CHECK_THROWS_AS(diffuse_trace(g, s0, std::vector<double>{1.0}, 0), std::invalid_argument);
    CHECK_THROWS_AS(diffuse_trace(g, NodeSignal(2, 0.0), std::vector<double>{1.0}, 100),
                    std::invalid_argument);
    const Graph big = oracle::path(2001);
    CHECK_THROWS_AS(diffuse_trace(big, NodeSignal(2001, 0.0), std::vector<double>{1.0}, 100),
                    std::domain_error);
}

TEST_CASE("diffuse: csv emission shape") {
    const Graph k3 = oracle::complete(3);
    const DiffusionTrace trace = diffuse_trace(k3, {1.0, 0.0, 0.0}, std::vector<double>{0.0, 1.0}, 100);
    std::ostringstream out;
    write_trace_csv(out, trace);
    std::istringstream in(out.str());
    std::string line;
    std::getline(in, line);
    CHECK(line == "t,node,value");
    std::size_t rows = 0;
    while (std::getline(in, line)) ++rows;
    CHECK(rows == 6); // 2 times × 3 nodes
}
