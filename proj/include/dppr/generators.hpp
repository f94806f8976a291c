#pragma once

#include "dppr/graph.hpp"

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <vector>

namespace dppr {

struct GenerationError : std::runtime_error {
    explicit GenerationError(const std::string& what) : std::runtime_error(what) {}
};

struct BaParams {
    NodeId n = 500;
    NodeId m = 2;            // edges per new node, 1 ≤ m < n
    std::uint64_t seed = 1;
};

/// Preferential attachment grown from an m-clique; each new node attaches
/// to m distinct existing nodes sampled proportional to degree. The result
/// has exactly m·(n−m) + m·(m−1)/2 edges and is deterministic per seed.
Graph generate_ba(const BaParams& params);

struct LfrParams {
    NodeId n = 250;
    double tau1 = 3.0;        // degree exponent, > 1
    double tau2 = 1.5;        // community-size exponent, > 1
    double mu = 0.1;          // mixing parameter, in (0,1)
    double avg_degree = 5.0;
    NodeId min_community = 20;
    NodeId max_degree = 0;    // 0 → n/10
    NodeId max_community = 0; // 0 → n/2
    std::uint64_t seed = 1;
};

struct LfrResult {
    Graph graph;
    std::vector<std::uint32_t> community; // per node
};

/// LFR benchmark: power-law degrees (exponent τ1, mean ≈ avg_degree) and
/// power-law community sizes (exponent τ2), each node keeping ≈ (1−μ) of
/// its edges inside its community. Realized by configuration-model stub
/// matching with swap rewiring to remove self-loops and multi-edges;
/// throws GenerationError naming the violated constraint when a sequence
/// cannot be realized within the retry budget.
LfrResult generate_lfr(const LfrParams& params);

/// Mean over nodes of (inter-community incident edges / degree).
double mean_mixing_fraction(const Graph& g, const std::vector<std::uint32_t>& community);

/// Lines of "node_id community_id".
void write_communities(std::ostream& out, const std::vector<std::uint32_t>& community);

} // namespace dppr
