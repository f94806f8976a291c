#pragma once

#include "dppr/graph.hpp"

#include <cstddef>

namespace dppr {

enum class KatzMode { exact_solve, truncated_series };

struct KatzConfig {
    double damping = 0.005;   // path-discount factor, must satisfy damping·λ_max < 1
    std::size_t max_len = 10; // series truncation length
    KatzMode mode = KatzMode::exact_solve;
};

/// |N(u) ∩ N(v)| by sorted-list intersection.
std::size_t common_neighbors(const Graph& g, NodeId u, NodeId v);

/// Σ_{z ∈ N(u)∩N(v)} 1/ln(degree(z)). A common neighbor always has
/// degree ≥ 2, so the logarithm is bounded away from zero.
double adamic_adar(const Graph& g, NodeId u, NodeId v);

/// Largest adjacency eigenvalue magnitude, estimated by power iteration
/// from the all-ones vector. Deterministic.
double spectral_radius_estimate(const Graph& g, std::size_t iters = 100);

/// Katz scores ((I − cA)⁻¹ − I) e_v for every u at once; exact mode solves
/// the SPD system by CG, truncated mode sums c^l·(A^l)_{uv} for l ≤ max_len.
/// Exact mode throws when the spectral guard damping·λ_max < 1 fails,
/// naming the estimate.
NodeSignal katz_column(const Graph& g, NodeId v, const KatzConfig& cfg);

double katz_score(const Graph& g, NodeId u, NodeId v, const KatzConfig& cfg);

/// Applies the default fallback: when the guard fails for cfg.damping the
/// damping becomes 0.85/λ_max. The harness records the value actually used.
KatzConfig resolve_katz_config(const Graph& g, KatzConfig cfg);

} // namespace dppr
