#pragma once

#include "dppr/graph.hpp"
#include "dppr/linsolve.hpp"
#include "dppr/ppr.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace dppr {

/// Every numerical knob of the scoring pipeline in one place. The paper-side
/// constants (α, β, ε) are experimental parameters; the benchmark harness
/// sweeps them and records the configuration with every result.
struct SolverConfig {
    double alpha = 1.0;    // diffusion coefficient of the resolvent
    double beta = 0.85;    // PPR continuation probability
    double epsilon = 1e-10; // score regularizer
    PprConfig ppr{};       // ppr.beta is ignored; beta above wins
    CgConfig cg{};         // cg.alpha is ignored; alpha above wins

    PprConfig ppr_resolved() const { PprConfig c = ppr; c.beta = beta; return c; }
    CgConfig cg_resolved() const { CgConfig c = cg; c.alpha = alpha; return c; }
    void validate() const;
};

struct PairScore {
    NodeId u = 0, v = 0;
    double distance = 0.0; // ≥ 0
    double score = 0.0;    // 1/(distance + epsilon)
};

/// ‖(I + αL)⁻¹(s_u − s_v)‖₂ via the CG resolvent solve. Symmetric in its
/// arguments and zero (to solver tolerance) when s_u = s_v.
double dppr_distance(const Graph& g, const PprVector& su, const PprVector& sv,
                     const SolverConfig& cfg);

/// PPR vectors for u and v, then distance, then score = 1/(distance + ε).
PairScore dppr_score(const Graph& g, NodeId u, NodeId v, const SolverConfig& cfg);

struct PairOutcome {
    std::optional<PairScore> score; // empty on failure
    std::string error;
};

/// Batch scoring with PPR vectors computed once per distinct endpoint and
/// reused. Order-preserving; per-pair failures do not abort the batch;
/// output is identical for any job count.
std::vector<PairOutcome> dppr_score_pairs(const Graph& g, std::span<const Edge> pairs,
                                          const SolverConfig& cfg, unsigned jobs = 1);

/// Sorts by descending score; ties within 1e-12 of distance break by
/// lexicographic pair order, so rankings are reproducible.
void rank_pairs(std::vector<PairScore>& scores);

} // namespace dppr
