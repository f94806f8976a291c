#pragma once

#include "dppr/graph.hpp"

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace dppr {

struct PprConfig {
    double beta = 0.85;       // continuation probability, in (0,1); teleport is 1−β
    double tol = 1e-10;       // L1 gap between successive iterates
    std::size_t max_iter = 1000;
};

/// Converged personalized-PageRank vector: nonnegative, sums to 1, and
/// values[source] ≥ 1−β.
struct PprVector {
    NodeId source = 0;
    NodeSignal values;
};

/// Power iteration s ← (1−β)e_u + β·(walk(s) + lost·e_u) from s₀ = e_u,
/// where `lost` is the mass stranded on isolated nodes; re-injecting it at
/// the source keeps Σs = 1. Throws ConvergenceError with the last iterate
/// when max_iter is exhausted.
PprVector ppr_solve(const Graph& g, NodeId source, const PprConfig& cfg);

/// L1 norm of s − (1−β)e_u − β·(walk(s) + lost(s)·e_u).
double ppr_residual(const Graph& g, const PprVector& v, const PprConfig& cfg);

struct PprOutcome {
    NodeId source = 0;
    std::optional<PprVector> vector; // empty on failure
    std::string error;               // reason when empty
};

/// Per-source ppr_solve; failures are reported per source and do not abort
/// the batch. Safe to parallelize: sources are independent and the output
/// is identical for any job count.
std::vector<PprOutcome> ppr_batch(const Graph& g, std::span<const NodeId> sources,
                                  const PprConfig& cfg, unsigned jobs = 1);

// ---------------------------------------------------------------------------
// On-disk cache, keyed by (graph hash, source, beta, tol), so benchmark
// sweeps avoid recomputing vectors. Binary format: magic "PPRV", u32
// version, key fields, then n little-endian f64 values. A CSV fallback with
// a '#'-header line holds the same payload.
// ---------------------------------------------------------------------------

struct PprCacheKey {
    std::uint64_t graph_hash = 0;
    NodeId source = 0;
    double beta = 0.0;
    double tol = 0.0;

    bool operator==(const PprCacheKey&) const = default;
};

class PprCache {
public:
    explicit PprCache(std::filesystem::path dir);

    std::optional<PprVector> load(const PprCacheKey& key) const;
    void store(const PprCacheKey& key, const PprVector& v) const;

    const std::filesystem::path& dir() const { return dir_; }

private:
    std::filesystem::path path_for(const PprCacheKey& key) const;
    std::filesystem::path dir_;
};

void write_ppr_binary(std::ostream& out, const PprCacheKey& key, const PprVector& v);
std::optional<PprVector> read_ppr_binary(std::istream& in, const PprCacheKey& expect);
void write_ppr_csv(std::ostream& out, const PprCacheKey& key, const PprVector& v);
std::optional<PprVector> read_ppr_csv(std::istream& in, const PprCacheKey& expect);

} // namespace dppr
