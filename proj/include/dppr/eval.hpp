#pragma once

#include "dppr/baselines.hpp"
#include "dppr/dppr.hpp"
#include "dppr/generators.hpp"
#include "dppr/graph.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dppr {

/// Seeded edge holdout: train graph plus labeled test pairs.
struct SplitDataset {
    Graph train;
    std::vector<Edge> positives; // held-out edges of the original graph
    std::vector<Edge> negatives; // non-edges of the original graph, |neg| = |pos|
    double holdout_fraction = 0.0;
    std::uint64_t seed = 0;
};

/// Uniformly withholds ⌊fraction·m⌋ edges as positives and samples an equal
/// number of distinct non-edges of the ORIGINAL graph as negatives. Nodes
/// isolated by the removal stay in the train graph. Deterministic per seed.
SplitDataset holdout_split(const Graph& g, double fraction, std::uint64_t seed);

/// Average precision over the ranked pair list: stable sort by descending
/// score (ties contribute in input order), then Σ precision-at-positive-rank
/// divided by the number of positives. Throws when there is no positive.
double aupr(std::span<const int> labels, std::span<const double> scores);

enum class Method { dppr, cn, aa, katz };

std::string_view method_name(Method m);
std::optional<Method> parse_method(std::string_view name);
std::vector<Method> all_methods();

struct Protocol {
    double fraction = 0.1;
    std::size_t repeats = 30;
    std::uint64_t base_seed = 1;
    unsigned jobs = 1;
};

struct ScoreRow {
    NodeId u = 0, v = 0;
    int label = 0;
    double score = 0.0;
};

/// Scores the labeled pairs with one method on the TRAIN graph. Katz uses
/// the fallback-resolved damping; per-endpoint columns (Katz) and PPR
/// vectors (D-PPR) are computed once and reused.
std::vector<ScoreRow> score_method(const Graph& train, Method method,
                                   std::span<const Edge> positives,
                                   std::span<const Edge> negatives,
                                   const SolverConfig& solver, const KatzConfig& katz,
                                   unsigned jobs = 1);

/// One method×repeat record: config snapshot, per-pair score table, AUPR.
struct BenchmarkResult {
    std::string axis = "-";       // sweep axis value, "-" for plain runs
    Method method = Method::cn;
    std::size_t repeat = 0;
    std::uint64_t split_seed = 0;
    SolverConfig solver{};
    KatzConfig katz{};            // damping as actually used (post-fallback)
    std::vector<ScoreRow> scores;
    double aupr = 0.0;
    std::size_t n_pos = 0, n_neg = 0;
    double runtime_ms = 0.0;
    bool ok = false;
    std::string error;
};

/// Fresh split per repeat (split seed = base_seed + repeat), every method
/// scored on the train graph, AUPR per method×repeat. Per-method failures
/// are recorded and the run continues.
std::vector<BenchmarkResult> run_benchmark(const Graph& g, std::span<const Method> methods,
                                           const Protocol& protocol,
                                           const SolverConfig& solver,
                                           const KatzConfig& katz);

struct MethodSummary {
    Method method = Method::cn;
    double mean_aupr = 0.0;
    double std_aupr = 0.0;
    std::size_t repeats_ok = 0;
    std::size_t repeats_failed = 0;
};

std::vector<MethodSummary> summarize(std::span<const BenchmarkResult> rows);

enum class SweepAxis { ba_m, lfr_mu, alpha, beta };

std::string_view axis_name(SweepAxis a);
std::optional<SweepAxis> parse_axis(std::string_view name);

/// Sweep inputs. Generator axes (ba_m, lfr_mu) generate one graph per cell,
/// seeded from (base_seed, cell); parameter axes (alpha, beta) reuse the
/// provided input graph and the same split seeds in every cell, so baseline
/// columns are identical across cells.
struct SweepSpec {
    SweepAxis axis = SweepAxis::alpha;
    std::vector<double> values;
    BaParams ba{};   // base parameters for axis == ba_m
    LfrParams lfr{}; // base parameters for axis == lfr_mu
};

struct SweepCell {
    double axis_value = 0.0;
    std::vector<BenchmarkResult> rows;
    std::vector<MethodSummary> summary;
    bool ok = false;     // cell-level failure (e.g. generation error)
    std::string error;
};

std::vector<SweepCell> sweep(const std::optional<Graph>& input, const SweepSpec& spec,
                             std::span<const Method> methods, const Protocol& protocol,
                             const SolverConfig& solver, const KatzConfig& katz);

/// Detailed CSV, one row per method×repeat×cell:
/// axis,method,repeat,seed,aupr,n_pos,n_neg,runtime_ms
void write_results_csv(std::ostream& out, std::span<const BenchmarkResult> rows);

/// Tidy sweep table: axis,method,mean_aupr,std_aupr
void write_sweep_summary_csv(std::ostream& out, std::span<const SweepCell> cells);

/// %.12g; shared by every writer so identical numbers render identically.
std::string format_double(double x);

} // namespace dppr
