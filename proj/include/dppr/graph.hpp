#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace dppr {

using NodeId = std::uint32_t;
using Edge = std::pair<NodeId, NodeId>;

/// Dense per-node real signal; length must equal the graph's node count.
using NodeSignal = std::vector<double>;

struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// Counts of input lines dropped while building a Graph.
struct ParseStats {
    std::size_t duplicate_edges = 0;
    std::size_t self_loops = 0;
};

/// Immutable undirected simple graph in compressed adjacency form.
///
/// Neighbor lists are sorted ascending, symmetric, and free of self-loops
/// and duplicates. Once constructed the graph is safe for concurrent
/// read-only use.
class Graph {
public:
    Graph() = default;

    /// Builds a graph over nodes 0..n-1. Self-loops and duplicate edges in
    /// `edges` are dropped; counts go to `stats` when given.
    static Graph from_edges(NodeId n, std::span<const Edge> edges,
                            ParseStats* stats = nullptr,
                            std::vector<std::string> labels = {});

    NodeId num_nodes() const { return n_; }
    std::size_t num_edges() const { return m_; }
    double average_degree() const { return n_ == 0 ? 0.0 : 2.0 * double(m_) / double(n_); }

    NodeId degree(NodeId u) const {
        check_node(u);
        return NodeId(offsets_[u + 1] - offsets_[u]);
    }

    std::span<const NodeId> neighbors(NodeId u) const {
        check_node(u);
        return {adjacency_.data() + offsets_[u], offsets_[u + 1] - offsets_[u]};
    }

    bool has_edge(NodeId u, NodeId v) const;

    /// Canonical edge list: (u, v) with u < v, sorted ascending.
    std::vector<Edge> edge_list() const;

    /// External ids in first-appearance order; empty when the graph was
    /// built from dense indices directly.
    const std::vector<std::string>& labels() const { return labels_; }
    std::optional<NodeId> index_of(std::string_view label) const;
    std::string label_of(NodeId u) const;

    /// Deterministic 64-bit digest of (n, adjacency structure).
    std::uint64_t structure_hash() const;

private:
    void check_node(NodeId u) const {
        if (u >= n_) throw std::out_of_range("node index " + std::to_string(u) +
                                             " out of range (n=" + std::to_string(n_) + ")");
    }

    NodeId n_ = 0;
    std::size_t m_ = 0;
    std::vector<std::size_t> offsets_;   // length n+1
    std::vector<NodeId> adjacency_;      // length 2m
    std::vector<std::string> labels_;
    std::unordered_map<std::string, NodeId> label_index_;
};

/// Parses whitespace-separated "u v" lines. Lines starting with '#' are
/// comments; ids are arbitrary tokens mapped to dense indices in
/// first-appearance order, except that a label set of exactly {0..n-1}
/// keeps its numeric ids (so parse ∘ serialize is the identity on
/// canonical files). Throws ParseError on malformed lines (with the line
/// number) and on empty input.
Graph parse_edgelist(std::istream& in, ParseStats* stats = nullptr);
Graph parse_edgelist_file(const std::string& path, ParseStats* stats = nullptr);

/// Canonical form: sorted "u v" pairs with u < v, dense 0-based ids,
/// newline-terminated. parse ∘ serialize is the identity on such graphs.
void serialize_edgelist(const Graph& g, std::ostream& out);

/// y[u] = degree(u)·x[u] − Σ_{v∈N(u)} x[v]; L = D − A applied matrix-free.
NodeSignal laplacian_apply(const Graph& g, const NodeSignal& x);

/// y[u] = Σ_{v∈N(u)} x[v]/degree(v); the column-stochastic walk operator
/// A·D⁻¹. Columns of isolated nodes act as zero, so mass placed on a
/// degree-0 node is dropped here (PPR re-injects it at the source).
NodeSignal walk_apply(const Graph& g, const NodeSignal& x);

} // namespace dppr
