#include "dppr/graph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_set>

namespace dppr {

namespace {

std::uint64_t fnv1a(std::uint64_t h, std::uint64_t value) {
    for (int i = 0; i < 8; ++i) {
        h ^= (value >> (8 * i)) & 0xffULL;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::uint64_t pack_edge(NodeId u, NodeId v) {
    return (std::uint64_t(u) << 32) | std::uint64_t(v);
}

} // namespace

Graph Graph::from_edges(NodeId n, std::span<const Edge> edges, ParseStats* stats,
                        std::vector<std::string> labels) {
    if (!labels.empty() && labels.size() != n)
        throw std::invalid_argument("label count does not match node count");

    std::unordered_set<std::uint64_t> seen;
    seen.reserve(edges.size() * 2);
    std::vector<Edge> kept;
    kept.reserve(edges.size());
    for (const auto& [a, b] : edges) {
        if (a >= n || b >= n)
            throw std::out_of_range("edge endpoint out of range");
        if (a == b) {
            if (stats) ++stats->self_loops;
            continue;
        }
        const NodeId u = std::min(a, b), v = std::max(a, b);
        if (!seen.insert(pack_edge(u, v)).second) {
            if (stats) ++stats->duplicate_edges;
            continue;
        }
        kept.emplace_back(u, v);
    }

    Graph g;
    g.n_ = n;
    g.m_ = kept.size();
    g.offsets_.assign(std::size_t(n) + 1, 0);
    for (const auto& [u, v] : kept) {
        ++g.offsets_[u + 1];
        ++g.offsets_[v + 1];
    }
    for (NodeId u = 0; u < n; ++u) g.offsets_[u + 1] += g.offsets_[u];

    g.adjacency_.resize(2 * kept.size());
    std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
    for (const auto& [u, v] : kept) {
        g.adjacency_[cursor[u]++] = v;
        g.adjacency_[cursor[v]++] = u;
    }
    for (NodeId u = 0; u < n; ++u)
        std::sort(g.adjacency_.begin() + g.offsets_[u], g.adjacency_.begin() + g.offsets_[u + 1]);

    g.labels_ = std::move(labels);
    for (NodeId u = 0; u < NodeId(g.labels_.size()); ++u) g.label_index_.emplace(g.labels_[u], u);
    return g;
}

bool Graph::has_edge(NodeId u, NodeId v) const {
    check_node(u);
    check_node(v);
    if (degree(u) > degree(v)) std::swap(u, v);
    auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<Edge> Graph::edge_list() const {
    std::vector<Edge> edges;
    edges.reserve(m_);
    for (NodeId u = 0; u < n_; ++u)
        for (NodeId v : neighbors(u))
            if (v > u) edges.emplace_back(u, v);
    return edges;
}

std::optional<NodeId> Graph::index_of(std::string_view label) const {
    auto it = label_index_.find(std::string(label));
    if (it == label_index_.end()) return std::nullopt;
    return it->second;
}

std::string Graph::label_of(NodeId u) const {
    check_node(u);
    if (u < labels_.size()) return labels_[u];
    return std::to_string(u);
}

std::uint64_t Graph::structure_hash() const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    h = fnv1a(h, n_);
    for (NodeId u = 0; u < n_; ++u) {
        h = fnv1a(h, offsets_[u + 1] - offsets_[u]);
        for (NodeId v : neighbors(u)) h = fnv1a(h, v);
    }
    return h;
}

Graph parse_edgelist(std::istream& in, ParseStats* stats) {
    std::vector<std::string> labels;
    std::unordered_map<std::string, NodeId> index;
    std::vector<Edge> edges;

    auto intern = [&](std::string&& token) {
        auto [it, inserted] = index.try_emplace(std::move(token), NodeId(labels.size()));
        if (inserted) labels.push_back(it->first);
        return it->second;
    };

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(line);
        std::string a, b, extra;
        if (!(ls >> a)) continue;          // blank line
        if (a.front() == '#') continue;    // comment
        if (!(ls >> b) || (ls >> extra))
            throw ParseError("line " + std::to_string(line_no) +
                             ": expected exactly two node ids, got '" + line + "'");
        const NodeId u = intern(std::move(a));
        const NodeId v = intern(std::move(b));
        edges.emplace_back(u, v);
    }
    if (edges.empty()) throw ParseError("empty edgelist: no edges found");
    const NodeId n = NodeId(labels.size());

    // Canonical streams (label set exactly {"0", …, "n-1"}) keep their ids,
    // which makes parse ∘ serialize the identity; anything else stays in
    // first-appearance order.
    std::vector<NodeId> remap;
    {
        bool canonical = true;
        std::vector<NodeId> values(n);
        for (NodeId i = 0; i < n && canonical; ++i) {
            const std::string& t = labels[i];
            canonical = !t.empty() && t.find_first_not_of("0123456789") == std::string::npos &&
                        (t == "0" || t.front() != '0') && t.size() <= 9;
            if (canonical) {
                values[i] = NodeId(std::stoul(t));
                canonical = values[i] < n;
            }
        }
        if (canonical) remap = std::move(values); // n distinct values < n: a bijection
    }
    if (!remap.empty()) {
        for (auto& [u, v] : edges) {
            u = remap[u];
            v = remap[v];
        }
        for (NodeId i = 0; i < n; ++i) labels[i] = std::to_string(i);
    }
    return Graph::from_edges(n, edges, stats, std::move(labels));
}

Graph parse_edgelist_file(const std::string& path, ParseStats* stats) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open edgelist file: " + path);
    return parse_edgelist(in, stats);
}

void serialize_edgelist(const Graph& g, std::ostream& out) {
    for (NodeId u = 0; u < g.num_nodes(); ++u)
        for (NodeId v : g.neighbors(u))
            if (v > u) out << u << ' ' << v << '\n';
}

NodeSignal laplacian_apply(const Graph& g, const NodeSignal& x) {
    if (x.size() != g.num_nodes())
        throw std::invalid_argument("laplacian_apply: signal length " + std::to_string(x.size()) +
                                    " != node count " + std::to_string(g.num_nodes()));
    NodeSignal y(x.size());
    for (NodeId u = 0; u < g.num_nodes(); ++u) {
        auto nb = g.neighbors(u);
        double acc = double(nb.size()) * x[u];
        for (NodeId v : nb) acc -= x[v];
        y[u] = acc;
    }
    return y;
}

NodeSignal walk_apply(const Graph& g, const NodeSignal& x) {
    if (x.size() != g.num_nodes())
        throw std::invalid_argument("walk_apply: signal length " + std::to_string(x.size()) +
                                    " != node count " + std::to_string(g.num_nodes()));
    // Nodes appearing in any neighbor list have degree ≥ 1; isolated nodes
    // never do, which is exactly the zero-column convention.
    NodeSignal scaled(x.size());
    for (NodeId v = 0; v < g.num_nodes(); ++v) {
        const auto d = g.degree(v);
        scaled[v] = d > 0 ? x[v] / double(d) : 0.0;
    }
    NodeSignal y(x.size(), 0.0);
    for (NodeId u = 0; u < g.num_nodes(); ++u) {
        double acc = 0.0;
        for (NodeId v : g.neighbors(u)) acc += scaled[v];
        y[u] = acc;
    }
    return y;
}

} // namespace dppr
