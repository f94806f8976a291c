#include "dppr/generators.hpp"

#include "dppr/rng.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <ostream>
#include <unordered_map>
#include <unordered_set>

namespace dppr {

namespace {

std::uint64_t pack_pair(NodeId a, NodeId b) {
    const NodeId u = std::min(a, b), v = std::max(a, b);
    return (std::uint64_t(u) << 32) | std::uint64_t(v);
}

// --------------------------------------------------------------------------
// Power-law sampling shared by the degree and community-size sequences:
// continuous inverse-CDF on [xmin, xmax] with exponent tau, rounded.
// --------------------------------------------------------------------------

double power_law_sample(Rng& rng, double xmin, double xmax, double tau) {
    const double a = std::pow(xmin, 1.0 - tau);
    const double b = std::pow(xmax, 1.0 - tau);
    const double u = rand_unit(rng);
    return std::pow(a + u * (b - a), 1.0 / (1.0 - tau));
}

double power_law_mean(double xmin, double xmax, double tau) {
    // E[X] for the continuous truncated power law; tau != 2 for these inputs
    const double num = std::pow(xmin, 2.0 - tau) - std::pow(xmax, 2.0 - tau);
    const double den = std::pow(xmin, 1.0 - tau) - std::pow(xmax, 1.0 - tau);
    return (tau - 1.0) / (tau - 2.0) * num / den;
}

double solve_xmin_for_mean(double target, double xmax, double tau) {
    double lo = 1.0, hi = xmax;
    if (power_law_mean(lo, xmax, tau) > target)
        throw GenerationError("lfr: avg_degree below the minimum attainable with max_degree " +
                              std::to_string(std::size_t(xmax)));
    if (power_law_mean(hi, xmax, tau) < target)
        throw GenerationError("lfr: avg_degree above max_degree cap " +
                              std::to_string(std::size_t(xmax)));
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (power_law_mean(mid, xmax, tau) < target ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

// --------------------------------------------------------------------------
// Configuration-model stub matching with swap rewiring. `forbidden(u, v)`
// rejects pairs beyond self-loops and duplicates (e.g. same-community pairs
// in the inter-community phase). Throws after `budget` swap attempts.
// --------------------------------------------------------------------------

std::vector<Edge> match_stubs(std::vector<NodeId> stubs, Rng& rng,
                              const std::function<bool(NodeId, NodeId)>& forbidden,
                              const std::unordered_set<std::uint64_t>& existing,
                              const char* phase) {
    if (stubs.size() % 2 != 0)
        throw GenerationError(std::string("lfr: odd stub count in ") + phase);
    const std::size_t num_pairs = stubs.size() / 2;
    std::vector<Edge> pairs(num_pairs);
    if (num_pairs == 0) return pairs;

    for (std::size_t i = stubs.size() - 1; i > 0; --i)
        std::swap(stubs[i], stubs[rand_below(rng, i + 1)]);
    for (std::size_t i = 0; i < num_pairs; ++i) pairs[i] = {stubs[2 * i], stubs[2 * i + 1]};

    std::unordered_map<std::uint64_t, std::size_t> count;
    count.reserve(num_pairs * 2);
    for (const auto& [u, v] : pairs) if (u != v) ++count[pack_pair(u, v)];

    auto pair_ok = [&](NodeId u, NodeId v, std::size_t allowed_multiplicity) {
        if (u == v || forbidden(u, v)) return false;
        const auto key = pack_pair(u, v);
        if (existing.contains(key)) return false;
        auto it = count.find(key);
        return (it == count.end() ? 0 : it->second) <= allowed_multiplicity;
    };

    const std::size_t budget = 100 * num_pairs;
    std::size_t attempts = 0;
    while (true) {
        std::vector<std::size_t> bad;
        std::unordered_set<std::uint64_t> seen;
        for (std::size_t i = 0; i < num_pairs; ++i) {
            const auto [u, v] = pairs[i];
            if (u == v || forbidden(u, v) || existing.contains(pack_pair(u, v)) ||
                !seen.insert(pack_pair(u, v)).second)
                bad.push_back(i);
        }
        if (bad.empty()) return pairs;

        bool progressed = false;
        for (std::size_t i : bad) {
            for (int local = 0; local < 50; ++local) {
                if (attempts++ >= budget)
                    throw GenerationError(std::string("lfr: ") + phase +
                                          " rewiring budget exhausted (" +
                                          std::to_string(budget) + " swap attempts)");
                const std::size_t j = rand_below(rng, num_pairs);
                if (j == i) continue;
                auto [a1, b1] = pairs[i];
                auto [a2, b2] = pairs[j];
                // detach the two old pairs, test the crossed ones
                auto detach = [&](NodeId u, NodeId v) {
                    if (u != v) {
                        auto it = count.find(pack_pair(u, v));
                        if (it != count.end() && it->second > 0) --it->second;
                    }
                };
                detach(a1, b1);
                detach(a2, b2);
                if (pair_ok(a1, b2, 0) && pair_ok(a2, b1, 0) &&
                    pack_pair(a1, b2) != pack_pair(a2, b1)) {
                    pairs[i] = {a1, b2};
                    pairs[j] = {a2, b1};
                    ++count[pack_pair(a1, b2)];
                    ++count[pack_pair(a2, b1)];
                    progressed = true;
                    break;
                }
                if (a1 != b1) ++count[pack_pair(a1, b1)];
                if (a2 != b2) ++count[pack_pair(a2, b2)];
            }
        }
        if (!progressed && attempts >= budget)
            throw GenerationError(std::string("lfr: ") + phase +
                                  " rewiring budget exhausted (" + std::to_string(budget) +
                                  " swap attempts)");
    }
}

} // namespace

Graph generate_ba(const BaParams& params) {
    if (params.m < 1 || params.m >= params.n)
        throw std::invalid_argument("generate_ba: require 1 <= m < n (got m=" +
                                    std::to_string(params.m) + ", n=" + std::to_string(params.n) +
                                    ")");
    Rng rng(params.seed);
    std::vector<Edge> edges;
    edges.reserve(std::size_t(params.m) * (params.n - params.m) +
                  std::size_t(params.m) * (params.m - 1) / 2);

    // endpoints repeated per incident edge; uniform draws are degree-proportional
    std::vector<NodeId> repeated;
    for (NodeId u = 0; u < params.m; ++u)
        for (NodeId v = u + 1; v < params.m; ++v) {
            edges.emplace_back(u, v);
            repeated.push_back(u);
            repeated.push_back(v);
        }

    std::vector<NodeId> targets;
    for (NodeId u = params.m; u < params.n; ++u) {
        targets.clear();
        std::unordered_set<NodeId> chosen;
        while (targets.size() < params.m) {
            const NodeId t = repeated.empty() ? NodeId(rand_below(rng, u))
                                              : repeated[rand_below(rng, repeated.size())];
            if (chosen.insert(t).second) targets.push_back(t);
        }
        for (NodeId t : targets) {
            edges.emplace_back(u, t);
            repeated.push_back(u);
            repeated.push_back(t);
        }
    }
    return Graph::from_edges(params.n, edges);
}

LfrResult generate_lfr(const LfrParams& params) {
    LfrParams p = params;
    if (p.max_degree == 0) p.max_degree = std::max<NodeId>(2, p.n / 10);
    if (p.max_community == 0) p.max_community = std::max<NodeId>(p.min_community, p.n / 2);
    if (!(p.tau1 > 1.0)) throw std::invalid_argument("generate_lfr: tau1 must be > 1");
    if (!(p.tau2 > 1.0)) throw std::invalid_argument("generate_lfr: tau2 must be > 1");
    if (!(p.mu > 0.0 && p.mu < 1.0))
        throw std::invalid_argument("generate_lfr: mu must be in (0,1)");
    if (p.min_community > p.max_community || p.max_community > p.n)
        throw std::invalid_argument("generate_lfr: require min_community <= max_community <= n");
    if (!(p.avg_degree > 0.0)) throw std::invalid_argument("generate_lfr: avg_degree must be > 0");

    Rng rng(p.seed);
    const double xmin = solve_xmin_for_mean(p.avg_degree, double(p.max_degree), p.tau1);

    // -- degree sequence, resampled until the realized mean is close
    std::vector<NodeId> degree(p.n);
    for (int attempt = 0;; ++attempt) {
        double sum = 0.0;
        for (auto& k : degree) {
            const double x = power_law_sample(rng, xmin, double(p.max_degree), p.tau1);
            k = NodeId(std::clamp<long>(std::lround(x), 1, long(p.max_degree)));
            sum += double(k);
        }
        if (std::abs(sum / double(p.n) - p.avg_degree) <= 0.08 * p.avg_degree) break;
        if (attempt >= 50)
            throw GenerationError("lfr: could not realize avg_degree " +
                                  std::to_string(p.avg_degree) + " within 50 resamples");
    }
    if (std::accumulate(degree.begin(), degree.end(), std::uint64_t(0)) % 2 != 0) {
        NodeId i = NodeId(rand_below(rng, p.n));
        degree[i] = degree[i] < p.max_degree ? degree[i] + 1 : degree[i] - 1;
    }

    // -- community sizes: power law, then trimmed to sum to exactly n
    std::vector<NodeId> sizes;
    std::uint64_t total = 0;
    while (total < p.n) {
        const double x = power_law_sample(rng, double(p.min_community),
                                          double(p.max_community), p.tau2);
        const NodeId s =
            NodeId(std::clamp<long>(std::lround(x), long(p.min_community), long(p.max_community)));
        sizes.push_back(s);
        total += s;
    }
    while (total > p.n) {
        auto it = std::max_element(sizes.begin(), sizes.end());
        if (*it > p.min_community) {
            const NodeId cut = NodeId(std::min<std::uint64_t>(total - p.n, *it - p.min_community));
            *it -= cut;
            total -= cut;
        } else if (sizes.size() > 1) {
            total -= sizes.back();
            sizes.pop_back();
        } else {
            throw GenerationError("lfr: min_community too large to partition " +
                                  std::to_string(p.n) + " nodes");
        }
    }
    while (total < p.n) {
        auto it = std::min_element(sizes.begin(), sizes.end());
        if (*it >= p.max_community)
            throw GenerationError("lfr: cannot grow community sizes to cover all nodes");
        ++*it;
        ++total;
    }
    const std::size_t num_comms = sizes.size();

    // -- internal degrees: stochastic rounding keeps the mean mixing at mu
    std::vector<NodeId> internal(p.n), external(p.n);
    for (NodeId i = 0; i < p.n; ++i) {
        const double target = (1.0 - p.mu) * double(degree[i]);
        NodeId k = NodeId(std::floor(target));
        if (rand_unit(rng) < target - std::floor(target)) ++k;
        internal[i] = std::min(k, degree[i]);
        external[i] = degree[i] - internal[i];
    }

    // -- assignment: hardest (largest internal degree) first, random among
    //    communities whose size can host the node's internal edges
    std::vector<NodeId> order(p.n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](NodeId a, NodeId b) { return internal[a] > internal[b]; });
    std::vector<std::uint32_t> community(p.n, 0);
    std::vector<NodeId> free_slots(sizes.begin(), sizes.end());
    {
        std::vector<std::size_t> eligible;
        for (NodeId i : order) {
            eligible.clear();
            for (std::size_t c = 0; c < num_comms; ++c)
                if (free_slots[c] > 0 && sizes[c] > internal[i]) eligible.push_back(c);
            if (eligible.empty()) {
                const NodeId largest = *std::max_element(sizes.begin(), sizes.end());
                throw GenerationError(
                    "lfr: node internal degree " + std::to_string(internal[i]) +
                    " does not fit any community (largest community holds " +
                    std::to_string(largest) + " nodes); raise max_community or mu");
            }
            const std::size_t c = eligible[rand_below(rng, eligible.size())];
            community[i] = std::uint32_t(c);
            --free_slots[c];
        }
    }

    std::vector<std::vector<NodeId>> members(num_comms);
    for (NodeId i = 0; i < p.n; ++i) members[community[i]].push_back(i);

    // per-community parity of internal stubs
    for (std::size_t c = 0; c < num_comms; ++c) {
        std::uint64_t sum = 0;
        for (NodeId i : members[c]) sum += internal[i];
        if (sum % 2 == 0) continue;
        std::vector<NodeId> candidates;
        for (NodeId i : members[c])
            if (internal[i] > 0) candidates.push_back(i);
        if (!candidates.empty()) {
            const NodeId i = candidates[rand_below(rng, candidates.size())];
            --internal[i];
            ++external[i];
        } else {
            // all-zero internal sum cannot be odd; defensive only
            throw GenerationError("lfr: cannot fix internal stub parity in community " +
                                  std::to_string(c));
        }
    }

    // -- wiring
    std::unordered_set<std::uint64_t> edge_set;
    std::vector<Edge> edges;
    auto never = [](NodeId, NodeId) { return false; };
    for (std::size_t c = 0; c < num_comms; ++c) {
        std::vector<NodeId> stubs;
        for (NodeId i : members[c])
            for (NodeId s = 0; s < internal[i]; ++s) stubs.push_back(i);
        auto pairs = match_stubs(std::move(stubs), rng, never, edge_set, "intra-community");
        for (const auto& [u, v] : pairs) {
            edge_set.insert(pack_pair(u, v));
            edges.emplace_back(u, v);
        }
    }
    {
        std::vector<NodeId> stubs;
        for (NodeId i = 0; i < p.n; ++i)
            for (NodeId s = 0; s < external[i]; ++s) stubs.push_back(i);
        auto same_community = [&](NodeId u, NodeId v) { return community[u] == community[v]; };
        auto pairs = match_stubs(std::move(stubs), rng, same_community, edge_set,
                                 "inter-community");
        for (const auto& [u, v] : pairs) {
            edge_set.insert(pack_pair(u, v));
            edges.emplace_back(u, v);
        }
    }

    ParseStats stats;
    Graph g = Graph::from_edges(p.n, edges, &stats);
    if (stats.duplicate_edges != 0 || stats.self_loops != 0)
        throw GenerationError("lfr: internal error, stub matching left " +
                              std::to_string(stats.duplicate_edges) + " duplicates and " +
                              std::to_string(stats.self_loops) + " self-loops");
    return LfrResult{std::move(g), std::move(community)};
}

double mean_mixing_fraction(const Graph& g, const std::vector<std::uint32_t>& community) {
    if (community.size() != g.num_nodes())
        throw std::invalid_argument("mean_mixing_fraction: community size != node count");
    double acc = 0.0;
    std::size_t counted = 0;
    for (NodeId u = 0; u < g.num_nodes(); ++u) {
        const auto nb = g.neighbors(u);
        if (nb.empty()) continue;
        std::size_t inter = 0;
        for (NodeId v : nb)
            if (community[v] != community[u]) ++inter;
        acc += double(inter) / double(nb.size());
        ++counted;
    }
    return counted == 0 ? 0.0 : acc / double(counted);
}

void write_communities(std::ostream& out, const std::vector<std::uint32_t>& community) {
    for (std::size_t i = 0; i < community.size(); ++i)
        out << i << ' ' << community[i] << '\n';
}

} // namespace dppr
