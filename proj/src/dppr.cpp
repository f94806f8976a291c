#include "dppr/dppr.hpp"

#include "dppr/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace dppr {

void SolverConfig::validate() const {
    if (!(alpha > 0.0)) throw std::invalid_argument("SolverConfig: alpha must be > 0");
    if (!(beta > 0.0 && beta < 1.0))
        throw std::invalid_argument("SolverConfig: beta must be in (0,1)");
    if (!(epsilon > 0.0)) throw std::invalid_argument("SolverConfig: epsilon must be > 0");
}

double dppr_distance(const Graph& g, const PprVector& su, const PprVector& sv,
                     const SolverConfig& cfg) {
    cfg.validate();
    if (su.values.size() != g.num_nodes() || sv.values.size() != g.num_nodes())
        throw std::invalid_argument("dppr_distance: PPR vector length != node count");

    NodeSignal diff(g.num_nodes());
    bool zero = true;
    for (std::size_t i = 0; i < diff.size(); ++i) {
        diff[i] = su.values[i] - sv.values[i];
        if (diff[i] != 0.0) zero = false;
    }
    if (zero) return 0.0;

    try {
        const SolveReport report = cg_solve(g, diff, cfg.cg_resolved());
        double acc = 0.0;
        for (double x : report.solution) acc += x * x;
        return std::sqrt(acc);
    } catch (const ConvergenceError& e) {
        throw ConvergenceError("dppr_distance: pair (" + std::to_string(su.source) + ", " +
                                   std::to_string(sv.source) + "): " + e.what(),
                               e.best());
    }
}

PairScore dppr_score(const Graph& g, NodeId u, NodeId v, const SolverConfig& cfg) {
    cfg.validate();
    if (u == v) throw std::invalid_argument("dppr_score: u and v must differ");
    const PprConfig ppr_cfg = cfg.ppr_resolved();
    const PprVector su = ppr_solve(g, u, ppr_cfg);
    const PprVector sv = ppr_solve(g, v, ppr_cfg);
    const double d = dppr_distance(g, su, sv, cfg);
    return PairScore{u, v, d, 1.0 / (d + cfg.epsilon)};
}

std::vector<PairOutcome> dppr_score_pairs(const Graph& g, std::span<const Edge> pairs,
                                          const SolverConfig& cfg, unsigned jobs) {
    cfg.validate();
    std::vector<PairOutcome> out(pairs.size());
    if (pairs.empty()) return out;

    // one PPR solve per distinct endpoint, order-independent
    std::vector<NodeId> endpoints;
    endpoints.reserve(pairs.size() * 2);
    for (const auto& [u, v] : pairs) {
        endpoints.push_back(u);
        endpoints.push_back(v);
    }
    std::sort(endpoints.begin(), endpoints.end());
    endpoints.erase(std::unique(endpoints.begin(), endpoints.end()), endpoints.end());

    const auto ppr_results = ppr_batch(g, endpoints, cfg.ppr_resolved(), jobs);
    std::unordered_map<NodeId, const PprVector*> cache;
    std::unordered_map<NodeId, const std::string*> ppr_errors;
    cache.reserve(endpoints.size());
    for (const auto& r : ppr_results) {
        if (r.vector) cache.emplace(r.source, &*r.vector);
        else ppr_errors.emplace(r.source, &r.error);
    }

    parallel_for(pairs.size(), jobs, [&](std::size_t i) {
        const auto [u, v] = pairs[i];
        try {
            if (u == v) throw std::invalid_argument("pair endpoints must differ");
            for (NodeId w : {u, v})
                if (auto it = ppr_errors.find(w); it != ppr_errors.end())
                    throw std::runtime_error("ppr failed for node " + std::to_string(w) + ": " +
                                             *it->second);
            const double d = dppr_distance(g, *cache.at(u), *cache.at(v), cfg);
            out[i].score = PairScore{u, v, d, 1.0 / (d + cfg.epsilon)};
        } catch (const std::exception& e) {
            out[i].error = e.what();
        }
    });
    return out;
}

void rank_pairs(std::vector<PairScore>& scores) {
    std::sort(scores.begin(), scores.end(), [](const PairScore& a, const PairScore& b) {
        if (std::abs(a.distance - b.distance) > 1e-12) return a.distance < b.distance;
        return std::pair(a.u, a.v) < std::pair(b.u, b.v);
    });
}

} // namespace dppr
