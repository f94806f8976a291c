#include "dppr/baselines.hpp"

#include "dppr/linsolve.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dppr {

namespace {

void check_pair(const Graph& g, NodeId u, NodeId v, const char* who) {
    if (u >= g.num_nodes() || v >= g.num_nodes())
        throw std::out_of_range(std::string(who) + ": node index out of range");
    if (u == v) throw std::invalid_argument(std::string(who) + ": u and v must differ");
}

NodeSignal adjacency_apply(const Graph& g, const NodeSignal& x) {
    NodeSignal y(x.size(), 0.0);
    for (NodeId u = 0; u < g.num_nodes(); ++u) {
        double acc = 0.0;
        for (NodeId v : g.neighbors(u)) acc += x[v];
        y[u] = acc;
    }
    return y;
}

void validate(const KatzConfig& cfg) {
    if (!(cfg.damping > 0.0)) throw std::invalid_argument("katz: damping must be > 0");
    if (cfg.max_len < 1) throw std::invalid_argument("katz: max_len must be >= 1");
}

} // namespace

std::size_t common_neighbors(const Graph& g, NodeId u, NodeId v) {
    check_pair(g, u, v, "common_neighbors");
    auto a = g.neighbors(u);
    auto b = g.neighbors(v);
    std::size_t count = 0;
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() && ib != b.end()) {
        if (*ia < *ib) ++ia;
        else if (*ib < *ia) ++ib;
        else { ++count; ++ia; ++ib; }
    }
    return count;
}

double adamic_adar(const Graph& g, NodeId u, NodeId v) {
    check_pair(g, u, v, "adamic_adar");
    auto a = g.neighbors(u);
    auto b = g.neighbors(v);
    double acc = 0.0;
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() && ib != b.end()) {
        if (*ia < *ib) ++ia;
        else if (*ib < *ia) ++ib;
        else {
            acc += 1.0 / std::log(double(g.degree(*ia)));
            ++ia; ++ib;
        }
    }
    return acc;
}

double spectral_radius_estimate(const Graph& g, std::size_t iters) {
    const std::size_t n = g.num_nodes();
    if (n == 0 || g.num_edges() == 0) return 0.0;
    NodeSignal x(n, 1.0 / std::sqrt(double(n)));
    double lambda = 0.0;
    for (std::size_t k = 0; k < iters; ++k) {
        NodeSignal y = adjacency_apply(g, x);
        double norm = 0.0;
        for (double v : y) norm += v * v;
        norm = std::sqrt(norm);
        if (norm == 0.0) return 0.0; // start vector in the kernel; no edges reachable
        lambda = norm;
        for (double& v : y) v /= norm;
        x = std::move(y);
    }
    return lambda;
}

KatzConfig resolve_katz_config(const Graph& g, KatzConfig cfg) {
    validate(cfg);
    if (cfg.mode != KatzMode::exact_solve) return cfg;
    const double lambda = spectral_radius_estimate(g);
    if (cfg.damping * lambda >= 1.0) cfg.damping = 0.85 / lambda;
    return cfg;
}

NodeSignal katz_column(const Graph& g, NodeId v, const KatzConfig& cfg) {
    validate(cfg);
    if (v >= g.num_nodes()) throw std::out_of_range("katz_column: node index out of range");

    if (cfg.mode == KatzMode::truncated_series) {
        // Σ_{l=1..max_len} damping^l · (A^l)_{:,v}
        NodeSignal power(g.num_nodes(), 0.0);
        power[v] = 1.0;
        NodeSignal acc(g.num_nodes(), 0.0);
        double weight = 1.0;
        for (std::size_t l = 1; l <= cfg.max_len; ++l) {
            power = adjacency_apply(g, power);
            weight *= cfg.damping;
            for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += weight * power[i];
        }
        return acc;
    }

    const double lambda = spectral_radius_estimate(g);
    if (cfg.damping * lambda >= 1.0)
        throw std::invalid_argument("katz_column: damping " + std::to_string(cfg.damping) +
                                    " violates the spectral guard (estimated lambda_max = " +
                                    std::to_string(lambda) + ")");

    NodeSignal rhs(g.num_nodes(), 0.0);
    rhs[v] = 1.0;
    const double c = cfg.damping;
    auto apply = [&](const NodeSignal& x) {
        NodeSignal y = adjacency_apply(g, x);
        for (std::size_t i = 0; i < y.size(); ++i) y[i] = x[i] - c * y[i];
        return y;
    };
    // (I − cA) is SPD under the guard; tolerance chosen well below the
    // 1e-8 agreement contract with the dense oracle.
    SolveReport report =
        detail::cg_generic(g.num_nodes(), rhs, apply, 1e-12, 20 * std::size_t(g.num_nodes()) + 50,
                           "katz_column");
    NodeSignal x = std::move(report.solution);
    x[v] -= 1.0; // drop the identity term
    return x;
}

double katz_score(const Graph& g, NodeId u, NodeId v, const KatzConfig& cfg) {
    check_pair(g, u, v, "katz_score");
    return katz_column(g, v, cfg)[u];
}

} // namespace dppr
