#include "dppr/linsolve.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include <cmath>
#include <functional>

namespace dppr {

namespace {

void check_signal(const Graph& g, const NodeSignal& x, const char* who) {
    if (x.size() != g.num_nodes())
        throw std::invalid_argument(std::string(who) + ": signal length " +
                                    std::to_string(x.size()) + " != node count " +
                                    std::to_string(g.num_nodes()));
    for (double v : x)
        if (!std::isfinite(v))
            throw std::invalid_argument(std::string(who) + ": non-finite entry in signal");
}

double dot(const NodeSignal& a, const NodeSignal& b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

double norm2(const NodeSignal& a) { return std::sqrt(dot(a, a)); }

} // namespace

NodeSignal resolvent_apply(const Graph& g, double alpha, const NodeSignal& x) {
    if (!(alpha > 0.0)) throw std::invalid_argument("resolvent_apply: alpha must be > 0");
    check_signal(g, x, "resolvent_apply");
    NodeSignal y = laplacian_apply(g, x);
    for (std::size_t i = 0; i < y.size(); ++i) y[i] = x[i] + alpha * y[i];
    return y;
}

namespace detail {

// Plain CG on a generic SPD operator. Convergence is checked on the
// recursive residual and confirmed against the true residual; on drift the
// iteration restarts from the current iterate.
SolveReport cg_generic(std::size_t n, const NodeSignal& b,
                       const std::function<NodeSignal(const NodeSignal&)>& apply,
                       double tol, std::size_t max_iter, const char* what) {
    SolveReport report;
    report.solution.assign(n, 0.0);

    const double bnorm = norm2(b);
    if (bnorm == 0.0) return report; // zero rhs → zero solution, no iterations

    NodeSignal& x = report.solution;
    NodeSignal r = b;
    NodeSignal p = r;
    double rr = dot(r, r);

    while (report.iterations < max_iter) {
        ++report.iterations;
        const NodeSignal ap = apply(p);
        const double p_ap = dot(p, ap);
        if (!(p_ap > 0.0)) break; // operator not SPD on this subspace; bail to error path
        const double step = rr / p_ap;
        for (std::size_t i = 0; i < n; ++i) {
            x[i] += step * p[i];
            r[i] -= step * ap[i];
        }
        const double rr_next = dot(r, r);
        if (std::sqrt(rr_next) <= tol * bnorm) {
            // confirm with the true residual; restart on drift
            NodeSignal true_r = apply(x);
            for (std::size_t i = 0; i < n; ++i) true_r[i] = b[i] - true_r[i];
            const double true_norm = norm2(true_r);
            if (true_norm <= tol * bnorm) {
                report.final_residual = true_norm / bnorm;
                return report;
            }
            r = std::move(true_r);
            p = r;
            rr = dot(r, r);
            continue;
        }
        const double ratio = rr_next / rr;
        for (std::size_t i = 0; i < n; ++i) p[i] = r[i] + ratio * p[i];
        rr = rr_next;
    }

    NodeSignal true_r = apply(x);
    for (std::size_t i = 0; i < n; ++i) true_r[i] = b[i] - true_r[i];
    report.final_residual = norm2(true_r) / bnorm;
    throw ConvergenceError(std::string(what) + ": no convergence within " +
                               std::to_string(max_iter) + " iterations (relative residual " +
                               std::to_string(report.final_residual) + ")",
                           std::move(report));
}

} // namespace detail

SolveReport cg_solve(const Graph& g, const NodeSignal& b, const CgConfig& cfg) {
    if (!(cfg.alpha > 0.0)) throw std::invalid_argument("cg_solve: alpha must be > 0");
    if (!(cfg.tol > 0.0)) throw std::invalid_argument("cg_solve: tol must be > 0");
    check_signal(g, b, "cg_solve");
    const std::size_t max_iter = cfg.max_iter > 0 ? cfg.max_iter : 10 * std::size_t(g.num_nodes());
    if (max_iter < 1) throw std::invalid_argument("cg_solve: max_iter must be >= 1");

    const double alpha = cfg.alpha;
    auto apply = [&](const NodeSignal& x) {
        NodeSignal y = laplacian_apply(g, x);
        for (std::size_t i = 0; i < y.size(); ++i) y[i] = x[i] + alpha * y[i];
        return y;
    };
    return detail::cg_generic(g.num_nodes(), b, apply, cfg.tol, max_iter, "cg_solve");
}

NodeSignal dense_resolvent_solve(const Graph& g, const NodeSignal& b, double alpha) {
    if (!(alpha > 0.0)) throw std::invalid_argument("dense_resolvent_solve: alpha must be > 0");
    check_signal(g, b, "dense_resolvent_solve");
    const std::size_t n = g.num_nodes();
    if (n > kDenseSolveNodeLimit)
        throw std::domain_error("dense_resolvent_solve: n = " + std::to_string(n) +
                                " exceeds the dense guard of " +
                                std::to_string(kDenseSolveNodeLimit) + " nodes");

    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(Eigen::Index(n), Eigen::Index(n));
    for (NodeId u = 0; u < g.num_nodes(); ++u) {
        a(u, u) = 1.0 + alpha * double(g.degree(u));
        for (NodeId v : g.neighbors(u)) a(u, v) = -alpha;
    }
    Eigen::VectorXd rhs = Eigen::Map<const Eigen::VectorXd>(b.data(), Eigen::Index(n));
    Eigen::VectorXd x = a.llt().solve(rhs);
    return NodeSignal(x.data(), x.data() + n);
}

} // namespace dppr
