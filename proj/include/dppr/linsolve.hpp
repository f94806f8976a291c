#pragma once

#include "dppr/graph.hpp"

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>

namespace dppr {

/// Parameters for the conjugate-gradient solve of (I + αL)x = b.
struct CgConfig {
    double alpha = 1.0;      // diffusion coefficient, > 0
    double tol = 1e-8;       // relative residual ‖b − Ax‖₂ / ‖b‖₂
    std::size_t max_iter = 0; // 0 → 10·n
};

struct SolveReport {
    NodeSignal solution;
    std::size_t iterations = 0;
    double final_residual = 0.0; // relative; ≤ tol on success
};

/// Thrown when an iterative solve runs out of iterations. Carries the best
/// iterate so the caller can decide whether to accept it.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, SolveReport best)
        : std::runtime_error(what), best_(std::move(best)) {}
    const SolveReport& best() const { return best_; }

private:
    SolveReport best_;
};

/// y = (I + αL)x, matrix-free. The forward operator of the resolvent.
NodeSignal resolvent_apply(const Graph& g, double alpha, const NodeSignal& x);

/// Conjugate gradient on the SPD system (I + αL)x = b. Deterministic given
/// (g, b, cfg); starts from x = 0 and returns immediately for b = 0.
/// Throws ConvergenceError after max_iter without reaching tol.
SolveReport cg_solve(const Graph& g, const NodeSignal& b, const CgConfig& cfg);

/// Exact dense factorization solve, kept as the oracle for the iterative
/// path. Refuses graphs with n > 2000.
NodeSignal dense_resolvent_solve(const Graph& g, const NodeSignal& b, double alpha);

inline constexpr std::size_t kDenseSolveNodeLimit = 2000;

namespace detail {
/// CG on an arbitrary SPD operator; shared by the resolvent and Katz solves.
SolveReport cg_generic(std::size_t n, const NodeSignal& b,
                       const std::function<NodeSignal(const NodeSignal&)>& apply,
                       double tol, std::size_t max_iter, const char* what);
} // namespace detail

} // namespace dppr
