#include "dppr/diffusion.hpp"

#include "dppr/linsolve.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace dppr {

DiffusionTrace diffuse_trace(const Graph& g, const NodeSignal& s0,
                             std::span<const double> times, unsigned steps_per_unit) {
    if (g.num_nodes() > kDenseSolveNodeLimit)
        throw std::domain_error("diffuse_trace: n = " + std::to_string(g.num_nodes()) +
                                " exceeds the visualization guard of " +
                                std::to_string(kDenseSolveNodeLimit) + " nodes");
    if (s0.size() != g.num_nodes())
        throw std::invalid_argument("diffuse_trace: signal length != node count");
    if (steps_per_unit == 0)
        throw std::invalid_argument("diffuse_trace: steps_per_unit must be >= 1");
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (times[i] < 0.0) throw std::invalid_argument("diffuse_trace: times must be >= 0");
        if (i > 0 && times[i] < times[i - 1])
            throw std::invalid_argument("diffuse_trace: times must be ascending");
    }

    const double dt = 1.0 / double(steps_per_unit);
    CgConfig cg;
    cg.tol = 1e-12;
    cg.max_iter = 50 * std::size_t(g.num_nodes()) + 50;

    DiffusionTrace trace;
    trace.times.assign(times.begin(), times.end());
    trace.snapshots.reserve(times.size());

    NodeSignal s = s0;
    double t = 0.0;
    auto step = [&](double h) {
        cg.alpha = h;
        s = cg_solve(g, s, cg).solution;
        t += h;
    };
    for (double target : times) {
        // full Δt steps, then a fractional step landing exactly on target
        while (target - t > dt * (1.0 + 1e-12)) step(dt);
        const double rest = target - t;
        if (rest > 1e-15) step(rest);
        trace.snapshots.push_back(s);
    }
    return trace;
}

void write_trace_csv(std::ostream& out, const DiffusionTrace& trace) {
    char buf[64];
    out << "t,node,value\n";
    for (std::size_t k = 0; k < trace.times.size(); ++k) {
        for (std::size_t u = 0; u < trace.snapshots[k].size(); ++u) {
            std::snprintf(buf, sizeof buf, "%.12g,%zu,%.12g\n", trace.times[k], u,
                          trace.snapshots[k][u]);
            out << buf;
        }
    }
}

} // namespace dppr
