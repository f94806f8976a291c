#pragma once

#include "dppr/graph.hpp"

#include <iosfwd>
#include <span>
#include <vector>

namespace dppr {

/// Snapshots of a signal diffusing under ds/dt = −Ls.
struct DiffusionTrace {
    std::vector<double> times;        // ascending
    std::vector<NodeSignal> snapshots; // one per time
};

/// Integrates by implicit-Euler resolvent steps s ← (I + Δt·L)⁻¹s with
/// Δt = 1/steps_per_unit (a fractional final step lands exactly on each
/// requested time). Unconditionally stable and mass-conserving up to solver
/// tolerance. Guarded to n ≤ 2000.
DiffusionTrace diffuse_trace(const Graph& g, const NodeSignal& s0,
                             std::span<const double> times, unsigned steps_per_unit);

/// CSV with header t,node,value.
void write_trace_csv(std::ostream& out, const DiffusionTrace& trace);

} // namespace dppr
