// Per-event service-start bounds, fixpoint elimination of infeasible events
// and arcs, and the node-level update rules used when arcs/paths are fixed.
#pragma once

#include <string>
#include <vector>

#include "darp/event_graph.hpp"

namespace darp {

struct BoundState {
  std::vector<double> lb, ub;  // per node id (dead nodes keep last values)
  std::vector<double> ub_bar;  // per request id 1..n: max B^UB over live pickup events
  bool infeasible = false;     // some request lost all pickup or delivery events
};

struct ReductionReport {
  int nodes_before = 0, arcs_before = 0;
  int nodes_after = 0, arcs_after = 0;
  int deleted_nodes_window = 0;  // B^UB < B^LB
  int deleted_nodes_ride = 0;    // onboard companion undeliverable in time
  int deleted_arcs_slack = 0;    // B^LB(v) + s + t > B^UB(w)
  int deleted_arcs_incident = 0;  // removed together with a deleted node
  std::string to_json() const;
  double variable_reduction() const {  // node+arc share removed
    const int before = nodes_before + arcs_before, after = nodes_after + arcs_after;
    return before == 0 ? 0.0 : 1.0 - static_cast<double>(after) / before;
  }
};

// Pure two-sweep bound computation (no graph mutation): earliest starts over
// pickup predecessors in companion-count order, latest starts mirrored over
// delivery successors with the ride-time terms added in a second pass once
// the per-request aggregates exist.
BoundState compute_bounds(const EventGraph& g);

// Full preprocessing: sweeps with immediate deletion, arc filtering, and
// worklist propagation (successor, predecessor, stale-aggregate lists in
// that fixed alternation) until nothing changes.
ReductionReport fixpoint_reduce(EventGraph& g, BoundState& b);

// Bound updates for an arc fixed to one: the head's earliest start rises to
// the tail's plus the transition, the tail's latest start drops to what the
// head still allows; changes propagate through the same worklists.
// Returns false iff some bound pair crosses (infeasible fixing).
bool fixed_arc_update(EventGraph& g, BoundState& b, int arc_id);

// For two fixed depot-anchored paths (both starting or both ending at the
// depot event) the requests they carry cannot share a vehicle: every event
// carrying a request of one path and a request of the other is deleted.
// Returns the number of deleted events.
int fixed_path_filter(EventGraph& g, const std::vector<std::vector<int>>& fixed_paths);

}  // namespace darp
