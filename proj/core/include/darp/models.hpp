// Builders for the four MILP formulations over one instance / event graph:
//   lb     two-index location model (lazy pairing-precedence sets)
//   eb     event-based model with per-event service times
//   laeb   event arcs with per-location service times
//   alaeb  location-pair binaries linked to a continuous arc flow
// plus the flow-network integrality conditions and their arc filter.
#pragma once

#include <string>
#include <vector>

#include "darp/event_graph.hpp"
#include "darp/instance.hpp"
#include "darp/model.hpp"

namespace darp {

// big-M for a location pair / an event arc, clamped below at zero
double big_m(const DarpInstance& inst, int i, int j);
double big_m_event(const EventGraph& g, int arc_id);

MilpModel build_lb(const DarpInstance& inst);
MilpModel build_eb(const EventGraph& g);
MilpModel build_laeb(const EventGraph& g);
MilpModel build_alaeb(const EventGraph& g);

// continuous copy (every column loses integrality)
MilpModel relax(const MilpModel& m);

// one lazy pairing-precedence cut for the lb model: S is a set of model
// locations (0 = start depot); adds sum of internal arcs <= |S| - 2
int add_sec_row(MilpModel& m, const std::vector<int>& S);

// Conditions under which the linear relaxation of laeb/alaeb is integral:
// per-request ride slack, no partially overlapping forward windows, and a
// depot that can reach / be reached from every window.
struct NetworkCheck {
  bool ride_slack_ok = true;
  bool no_partial_overlap = true;
  bool depot_adequate = true;
  std::vector<std::string> violations;
  bool all() const { return ride_slack_ok && no_partial_overlap && depot_adequate; }
};
NetworkCheck check_network_conditions(const DarpInstance& inst);

// deletes every customer-to-customer arc that cannot respect the head
// window; requires check_network_conditions to pass (throws otherwise);
// returns the number of deleted arcs
int apply_network_arc_deletion(EventGraph& g);

}  // namespace darp
