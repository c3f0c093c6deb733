// Event-based graph: Q-tuple nodes (current location plus onboard requests)
// and the six feasible-transition arc families.
#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "darp/instance.hpp"

namespace darp {

struct EventNode {
  int loc = 0;             // 0 = depot, otherwise a pickup/delivery location
  std::vector<int> comps;  // onboard companions, descending, zero-padded to Q-1
  bool alive = true;
};

struct EventArc {
  int from = 0, to = 0;
  int family = 0;  // 1..6
  double t = 0.0, c = 0.0;
  bool alive = true;
};

struct EventGraphConfig {
  // The printed delivery-node filter is f1[v_l][i] + f2[i][v_l] >= 1; the
  // switch flips it to the pickup-shaped variant for sensitivity runs.
  bool symmetric_delivery_filter = false;
};

class EventGraph {
 public:
  EventGraph() = default;

  const DarpInstance& instance() const { return *inst_; }
  const std::vector<EventNode>& nodes() const { return nodes_; }
  const std::vector<EventArc>& arcs() const { return arcs_; }
  const EventNode& node(int v) const { return nodes_[static_cast<size_t>(v)]; }
  const EventArc& arc(int a) const { return arcs_[static_cast<size_t>(a)]; }
  int depot_node() const { return 0; }

  // arc ids incident to a node; entries may point at dead arcs
  const std::vector<int>& in_arcs(int v) const { return in_[static_cast<size_t>(v)]; }
  const std::vector<int>& out_arcs(int v) const { return out_[static_cast<size_t>(v)]; }
  // node ids per request location; entries may be dead
  const std::vector<int>& pickup_nodes(int i) const { return by_pickup_[static_cast<size_t>(i)]; }
  const std::vector<int>& delivery_nodes(int i) const { return by_delivery_[static_cast<size_t>(i)]; }
  const std::vector<int>& nodes_of_location(int loc) const { return by_loc_[static_cast<size_t>(loc)]; }

  int find_node(int loc, const std::vector<int>& comps) const;  // -1 if absent/dead

  int alive_node_count() const { return alive_nodes_; }
  int alive_arc_count() const { return alive_arcs_; }

  void delete_arc(int a);
  void delete_node(int v);  // removes incident arcs as well

  // onboard set right after / right before serving the node's location
  std::vector<int> onboard_after(int v) const;
  std::vector<int> onboard_before(int v) const;

  std::string node_label(int v) const;
  void dump(std::ostream& os) const;  // NODE/ARC text format

  friend EventGraph build_event_graph(const DarpInstance&, const CompatFlags&, const EventGraphConfig&);

 private:
  int add_node(int loc, std::vector<int> comps);
  void add_arc(int from, int to, int family);

  const DarpInstance* inst_ = nullptr;
  std::vector<EventNode> nodes_;
  std::vector<EventArc> arcs_;
  std::vector<std::vector<int>> in_, out_;
  std::vector<std::vector<int>> by_pickup_, by_delivery_, by_loc_;
  std::map<std::pair<int, std::vector<int>>, int> index_;
  int alive_nodes_ = 0, alive_arcs_ = 0;
};

EventGraph build_event_graph(const DarpInstance& inst, const CompatFlags& f,
                             const EventGraphConfig& cfg = {});
// convenience: computes the compatibility flags itself
EventGraph build_event_graph(const DarpInstance& inst);

}  // namespace darp
