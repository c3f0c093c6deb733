#include "darp/preprocessing.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <sstream>

namespace darp {
namespace {

constexpr double kTol = 1e-9;
constexpr double kInf = std::numeric_limits<double>::infinity();

int companion_count(const EventNode& nd) {
  int c = 0;
  for (int x : nd.comps)
    if (x) ++c;
  return c;
}

// node ids of one side, companion count ascending (ties by id): within a
// side, every bound only depends on nodes with strictly fewer companions,
// so one sweep in this order is exact
std::vector<int> sweep_order(const EventGraph& g, bool pickup_side) {
  std::vector<int> order;
  for (int v = 0; v < static_cast<int>(g.nodes().size()); ++v) {
    const EventNode& nd = g.node(v);
    if (!nd.alive || nd.loc == DarpInstance::depot) continue;
    if (g.instance().is_pickup(nd.loc) == pickup_side) order.push_back(v);
  }
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return companion_count(g.node(a)) < companion_count(g.node(b));
  });
  return order;
}

// earliest start: window opening vs. best pickup predecessor
double lb_value(const EventGraph& g, const BoundState& b, int v) {
  const DarpInstance& inst = g.instance();
  const EventNode& nd = g.node(v);
  if (nd.loc == DarpInstance::depot) return 0.0;
  double best = kInf;
  for (int a : g.in_arcs(v)) {
    const EventArc& arc = g.arc(a);
    if (!arc.alive) continue;
    const EventNode& w = g.node(arc.from);
    if (!w.alive || !inst.is_pickup(w.loc)) continue;
    best = std::min(best, b.lb[static_cast<size_t>(arc.from)] + inst.service(w.loc) + arc.t);
  }
  const double e = inst.window(nd.loc).e;
  return best == kInf ? e : std::max(e, best);
}

// latest start: window closing, delivery successors, and (second pass) the
// ride-time caps of the node's own request and onboard companions
// `succ_arc` >= 0 pins the successor: the delivery-successor maximum is
// replaced by that arc's head term (used when an arc is fixed to 1)
double ub_value(const EventGraph& g, const BoundState& b, int v, bool with_ride,
                int succ_arc = -1) {
  const DarpInstance& inst = g.instance();
  const EventNode& nd = g.node(v);
  if (nd.loc == DarpInstance::depot) return inst.T;
  double val = inst.window(nd.loc).l;
  if (with_ride && inst.is_delivery(nd.loc)) {
    const int i = inst.request_of(nd.loc);
    val = std::min(val, b.ub_bar[static_cast<size_t>(i)] + inst.request(i).s + inst.request(i).L);
  }
  if (succ_arc >= 0) {
    const EventArc& arc = g.arc(succ_arc);
    if (g.node(arc.to).loc != DarpInstance::depot)
      val = std::min(val, b.ub[static_cast<size_t>(arc.to)] - arc.t - inst.service(nd.loc));
  } else {
    double best = -kInf;
    for (int a : g.out_arcs(v)) {
      const EventArc& arc = g.arc(a);
      if (!arc.alive) continue;
      const EventNode& w = g.node(arc.to);
      if (!w.alive || !inst.is_delivery(w.loc)) continue;
      best = std::max(best, b.ub[static_cast<size_t>(arc.to)] - arc.t - inst.service(nd.loc));
    }
    if (best > -kInf) val = std::min(val, best);
  }
  if (with_ride) {
    for (int i : nd.comps) {
      if (!i) continue;
      val = std::min(val, b.ub_bar[static_cast<size_t>(i)] + inst.request(i).s + inst.request(i).L -
                              inst.service(nd.loc) -
                              inst.time[static_cast<size_t>(nd.loc)][static_cast<size_t>(inst.delivery_of(i))]);
    }
  }
  return val;
}

struct Worklists {
  std::deque<int> succ, pred, bar;  // FIFO, de-duplicated
  std::vector<char> in_succ, in_pred, in_bar;
  void init(size_t nodes, size_t requests) {
    in_succ.assign(nodes, 0);
    in_pred.assign(nodes, 0);
    in_bar.assign(requests + 1, 0);
  }
  void push_succ(int v) {
    if (!in_succ[static_cast<size_t>(v)]) {
      in_succ[static_cast<size_t>(v)] = 1;
      succ.push_back(v);
    }
  }
  void push_pred(int v) {
    if (!in_pred[static_cast<size_t>(v)]) {
      in_pred[static_cast<size_t>(v)] = 1;
      pred.push_back(v);
    }
  }
  void push_bar(int i) {
    if (!in_bar[static_cast<size_t>(i)]) {
      in_bar[static_cast<size_t>(i)] = 1;
      bar.push_back(i);
    }
  }
};

struct Reducer {
  EventGraph& g;
  BoundState& b;
  const DarpInstance& inst;
  ReductionReport rep;
  Worklists wl;
  std::vector<std::vector<int>> comp_index;      // request -> events carrying it as companion
  std::vector<int> live_pick, live_drop;         // per request

  explicit Reducer(EventGraph& graph, BoundState& bounds)
      : g(graph), b(bounds), inst(graph.instance()) {
    wl.init(g.nodes().size(), static_cast<size_t>(inst.n));
    comp_index.assign(static_cast<size_t>(inst.n) + 1, {});
    live_pick.assign(static_cast<size_t>(inst.n) + 1, 0);
    live_drop.assign(static_cast<size_t>(inst.n) + 1, 0);
    for (int v = 0; v < static_cast<int>(g.nodes().size()); ++v) {
      const EventNode& nd = g.node(v);
      if (!nd.alive || nd.loc == DarpInstance::depot) continue;
      for (int c : nd.comps)
        if (c) comp_index[static_cast<size_t>(c)].push_back(v);
      (inst.is_pickup(nd.loc) ? live_pick : live_drop)[static_cast<size_t>(inst.request_of(nd.loc))]++;
    }
  }

  void on_node_deleted(int v) {
    const EventNode& nd = g.node(v);
    for (int a : g.out_arcs(v)) wl.push_succ(g.arc(a).to);
    for (int a : g.in_arcs(v)) wl.push_pred(g.arc(a).from);
    const int i = inst.request_of(nd.loc);
    if (inst.is_pickup(nd.loc)) {
      wl.push_bar(i);
      if (--live_pick[static_cast<size_t>(i)] == 0) b.infeasible = true;
    } else if (--live_drop[static_cast<size_t>(i)] == 0) {
      b.infeasible = true;
    }
  }

  void delete_node(int v, bool ride_cause) {
    if (!g.node(v).alive) return;
    on_node_deleted(v);  // adjacency is intact until the node goes
    g.delete_node(v);
    (ride_cause ? rep.deleted_nodes_ride : rep.deleted_nodes_window)++;
  }

  // arc slack filter at one arc; seeds both endpoints on deletion
  void check_arc(int a) {
    const EventArc& arc = g.arc(a);
    if (!arc.alive) return;
    if (b.lb[static_cast<size_t>(arc.from)] + inst.service(g.node(arc.from).loc) + arc.t >
        b.ub[static_cast<size_t>(arc.to)] + kTol) {
      g.delete_arc(a);
      ++rep.deleted_arcs_slack;
      wl.push_succ(arc.to);
      wl.push_pred(arc.from);
    }
  }

  // per-companion ride caps; true if the node was deleted
  bool ride_delete(int v) {
    const EventNode& nd = g.node(v);
    for (int i : nd.comps) {
      if (!i) continue;
      const double cap = b.ub_bar[static_cast<size_t>(i)] + inst.request(i).s + inst.request(i).L -
                         inst.service(nd.loc) -
                         inst.time[static_cast<size_t>(nd.loc)][static_cast<size_t>(inst.delivery_of(i))];
      if (cap < b.lb[static_cast<size_t>(v)] - kTol) {
        delete_node(v, true);
        return true;
      }
    }
    return false;
  }

  void drain() {
    // fixed alternation: successor list (earliest starts), predecessor list
    // (latest starts), stale aggregates; repeat until all empty
    while (!wl.succ.empty() || !wl.pred.empty() || !wl.bar.empty()) {
      while (!wl.succ.empty()) {
        const int v = wl.succ.front();
        wl.succ.pop_front();
        wl.in_succ[static_cast<size_t>(v)] = 0;
        if (!g.node(v).alive || g.node(v).loc == DarpInstance::depot) continue;
        const double nv = lb_value(g, b, v);
        if (nv > b.lb[static_cast<size_t>(v)] + kTol) {
          b.lb[static_cast<size_t>(v)] = nv;  // monotone: only tighten
          ++rep_steps;
          if (b.lb[static_cast<size_t>(v)] > b.ub[static_cast<size_t>(v)] + kTol) {
            delete_node(v, false);
            continue;
          }
          if (ride_delete(v)) continue;
          for (int a : g.out_arcs(v)) {
            check_arc(a);
            if (g.arc(a).alive) wl.push_succ(g.arc(a).to);
          }
        }
      }
      while (!wl.pred.empty()) {
        const int v = wl.pred.front();
        wl.pred.pop_front();
        wl.in_pred[static_cast<size_t>(v)] = 0;
        if (!g.node(v).alive || g.node(v).loc == DarpInstance::depot) continue;
        const double nv = ub_value(g, b, v, true);
        if (nv < b.ub[static_cast<size_t>(v)] - kTol) {
          b.ub[static_cast<size_t>(v)] = nv;
          ++rep_steps;
          if (b.lb[static_cast<size_t>(v)] > b.ub[static_cast<size_t>(v)] + kTol) {
            delete_node(v, false);
            continue;
          }
          if (inst.is_pickup(g.node(v).loc)) wl.push_bar(inst.request_of(g.node(v).loc));
          for (int a : g.in_arcs(v)) {
            check_arc(a);
            if (g.arc(a).alive) wl.push_pred(g.arc(a).from);
          }
        }
      }
      while (!wl.bar.empty()) {
        const int i = wl.bar.front();
        wl.bar.pop_front();
        wl.in_bar[static_cast<size_t>(i)] = 0;
        double nb = -kInf;
        for (int v : g.pickup_nodes(i)) {
          if (g.node(v).alive) nb = std::max(nb, b.ub[static_cast<size_t>(v)]);
        }
        if (nb == -kInf) continue;  // infeasibility already flagged
        if (nb < b.ub_bar[static_cast<size_t>(i)] - kTol) {
          b.ub_bar[static_cast<size_t>(i)] = nb;
          for (int v : g.delivery_nodes(i)) {
            if (g.node(v).alive) wl.push_pred(v);
          }
          for (int v : comp_index[static_cast<size_t>(i)]) {
            if (!g.node(v).alive) continue;
            if (!ride_delete(v)) wl.push_pred(v);
          }
        }
      }
    }
  }

  long rep_steps = 0;
};

void size_state(const EventGraph& g, BoundState& b) {
  b.lb.assign(g.nodes().size(), 0.0);
  b.ub.assign(g.nodes().size(), 0.0);
  b.ub_bar.assign(static_cast<size_t>(g.instance().n) + 1, kInf);
}

}  // namespace

std::string ReductionReport::to_json() const {
  std::ostringstream os;
  os << "{\"nodes_before\":" << nodes_before << ",\"arcs_before\":" << arcs_before
     << ",\"nodes_after\":" << nodes_after << ",\"arcs_after\":" << arcs_after
     << ",\"deleted_nodes_window\":" << deleted_nodes_window
     << ",\"deleted_nodes_ride\":" << deleted_nodes_ride
     << ",\"deleted_arcs_slack\":" << deleted_arcs_slack
     << ",\"deleted_arcs_incident\":" << deleted_arcs_incident
     << ",\"variable_reduction\":" << variable_reduction() << "}";
  return os.str();
}

BoundState compute_bounds(const EventGraph& g) {
  BoundState b;
  size_state(g, b);
  const DarpInstance& inst = g.instance();
  b.lb[static_cast<size_t>(g.depot_node())] = 0.0;
  b.ub[static_cast<size_t>(g.depot_node())] = inst.T;

  const std::vector<int> picks = sweep_order(g, true), drops = sweep_order(g, false);
  for (int v : picks) b.lb[static_cast<size_t>(v)] = lb_value(g, b, v);
  for (int v : drops) b.lb[static_cast<size_t>(v)] = lb_value(g, b, v);

  for (int v : drops) b.ub[static_cast<size_t>(v)] = ub_value(g, b, v, false);
  for (int v : picks) b.ub[static_cast<size_t>(v)] = ub_value(g, b, v, false);
  for (int i = 1; i <= inst.n; ++i) {
    double nb = -kInf;
    for (int v : g.pickup_nodes(i))
      if (g.node(v).alive) nb = std::max(nb, b.ub[static_cast<size_t>(v)]);
    b.ub_bar[static_cast<size_t>(i)] = nb;
    if (nb == -kInf) b.infeasible = true;
  }
  for (int v : drops) b.ub[static_cast<size_t>(v)] = std::min(b.ub[static_cast<size_t>(v)], ub_value(g, b, v, true));
  for (int v : picks) b.ub[static_cast<size_t>(v)] = std::min(b.ub[static_cast<size_t>(v)], ub_value(g, b, v, true));
  return b;
}

ReductionReport fixpoint_reduce(EventGraph& g, BoundState& b) {
  const DarpInstance& inst = g.instance();
  size_state(g, b);
  Reducer red(g, b);
  red.rep.nodes_before = g.alive_node_count();
  red.rep.arcs_before = g.alive_arc_count();
  const int arcs_at_start = g.alive_arc_count();

  b.lb[static_cast<size_t>(g.depot_node())] = 0.0;
  b.ub[static_cast<size_t>(g.depot_node())] = inst.T;
  const std::vector<int> picks = sweep_order(g, true), drops = sweep_order(g, false);
  for (int v : picks) b.lb[static_cast<size_t>(v)] = lb_value(g, b, v);
  for (int v : drops) b.lb[static_cast<size_t>(v)] = lb_value(g, b, v);

  // first latest-start pass (no ride terms); deleting immediately keeps the
  // dead events out of every later predecessor maximum
  auto ub_pass = [&](bool with_ride) {
    for (const std::vector<int>* side : {&drops, &picks}) {
      for (int v : *side) {
        if (!g.node(v).alive) continue;
        if (with_ride && red.ride_delete(v)) continue;
        const double nv = ub_value(g, b, v, with_ride);
        if (!with_ride) {
          b.ub[static_cast<size_t>(v)] = nv;
        } else if (nv < b.ub[static_cast<size_t>(v)] - kTol) {
          b.ub[static_cast<size_t>(v)] = nv;
          if (inst.is_pickup(g.node(v).loc)) red.wl.push_bar(inst.request_of(g.node(v).loc));
        }
        if (b.ub[static_cast<size_t>(v)] < b.lb[static_cast<size_t>(v)] - kTol) red.delete_node(v, false);
      }
    }
  };
  ub_pass(false);
  for (int i = 1; i <= inst.n; ++i) {
    double nb = -kInf;
    for (int v : g.pickup_nodes(i))
      if (g.node(v).alive) nb = std::max(nb, b.ub[static_cast<size_t>(v)]);
    b.ub_bar[static_cast<size_t>(i)] = nb;
    if (nb == -kInf) b.infeasible = true;
  }
  ub_pass(true);

  for (int a = 0; a < static_cast<int>(g.arcs().size()); ++a) red.check_arc(a);
  red.drain();

  red.rep.nodes_after = g.alive_node_count();
  red.rep.arcs_after = g.alive_arc_count();
  red.rep.deleted_arcs_incident =
      arcs_at_start - g.alive_arc_count() - red.rep.deleted_arcs_slack;
  return red.rep;
}

bool fixed_arc_update(EventGraph& g, BoundState& b, int arc_id) {
  const EventArc& arc = g.arc(arc_id);
  const DarpInstance& inst = g.instance();
  if (!arc.alive) return false;
  const int v = arc.from, w = arc.to;

  Reducer red(g, b);
  const EventNode& vn = g.node(v);

  // head: the fixed arc is now the only way in
  if (g.node(w).loc != DarpInstance::depot) {
    const double lbw = std::max(inst.window(g.node(w).loc).e,
                                b.lb[static_cast<size_t>(v)] + inst.service(vn.loc) + arc.t);
    if (lbw > b.lb[static_cast<size_t>(w)] + kTol) {
      b.lb[static_cast<size_t>(w)] = lbw;
      for (int a : g.out_arcs(w))
        if (g.arc(a).alive) red.wl.push_succ(g.arc(a).to);
    }
  }
  // tail: the successor maximum collapses to w
  if (vn.loc != DarpInstance::depot) {
    const double ubv = ub_value(g, b, v, true, arc_id);
    if (ubv < b.ub[static_cast<size_t>(v)] - kTol) {
      b.ub[static_cast<size_t>(v)] = ubv;
      if (inst.is_pickup(vn.loc)) red.wl.push_bar(inst.request_of(vn.loc));
      for (int a : g.in_arcs(v))
        if (g.arc(a).alive) red.wl.push_pred(g.arc(a).from);
    }
  }
  if (b.lb[static_cast<size_t>(v)] > b.ub[static_cast<size_t>(v)] + kTol ||
      b.lb[static_cast<size_t>(w)] > b.ub[static_cast<size_t>(w)] + kTol) {
    return false;
  }
  red.drain();
  return !b.infeasible;
}

int fixed_path_filter(EventGraph& g, const std::vector<std::vector<int>>& fixed_paths) {
  const DarpInstance& inst = g.instance();
  const int depot = g.depot_node();
  auto carried = [&](int v) {
    std::vector<int> s;
    const EventNode& nd = g.node(v);
    if (nd.loc != DarpInstance::depot) s.push_back(inst.request_of(nd.loc));
    for (int c : nd.comps)
      if (c) s.push_back(c);
    return s;
  };

  struct PathInfo {
    bool start_anchored = false, end_anchored = false;
    std::vector<char> reqs;
  };
  std::vector<PathInfo> info;
  for (const std::vector<int>& p : fixed_paths) {
    PathInfo pi;
    pi.reqs.assign(static_cast<size_t>(inst.n) + 1, 0);
    if (p.empty()) {
      info.push_back(pi);
      continue;
    }
    pi.start_anchored = p.front() == depot;
    pi.end_anchored = p.back() == depot;
    for (int v : p)
      for (int r : carried(v)) pi.reqs[static_cast<size_t>(r)] = 1;
    info.push_back(pi);
  }

  int deleted = 0;
  for (size_t a = 0; a < info.size(); ++a) {
    for (size_t c = a + 1; c < info.size(); ++c) {
      const bool same_anchor = (info[a].start_anchored && info[c].start_anchored) ||
                               (info[a].end_anchored && info[c].end_anchored);
      if (!same_anchor) continue;
      for (int v = 0; v < static_cast<int>(g.nodes().size()); ++v) {
        if (!g.node(v).alive) continue;
        bool has_a = false, has_c = false;
        for (int r : carried(v)) {
          has_a = has_a || (info[a].reqs[static_cast<size_t>(r)] && !info[c].reqs[static_cast<size_t>(r)]);
          has_c = has_c || (info[c].reqs[static_cast<size_t>(r)] && !info[a].reqs[static_cast<size_t>(r)]);
        }
        if (has_a && has_c) {
          g.delete_node(v);
          ++deleted;
        }
      }
    }
  }
  return deleted;
}

}  // namespace darp
