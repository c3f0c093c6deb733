#include "darp/models.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>

namespace darp {
namespace {

constexpr double kTol = 1e-9;

std::string arc_name(const EventGraph& g, int a) {
  return "x__" + std::to_string(g.arc(a).from) + "__" + std::to_string(g.arc(a).to);
}

std::string pair_name(int i, int j) {
  return "xb__" + std::to_string(i) + "__" + std::to_string(j);
}

// alive arcs grouped by (tail location, head location); depot is 0
std::map<std::pair<int, int>, std::vector<int>> arcs_by_locpair(const EventGraph& g) {
  std::map<std::pair<int, int>, std::vector<int>> m;
  for (int a = 0; a < static_cast<int>(g.arcs().size()); ++a) {
    const EventArc& arc = g.arc(a);
    if (!arc.alive) continue;
    m[{g.node(arc.from).loc, g.node(arc.to).loc}].push_back(a);
  }
  return m;
}

// shared rows of the event-arc models: flow conservation, pickup cover,
// fleet size; arc variables must already exist in m.arc_var
void add_event_flow_rows(MilpModel& m, const EventGraph& g) {
  const DarpInstance& inst = g.instance();
  for (int v = 0; v < static_cast<int>(g.nodes().size()); ++v) {
    if (!g.node(v).alive) continue;
    std::vector<Term> t;
    for (int a : g.in_arcs(v))
      if (g.arc(a).alive) t.push_back({m.arc_var.at(a), 1.0});
    for (int a : g.out_arcs(v))
      if (g.arc(a).alive) t.push_back({m.arc_var.at(a), -1.0});
    m.add_row(std::move(t), Sense::EQ, 0.0);
  }
  for (int i = 1; i <= inst.n; ++i) {
    std::vector<Term> t;
    for (int v : g.pickup_nodes(i)) {
      if (!g.node(v).alive) continue;
      for (int a : g.in_arcs(v))
        if (g.arc(a).alive) t.push_back({m.arc_var.at(a), 1.0});
    }
    m.add_row(std::move(t), Sense::EQ, 1.0);
  }
  std::vector<Term> fleet;
  for (int a : g.out_arcs(g.depot_node()))
    if (g.arc(a).alive) fleet.push_back({m.arc_var.at(a), 1.0});
  m.add_row(std::move(fleet), Sense::LE, inst.K);
}

}  // namespace

double big_m(const DarpInstance& inst, int i, int j) {
  const double m = inst.window(i).l + inst.service(i) +
                   inst.time[static_cast<size_t>(i)][static_cast<size_t>(j)] - inst.window(j).e;
  return std::max(0.0, m);
}

double big_m_event(const EventGraph& g, int arc_id) {
  const DarpInstance& inst = g.instance();
  const EventArc& a = g.arc(arc_id);
  const int vi = g.node(a.from).loc, wj = g.node(a.to).loc;
  const double m = inst.window(vi).l + inst.service(vi) + a.t - inst.window(wj).e;
  return std::max(0.0, m);
}

// ---- two-index location model -------------------------------------------

MilpModel build_lb(const DarpInstance& inst) {
  MilpModel m;
  m.formulation = "lb";
  const int n = inst.n, last = 2 * n + 1;  // model location 2n+1 = end depot
  const auto loc_of = [&](int ml) { return ml == last ? 0 : ml; };

  // arcs: depot -> pickups, all customer pairs, deliveries -> end depot
  std::vector<std::pair<int, int>> pairs;
  for (int j = 1; j <= n; ++j) pairs.emplace_back(0, j);
  for (int i = 1; i <= 2 * n; ++i)
    for (int j = 1; j <= 2 * n; ++j)
      if (i != j) pairs.emplace_back(i, j);
  for (int i = n + 1; i <= 2 * n; ++i) pairs.emplace_back(i, last);

  for (const auto& [i, j] : pairs) {
    const double c = inst.cost[static_cast<size_t>(loc_of(i))][static_cast<size_t>(loc_of(j))];
    m.locpair_var[{i, j}] = m.add_var(pair_name(i, j), 0, 1, c, true);
  }
  for (int ml = 0; ml <= last; ++ml) {
    const Window w = inst.window(loc_of(ml));
    m.Bbar_loc[ml] = m.add_var("Bbar__" + std::to_string(ml), w.e, w.l, 0, false);
  }
  for (int ml = 0; ml <= last; ++ml) {
    const int q = ml == 0 || ml == last ? 0 : inst.load_change(ml);
    const double lo = std::max(0, q), hi = std::min(inst.Q, inst.Q + q);
    const bool depot = ml == 0 || ml == last;
    m.Qload_loc[ml] =
        m.add_var("Q__" + std::to_string(ml), depot ? 0 : lo, depot ? 0 : hi, 0, false);
  }

  for (int i = 1; i <= 2 * n; ++i) {
    std::vector<Term> t;
    for (const auto& [p, col] : m.locpair_var)
      if (p.first == i) t.push_back({col, 1.0});
    m.add_row(std::move(t), Sense::EQ, 1.0);
  }
  for (int j = 1; j <= 2 * n; ++j) {
    std::vector<Term> t;
    for (const auto& [p, col] : m.locpair_var)
      if (p.second == j) t.push_back({col, 1.0});
    m.add_row(std::move(t), Sense::EQ, 1.0);
  }
  {
    std::vector<Term> t;
    for (int j = 1; j <= n; ++j) t.push_back({m.locpair_var.at({0, j}), 1.0});
    m.add_row(std::move(t), Sense::LE, inst.K);
  }
  for (const auto& [i, j] : pairs) {
    const double M = big_m(inst, loc_of(i), loc_of(j));
    const double st = inst.service(loc_of(i)) +
                      inst.time[static_cast<size_t>(loc_of(i))][static_cast<size_t>(loc_of(j))];
    m.add_row({{m.Bbar_loc.at(i), 1.0},
               {m.Bbar_loc.at(j), -1.0},
               {m.locpair_var.at({i, j}), M}},
              Sense::LE, M - st);
  }
  for (const auto& [i, j] : pairs) {
    const int q = j == last ? 0 : inst.load_change(loc_of(j));
    m.add_row({{m.Qload_loc.at(i), 1.0},
               {m.Qload_loc.at(j), -1.0},
               {m.locpair_var.at({i, j}), static_cast<double>(inst.Q)}},
              Sense::LE, inst.Q - q);
  }
  for (int i = 1; i <= n; ++i) {
    const Request& r = inst.request(i);
    m.add_row({{m.Bbar_loc.at(inst.delivery_of(i)), 1.0}, {m.Bbar_loc.at(i), -1.0}},
              Sense::LE, r.L + r.s);
  }
  return m;
}

int add_sec_row(MilpModel& m, const std::vector<int>& S) {
  if (m.formulation != "lb") throw std::logic_error("pairing-precedence rows need the lb model");
  std::vector<Term> t;
  for (int i : S)
    for (int j : S) {
      auto it = m.locpair_var.find({i, j});
      if (it != m.locpair_var.end()) t.push_back({it->second, 1.0});
    }
  return m.add_row(std::move(t), Sense::LE, static_cast<double>(S.size()) - 2.0);
}

// ---- event model with per-event times -----------------------------------

MilpModel build_eb(const EventGraph& g) {
  const DarpInstance& inst = g.instance();
  MilpModel m;
  m.formulation = "eb";

  for (int a = 0; a < static_cast<int>(g.arcs().size()); ++a)
    if (g.arc(a).alive) m.arc_var[a] = m.add_var(arc_name(g, a), 0, 1, g.arc(a).c, true);

  for (int v = 0; v < static_cast<int>(g.nodes().size()); ++v) {
    if (!g.node(v).alive) continue;
    const int loc = g.node(v).loc;
    double lo, hi;
    if (loc == DarpInstance::depot) {
      lo = 0;
      hi = inst.T;
    } else if (inst.is_pickup(loc)) {
      lo = inst.window(loc).e;
      hi = inst.window(loc).l;
    } else {
      const Request& r = inst.request(inst.request_of(loc));
      lo = inst.window(loc).e;
      hi = inst.window(inst.pickup_of(r.id)).e + r.L + r.s + r.tight().length();
    }
    m.B_event[v] = m.add_var("B__" + std::to_string(v), lo, hi, 0, false);
  }

  add_event_flow_rows(m, g);

  for (int a = 0; a < static_cast<int>(g.arcs().size()); ++a) {
    const EventArc& arc = g.arc(a);
    if (!arc.alive || arc.from != g.depot_node()) continue;
    m.add_row({{m.arc_var.at(a), arc.t}, {m.B_event.at(arc.to), -1.0}}, Sense::LE, 0.0);
  }
  for (int a = 0; a < static_cast<int>(g.arcs().size()); ++a) {
    const EventArc& arc = g.arc(a);
    if (!arc.alive || arc.from == g.depot_node()) continue;
    const double M = big_m_event(g, a);
    m.add_row({{m.B_event.at(arc.from), 1.0},
               {m.B_event.at(arc.to), -1.0},
               {m.arc_var.at(a), M}},
              Sense::LE, M - inst.service(g.node(arc.from).loc) - arc.t);
  }
  // activation-shifted window rows: unused pickups float up by the tight
  // window length, unused deliveries are pinned near the earliest ride end
  for (int v = 0; v < static_cast<int>(g.nodes().size()); ++v) {
    if (!g.node(v).alive || g.node(v).loc == DarpInstance::depot) continue;
    const int loc = g.node(v).loc;
    if (!inst.is_pickup(loc)) continue;
    const double tw = inst.request(inst.request_of(loc)).tight().length();
    std::vector<Term> t{{m.B_event.at(v), 1.0}};
    for (int a : g.in_arcs(v))
      if (g.arc(a).alive) t.push_back({m.arc_var.at(a), tw});
    m.add_row(std::move(t), Sense::GE, inst.window(loc).e + tw);
  }
  for (int v = 0; v < static_cast<int>(g.nodes().size()); ++v) {
    if (!g.node(v).alive || g.node(v).loc == DarpInstance::depot) continue;
    const int loc = g.node(v).loc;
    if (inst.is_pickup(loc)) continue;
    const Request& r = inst.request(inst.request_of(loc));
    const double tw = r.tight().length();
    std::vector<Term> t{{m.B_event.at(v), 1.0}};
    for (int a : g.in_arcs(v))
      if (g.arc(a).alive) t.push_back({m.arc_var.at(a), -tw});
    m.add_row(std::move(t), Sense::LE, inst.window(inst.pickup_of(r.id)).e + r.L + r.s);
  }
  for (int i = 1; i <= inst.n; ++i) {
    const Request& r = inst.request(i);
    for (int v : g.pickup_nodes(i)) {
      if (!g.node(v).alive) continue;
      for (int w : g.delivery_nodes(i)) {
        if (!g.node(w).alive) continue;
        m.add_row({{m.B_event.at(w), 1.0}, {m.B_event.at(v), -1.0}}, Sense::LE, r.L + r.s);
      }
    }
  }
  return m;
}

// ---- event arcs with per-location times ---------------------------------

namespace {

// (E2/EL2) time rows shared by laeb and alaeb; `indicator` supplies the
// activation terms for one location pair
template <typename IndicatorFn>
void add_locpair_time_rows(MilpModel& m, const EventGraph& g,
                           const std::map<std::pair<int, int>, std::vector<int>>& by_pair,
                           IndicatorFn indicator) {
  const DarpInstance& inst = g.instance();
  for (const auto& [pair, arcs] : by_pair) {
    const auto [i, j] = pair;
    if (i == DarpInstance::depot || j == DarpInstance::depot) continue;
    const double M = big_m(inst, i, j);
    const double st =
        inst.service(i) + inst.time[static_cast<size_t>(i)][static_cast<size_t>(j)];
    std::vector<Term> t{{m.Bbar_loc.at(i), 1.0}, {m.Bbar_loc.at(j), -1.0}};
    indicator(pair, arcs, M, t);
    m.add_row(std::move(t), Sense::LE, M - st);
  }
  for (const auto& [pair, arcs] : by_pair) {
    const auto [i, j] = pair;
    if (i != DarpInstance::depot || j == DarpInstance::depot) continue;
    const double ride = inst.time[0][static_cast<size_t>(j)];
    std::vector<Term> t{{m.Bbar_loc.at(j), -1.0}};
    indicator(pair, arcs, ride, t);
    m.add_row(std::move(t), Sense::LE, 0.0);
  }
  for (const auto& [pair, arcs] : by_pair) {
    const auto [i, j] = pair;
    if (i == DarpInstance::depot || j != DarpInstance::depot) continue;
    const double M = big_m(inst, i, 0);
    const double st = inst.service(i) + inst.time[static_cast<size_t>(i)][0];
    std::vector<Term> t{{m.Bbar_loc.at(i), 1.0}, {m.Bbar_loc.at(0), -1.0}};
    indicator(pair, arcs, M, t);
    m.add_row(std::move(t), Sense::LE, M - st);
  }
}

void add_location_vars_and_ride_rows(MilpModel& m, const EventGraph& g, bool rows_now) {
  const DarpInstance& inst = g.instance();
  if (rows_now) {
    for (int i = 1; i <= inst.n; ++i) {
      const Request& r = inst.request(i);
      m.add_row({{m.Bbar_loc.at(inst.delivery_of(i)), 1.0}, {m.Bbar_loc.at(i), -1.0}},
                Sense::LE, r.L + r.s);
    }
  } else {
    for (int loc = 0; loc < inst.num_locations(); ++loc) {
      const Window w = inst.window(loc);
      m.Bbar_loc[loc] = m.add_var("Bbar__" + std::to_string(loc), w.e, w.l, 0, false);
    }
  }
}

}  // namespace

MilpModel build_laeb(const EventGraph& g) {
  MilpModel m;
  m.formulation = "laeb";
  for (int a = 0; a < static_cast<int>(g.arcs().size()); ++a)
    if (g.arc(a).alive) m.arc_var[a] = m.add_var(arc_name(g, a), 0, 1, g.arc(a).c, true);
  add_location_vars_and_ride_rows(m, g, false);

  add_event_flow_rows(m, g);
  const auto by_pair = arcs_by_locpair(g);
  add_locpair_time_rows(m, g, by_pair,
                        [&](const std::pair<int, int>&, const std::vector<int>& arcs,
                            double coef, std::vector<Term>& t) {
                          for (int a : arcs) t.push_back({m.arc_var.at(a), coef});
                        });
  add_location_vars_and_ride_rows(m, g, true);
  return m;
}

MilpModel build_alaeb(const EventGraph& g) {
  MilpModel m;
  m.formulation = "alaeb";
  const DarpInstance& inst = g.instance();
  const auto by_pair = arcs_by_locpair(g);

  for (const auto& [pair, arcs] : by_pair) {
    const double c =
        inst.cost[static_cast<size_t>(pair.first)][static_cast<size_t>(pair.second)];
    m.locpair_var[pair] = m.add_var(pair_name(pair.first, pair.second), 0, 1, c, true);
  }
  for (int a = 0; a < static_cast<int>(g.arcs().size()); ++a)
    if (g.arc(a).alive) m.arc_var[a] = m.add_var(arc_name(g, a), 0, 1, 0.0, false);
  add_location_vars_and_ride_rows(m, g, false);

  for (const auto& [pair, arcs] : by_pair) {
    std::vector<Term> t{{m.locpair_var.at(pair), -1.0}};
    for (int a : arcs) t.push_back({m.arc_var.at(a), 1.0});
    m.add_row(std::move(t), Sense::EQ, 0.0);
  }
  add_event_flow_rows(m, g);
  add_locpair_time_rows(m, g, by_pair,
                        [&](const std::pair<int, int>& pair, const std::vector<int>&,
                            double coef, std::vector<Term>& t) {
                          t.push_back({m.locpair_var.at(pair), coef});
                        });
  add_location_vars_and_ride_rows(m, g, true);
  return m;
}

MilpModel relax(const MilpModel& m) {
  MilpModel r = m;
  for (size_t i = 0; i < r.vars().size(); ++i) r.var(static_cast<int>(i)).integer = false;
  return r;
}

// ---- flow-network integrality conditions --------------------------------

NetworkCheck check_network_conditions(const DarpInstance& inst) {
  NetworkCheck c;
  for (int i = 1; i <= inst.n; ++i) {
    const Request& r = inst.request(i);
    if (inst.window(inst.delivery_of(i)).l - inst.window(i).e - r.s > r.L + kTol) {
      c.ride_slack_ok = false;
      c.violations.push_back("ride slack exceeded for request " + std::to_string(i));
    }
  }
  for (int i = 1; i <= 2 * inst.n; ++i) {
    for (int j = 1; j <= 2 * inst.n; ++j) {
      if (i == j) continue;
      const Window wi = inst.window(i), wj = inst.window(j);
      const double st = inst.service(i) + inst.time[static_cast<size_t>(i)][static_cast<size_t>(j)];
      const bool disjoint = wi.l + st <= wj.e + kTol;   // j always reachable after i
      const bool unreachable = wi.e + st > wj.l + kTol;  // j never reachable after i
      if (!disjoint && !unreachable) {
        c.no_partial_overlap = false;
        c.violations.push_back("partially overlapping windows for locations " +
                               std::to_string(i) + " -> " + std::to_string(j));
      }
    }
  }
  for (int j = 1; j <= 2 * inst.n; ++j) {
    if (inst.window(j).e + kTol < inst.time[0][static_cast<size_t>(j)]) {
      c.depot_adequate = false;
      c.violations.push_back("location " + std::to_string(j) + " opens before first arrival");
    }
    if (inst.window(j).l + inst.service(j) + inst.time[static_cast<size_t>(j)][0] >
        inst.T + kTol) {
      c.depot_adequate = false;
      c.violations.push_back("location " + std::to_string(j) + " closes after last return");
    }
  }
  return c;
}

int apply_network_arc_deletion(EventGraph& g) {
  const DarpInstance& inst = g.instance();
  const NetworkCheck c = check_network_conditions(inst);
  if (!c.all())
    throw std::logic_error("network conditions violated: " + c.violations.front());
  int deleted = 0;
  for (int a = 0; a < static_cast<int>(g.arcs().size()); ++a) {
    const EventArc& arc = g.arc(a);
    if (!arc.alive) continue;
    const int vi = g.node(arc.from).loc, wj = g.node(arc.to).loc;
    if (vi == DarpInstance::depot || wj == DarpInstance::depot) continue;
    if (inst.window(wj).l + kTol < inst.window(vi).e + inst.service(vi) + arc.t) {
      g.delete_arc(a);
      ++deleted;
    }
  }
  return deleted;
}

}  // namespace darp
