#include "darp/event_graph.hpp"

#include <algorithm>
#include <functional>
#include <ostream>
#include <sstream>

namespace darp {
namespace {

std::vector<int> canonical(std::vector<int> comps, int width) {
  std::sort(comps.begin(), comps.end(), std::greater<int>());
  comps.resize(static_cast<size_t>(width), 0);
  return comps;
}

}  // namespace

int EventGraph::add_node(int loc, std::vector<int> comps) {
  const int id = static_cast<int>(nodes_.size());
  index_[{loc, comps}] = id;
  nodes_.push_back(EventNode{loc, std::move(comps), true});
  in_.emplace_back();
  out_.emplace_back();
  ++alive_nodes_;
  return id;
}

void EventGraph::add_arc(int from, int to, int family) {
  const int id = static_cast<int>(arcs_.size());
  const int a = nodes_[static_cast<size_t>(from)].loc, b = nodes_[static_cast<size_t>(to)].loc;
  arcs_.push_back(EventArc{from, to, family, inst_->time[static_cast<size_t>(a)][static_cast<size_t>(b)],
                           inst_->cost[static_cast<size_t>(a)][static_cast<size_t>(b)], true});
  out_[static_cast<size_t>(from)].push_back(id);
  in_[static_cast<size_t>(to)].push_back(id);
  ++alive_arcs_;
}

int EventGraph::find_node(int loc, const std::vector<int>& comps) const {
  auto it = index_.find({loc, canonical(comps, inst_->Q - 1)});
  if (it == index_.end() || !nodes_[static_cast<size_t>(it->second)].alive) return -1;
  return it->second;
}

void EventGraph::delete_arc(int a) {
  EventArc& arc = arcs_[static_cast<size_t>(a)];
  if (!arc.alive) return;
  arc.alive = false;
  --alive_arcs_;
}

void EventGraph::delete_node(int v) {
  EventNode& nd = nodes_[static_cast<size_t>(v)];
  if (!nd.alive) return;
  nd.alive = false;
  --alive_nodes_;
  for (int a : in_[static_cast<size_t>(v)]) delete_arc(a);
  for (int a : out_[static_cast<size_t>(v)]) delete_arc(a);
}

std::vector<int> EventGraph::onboard_after(int v) const {
  const EventNode& nd = nodes_[static_cast<size_t>(v)];
  std::vector<int> s;
  for (int c : nd.comps)
    if (c) s.push_back(c);
  if (inst_->is_pickup(nd.loc)) s.push_back(inst_->request_of(nd.loc));
  std::sort(s.begin(), s.end(), std::greater<int>());
  return s;
}

std::vector<int> EventGraph::onboard_before(int v) const {
  const EventNode& nd = nodes_[static_cast<size_t>(v)];
  std::vector<int> s;
  for (int c : nd.comps)
    if (c) s.push_back(c);
  if (inst_->is_delivery(nd.loc)) s.push_back(inst_->request_of(nd.loc));
  std::sort(s.begin(), s.end(), std::greater<int>());
  return s;
}

std::string EventGraph::node_label(int v) const {
  const EventNode& nd = nodes_[static_cast<size_t>(v)];
  std::ostringstream os;
  os << "(";
  if (nd.loc == DarpInstance::depot) {
    os << "0";
  } else {
    os << inst_->request_of(nd.loc) << (inst_->is_pickup(nd.loc) ? "+" : "-");
  }
  for (int c : nd.comps) os << "," << c;
  os << ")";
  return os.str();
}

void EventGraph::dump(std::ostream& os) const {
  os.precision(12);
  for (size_t v = 0; v < nodes_.size(); ++v) {
    if (nodes_[v].alive) os << "NODE " << node_label(static_cast<int>(v)) << "\n";
  }
  for (const EventArc& a : arcs_) {
    if (a.alive) {
      os << "ARC " << a.family << " " << node_label(a.from) << " " << node_label(a.to) << " " << a.t
         << " " << a.c << "\n";
    }
  }
}

EventGraph build_event_graph(const DarpInstance& inst, const CompatFlags& f,
                             const EventGraphConfig& cfg) {
  EventGraph g;
  g.inst_ = &inst;
  const int n = inst.n, Q = inst.Q;
  g.by_pickup_.assign(static_cast<size_t>(n) + 1, {});
  g.by_delivery_.assign(static_cast<size_t>(n) + 1, {});
  g.by_loc_.assign(static_cast<size_t>(inst.num_locations()), {});

  g.add_node(DarpInstance::depot, std::vector<int>(static_cast<size_t>(Q - 1), 0));
  g.by_loc_[DarpInstance::depot].push_back(g.depot_node());

  // companion subsets per owning request, filtered per printed conditions:
  // pickup side f1[i][j] + f2[i][j] >= 1, delivery side f1[j][i] + f2[i][j]
  auto passes = [&](int i, int j, bool pickup_side) -> bool {
    const size_t ii = static_cast<size_t>(i), jj = static_cast<size_t>(j);
    if (pickup_side || cfg.symmetric_delivery_filter) return f.f1[ii][jj] + f.f2[ii][jj] >= 1;
    return f.f1[jj][ii] + f.f2[ii][jj] >= 1;
  };

  auto enumerate_side = [&](int i, bool pickup_side) {
    const int loc = pickup_side ? inst.pickup_of(i) : inst.delivery_of(i);
    std::vector<int> allowed;
    for (int j = n; j >= 1; --j) {
      if (j != i && passes(i, j, pickup_side)) allowed.push_back(j);  // descending
    }
    std::vector<int> comps;
    std::function<void(size_t, int)> rec = [&](size_t from, int load) {
      {
        const int id = g.add_node(loc, canonical(comps, Q - 1));
        (pickup_side ? g.by_pickup_ : g.by_delivery_)[static_cast<size_t>(i)].push_back(id);
        g.by_loc_[static_cast<size_t>(loc)].push_back(id);
      }
      if (static_cast<int>(comps.size()) == Q - 1) return;
      for (size_t k = from; k < allowed.size(); ++k) {
        const int j = allowed[k];
        if (load + inst.request(j).q > Q) continue;
        comps.push_back(j);
        rec(k + 1, load + inst.request(j).q);
        comps.pop_back();
      }
    };
    rec(0, inst.request(i).q);  // the owner's own load counts against Q
  };

  for (int i = 1; i <= n; ++i) enumerate_side(i, true);
  for (int i = 1; i <= n; ++i) enumerate_side(i, false);

  // arcs, constructively per family definition
  const std::vector<int> empty_comps(static_cast<size_t>(Q - 1), 0);
  for (int v = 0; v < static_cast<int>(g.nodes_.size()); ++v) {
    const EventNode& nd = g.node(v);
    if (nd.loc == DarpInstance::depot) {
      for (int i = 1; i <= n; ++i) {  // A6: depot -> (i+, 0..0)
        if (const int w = g.find_node(inst.pickup_of(i), empty_comps); w >= 0) g.add_arc(v, w, 6);
      }
      continue;
    }
    const int i = inst.request_of(nd.loc);
    if (inst.is_pickup(nd.loc)) {
      const std::vector<int> u = g.onboard_after(v);  // {i} union comps
      for (int j : u) {                               // A1: serve j's delivery next
        std::vector<int> rest;
        for (int r : u)
          if (r != j) rest.push_back(r);
        if (const int w = g.find_node(inst.delivery_of(j), rest); w >= 0) g.add_arc(v, w, 1);
      }
      if (static_cast<int>(u.size()) <= Q - 1) {  // A2 needs v_Q = 0
        for (int j = 1; j <= n; ++j) {
          if (j == i || std::find(u.begin(), u.end(), j) != u.end()) continue;
          if (const int w = g.find_node(inst.pickup_of(j), u); w >= 0) g.add_arc(v, w, 2);
        }
      }
    } else {
      std::vector<int> comps;
      for (int c : nd.comps)
        if (c) comps.push_back(c);
      if (comps.empty()) {  // A5: (i-,0..0) -> depot
        g.add_arc(v, g.depot_node(), 5);
      }
      for (int j = 1; j <= n; ++j) {  // A3: same companions, j != i
        if (j == i || std::find(comps.begin(), comps.end(), j) != comps.end()) continue;
        if (const int w = g.find_node(inst.pickup_of(j), comps); w >= 0) g.add_arc(v, w, 3);
      }
      for (int j : comps) {  // A4: deliver companion j next
        std::vector<int> rest;
        for (int r : comps)
          if (r != j) rest.push_back(r);
        if (const int w = g.find_node(inst.delivery_of(j), rest); w >= 0) g.add_arc(v, w, 4);
      }
    }
  }
  return g;
}

}  // namespace darp
