#include "darp/cuts.hpp"

#include <algorithm>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace darp {
namespace {

// earliest service start at v when entered via arc (w,v)
double pair_lb(const EventGraph& g, const BoundState& b, int arc_id) {
  const EventArc& a = g.arc(arc_id);
  return b.lb[static_cast<size_t>(a.from)] + g.instance().service(g.node(a.from).loc) + a.t;
}

// latest service start at v when leaving via arc (v,u)
double pair_ub(const EventGraph& g, const BoundState& b, int arc_id) {
  const EventArc& a = g.arc(arc_id);
  return b.ub[static_cast<size_t>(a.to)] - g.instance().service(g.node(a.from).loc) - a.t;
}

struct Generator {
  const EventGraph& g;
  const BoundState& b;
  const MilpModel& m;
  const CutOptions& opt;
  const DarpInstance& inst;
  std::vector<Cut> pool;
  int family_count = 0;

  Generator(const EventGraph& graph, const BoundState& bounds, const MilpModel& model,
            const CutOptions& options)
      : g(graph), b(bounds), m(model), opt(options), inst(graph.instance()) {}

  bool capped() const { return family_count >= opt.pool_cap; }
  void emit(const char* family, std::vector<Term> terms, Sense sense, double rhs) {
    if (capped() || terms.empty()) return;
    pool.push_back({family, std::move(terms), sense, rhs});
    ++family_count;
  }

  void in_arc_terms(int v, double coef, std::vector<Term>& t) const {
    for (int a : g.in_arcs(v))
      if (g.arc(a).alive) t.push_back({m.arc_var.at(a), coef});
  }

  // ---- activation-linked bound rows -------------------------------------

  void gen_bnd8() {
    family_count = 0;
    for (int v = 0; v < static_cast<int>(g.nodes().size()); ++v) {
      const EventNode& nd = g.node(v);
      if (!nd.alive || nd.loc == DarpInstance::depot || !inst.is_pickup(nd.loc)) continue;
      const Request& r = inst.request(inst.request_of(nd.loc));
      const double lb = b.lb[static_cast<size_t>(v)];
      const double floor_off = inst.window(inst.delivery_of(r.id)).l - r.L - r.s;
      std::vector<Term> t{{m.B_event.at(v), 1.0}};
      in_arc_terms(v, floor_off - lb, t);
      emit("bnd8", std::move(t), Sense::GE, floor_off);
      emit("bnd8", {{m.B_event.at(v), 1.0}}, Sense::LE, b.ub[static_cast<size_t>(v)]);
    }
  }

  void gen_bnd9() {
    family_count = 0;
    for (int v = 0; v < static_cast<int>(g.nodes().size()); ++v) {
      const EventNode& nd = g.node(v);
      if (!nd.alive || nd.loc == DarpInstance::depot || !inst.is_delivery(nd.loc)) continue;
      const Request& r = inst.request(inst.request_of(nd.loc));
      const double cap = inst.window(r.id).e + r.s + r.L;
      std::vector<Term> t{{m.B_event.at(v), 1.0}};
      in_arc_terms(v, cap - b.ub[static_cast<size_t>(v)], t);
      emit("bnd9", std::move(t), Sense::LE, cap);
      emit("bnd9", {{m.B_event.at(v), 1.0}}, Sense::GE, b.lb[static_cast<size_t>(v)]);
    }
  }

  void gen_bnd10() {
    family_count = 0;
    for (int loc = 1; loc < inst.num_locations(); ++loc) {
      std::vector<Term> lo{{m.Bbar_loc.at(loc), 1.0}}, hi{{m.Bbar_loc.at(loc), 1.0}};
      bool any = false;
      for (int v : g.nodes_of_location(loc)) {
        if (!g.node(v).alive) continue;
        any = true;
        in_arc_terms(v, -b.lb[static_cast<size_t>(v)], lo);
        in_arc_terms(v, -b.ub[static_cast<size_t>(v)], hi);
      }
      if (!any) continue;
      emit("bnd10", std::move(lo), Sense::GE, 0.0);
      emit("bnd10", std::move(hi), Sense::LE, 0.0);
    }
  }

  // ---- infeasible-path rows ---------------------------------------------

  // per node: sorted alive in-arcs by earliest entry time ascending and
  // alive out-arcs by latest exit time descending (ties by arc id)
  std::vector<std::vector<int>> preds_sorted, succs_sorted;
  void build_sorted_adjacency() {
    const int V = static_cast<int>(g.nodes().size());
    preds_sorted.assign(static_cast<size_t>(V), {});
    succs_sorted.assign(static_cast<size_t>(V), {});
    for (int v = 0; v < V; ++v) {
      if (!g.node(v).alive) continue;
      auto& ps = preds_sorted[static_cast<size_t>(v)];
      for (int a : g.in_arcs(v))
        if (g.arc(a).alive) ps.push_back(a);
      std::sort(ps.begin(), ps.end(), [&](int x, int y) {
        const double px = pair_lb(g, b, x), py = pair_lb(g, b, y);
        return px != py ? px < py : x < y;
      });
      auto& ss = succs_sorted[static_cast<size_t>(v)];
      for (int a : g.out_arcs(v))
        if (g.arc(a).alive) ss.push_back(a);
      std::sort(ss.begin(), ss.end(), [&](int x, int y) {
        const double px = pair_ub(g, b, x), py = pair_ub(g, b, y);
        return px != py ? px > py : x < y;
      });
    }
  }

  void gen_ip1() {
    family_count = 0;
    for (int v = 0; v < static_cast<int>(g.nodes().size()); ++v) {
      if (!g.node(v).alive || v == g.depot_node()) continue;
      const auto& P = preds_sorted[static_cast<size_t>(v)];
      const auto& U = succs_sorted[static_cast<size_t>(v)];
      if (P.empty() || U.empty()) continue;
      size_t prev_start = P.size();
      for (size_t ui = 0; ui < U.size() && !capped(); ++ui) {
        const double ub = pair_ub(g, b, U[ui]);
        // suffix of predecessors that arrive too late for this exit
        size_t k = prev_start;
        while (k > 0 && pair_lb(g, b, P[k - 1]) > ub) --k;
        if (k == P.size() || k == prev_start) continue;
        prev_start = k;
        // all exits at most as late as this one (includes earlier ties)
        size_t u_start = ui;
        while (u_start > 0 && pair_ub(g, b, U[u_start - 1]) <= ub) --u_start;
        std::vector<Term> t;
        for (size_t x = k; x < P.size(); ++x) t.push_back({m.arc_var.at(P[x]), 1.0});
        for (size_t x = u_start; x < U.size(); ++x) t.push_back({m.arc_var.at(U[x]), 1.0});
        emit("ip1", std::move(t), Sense::LE, 1.0);
      }
    }
  }

  void gen_ip2() {
    family_count = 0;
    std::map<std::pair<int, int>, int> arc_by_nodes;
    for (int a = 0; a < static_cast<int>(g.arcs().size()); ++a)
      if (g.arc(a).alive) arc_by_nodes[{g.arc(a).from, g.arc(a).to}] = a;

    for (int base = 0; base < static_cast<int>(g.arcs().size()) && !capped(); ++base) {
      const EventArc& mid = g.arc(base);
      if (!mid.alive || mid.from == g.depot_node() || mid.to == g.depot_node()) continue;
      const int u2 = mid.from, u3 = mid.to;
      const auto& P = preds_sorted[static_cast<size_t>(u2)];
      const auto& S = succs_sorted[static_cast<size_t>(u3)];
      if (P.empty() || S.empty()) continue;
      const double hop = inst.service(g.node(u2).loc) + mid.t;

      // the half-weight terms couple the path with inserting one request
      // between u2 and u3; independent of the chosen endpoints
      std::vector<Term> joint;
      for (int i = 1; i <= inst.n; ++i) {
        auto up = g.onboard_after(u2);
        if (std::find(up.begin(), up.end(), i) != up.end()) continue;
        auto down = g.onboard_before(u3);
        if (std::find(down.begin(), down.end(), i) != down.end()) continue;
        const int ip_ev = g.find_node(inst.pickup_of(i), up);
        const int im_ev = g.find_node(inst.delivery_of(i), down);
        if (ip_ev < 0 || im_ev < 0) continue;
        const auto a1 = arc_by_nodes.find({u2, ip_ev});
        const auto a2 = arc_by_nodes.find({im_ev, u3});
        if (a1 == arc_by_nodes.end() || a2 == arc_by_nodes.end()) continue;
        joint.push_back({m.arc_var.at(a1->second), 0.5});
        joint.push_back({m.arc_var.at(a2->second), 0.5});
      }

      size_t prev_start = P.size();
      for (size_t si = 0; si < S.size() && !capped(); ++si) {
        const double ub = pair_ub(g, b, S[si]);
        size_t k = prev_start;
        while (k > 0 && pair_lb(g, b, P[k - 1]) + hop > ub) --k;
        if (k == P.size() || k == prev_start) continue;
        prev_start = k;
        size_t s_start = si;
        while (s_start > 0 && pair_ub(g, b, S[s_start - 1]) <= ub) --s_start;
        std::vector<Term> t;
        for (size_t x = k; x < P.size(); ++x) t.push_back({m.arc_var.at(P[x]), 1.0});
        t.push_back({m.arc_var.at(base), 1.0});
        for (size_t x = s_start; x < S.size(); ++x) t.push_back({m.arc_var.at(S[x]), 1.0});
        t.insert(t.end(), joint.begin(), joint.end());
        emit("ip2", std::move(t), Sense::LE, 2.0);
      }
    }
  }

  // ---- vehicle sharing / incompatibility --------------------------------

  // in-arcs of events at `loc` carrying request c as companion
  std::map<std::pair<int, int>, std::vector<int>> carry_in;
  // in-arcs of events at `loc` carrying both of a request pair
  std::map<std::pair<int, std::pair<int, int>>, std::vector<int>> carry2_in;
  // arcs grouped by (tail location, head location)
  std::map<std::pair<int, int>, std::vector<int>> by_pair;
  void build_sharing_index() {
    for (int a = 0; a < static_cast<int>(g.arcs().size()); ++a) {
      const EventArc& arc = g.arc(a);
      if (!arc.alive) continue;
      const EventNode& head = g.node(arc.to);
      by_pair[{g.node(arc.from).loc, head.loc}].push_back(a);
      const auto& cs = head.comps;
      for (size_t x = 0; x < cs.size(); ++x) {
        if (!cs[x]) continue;
        carry_in[{head.loc, cs[x]}].push_back(a);
        for (size_t y = x + 1; y < cs.size(); ++y) {
          if (!cs[y]) continue;
          const int lo = std::min(cs[x], cs[y]), hi = std::max(cs[x], cs[y]);
          carry2_in[{head.loc, {lo, hi}}].push_back(a);
        }
      }
    }
  }
  void add_group(const std::vector<int>* arcs, std::vector<Term>& t) const {
    if (!arcs) return;
    for (int a : *arcs) t.push_back({m.arc_var.at(a), 1.0});
  }
  const std::vector<int>* lookup(const std::map<std::pair<int, int>, std::vector<int>>& mp,
                                 int a, int bkey) const {
    auto it = mp.find({a, bkey});
    return it == mp.end() ? nullptr : &it->second;
  }

  void gen_vs(int which) {
    family_count = 0;
    const char* name = which == 1 ? "vs1" : which == 2 ? "vs2" : "vs3";
    for (int i = 1; i <= inst.n && !capped(); ++i) {
      for (int j = i + 1; j <= inst.n && !capped(); ++j) {
        std::vector<Term> t;
        const int ip = inst.pickup_of(i), im = inst.delivery_of(i);
        const int jp = inst.pickup_of(j), jm = inst.delivery_of(j);
        if (which == 1) {
          add_group(lookup(carry_in, jp, i), t);
          add_group(lookup(carry_in, ip, j), t);
        } else if (which == 2) {
          add_group(lookup(carry_in, im, j), t);
          add_group(lookup(carry_in, jm, i), t);
        } else {
          add_group(lookup(by_pair, im, jm), t);
          add_group(lookup(by_pair, jm, im), t);
        }
        add_group(lookup(by_pair, im, jp), t);
        add_group(lookup(by_pair, jm, ip), t);
        if (t.size() > 1) emit(name, std::move(t), Sense::LE, 1.0);
      }
    }
  }

  bool compatible(const CompatFlags& cf, int i, int j) const {
    return cf.f1[static_cast<size_t>(i)][static_cast<size_t>(j)] +
               cf.f2[static_cast<size_t>(i)][static_cast<size_t>(j)] +
               cf.f1[static_cast<size_t>(j)][static_cast<size_t>(i)] +
               cf.f2[static_cast<size_t>(j)][static_cast<size_t>(i)] >
           0;
  }

  void gen_vs4(const CompatFlags& cf) {
    family_count = 0;
    for (int i = 1; i <= inst.n && !capped(); ++i) {
      for (int j = i + 1; j <= inst.n && !capped(); ++j) {
        if (!compatible(cf, i, j)) continue;
        const auto* d2p1 = lookup(by_pair, inst.delivery_of(j), inst.pickup_of(i));
        const auto* d2p2 = lookup(by_pair, inst.delivery_of(i), inst.pickup_of(j));
        for (int k = 1; k < inst.num_locations() && !capped(); ++k) {
          std::vector<Term> t;
          add_group(d2p1, t);
          add_group(d2p2, t);
          auto it = carry2_in.find({k, {i, j}});
          if (it != carry2_in.end()) add_group(&it->second, t);
          if (t.size() > 1) emit("vs4", std::move(t), Sense::LE, 1.0);
        }
      }
    }
  }

  void gen_ci1(const CompatFlags& cf) {
    family_count = 0;
    for (int i = 1; i <= inst.n && !capped(); ++i) {
      for (int j = i + 1; j <= inst.n && !capped(); ++j) {
        if (compatible(cf, i, j)) continue;
        // sequential service must fail in both orders as well
        const std::vector<int> ij = {inst.pickup_of(i), inst.delivery_of(i),
                                     inst.pickup_of(j), inst.delivery_of(j)};
        const std::vector<int> ji = {inst.pickup_of(j), inst.delivery_of(j),
                                     inst.pickup_of(i), inst.delivery_of(i)};
        if (path_feasible(inst, ij) || path_feasible(inst, ji)) continue;
        for (int k = 1; k <= inst.n && !capped(); ++k) {
          if (k == i || k == j) continue;
          if (!compatible(cf, k, i) || !compatible(cf, k, j)) continue;
          std::vector<Term> t;
          add_group(lookup(carry_in, inst.pickup_of(k), i), t);
          add_group(lookup(carry_in, inst.pickup_of(i), k), t);
          add_group(lookup(carry_in, inst.pickup_of(k), j), t);
          add_group(lookup(carry_in, inst.pickup_of(j), k), t);
          if (t.size() > 1) emit("ci1", std::move(t), Sense::LE, 1.0);
        }
      }
    }
  }
};

}  // namespace

CutOptions parse_cut_families(const std::string& csv) {
  CutOptions opt;
  std::istringstream is(csv);
  std::string item;
  while (std::getline(is, item, ',')) {
    if (item.empty()) continue;
    if (item == "bnd")
      opt.bnd = true;
    else if (item == "ip1")
      opt.ip1 = true;
    else if (item == "ip2")
      opt.ip2 = true;
    else if (item == "vs1")
      opt.vs1 = true;
    else if (item == "vs2")
      opt.vs2 = true;
    else if (item == "vs3")
      opt.vs3 = true;
    else if (item == "vs4")
      opt.vs4 = true;
    else if (item == "vs")
      opt.vs1 = opt.vs2 = opt.vs3 = opt.vs4 = true;
    else if (item == "ci1")
      opt.ci1 = true;
    else if (item == "all") {
      opt.bnd = opt.ip1 = opt.ip2 = true;
      opt.vs1 = opt.vs2 = opt.vs3 = opt.vs4 = true;
      opt.ci1 = true;
    } else {
      throw std::invalid_argument("unknown cut family: " + item);
    }
  }
  return opt;
}

std::vector<Cut> generate_cuts(const EventGraph& g, const BoundState& b,
                               const MilpModel& m, const CutOptions& opt) {
  Generator gen(g, b, m, opt);
  if (m.arc_var.empty()) return {};
  const bool has_B = !m.B_event.empty();
  const bool has_Bbar = !m.Bbar_loc.empty();
  if (opt.bnd && has_B) {
    gen.gen_bnd8();
    gen.gen_bnd9();
  }
  if (opt.bnd && has_Bbar && !has_B) gen.gen_bnd10();
  if (opt.ip1 || opt.ip2) gen.build_sorted_adjacency();
  if (opt.ip1) gen.gen_ip1();
  if (opt.ip2) gen.gen_ip2();
  if (opt.vs1 || opt.vs2 || opt.vs3 || opt.vs4 || opt.ci1) gen.build_sharing_index();
  if (opt.vs1) gen.gen_vs(1);
  if (opt.vs2) gen.gen_vs(2);
  if (opt.vs3) gen.gen_vs(3);
  if (opt.vs4 || opt.ci1) {
    const CompatFlags cf = compat_flags(g.instance());
    if (opt.vs4) gen.gen_vs4(cf);
    if (opt.ci1) gen.gen_ci1(cf);
  }
  return gen.pool;
}

int apply_cuts(MilpModel& m, const std::vector<Cut>& cuts) {
  std::map<std::string, int> counter;
  for (const Cut& c : cuts)
    m.add_row(c.family + "_" + std::to_string(counter[c.family]++), c.terms, c.sense, c.rhs);
  return static_cast<int>(cuts.size());
}

void dump_cuts_csv(const std::vector<Cut>& cuts, const MilpModel& m, std::ostream& os) {
  os << "family,nterms,sense,rhs,terms\n";
  for (const Cut& c : cuts) {
    os << c.family << "," << c.terms.size() << ","
       << (c.sense == Sense::LE ? "<=" : c.sense == Sense::GE ? ">=" : "=") << "," << c.rhs
       << ",";
    for (size_t k = 0; k < c.terms.size(); ++k) {
      if (k) os << " ";
      os << m.var(c.terms[k].var).name << ":" << c.terms[k].coef;
    }
    os << "\n";
  }
}

}  // namespace darp
