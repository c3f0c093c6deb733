#include "darp/route.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace darp {

namespace {
constexpr double kTol = 1e-9;
}

double Route::cost(const DarpInstance& inst) const {
  if (locs.empty()) return 0.0;
  double c = inst.cost[DarpInstance::depot][static_cast<size_t>(locs.front())];
  for (size_t k = 0; k + 1 < locs.size(); ++k) {
    c += inst.cost[static_cast<size_t>(locs[k])][static_cast<size_t>(locs[k + 1])];
  }
  c += inst.cost[static_cast<size_t>(locs.back())][DarpInstance::depot];
  return c;
}

std::optional<std::vector<double>> schedule_route(const DarpInstance& inst,
                                                  const std::vector<int>& locs) {
  const size_t m = locs.size();
  if (m == 0) return std::vector<double>{};

  std::vector<double> e(m), l(m);
  for (size_t k = 0; k < m; ++k) {
    const Window w = inst.window(locs[k]);
    e[k] = w.e;
    l[k] = w.l;
  }

  // ride-time rows: for each request with both endpoints present,
  // B_pick >= B_drop - s_i - L_i
  struct RideRow {
    size_t pick, drop;
    double slack;  // s_i + L_i
  };
  std::vector<RideRow> rides;
  {
    std::map<int, size_t> pick_at;
    for (size_t k = 0; k < m; ++k) {
      if (inst.is_pickup(locs[k])) pick_at[inst.request_of(locs[k])] = k;
    }
    for (size_t k = 0; k < m; ++k) {
      if (!inst.is_delivery(locs[k])) continue;
      const int i = inst.request_of(locs[k]);
      if (auto it = pick_at.find(i); it != pick_at.end() && it->second < k) {
        rides.push_back({it->second, k, inst.request(i).s + inst.request(i).L});
      }
    }
  }

  // least solution of the difference system by Bellman-Ford style passes;
  // monotone increase from the window lower bounds, so exceeding any upper
  // bound is conclusive and a pass count past |B| proves a positive cycle
  std::vector<double> B = e;
  for (size_t pass = 0; pass <= m + 1; ++pass) {
    bool changed = false;
    for (size_t k = 0; k + 1 < m; ++k) {
      const double lb = B[k] + inst.service(locs[k]) +
                        inst.time[static_cast<size_t>(locs[k])][static_cast<size_t>(locs[k + 1])];
      if (lb > B[k + 1] + kTol) {
        B[k + 1] = lb;
        changed = true;
      }
    }
    for (const RideRow& r : rides) {
      const double lb = B[r.drop] - r.slack;
      if (lb > B[r.pick] + kTol) {
        B[r.pick] = lb;
        changed = true;
      }
    }
    for (size_t k = 0; k < m; ++k) {
      if (B[k] > l[k] + kTol) return std::nullopt;
    }
    if (!changed) return B;
  }
  return std::nullopt;  // positive cycle: bounds keep rising
}

ValidationReport validate_solution(const DarpInstance& inst, const std::vector<Route>& routes) {
  ValidationReport rep;
  auto flag = [&](std::string kind, std::string where, double mag = 0.0) {
    rep.violations.push_back({std::move(kind), std::move(where), mag});
  };

  if (static_cast<int>(routes.size()) > inst.K) {
    flag("fleet", "uses " + std::to_string(routes.size()) + " vehicles, fleet has " + std::to_string(inst.K),
         static_cast<double>(routes.size() - static_cast<size_t>(inst.K)));
  }

  std::vector<int> seen_pick(static_cast<size_t>(inst.n) + 1, 0), seen_drop(static_cast<size_t>(inst.n) + 1, 0);
  for (size_t ri = 0; ri < routes.size(); ++ri) {
    const Route& r = routes[ri];
    const std::string tag = "route " + std::to_string(ri);
    std::map<int, size_t> pick_idx;
    int load = 0;
    for (size_t k = 0; k < r.locs.size(); ++k) {
      const int loc = r.locs[k];
      const int i = inst.request_of(loc);
      if (loc == DarpInstance::depot || loc >= inst.num_locations()) {
        flag("cover", tag + ": invalid location " + std::to_string(loc));
        continue;
      }
      if (inst.is_pickup(loc)) {
        ++seen_pick[static_cast<size_t>(i)];
        pick_idx[i] = k;
      } else {
        ++seen_drop[static_cast<size_t>(i)];
        if (!pick_idx.count(i)) {
          if (seen_pick[static_cast<size_t>(i)] > 0) {
            flag("pairing", tag + ": request " + std::to_string(i) + " delivered on a different route");
          } else {
            flag("precedence", tag + ": delivery of request " + std::to_string(i) + " before its pickup");
          }
        }
      }
      load += inst.load_change(loc);
      if (load > inst.Q) flag("capacity", tag + " at " + std::to_string(loc), load - inst.Q);
    }
    if (load != 0) flag("pairing", tag + ": nonzero final load", load);

    if (r.B.size() != r.locs.size() + 2) {
      flag("schedule", tag + ": schedule length mismatch");
    } else {
      std::vector<int> chain;
      chain.reserve(r.locs.size() + 2);
      chain.push_back(DarpInstance::depot);
      chain.insert(chain.end(), r.locs.begin(), r.locs.end());
      chain.push_back(DarpInstance::depot);
      for (size_t k = 0; k < chain.size(); ++k) {
        const Window w = inst.window(chain[k]);
        if (r.B[k] < w.e - kTol) flag("window", tag + " at " + std::to_string(chain[k]), w.e - r.B[k]);
        if (r.B[k] > w.l + kTol) flag("window", tag + " at " + std::to_string(chain[k]), r.B[k] - w.l);
        if (k + 1 < chain.size()) {
          const double lb = r.B[k] + inst.service(chain[k]) +
                            inst.time[static_cast<size_t>(chain[k])][static_cast<size_t>(chain[k + 1])];
          if (r.B[k + 1] < lb - kTol) {
            flag("schedule", tag + " arc " + std::to_string(chain[k]) + "->" + std::to_string(chain[k + 1]),
                 lb - r.B[k + 1]);
          }
        }
      }
      for (const auto& [i, pk] : pick_idx) {
        for (size_t k = pk + 1; k < r.locs.size(); ++k) {
          if (r.locs[k] == inst.delivery_of(i)) {
            const double ride = r.B[k + 1] - r.B[pk + 1] - inst.request(i).s;
            if (ride > inst.request(i).L + kTol) {
              flag("ride_time", tag + ": request " + std::to_string(i), ride - inst.request(i).L);
            }
          }
        }
      }
    }
    rep.recomputed_cost += r.cost(inst);
  }

  for (int i = 1; i <= inst.n; ++i) {
    if (seen_pick[static_cast<size_t>(i)] != 1 || seen_drop[static_cast<size_t>(i)] != 1) {
      flag("cover", "request " + std::to_string(i) + " picked " + std::to_string(seen_pick[static_cast<size_t>(i)]) +
                        "x, delivered " + std::to_string(seen_drop[static_cast<size_t>(i)]) + "x");
    }
  }
  return rep;
}

}  // namespace darp
