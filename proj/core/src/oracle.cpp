#include "darp/oracle.hpp"

#include <algorithm>
#include <functional>
#include <limits>

namespace darp {
namespace {

constexpr double kEps = 1e-12;

// Depth-first enumeration of capacity/precedence-valid tours over `reqs`,
// pruned by exact prefix schedulability (adding a stop only adds constraints,
// so an infeasible prefix cannot recover). Visits sequences in lexicographic
// location order; the visitor gets the bare location sequence.
void enumerate_tours(const DarpInstance& inst, const std::vector<int>& reqs,
                     const std::function<void(const std::vector<int>&)>& visit) {
  std::vector<int> seq, chain{DarpInstance::depot};
  std::vector<char> picked(static_cast<size_t>(inst.n) + 1, 0), onboard(static_cast<size_t>(inst.n) + 1, 0);
  int load = 0;
  size_t delivered = 0;

  std::function<void()> dfs = [&]() {
    if (delivered == reqs.size()) {
      visit(seq);
      return;
    }
    std::vector<int> cands;
    for (int i : reqs) {
      if (!picked[static_cast<size_t>(i)] && load + inst.request(i).q <= inst.Q) cands.push_back(inst.pickup_of(i));
      if (onboard[static_cast<size_t>(i)]) cands.push_back(inst.delivery_of(i));
    }
    std::sort(cands.begin(), cands.end());
    for (int loc : cands) {
      chain.push_back(loc);
      if (schedule_route(inst, chain).has_value()) {
        const int i = inst.request_of(loc);
        seq.push_back(loc);
        if (inst.is_pickup(loc)) {
          picked[static_cast<size_t>(i)] = onboard[static_cast<size_t>(i)] = 1;
          load += inst.request(i).q;
        } else {
          onboard[static_cast<size_t>(i)] = 0;
          load -= inst.request(i).q;
          ++delivered;
        }
        dfs();
        if (inst.is_pickup(loc)) {
          picked[static_cast<size_t>(i)] = onboard[static_cast<size_t>(i)] = 0;
          load -= inst.request(i).q;
        } else {
          onboard[static_cast<size_t>(i)] = 1;
          load += inst.request(i).q;
          --delivered;
        }
        seq.pop_back();
      }
      chain.pop_back();
    }
  };
  dfs();
}

std::optional<Route> tour_from_seq(const DarpInstance& inst, const std::vector<int>& seq) {
  std::vector<int> chain{DarpInstance::depot};
  chain.insert(chain.end(), seq.begin(), seq.end());
  chain.push_back(DarpInstance::depot);
  auto B = schedule_route(inst, chain);
  if (!B) return std::nullopt;
  return Route{seq, *B};
}

}  // namespace

std::optional<Route> best_tour(const DarpInstance& inst, const std::vector<int>& request_ids) {
  std::optional<Route> best;
  double best_cost = std::numeric_limits<double>::infinity();
  enumerate_tours(inst, request_ids, [&](const std::vector<int>& seq) {
    auto r = tour_from_seq(inst, seq);
    if (!r) return;
    const double c = r->cost(inst);
    if (c < best_cost - kEps) {  // strict: lexicographically first optimum wins
      best_cost = c;
      best = std::move(r);
    }
  });
  return best;
}

OracleResult brute_force(const DarpInstance& inst, int cap) {
  if (inst.n > cap) {
    throw OracleLimitError("brute_force: n=" + std::to_string(inst.n) + " exceeds cap " + std::to_string(cap));
  }
  OracleResult res;
  if (inst.n == 0) {
    res.feasible = true;
    return res;
  }

  const int n = inst.n;
  const unsigned full = (1u << n) - 1u;
  const double inf = std::numeric_limits<double>::infinity();

  std::vector<double> tour_cost(full + 1, inf);
  std::vector<std::optional<Route>> tour(full + 1);
  for (unsigned mask = 1; mask <= full; ++mask) {
    std::vector<int> reqs;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) reqs.push_back(i + 1);
    tour[mask] = best_tour(inst, reqs);
    if (tour[mask]) tour_cost[mask] = tour[mask]->cost(inst);
  }

  // partition DP: cheapest cover of `mask` by at most k single-vehicle tours
  const int K = std::min(inst.K, n);
  std::vector<std::vector<double>> dp(static_cast<size_t>(K) + 1, std::vector<double>(full + 1, inf));
  std::vector<std::vector<unsigned>> choice(static_cast<size_t>(K) + 1, std::vector<unsigned>(full + 1, 0));
  for (int k = 0; k <= K; ++k) dp[static_cast<size_t>(k)][0] = 0.0;
  for (int k = 1; k <= K; ++k) {
    for (unsigned mask = 1; mask <= full; ++mask) {
      dp[static_cast<size_t>(k)][mask] = dp[static_cast<size_t>(k) - 1][mask];
      choice[static_cast<size_t>(k)][mask] = 0;
      const unsigned low = mask & (~mask + 1u);  // lowest request stays in the first block
      for (unsigned sub = mask; sub; sub = (sub - 1) & mask) {
        if (!(sub & low)) continue;
        if (tour_cost[sub] == inf) continue;
        const double c = tour_cost[sub] + dp[static_cast<size_t>(k) - 1][mask & ~sub];
        if (c < dp[static_cast<size_t>(k)][mask] - kEps) {
          dp[static_cast<size_t>(k)][mask] = c;
          choice[static_cast<size_t>(k)][mask] = sub;
        }
      }
    }
  }
  if (dp[static_cast<size_t>(K)][full] == inf) return res;  // infeasible

  res.feasible = true;
  res.objective = dp[static_cast<size_t>(K)][full];
  unsigned mask = full;
  int k = K;
  while (mask) {
    const unsigned sub = choice[static_cast<size_t>(k)][mask];
    if (sub == 0) {
      --k;
      continue;
    }
    res.routes.push_back(*tour[sub]);
    mask &= ~sub;
    --k;
  }
  std::sort(res.routes.begin(), res.routes.end(),
            [](const Route& a, const Route& b) { return a.locs.front() < b.locs.front(); });
  return res;
}

std::vector<std::vector<Route>> enumerate_solutions(const DarpInstance& inst, int cap) {
  if (inst.n > cap) {
    throw OracleLimitError("enumerate_solutions: n=" + std::to_string(inst.n) + " exceeds cap " +
                           std::to_string(cap));
  }
  std::vector<std::vector<Route>> out;
  if (inst.n == 0) return out;
  const int n = inst.n;
  const unsigned full = (1u << n) - 1u;

  std::vector<std::vector<Route>> tours(full + 1);
  for (unsigned mask = 1; mask <= full; ++mask) {
    std::vector<int> reqs;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) reqs.push_back(i + 1);
    enumerate_tours(inst, reqs, [&](const std::vector<int>& seq) {
      if (auto r = tour_from_seq(inst, seq)) tours[mask].push_back(std::move(*r));
    });
  }

  // assemble route sets block by block; blocks canonicalized by letting each
  // block own the lowest remaining request
  std::vector<Route> current;
  std::function<void(unsigned, int)> assemble = [&](unsigned mask, int vehicles_left) {
    if (mask == 0) {
      out.push_back(current);
      return;
    }
    if (vehicles_left == 0) return;
    const unsigned low = mask & (~mask + 1u);
    for (unsigned sub = mask; sub; sub = (sub - 1) & mask) {
      if (!(sub & low)) continue;
      for (const Route& r : tours[sub]) {
        current.push_back(r);
        assemble(mask & ~sub, vehicles_left - 1);
        current.pop_back();
      }
    }
  };
  assemble(full, inst.K);
  return out;
}

}  // namespace darp
