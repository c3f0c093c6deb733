#include "darp/generator.hpp"

#include <cmath>
#include <random>

namespace darp {
namespace {

void fill_euclidean(DarpInstance& inst) {
  const int m = inst.num_locations();
  inst.time.assign(static_cast<size_t>(m), std::vector<double>(static_cast<size_t>(m), 0.0));
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) {
      const double dx = inst.xy[static_cast<size_t>(a)].first - inst.xy[static_cast<size_t>(b)].first;
      const double dy = inst.xy[static_cast<size_t>(a)].second - inst.xy[static_cast<size_t>(b)].second;
      inst.time[static_cast<size_t>(a)][static_cast<size_t>(b)] = std::hypot(dx, dy);
    }
  }
  inst.cost = inst.time;
}

}  // namespace

DarpInstance random_instance(const RandomSpec& spec) {
  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> coord(-7.0, 7.0);
  std::uniform_int_distribution<int> load(1, std::max(1, std::min(spec.max_load, spec.Q)));
  std::bernoulli_distribution inbound(0.5);

  DarpInstance inst;
  inst.name = "rand-" + std::to_string(spec.seed);
  inst.n = spec.n;
  inst.K = spec.K;
  inst.Q = spec.Q;
  inst.T = spec.T;
  inst.xy.assign(static_cast<size_t>(inst.num_locations()), {0.0, 0.0});
  for (int i = 1; i <= spec.n; ++i) {
    // distinct endpoints keep t_i + s_i > 0 even with zero service
    for (;;) {
      const std::pair<double, double> p{coord(rng), coord(rng)}, d{coord(rng), coord(rng)};
      if (std::hypot(p.first - d.first, p.second - d.second) >= 0.5) {
        inst.xy[static_cast<size_t>(i)] = p;
        inst.xy[static_cast<size_t>(spec.n + i)] = d;
        break;
      }
    }
  }
  fill_euclidean(inst);

  // tight-window starts keep every derivation non-clamping: the start is at
  // least L+s (outbound earliest derived pickup stays >= 0) and the end stays
  // clear of the horizon
  std::uniform_real_distribution<double> start(spec.max_ride + spec.service + 10.0, spec.T - 90.0);
  inst.requests.resize(static_cast<size_t>(spec.n));
  for (int i = 1; i <= spec.n; ++i) {
    Request& r = inst.requests[static_cast<size_t>(i) - 1];
    r.id = i;
    r.q = load(rng);
    r.s = spec.service;
    r.L = spec.max_ride;
    r.direct = inst.time[static_cast<size_t>(i)][static_cast<size_t>(spec.n + i)];
    r.inbound = inbound(rng);
    const double u = start(rng);
    r.tight() = Window{u, u + spec.tight_len};
    (r.inbound ? r.delivery : r.pickup) = Window{0.0, spec.T};
  }
  return derive_windows(std::move(inst));
}

DarpInstance point_window_instance(std::uint64_t seed, int n, int K, int Q) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(-7.0, 7.0);
  std::uniform_real_distribution<double> jitter(0.0, 20.0), frac(0.0, 1.0);

  DarpInstance inst;
  inst.name = "point-" + std::to_string(seed);
  inst.n = n;
  inst.K = K;
  inst.Q = Q;
  inst.T = 480.0;
  inst.xy.assign(static_cast<size_t>(inst.num_locations()), {0.0, 0.0});
  for (int i = 1; i <= n; ++i) {
    for (;;) {
      const std::pair<double, double> p{coord(rng), coord(rng)}, d{coord(rng), coord(rng)};
      if (std::hypot(p.first - d.first, p.second - d.second) >= 0.5) {
        inst.xy[static_cast<size_t>(i)] = p;
        inst.xy[static_cast<size_t>(n + i)] = d;
        break;
      }
    }
  }
  fill_euclidean(inst);

  inst.requests.resize(static_cast<size_t>(n));
  for (int i = 1; i <= n; ++i) {
    Request& r = inst.requests[static_cast<size_t>(i) - 1];
    r.id = i;
    r.q = 1;
    r.s = 3.0;
    r.L = 30.0;
    r.direct = inst.time[static_cast<size_t>(i)][static_cast<size_t>(n + i)];
    r.inbound = false;
    // staggered points: the index-order single-vehicle tour is always
    // schedulable, so the instance is feasible for any K >= 1, and the ride
    // margin keeps l_{i-} - e_{i+} - s_i below L_i
    const double p = 40.0 + 80.0 * (i - 1) + jitter(rng);
    const double d = p + r.s + r.direct + frac(rng) * (r.L - r.s - r.direct - 1.0);
    r.pickup = Window{p, p};
    r.delivery = Window{d, d};
  }
  inst.derived = true;  // both windows given explicitly
  return inst;
}

DarpInstance dominance_fixture() {
  DarpInstance inst;
  inst.name = "dominance-fixture";
  inst.n = 2;
  inst.K = 1;
  inst.Q = 5;
  inst.T = 1000.0;
  // explicit metric (locations 0, 1+, 2+, 1-, 2-): the pooled tour
  // 0,1+,2+,2-,1-,0 costs 23 but needs 6 seats; the forced sequential tour
  // 0,1+,1-,2+,2-,0 costs 38
  inst.time = {{0, 1, 1, 10, 10},
               {1, 0, 2, 9, 9},
               {1, 2, 0, 9, 9},
               {10, 9, 9, 0, 1},
               {10, 9, 9, 1, 0}};
  inst.cost = inst.time;
  inst.requests.resize(2);
  for (int i = 1; i <= 2; ++i) {
    Request& r = inst.requests[static_cast<size_t>(i) - 1];
    r.id = i;
    r.q = 3;
    r.s = 0.0;
    r.L = 1000.0;
    r.direct = inst.time[static_cast<size_t>(i)][static_cast<size_t>(2 + i)];
    r.inbound = false;
    r.pickup = Window{0.0, 1000.0};
    r.delivery = Window{0.0, 1000.0};
  }
  inst.derived = true;
  return inst;
}

}  // namespace darp
