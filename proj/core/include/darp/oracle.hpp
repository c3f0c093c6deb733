// Exhaustive-enumeration oracle for desk-scale instances. Independent of the
// MILP machinery: partitions requests over vehicles, enumerates every
// capacity/precedence-valid interleaving per tour, and checks schedules with
// the exact chain scheduler.
#pragma once

#include <optional>
#include <vector>

#include "darp/instance.hpp"
#include "darp/route.hpp"

namespace darp {

struct OracleResult {
  bool feasible = false;
  double objective = 0.0;
  std::vector<Route> routes;  // deterministic tie-break: lexicographically
                              // smallest route-set encoding among optima
};

struct OracleLimitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Exact optimum by enumeration; refuses n > cap.
OracleResult brute_force(const DarpInstance& inst, int cap = 7);

// Minimum-cost feasible single-vehicle tour over exactly the given request
// set (empty optional if none); used by brute_force and by restricted
// oracle checks in tests.
std::optional<Route> best_tour(const DarpInstance& inst, const std::vector<int>& request_ids);

// All feasible integer solutions (route sets) of the instance, enumerated
// exhaustively; the backbone of the cut-validity sweeps. Routes within a
// solution are ordered by their first pickup.
std::vector<std::vector<Route>> enumerate_solutions(const DarpInstance& inst, int cap = 5);

}  // namespace darp
