// Route representation, exact chain scheduling, and solution validation.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "darp/instance.hpp"

namespace darp {

// One vehicle tour: locations without the depot endpoints, plus the
// service-start times of the full depot-to-depot chain (B.front()/B.back()
// are the depot departure/arrival service starts).
struct Route {
  std::vector<int> locs;   // customer locations in visit order
  std::vector<double> B;   // size locs.size() + 2, including both depot ends
  double cost(const DarpInstance& inst) const;
};

// Earliest feasible service-start times along an arbitrary location sequence
// (windows, travel+service precedence, ride times for requests with both
// endpoints present). Exact: the constraints form a difference system solved
// by iterated forward propagation with ride-time repair (Bellman-Ford);
// std::nullopt iff the system is infeasible.
std::optional<std::vector<double>> schedule_route(const DarpInstance& inst,
                                                  const std::vector<int>& locs);

struct Violation {
  std::string kind;   // cover | pairing | precedence | capacity | window |
                      // ride_time | fleet | objective | schedule
  std::string where;  // human-readable location
  double magnitude = 0.0;
};

struct ValidationReport {
  std::vector<Violation> violations;
  double recomputed_cost = 0.0;
  bool ok() const { return violations.empty(); }
};

// Checks cover, pairing, precedence, capacity, windows, ride times, fleet
// size, and recomputes the objective from the instance's cost matrix.
ValidationReport validate_solution(const DarpInstance& inst,
                                   const std::vector<Route>& routes);

}  // namespace darp
