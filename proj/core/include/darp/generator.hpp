// Seeded instance generators for oracle cross-checks, theorem suites, and
// the strict-dominance fixture.
#pragma once

#include <cstdint>

#include "darp/instance.hpp"

namespace darp {

struct RandomSpec {
  std::uint64_t seed = 1;
  int n = 4;
  int K = 2;
  int Q = 3;
  double T = 480.0;
  double service = 3.0;
  double max_ride = 30.0;
  double tight_len = 15.0;  // TW
  int max_load = 1;         // request loads drawn from 1..max_load
};

// Random Euclidean instance with one tight window per request, windows
// derived, and the standing assumptions guaranteed by construction
// (0 < t_i + s_i < L_i, reachable pickups, non-clamping derived windows).
DarpInstance random_instance(const RandomSpec& spec);

// Random instance with single-point windows satisfying the integrality
// conditions of the network reduction (point windows, consistent ride
// margins, adequate depot slack).
DarpInstance point_window_instance(std::uint64_t seed, int n = 4, int K = 2, int Q = 3);

// Two-request, one-vehicle fixture on an explicit metric whose LP bound
// separates the location-based from the location-augmented relaxation
// (pooled tour 23 vs separate-trip structure 38).
DarpInstance dominance_fixture();

}  // namespace darp
