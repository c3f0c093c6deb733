// Dial-a-ride instance data: requests, fleet, travel/cost matrices, windows.
// Locations are indexed 0 (depot), 1..n (pickups), n+1..2n (deliveries).
#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace darp {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Window {
  double e = 0.0;
  double l = 0.0;
  double length() const { return l - e; }
  bool contains(double t, double tol = 1e-9) const {
    return t >= e - tol && t <= l + tol;
  }
};

struct Request {
  int id = 0;        // 1..n
  int q = 1;         // persons
  double s = 0.0;    // service duration at pickup and delivery
  double L = 0.0;    // maximum ride time
  Window pickup;     // window at i+
  Window delivery;   // window at i-
  bool inbound = false;  // true: the pickup window is the originally
                         // stated (tight) one; false: the delivery window is
  double direct = 0.0;   // travel time pickup -> delivery

  const Window& tight() const { return inbound ? pickup : delivery; }
  Window& tight() { return inbound ? pickup : delivery; }
};

// Immutable after construction/derivation; all operations on it are pure.
struct DarpInstance {
  std::string name;
  int n = 0;       // requests
  int K = 0;       // vehicles
  int Q = 0;       // seats per vehicle
  double T = 0;    // end of service horizon; depot window is [0, T]
  bool derived = false;  // both windows populated (derive_windows ran)
  std::vector<Request> requests;              // size n, ids 1..n
  std::vector<std::vector<double>> time;      // (2n+1)^2 travel times
  std::vector<std::vector<double>> cost;      // (2n+1)^2 routing costs
  std::vector<std::pair<double, double>> xy;  // coordinates when known

  static constexpr int depot = 0;
  int num_locations() const { return 2 * n + 1; }
  int pickup_of(int i) const { return i; }
  int delivery_of(int i) const { return n + i; }
  bool is_pickup(int loc) const { return loc >= 1 && loc <= n; }
  bool is_delivery(int loc) const { return loc > n && loc <= 2 * n; }
  // request owning a location; 0 for the depot
  int request_of(int loc) const { return loc == depot ? 0 : (loc <= n ? loc : loc - n); }
  const Request& request(int i) const { return requests[static_cast<size_t>(i) - 1]; }

  double service(int loc) const { return loc == depot ? 0.0 : request(request_of(loc)).s; }
  // +q at pickups, -q at deliveries, 0 at the depot
  int load_change(int loc) const {
    if (loc == depot) return 0;
    const Request& r = request(request_of(loc));
    return is_pickup(loc) ? r.q : -r.q;
  }
  Window window(int loc) const {
    if (loc == depot) return Window{0.0, T};
    const Request& r = request(request_of(loc));
    return is_pickup(loc) ? r.pickup : r.delivery;
  }
};

struct ParseOptions {
  // Default inbound assignment: requests n/2+1..n are inbound (tight pickup
  // window), 1..n/2 outbound (tight delivery window). Override per request
  // with a full vector indexed 0..n-1.
  std::optional<std::vector<bool>> inbound;
  std::string name;
};

DarpInstance parse_cordeau(std::istream& in, const ParseOptions& opts = {});
DarpInstance parse_cordeau_file(const std::string& path, const ParseOptions& opts = {});
std::string serialize_cordeau(const DarpInstance& inst);

// Populate the non-tight window of every request from the tight one:
//   outbound: e_{i+} = max(0, e_{i-} - L_i - s_i), l_{i+} = min(l_{i-} - t_i - s_i, T)
//   inbound:  e_{i-} = e_{i+} + s_i + t_i,         l_{i-} = l_{i+} + s_i + L_i
// Idempotent; throws ParseError if a derived window comes out empty.
DarpInstance derive_windows(DarpInstance inst);

// Widened variant ("-X"): the tight window's upper bound grows by delta and
// the partner window is re-derived.
DarpInstance extend_windows_x(DarpInstance inst, double delta = 15.0);

// Loads `path`; a stem ending in "-X" maps to the widened variant of the
// base file (no -X files exist on disk). Windows come back derived.
DarpInstance load_instance(const std::string& path);

// True iff some vector of service-start times along `locs` satisfies windows,
// travel-time precedence, and the max-ride-time of every request with both
// endpoints in the sequence. Decided exactly (difference-constraint system).
bool path_feasible(const DarpInstance& inst, const std::vector<int>& locs);

// f1[i][j]: path j+ -> i+ -> j- -> i- feasible; f2[i][j]: j+ -> i+ -> i- -> j-.
// Index 0 stands for the depot and is fixed to 1; the diagonal is unused and
// kept false by convention.
struct CompatFlags {
  std::vector<std::vector<char>> f1, f2;
};
CompatFlags compat_flags(const DarpInstance& inst);

}  // namespace darp
