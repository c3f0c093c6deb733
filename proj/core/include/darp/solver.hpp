// External MILP/LP solving: models are written as LP files, handed to a
// small backend adapter script (HiGHS or CBC), and the name/value solution
// it writes is mapped back onto the model's columns.
#pragma once

#include <string>
#include <vector>

#include "darp/event_graph.hpp"
#include "darp/instance.hpp"
#include "darp/model.hpp"
#include "darp/route.hpp"

namespace darp {

struct BackendConfig {
  // command invoked as: <cmd> <model.lp> <out.sol> <time_limit_s> <threads>
  std::string cmd;
  double time_limit = 120.0;
  int threads = 1;
  bool keep_files = false;
};

// DARP_BACKEND_CMD overrides the command outright; otherwise DARP_BACKEND
// ("highs" by default, or "cbc") picks an adapter script from
// DARP_ADAPTER_DIR (compiled-in default: the source tree's tools/backends)
BackendConfig default_backend();

enum class SolveStatus { Optimal, Feasible, Infeasible, Limit, Error };
const char* to_string(SolveStatus s);

struct SolveResult {
  SolveStatus status = SolveStatus::Error;
  double objective = 0.0;
  std::vector<double> x;  // by column index; empty unless a solution exists
  std::string message;
  int sec_rounds = 0;  // lazy pairing-precedence iterations (lb only)
  int sec_cuts = 0;
  double wall_seconds = 0.0;
};

SolveResult solve_model(const MilpModel& m, const BackendConfig& cfg);

// lb model: alternate solving and adding violated pairing-precedence rows
// until the integer solution decodes into consistent routes
SolveResult solve_lb_with_lazy_sec(MilpModel& m, const DarpInstance& inst,
                                   const BackendConfig& cfg);

// solves any formulation end to end (lazy rows for lb, plain solve
// otherwise) and decodes the routes; g may be null for the lb model
struct Solved {
  SolveResult result;
  std::vector<Route> routes;
};
Solved solve_formulation(MilpModel& m, const DarpInstance& inst, const EventGraph* g,
                         const BackendConfig& cfg);

// integer solution vector -> vehicle routes (customer location sequences)
std::vector<Route> extract_routes(const MilpModel& m, const DarpInstance& inst,
                                  const EventGraph* g, const std::vector<double>& x);

// largest distance to integrality over the columns that are integer in
// `integrality_from` (use the unrelaxed model when x solves the relaxation)
double max_fractionality(const MilpModel& integrality_from, const std::vector<double>& x);

}  // namespace darp
