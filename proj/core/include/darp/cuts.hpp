// Valid inequalities over the event graph: activation-linked bound rows,
// infeasible-path rows with lifting, vehicle-sharing rows, and customer
// incompatibility rows.  Cuts are expressed over an existing model's
// columns and appended as ordinary rows.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "darp/event_graph.hpp"
#include "darp/model.hpp"
#include "darp/preprocessing.hpp"

namespace darp {

struct Cut {
  std::string family;  // bnd8 bnd9 bnd10 ip1 ip2 vs1 vs2 vs3 vs4 ci1
  std::vector<Term> terms;
  Sense sense = Sense::LE;
  double rhs = 0.0;
};

struct CutOptions {
  bool bnd = false;  // (8)(9) event bound rows, (10) location bound rows
  bool ip1 = false;
  bool ip2 = false;
  bool vs1 = false, vs2 = false, vs3 = false, vs4 = false;
  bool ci1 = false;
  int pool_cap = 200000;  // per family
  bool any() const { return bnd || ip1 || ip2 || vs1 || vs2 || vs3 || vs4 || ci1; }
};

// comma-separated families: "bnd", "ip1", "ip2", "vs1".."vs4", "vs" (all
// four), "ci1", "all"; throws on unknown names
CutOptions parse_cut_families(const std::string& csv);

// deterministic pool: families in declaration order, generation index
// within each family; families whose variables are absent from m (e.g.
// event time rows for laeb) are skipped
std::vector<Cut> generate_cuts(const EventGraph& g, const BoundState& b,
                               const MilpModel& m, const CutOptions& opt);

int apply_cuts(MilpModel& m, const std::vector<Cut>& cuts);

void dump_cuts_csv(const std::vector<Cut>& cuts, const MilpModel& m, std::ostream& os);

}  // namespace darp
