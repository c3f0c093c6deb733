// Solver-independent MILP container: named columns and rows with exact
// insertion order, plus the index maps the route-extraction code needs to
// interpret a solution vector.
#pragma once

#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace darp {

struct Var {
  std::string name;
  double lb = 0.0;
  double ub = 1.0;
  double obj = 0.0;
  bool integer = false;
};

struct Term {
  int var = -1;
  double coef = 0.0;
};

enum class Sense { LE, GE, EQ };

struct Row {
  std::string name;
  std::vector<Term> terms;  // merged: one entry per variable
  Sense sense = Sense::LE;
  double rhs = 0.0;
};

class MilpModel {
 public:
  // returns the column index; names must be unique
  int add_var(const std::string& name, double lb, double ub, double obj, bool integer);
  // returns the row index; empty name becomes r<k>; duplicate terms are merged
  int add_row(const std::string& name, std::vector<Term> terms, Sense sense, double rhs);
  int add_row(std::vector<Term> terms, Sense sense, double rhs) {
    return add_row(std::string(), std::move(terms), sense, rhs);
  }

  const std::vector<Var>& vars() const { return vars_; }
  const std::vector<Row>& rows() const { return rows_; }
  Var& var(int i) { return vars_.at(static_cast<size_t>(i)); }
  const Var& var(int i) const { return vars_.at(static_cast<size_t>(i)); }
  const Row& row(int i) const { return rows_.at(static_cast<size_t>(i)); }
  int var_index(const std::string& name) const;  // -1 if absent

  double objective_value(const std::vector<double>& x) const;

  // interpretation metadata filled in by the model builders
  std::string formulation;                       // "lb", "eb", "laeb", "alaeb"
  std::unordered_map<int, int> arc_var;          // event-graph arc id -> column
  std::map<std::pair<int, int>, int> locpair_var;  // (from,to) location pair -> column
  std::unordered_map<int, int> B_event;          // event node id -> column
  std::map<int, int> Bbar_loc;                   // location -> column
  std::map<int, int> Qload_loc;                  // location -> column

 private:
  std::vector<Var> vars_;
  std::vector<Row> rows_;
  std::unordered_map<std::string, int> by_name_;
};

// Deterministic text export: columns ordered by name, rows by insertion,
// numbers at 12 significant digits.  read_* accept what write_* produce and
// re-exporting a read model is byte-identical.
void write_lp(const MilpModel& m, std::ostream& os);
void write_mps(const MilpModel& m, std::ostream& os);
MilpModel read_lp(std::istream& is);
MilpModel read_mps(std::istream& is);

void write_lp_file(const MilpModel& m, const std::string& path);
void write_mps_file(const MilpModel& m, const std::string& path);
MilpModel read_lp_file(const std::string& path);
MilpModel read_mps_file(const std::string& path);

}  // namespace darp
