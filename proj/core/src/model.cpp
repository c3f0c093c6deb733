#include "darp/model.hpp"

#include <algorithm>
#include <cmath>

namespace darp {

int MilpModel::add_var(const std::string& name, double lb, double ub, double obj, bool integer) {
  if (name.empty()) throw std::logic_error("variable name must not be empty");
  if (!by_name_.emplace(name, static_cast<int>(vars_.size())).second)
    throw std::logic_error("duplicate variable name: " + name);
  vars_.push_back({name, lb, ub, obj, integer});
  return static_cast<int>(vars_.size()) - 1;
}

int MilpModel::add_row(const std::string& name, std::vector<Term> terms, Sense sense, double rhs) {
  // merge duplicates in first-occurrence order, drop exact zeros
  std::vector<Term> merged;
  for (const Term& t : terms) {
    if (t.var < 0 || t.var >= static_cast<int>(vars_.size()))
      throw std::logic_error("row references unknown variable index");
    auto it = std::find_if(merged.begin(), merged.end(),
                           [&](const Term& m) { return m.var == t.var; });
    if (it == merged.end())
      merged.push_back(t);
    else
      it->coef += t.coef;
  }
  merged.erase(std::remove_if(merged.begin(), merged.end(),
                              [](const Term& t) { return t.coef == 0.0; }),
               merged.end());
  Row r;
  r.name = name.empty() ? "r" + std::to_string(rows_.size()) : name;
  r.terms = std::move(merged);
  r.sense = sense;
  r.rhs = rhs;
  rows_.push_back(std::move(r));
  return static_cast<int>(rows_.size()) - 1;
}

int MilpModel::var_index(const std::string& name) const {
  auto it = by_name_.find(name);
  return it == by_name_.end() ? -1 : it->second;
}

double MilpModel::objective_value(const std::vector<double>& x) const {
  double z = 0.0;
  for (size_t i = 0; i < vars_.size(); ++i) z += vars_[i].obj * x.at(i);
  return z;
}

}  // namespace darp
