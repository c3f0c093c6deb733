#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>

#include "darp/model.hpp"

namespace darp {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

std::vector<int> vars_by_name(const MilpModel& m) {
  std::vector<int> idx(m.vars().size());
  for (size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
  std::sort(idx.begin(), idx.end(),
            [&](int a, int b) { return m.var(a).name < m.var(b).name; });
  return idx;
}

// terms of one row (or the objective) ordered by variable name, wrapped
void write_terms(std::ostream& os, const MilpModel& m, const std::vector<Term>& terms) {
  std::vector<Term> t = terms;
  std::sort(t.begin(), t.end(),
            [&](const Term& a, const Term& b) { return m.var(a.var).name < m.var(b.var).name; });
  if (t.empty()) {
    os << " 0 " << m.var(vars_by_name(m).front()).name;
    return;
  }
  int on_line = 0;
  for (size_t k = 0; k < t.size(); ++k) {
    const double c = t[k].coef;
    if (k == 0)
      os << (c < 0 ? " - " : " ") << num(std::fabs(c));
    else
      os << (c < 0 ? " - " : " + ") << num(std::fabs(c));
    os << " " << m.var(t[k].var).name;
    if (++on_line == 20 && k + 1 < t.size()) {
      os << "\n   ";
      on_line = 0;
    }
  }
}

const char* sense_str(Sense s) {
  switch (s) {
    case Sense::LE: return "<=";
    case Sense::GE: return ">=";
    default: return "=";
  }
}

// ---- shared reader scaffolding ------------------------------------------

struct ProtoVar {
  double lb = 0.0, ub = kInf, obj = 0.0;
  bool integer = false;
};
struct ProtoRow {
  std::string name;
  std::vector<std::pair<std::string, double>> terms;
  Sense sense = Sense::LE;
  double rhs = 0.0;
};

MilpModel assemble(std::map<std::string, ProtoVar>& vars, std::vector<ProtoRow>& rows) {
  MilpModel m;
  for (const auto& [name, v] : vars) m.add_var(name, v.lb, v.ub, v.obj, v.integer);
  for (ProtoRow& r : rows) {
    std::vector<Term> terms;
    terms.reserve(r.terms.size());
    for (auto& [name, coef] : r.terms) {
      const int idx = m.var_index(name);
      if (idx < 0) throw std::runtime_error("row references undeclared variable: " + name);
      terms.push_back({idx, coef});
    }
    m.add_row(r.name, std::move(terms), r.sense, r.rhs);
  }
  return m;
}

bool is_number(const std::string& tok) {
  if (tok.empty()) return false;
  char* end = nullptr;
  std::strtod(tok.c_str(), &end);
  return end == tok.c_str() + tok.size();
}

}  // namespace

// ---- LP format -----------------------------------------------------------

void write_lp(const MilpModel& m, std::ostream& os) {
  if (m.vars().empty()) throw std::logic_error("cannot export a model without variables");
  os << "Minimize\n obj:";
  std::vector<Term> obj;
  for (size_t i = 0; i < m.vars().size(); ++i)
    if (m.var(static_cast<int>(i)).obj != 0.0)
      obj.push_back({static_cast<int>(i), m.var(static_cast<int>(i)).obj});
  write_terms(os, m, obj);
  os << "\nSubject To\n";
  for (const Row& r : m.rows()) {
    os << " " << r.name << ":";
    write_terms(os, m, r.terms);
    os << " " << sense_str(r.sense) << " " << num(r.rhs) << "\n";
  }
  os << "Bounds\n";
  for (int i : vars_by_name(m)) {
    const Var& v = m.var(i);
    if (v.lb == v.ub)
      os << " " << v.name << " = " << num(v.lb) << "\n";
    else if (v.lb == -kInf && v.ub == kInf)
      os << " " << v.name << " free\n";
    else if (v.ub == kInf)
      os << " " << v.name << " >= " << num(v.lb) << "\n";
    else if (v.lb == -kInf)
      os << " " << v.name << " <= " << num(v.ub) << "\n";
    else
      os << " " << num(v.lb) << " <= " << v.name << " <= " << num(v.ub) << "\n";
  }
  bool any_int = false;
  for (const Var& v : m.vars()) any_int = any_int || v.integer;
  if (any_int) {
    os << "Generals\n";
    for (int i : vars_by_name(m))
      if (m.var(i).integer) os << " " << m.var(i).name << "\n";
  }
  os << "End\n";
}

MilpModel read_lp(std::istream& is) {
  std::vector<std::string> toks;
  std::string t;
  while (is >> t) toks.push_back(t);

  std::map<std::string, ProtoVar> vars;
  std::vector<ProtoRow> rows;
  size_t p = 0;
  auto peek_lower = [&]() { return p < toks.size() ? lower(toks[p]) : std::string(); };
  auto section_start = [&](const std::string& lw) {
    return lw == "minimize" || lw == "min" || lw == "subject" || lw == "st" ||
           lw == "s.t." || lw == "bounds" || lw == "generals" || lw == "general" ||
           lw == "integers" || lw == "binaries" || lw == "binary" || lw == "end";
  };
  // parse a run of terms: [sign] coef name ...; stops at sense token or section
  auto parse_terms = [&](std::vector<std::pair<std::string, double>>& out) {
    double sign = 1.0;
    while (p < toks.size()) {
      const std::string& tok = toks[p];
      const std::string lw = lower(tok);
      if (tok == "<=" || tok == ">=" || tok == "=" || section_start(lw)) return;
      if (tok == "+") {
        sign = 1.0;
        ++p;
      } else if (tok == "-") {
        sign = -1.0;
        ++p;
      } else if (is_number(tok)) {
        const double c = sign * std::strtod(tok.c_str(), nullptr);
        ++p;
        if (p >= toks.size() || !std::isalpha(static_cast<unsigned char>(toks[p][0])))
          throw std::runtime_error("lp: expected variable name after coefficient " + tok);
        out.emplace_back(toks[p], c);
        vars.try_emplace(toks[p]);
        ++p;
        sign = 1.0;
      } else {  // bare variable name, coefficient 1
        out.emplace_back(tok, sign);
        vars.try_emplace(tok);
        ++p;
        sign = 1.0;
      }
    }
  };

  if (lower(toks.at(p)) != "minimize" && lower(toks.at(p)) != "min")
    throw std::runtime_error("lp: expected Minimize");
  ++p;
  {
    if (p < toks.size() && toks[p].back() == ':') ++p;  // objective label
    std::vector<std::pair<std::string, double>> obj;
    parse_terms(obj);
    for (auto& [name, coef] : obj) vars[name].obj += coef;
  }
  if (peek_lower() == "subject") p += 2;  // "subject to"
  else if (peek_lower() == "st" || peek_lower() == "s.t.") ++p;
  else throw std::runtime_error("lp: expected Subject To");

  while (p < toks.size() && !section_start(peek_lower())) {
    ProtoRow r;
    if (toks[p].back() != ':') throw std::runtime_error("lp: expected row label, got " + toks[p]);
    r.name = toks[p].substr(0, toks[p].size() - 1);
    ++p;
    parse_terms(r.terms);
    if (p >= toks.size()) throw std::runtime_error("lp: row without relation");
    const std::string rel = toks[p++];
    r.sense = rel == "<=" ? Sense::LE : rel == ">=" ? Sense::GE : Sense::EQ;
    if (p >= toks.size() || !is_number(toks[p])) throw std::runtime_error("lp: missing rhs");
    r.rhs = std::strtod(toks[p++].c_str(), nullptr);
    rows.push_back(std::move(r));
  }

  if (peek_lower() == "bounds") {
    ++p;
    while (p < toks.size() && !section_start(peek_lower())) {
      if (is_number(toks[p])) {  //  lb <= name <= ub
        const double lb = std::strtod(toks[p].c_str(), nullptr);
        const std::string name = toks.at(p + 2);
        const double ub = std::strtod(toks.at(p + 4).c_str(), nullptr);
        vars[name].lb = lb;
        vars[name].ub = ub;
        p += 5;
      } else {
        const std::string name = toks[p];
        const std::string op = toks.at(p + 1);
        if (lower(op) == "free") {
          vars[name].lb = -kInf;
          vars[name].ub = kInf;
          p += 2;
        } else if (op == "=") {
          const double v = std::strtod(toks.at(p + 2).c_str(), nullptr);
          vars[name].lb = vars[name].ub = v;
          p += 3;
        } else if (op == ">=") {
          vars[name].lb = std::strtod(toks.at(p + 2).c_str(), nullptr);
          vars[name].ub = kInf;
          p += 3;
        } else if (op == "<=") {
          vars[name].ub = std::strtod(toks.at(p + 2).c_str(), nullptr);
          vars[name].lb = -kInf;
          p += 3;
        } else {
          throw std::runtime_error("lp: bad bound line near " + name);
        }
      }
    }
  }
  while (p < toks.size() && peek_lower() != "end") {
    const std::string sec = peek_lower();
    ++p;
    const bool binary = sec == "binaries" || sec == "binary";
    if (sec == "generals" || sec == "general" || sec == "integers" || binary) {
      while (p < toks.size() && !section_start(peek_lower())) {
        ProtoVar& v = vars[toks[p]];
        v.integer = true;
        if (binary) {
          v.lb = std::max(v.lb, 0.0);
          v.ub = std::min(v.ub, 1.0);
        }
        ++p;
      }
    } else {
      throw std::runtime_error("lp: unexpected section " + sec);
    }
  }
  return assemble(vars, rows);
}

// ---- MPS format ----------------------------------------------------------

namespace {
std::string pad(const std::string& s, size_t w) {
  return s.size() >= w ? s + " " : s + std::string(w - s.size(), ' ');
}
}  // namespace

void write_mps(const MilpModel& m, std::ostream& os) {
  if (m.vars().empty()) throw std::logic_error("cannot export a model without variables");
  os << "NAME          darp\n";
  os << "ROWS\n N  obj\n";
  for (const Row& r : m.rows()) {
    const char c = r.sense == Sense::LE ? 'L' : r.sense == Sense::GE ? 'G' : 'E';
    os << " " << c << "  " << r.name << "\n";
  }
  // row entries grouped per column
  std::vector<std::vector<std::pair<int, double>>> col_entries(m.vars().size());
  for (size_t ri = 0; ri < m.rows().size(); ++ri)
    for (const Term& t : m.rows()[ri].terms)
      col_entries[static_cast<size_t>(t.var)].emplace_back(static_cast<int>(ri), t.coef);

  os << "COLUMNS\n";
  bool in_int = false;
  int marker = 0;
  for (int i : vars_by_name(m)) {
    const Var& v = m.var(i);
    if (v.integer != in_int) {
      os << "    MARKER" << marker++ << "    'MARKER'    " << (v.integer ? "'INTORG'" : "'INTEND'")
         << "\n";
      in_int = v.integer;
    }
    if (v.obj != 0.0) os << "    " << pad(v.name, 12) << pad("obj", 12) << num(v.obj) << "\n";
    for (const auto& [ri, coef] : col_entries[static_cast<size_t>(i)])
      os << "    " << pad(v.name, 12) << pad(m.rows()[static_cast<size_t>(ri)].name, 12)
         << num(coef) << "\n";
  }
  if (in_int) os << "    MARKER" << marker++ << "    'MARKER'    'INTEND'\n";
  os << "RHS\n";
  for (const Row& r : m.rows())
    if (r.rhs != 0.0) os << "    " << pad("RHS", 12) << pad(r.name, 12) << num(r.rhs) << "\n";
  os << "BOUNDS\n";
  for (int i : vars_by_name(m)) {
    const Var& v = m.var(i);
    if (v.lb == v.ub) {
      os << " FX " << pad("BND", 10) << pad(v.name, 12) << num(v.lb) << "\n";
    } else if (v.lb == -kInf && v.ub == kInf) {
      os << " FR " << pad("BND", 10) << v.name << "\n";
    } else {
      if (v.lb == -kInf)
        os << " MI " << pad("BND", 10) << v.name << "\n";
      else if (v.lb != 0.0)
        os << " LO " << pad("BND", 10) << pad(v.name, 12) << num(v.lb) << "\n";
      if (v.ub != kInf) os << " UP " << pad("BND", 10) << pad(v.name, 12) << num(v.ub) << "\n";
    }
  }
  os << "ENDATA\n";
}

MilpModel read_mps(std::istream& is) {
  std::map<std::string, ProtoVar> vars;
  std::vector<ProtoRow> rows;
  std::map<std::string, int> row_index;

  enum { NONE, ROWS, COLUMNS, RHS, BOUNDS } section = NONE;
  bool in_int = false;
  std::string line;
  while (std::getline(is, line)) {
    std::istringstream ls(line);
    std::vector<std::string> f;
    std::string tok;
    while (ls >> tok) f.push_back(tok);
    if (f.empty()) continue;
    const std::string head = lower(f[0]);
    if (head == "name") continue;
    if (head == "rows") { section = ROWS; continue; }
    if (head == "columns") { section = COLUMNS; continue; }
    if (head == "rhs") { section = RHS; continue; }
    if (head == "bounds") { section = BOUNDS; continue; }
    if (head == "ranges") { section = NONE; continue; }
    if (head == "endata") break;

    switch (section) {
      case ROWS: {
        const std::string type = lower(f.at(0));
        if (type == "n") break;  // objective row
        ProtoRow r;
        r.name = f.at(1);
        r.sense = type == "l" ? Sense::LE : type == "g" ? Sense::GE : Sense::EQ;
        row_index[r.name] = static_cast<int>(rows.size());
        rows.push_back(std::move(r));
        break;
      }
      case COLUMNS: {
        if (f.size() >= 3 && f[1].find("MARKER") != std::string::npos) {
          in_int = f[2].find("INTORG") != std::string::npos;
          break;
        }
        if (f.size() >= 3 && f.at(2).find("'INT") != std::string::npos) {
          in_int = f.at(2).find("INTORG") != std::string::npos;
          break;
        }
        ProtoVar& v = vars[f.at(0)];
        v.integer = v.integer || in_int;
        for (size_t k = 1; k + 1 < f.size(); k += 2) {
          const double coef = std::strtod(f[k + 1].c_str(), nullptr);
          if (lower(f[k]) == "obj")
            v.obj += coef;
          else
            rows.at(static_cast<size_t>(row_index.at(f[k]))).terms.emplace_back(f[0], coef);
        }
        break;
      }
      case RHS:
        for (size_t k = 1; k + 1 < f.size(); k += 2)
          rows.at(static_cast<size_t>(row_index.at(f[k]))).rhs =
              std::strtod(f[k + 1].c_str(), nullptr);
        break;
      case BOUNDS: {
        const std::string type = lower(f.at(0));
        ProtoVar& v = vars[f.at(2)];
        if (type == "fx")
          v.lb = v.ub = std::strtod(f.at(3).c_str(), nullptr);
        else if (type == "fr") {
          v.lb = -kInf;
          v.ub = kInf;
        } else if (type == "mi")
          v.lb = -kInf;
        else if (type == "lo")
          v.lb = std::strtod(f.at(3).c_str(), nullptr);
        else if (type == "up")
          v.ub = std::strtod(f.at(3).c_str(), nullptr);
        else if (type == "bv") {
          v.integer = true;
          v.lb = 0;
          v.ub = 1;
        } else
          throw std::runtime_error("mps: unsupported bound type " + f.at(0));
        break;
      }
      default:
        throw std::runtime_error("mps: data before section header: " + line);
    }
  }
  return assemble(vars, rows);
}

// ---- file helpers --------------------------------------------------------

namespace {
template <typename Fn>
void to_file(const std::string& path, Fn fn) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  fn(os);
}
}  // namespace

void write_lp_file(const MilpModel& m, const std::string& path) {
  to_file(path, [&](std::ostream& os) { write_lp(m, os); });
}
void write_mps_file(const MilpModel& m, const std::string& path) {
  to_file(path, [&](std::ostream& os) { write_mps(m, os); });
}
MilpModel read_lp_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open: " + path);
  return read_lp(is);
}
MilpModel read_mps_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open: " + path);
  return read_mps(is);
}

}  // namespace darp
