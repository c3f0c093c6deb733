#include "darp/solver.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "darp/models.hpp"

#ifndef DARP_ADAPTER_DIR
#define DARP_ADAPTER_DIR "tools/backends"
#endif

namespace darp {
namespace {

namespace fs = std::filesystem;

std::string env_or(const char* name, const std::string& fallback) {
  const char* v = std::getenv(name);
  return v && *v ? v : fallback;
}

struct TempDir {
  fs::path path;
  bool keep = false;
  TempDir() {
    std::string tmpl = (fs::temp_directory_path() / "darp_XXXXXX").string();
    if (!mkdtemp(tmpl.data())) throw std::runtime_error("cannot create temp directory");
    path = tmpl;
  }
  ~TempDir() {
    if (!keep) {
      std::error_code ec;
      fs::remove_all(path, ec);
    }
  }
};

}  // namespace

const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::Feasible: return "feasible";
    case SolveStatus::Infeasible: return "infeasible";
    case SolveStatus::Limit: return "limit";
    default: return "error";
  }
}

BackendConfig default_backend() {
  BackendConfig cfg;
  cfg.cmd = env_or("DARP_BACKEND_CMD", "");
  if (cfg.cmd.empty()) {
    const std::string backend = env_or("DARP_BACKEND", "highs");
    const std::string dir = env_or("DARP_ADAPTER_DIR", DARP_ADAPTER_DIR);
    cfg.cmd = "python3 " + dir + "/adapter_" + backend + ".py";
  }
  cfg.keep_files = !env_or("DARP_KEEP_TMP", "").empty();
  return cfg;
}

SolveResult solve_model(const MilpModel& m, const BackendConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  SolveResult res;
  TempDir dir;
  dir.keep = cfg.keep_files;
  const fs::path lp = dir.path / "model.lp", sol = dir.path / "out.sol",
                 log = dir.path / "backend.log";
  write_lp_file(m, lp.string());

  std::ostringstream cmd;
  cmd << cfg.cmd << " " << lp << " " << sol << " " << cfg.time_limit << " " << cfg.threads
      << " > " << log << " 2>&1";
  const int rc = std::system(cmd.str().c_str());

  std::ifstream in(sol);
  if (rc != 0 || !in) {
    res.message = "backend failed (exit " + std::to_string(rc) + "): " + cmd.str();
    std::ifstream lg(log);
    std::ostringstream tail;
    tail << lg.rdbuf();
    if (!tail.str().empty()) res.message += "\n" + tail.str();
    return res;
  }

  std::vector<double> x(m.vars().size(), 0.0);
  bool have_values = false, have_status = false;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key)) continue;
    if (key == "=status=") {
      std::string st;
      ls >> st;
      have_status = true;
      if (st == "optimal")
        res.status = SolveStatus::Optimal;
      else if (st == "feasible")
        res.status = SolveStatus::Feasible;
      else if (st == "infeasible")
        res.status = SolveStatus::Infeasible;
      else
        res.status = SolveStatus::Limit;
    } else if (key == "=obj=") {
      ls >> res.objective;
    } else {
      double val;
      if (ls >> val) {
        const int idx = m.var_index(key);
        if (idx >= 0) {
          x[static_cast<size_t>(idx)] = val;
          have_values = true;
        }
      }
    }
  }
  if (!have_status) {
    res.status = SolveStatus::Error;
    res.message = "backend wrote no status line";
    return res;
  }
  if (have_values &&
      (res.status == SolveStatus::Optimal || res.status == SolveStatus::Feasible)) {
    res.x = std::move(x);
  }
  res.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

namespace {

// decode the location successor map of an integer lb solution; returns the
// model-location sequence of each vehicle (without depots)
std::vector<std::vector<int>> lb_routes(const MilpModel& m, const DarpInstance& inst,
                                        const std::vector<double>& x) {
  const int last = 2 * inst.n + 1;
  std::map<int, int> succ;
  std::vector<int> starts;
  for (const auto& [pair, col] : m.locpair_var) {
    if (x.at(static_cast<size_t>(col)) < 0.5) continue;
    if (pair.first == 0)
      starts.push_back(pair.second);
    else
      succ[pair.first] = pair.second;
  }
  std::vector<std::vector<int>> routes;
  for (int s : starts) {
    std::vector<int> r;
    int cur = s;
    for (int guard = 0; cur != last && guard <= 2 * inst.n + 1; ++guard) {
      r.push_back(cur);
      auto it = succ.find(cur);
      if (it == succ.end()) break;
      cur = it->second;
    }
    routes.push_back(std::move(r));
  }
  return routes;
}

Route make_route(const DarpInstance& inst, std::vector<int> locs) {
  Route r;
  r.locs = std::move(locs);
  if (auto B = schedule_route(inst, r.locs)) r.B = *B;
  return r;
}

}  // namespace

std::vector<Route> extract_routes(const MilpModel& m, const DarpInstance& inst,
                                  const EventGraph* g, const std::vector<double>& x) {
  std::vector<Route> routes;
  if (m.formulation == "lb") {
    for (auto& locs : lb_routes(m, inst, x)) routes.push_back(make_route(inst, locs));
    return routes;
  }
  if (m.formulation == "alaeb") {
    // location-pair binaries carry the tour structure; 0 is both depots
    std::map<int, int> succ;
    std::vector<int> starts;
    for (const auto& [pair, col] : m.locpair_var) {
      if (x.at(static_cast<size_t>(col)) < 0.5) continue;
      if (pair.first == 0)
        starts.push_back(pair.second);
      else
        succ[pair.first] = pair.second;
    }
    for (int s : starts) {
      std::vector<int> r;
      int cur = s;
      for (int guard = 0; cur != 0 && guard <= 2 * inst.n; ++guard) {
        r.push_back(cur);
        auto it = succ.find(cur);
        if (it == succ.end()) break;
        cur = it->second;
      }
      routes.push_back(make_route(inst, r));
    }
    return routes;
  }
  if (!g) throw std::logic_error("event formulations need the graph for route extraction");
  std::map<int, int> succ;  // node -> node over used arcs
  std::vector<int> starts;
  for (const auto& [arc_id, col] : m.arc_var) {
    if (x.at(static_cast<size_t>(col)) < 0.5) continue;
    const EventArc& a = g->arc(arc_id);
    if (a.from == g->depot_node())
      starts.push_back(a.to);
    else
      succ[a.from] = a.to;
  }
  std::sort(starts.begin(), starts.end());
  for (int s : starts) {
    std::vector<int> locs;
    int cur = s;
    const int cap = static_cast<int>(g->nodes().size());
    for (int guard = 0; cur != g->depot_node() && guard <= cap; ++guard) {
      locs.push_back(g->node(cur).loc);
      auto it = succ.find(cur);
      if (it == succ.end()) break;
      cur = it->second;
    }
    routes.push_back(make_route(inst, locs));
  }
  return routes;
}

SolveResult solve_lb_with_lazy_sec(MilpModel& m, const DarpInstance& inst,
                                   const BackendConfig& cfg) {
  constexpr int kMaxRounds = 500;
  std::set<std::vector<int>> added;
  SolveResult res;
  for (int round = 0; round < kMaxRounds; ++round) {
    res = solve_model(m, cfg);
    res.sec_rounds = round + 1;
    res.sec_cuts = static_cast<int>(added.size());
    if (res.status != SolveStatus::Optimal && res.status != SolveStatus::Feasible) return res;

    const auto routes = lb_routes(m, inst, res.x);
    std::vector<int> route_of(static_cast<size_t>(2 * inst.n) + 1, -1);
    std::vector<int> pos(static_cast<size_t>(2 * inst.n) + 1, -1);
    for (size_t r = 0; r < routes.size(); ++r)
      for (size_t k = 0; k < routes[r].size(); ++k) {
        route_of[static_cast<size_t>(routes[r][k])] = static_cast<int>(r);
        pos[static_cast<size_t>(routes[r][k])] = static_cast<int>(k);
      }

    int violations = 0;
    for (int i = 1; i <= inst.n; ++i) {
      const int p = i, d = inst.delivery_of(i);
      const bool ok = route_of[static_cast<size_t>(d)] >= 0 &&
                      route_of[static_cast<size_t>(d)] == route_of[static_cast<size_t>(p)] &&
                      pos[static_cast<size_t>(p)] < pos[static_cast<size_t>(d)];
      if (ok) continue;
      ++violations;
      if (route_of[static_cast<size_t>(d)] < 0) continue;  // delivery unreached: next round
      const auto& route = routes[static_cast<size_t>(route_of[static_cast<size_t>(d)])];
      std::vector<int> S{0};
      for (int k = 0; k <= pos[static_cast<size_t>(d)]; ++k) S.push_back(route[static_cast<size_t>(k)]);
      std::vector<int> key = S;
      std::sort(key.begin(), key.end());
      if (added.insert(key).second) add_sec_row(m, S);
    }
    if (violations == 0) return res;
    if (static_cast<int>(added.size()) == res.sec_cuts) {
      // nothing new to add although the decode is inconsistent
      res.status = SolveStatus::Error;
      res.message = "pairing-precedence separation stalled";
      return res;
    }
  }
  res.status = SolveStatus::Error;
  res.message = "pairing-precedence separation exceeded round limit";
  return res;
}

Solved solve_formulation(MilpModel& m, const DarpInstance& inst, const EventGraph* g,
                         const BackendConfig& cfg) {
  Solved out;
  out.result = m.formulation == "lb" ? solve_lb_with_lazy_sec(m, inst, cfg)
                                     : solve_model(m, cfg);
  if (!out.result.x.empty()) out.routes = extract_routes(m, inst, g, out.result.x);
  return out;
}

double max_fractionality(const MilpModel& integrality_from, const std::vector<double>& x) {
  double worst = 0.0;
  for (size_t i = 0; i < integrality_from.vars().size(); ++i) {
    if (!integrality_from.var(static_cast<int>(i)).integer) continue;
    const double v = x.at(i);
    worst = std::max(worst, std::fabs(v - std::round(v)));
  }
  return worst;
}

}  // namespace darp
