#include "darp/instance.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "darp/route.hpp"

namespace darp {
namespace {

struct RawNode {
  int id;
  double x, y, d;
  int q;
  double e, l;
};

RawNode parse_node_line(const std::string& line, int lineno) {
  std::istringstream ls(line);
  RawNode nd{};
  if (!(ls >> nd.id >> nd.x >> nd.y >> nd.d >> nd.q >> nd.e >> nd.l)) {
    throw ParseError("line " + std::to_string(lineno) + ": expected `id x y d q e l`, got: " + line);
  }
  return nd;
}

}  // namespace

DarpInstance parse_cordeau(std::istream& in, const ParseOptions& opts) {
  std::string line;
  int lineno = 0;
  auto next_line = [&]() -> std::string {
    while (std::getline(in, line)) {
      ++lineno;
      if (line.find_first_not_of(" \t\r\n") != std::string::npos) return line;
    }
    throw ParseError("line " + std::to_string(lineno + 1) + ": unexpected end of file");
  };

  DarpInstance inst;
  inst.name = opts.name;
  {
    std::istringstream hs(next_line());
    if (!(hs >> inst.K >> inst.n >> inst.T >> inst.Q >> line)) {
      throw ParseError("line 1: expected header `K n T Q L`");
    }
    // L parsed as text first so a trailing comment does not break it
    try {
      (void)std::stod(line);
    } catch (...) {
      throw ParseError("line 1: bad ride-time value `" + line + "`");
    }
  }
  const double L = std::stod(line);
  if (inst.n <= 0 || inst.K <= 0 || inst.Q <= 0 || inst.T <= 0) {
    throw ParseError("line 1: nonpositive instance dimension");
  }

  const int m = 2 * inst.n + 2;
  std::vector<RawNode> nodes;
  nodes.reserve(static_cast<size_t>(m));
  for (int k = 0; k < m; ++k) {
    RawNode nd = parse_node_line(next_line(), lineno);
    if (nd.id != k) {
      throw ParseError("line " + std::to_string(lineno) + ": expected node id " + std::to_string(k) +
                       ", got " + std::to_string(nd.id));
    }
    nodes.push_back(nd);
  }

  inst.requests.resize(static_cast<size_t>(inst.n));
  for (int i = 1; i <= inst.n; ++i) {
    const RawNode& p = nodes[static_cast<size_t>(i)];
    const RawNode& d = nodes[static_cast<size_t>(inst.n + i)];
    Request& r = inst.requests[static_cast<size_t>(i) - 1];
    r.id = i;
    r.q = p.q;
    r.s = p.d;
    r.L = L;
    r.pickup = Window{p.e, p.l};
    r.delivery = Window{d.e, d.l};
    if (p.q <= 0 || d.q != -p.q) {
      throw ParseError("request " + std::to_string(i) + ": loads must be +q at the pickup and -q at the delivery");
    }
    if (p.q > inst.Q) {
      throw ParseError("request " + std::to_string(i) + ": load " + std::to_string(p.q) +
                       " exceeds vehicle capacity " + std::to_string(inst.Q));
    }
    r.inbound = opts.inbound ? (*opts.inbound)[static_cast<size_t>(i) - 1] : (i > inst.n / 2);
  }

  const int locs = inst.num_locations();
  inst.xy.resize(static_cast<size_t>(locs));
  inst.xy[0] = {nodes[0].x, nodes[0].y};
  for (int loc = 1; loc < locs; ++loc) inst.xy[static_cast<size_t>(loc)] = {nodes[static_cast<size_t>(loc)].x, nodes[static_cast<size_t>(loc)].y};

  inst.time.assign(static_cast<size_t>(locs), std::vector<double>(static_cast<size_t>(locs), 0.0));
  for (int a = 0; a < locs; ++a) {
    for (int b = 0; b < locs; ++b) {
      const double dx = inst.xy[static_cast<size_t>(a)].first - inst.xy[static_cast<size_t>(b)].first;
      const double dy = inst.xy[static_cast<size_t>(a)].second - inst.xy[static_cast<size_t>(b)].second;
      inst.time[static_cast<size_t>(a)][static_cast<size_t>(b)] = std::hypot(dx, dy);
    }
  }
  inst.cost = inst.time;

  for (int i = 1; i <= inst.n; ++i) {
    Request& r = inst.requests[static_cast<size_t>(i) - 1];
    r.direct = inst.time[static_cast<size_t>(i)][static_cast<size_t>(inst.n + i)];
    if (!(r.direct + r.s > 0.0) || !(r.direct + r.s < r.L)) {
      throw ParseError("request " + std::to_string(i) + ": direct time " + std::to_string(r.direct) +
                       " plus service " + std::to_string(r.s) + " must lie strictly inside (0, L=" +
                       std::to_string(r.L) + ")");
    }
  }

  // Euclidean distances satisfy the triangle inequality; keep the guard for
  // instances built from explicit matrices that re-enter through this path.
  for (int a = 0; a < locs; ++a)
    for (int b = 0; b < locs; ++b)
      for (int c = 0; c < locs; ++c)
        if (inst.time[static_cast<size_t>(a)][static_cast<size_t>(b)] >
            inst.time[static_cast<size_t>(a)][static_cast<size_t>(c)] + inst.time[static_cast<size_t>(c)][static_cast<size_t>(b)] + 1e-9) {
          throw ParseError("triangle inequality violated on locations " + std::to_string(a) + "," +
                           std::to_string(c) + "," + std::to_string(b));
        }

  return inst;
}

DarpInstance parse_cordeau_file(const std::string& path, const ParseOptions& opts) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open instance file: " + path);
  ParseOptions o = opts;
  if (o.name.empty()) {
    std::string stem = path;
    if (auto slash = stem.find_last_of('/'); slash != std::string::npos) stem = stem.substr(slash + 1);
    if (auto dot = stem.find_last_of('.'); dot != std::string::npos) stem = stem.substr(0, dot);
    o.name = stem;
  }
  return parse_cordeau(in, o);
}

std::string serialize_cordeau(const DarpInstance& inst) {
  std::ostringstream os;
  os << inst.K << " " << inst.n << " " << inst.T << " " << inst.Q << " "
     << (inst.requests.empty() ? 0.0 : inst.requests.front().L) << "\n";
  auto row = [&](int id, int loc, double d, int q, const Window& w) {
    os << id << " " << inst.xy[static_cast<size_t>(loc)].first << " " << inst.xy[static_cast<size_t>(loc)].second << " " << d
       << " " << q << " " << w.e << " " << w.l << "\n";
  };
  row(0, 0, 0.0, 0, Window{0.0, inst.T});
  for (int i = 1; i <= inst.n; ++i) row(i, i, inst.request(i).s, inst.request(i).q, inst.request(i).pickup);
  for (int i = 1; i <= inst.n; ++i)
    row(inst.n + i, inst.n + i, inst.request(i).s, -inst.request(i).q, inst.request(i).delivery);
  row(2 * inst.n + 1, 0, 0.0, 0, Window{0.0, inst.T});
  return os.str();
}

DarpInstance derive_windows(DarpInstance inst) {
  for (Request& r : inst.requests) {
    if (r.inbound) {
      r.delivery.e = r.pickup.e + r.s + r.direct;
      r.delivery.l = r.pickup.l + r.s + r.L;
    } else {
      r.pickup.e = std::max(0.0, r.delivery.e - r.L - r.s);
      r.pickup.l = std::min(r.delivery.l - r.direct - r.s, inst.T);
    }
    if (r.pickup.e > r.pickup.l + 1e-9 || r.delivery.e > r.delivery.l + 1e-9) {
      throw ParseError("request " + std::to_string(r.id) + ": derived window is empty");
    }
  }
  inst.derived = true;
  return inst;
}

DarpInstance extend_windows_x(DarpInstance inst, double delta) {
  for (Request& r : inst.requests) r.tight().l += delta;
  return derive_windows(std::move(inst));
}

DarpInstance load_instance(const std::string& path) {
  std::string base = path;
  bool widened = false;
  if (auto dot = base.rfind(".txt"); dot != std::string::npos && dot >= 2 && base.compare(dot - 2, 2, "-X") == 0) {
    widened = true;
    base = base.substr(0, dot - 2) + base.substr(dot);
  }
  DarpInstance inst = derive_windows(parse_cordeau_file(base));
  if (widened) {
    inst = extend_windows_x(std::move(inst));
    inst.name += "-X";
  }
  return inst;
}

bool path_feasible(const DarpInstance& inst, const std::vector<int>& locs) {
  for (size_t k = 0; k < locs.size(); ++k) {
    const int loc = locs[k];
    if (inst.is_delivery(loc)) {
      const int mate = inst.pickup_of(inst.request_of(loc));
      for (size_t j = k + 1; j < locs.size(); ++j) {
        if (locs[j] == mate) throw std::invalid_argument("delivery precedes its own pickup in sequence");
      }
    }
  }
  return schedule_route(inst, locs).has_value();
}

CompatFlags compat_flags(const DarpInstance& inst) {
  const size_t m = static_cast<size_t>(inst.n) + 1;
  CompatFlags f;
  f.f1.assign(m, std::vector<char>(m, 0));
  f.f2.assign(m, std::vector<char>(m, 0));
  for (size_t i = 0; i < m; ++i) {
    f.f1[i][0] = f.f1[0][i] = f.f2[i][0] = f.f2[0][i] = 1;
  }
  f.f1[0][0] = f.f2[0][0] = 1;
  for (int i = 1; i <= inst.n; ++i) {
    for (int j = 1; j <= inst.n; ++j) {
      if (i == j) continue;  // diagonal unused by construction, kept false
      const int ip = inst.pickup_of(i), im = inst.delivery_of(i);
      const int jp = inst.pickup_of(j), jm = inst.delivery_of(j);
      f.f1[static_cast<size_t>(i)][static_cast<size_t>(j)] = path_feasible(inst, {jp, ip, jm, im}) ? 1 : 0;
      f.f2[static_cast<size_t>(i)][static_cast<size_t>(j)] = path_feasible(inst, {jp, ip, im, jm}) ? 1 : 0;
    }
  }
  return f;
}

}  // namespace darp
