#include "clustercat/hereditary.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_map>

#include "clustercat/error.hpp"
#include "clustercat/tube.hpp"

namespace clustercat {

namespace {

std::int64_t mod(std::int64_t a, std::int64_t p) { return ((a % p) + p) % p; }

DimVector sum(const DimVector& a, const DimVector& b) {
  DimVector out(a);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += b[i];
  return out;
}

std::int64_t parse_int(std::string_view tok, std::string_view whole) {
  std::string s(tok);
  s.erase(std::remove(s.begin(), s.end(), ' '), s.end());
  try {
    std::size_t used = 0;
    const auto v = std::stoll(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw Error(ErrorCode::ParseError, "bad integer '" + s + "' in '" + std::string(whole) + "'");
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

}  // namespace

std::int64_t HerObject::position() const {
  switch (kind) {
    case Kind::PP: return m;
    case Kind::SP: return -1;
    case Kind::PI: return -2 - m;
    case Kind::Reg: break;
  }
  throw Error(ErrorCode::InvalidArgument, "regular objects have no position in Z Q");
}

std::string HerObject::str() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::PP: os << "PP(" << m << "," << v << ")"; break;
    case Kind::PI: os << "PI(" << m << "," << v << ")"; break;
    case Kind::SP: os << "SP(" << v << ")"; break;
    case Kind::Reg: os << "R(" << tube << "," << k << "," << n << ")"; break;
  }
  return os.str();
}

// ---------------------------------------------------------------- StarQuiver

StarQuiver::StarQuiver(const WeightType& w) : w_(w) {
  if (classify(w).kind != ReprKind::Domestic)
    throw Error(ErrorCode::NotDomestic, "weight type " + w.str() + " is not domestic");
  build_diagram();

  const auto id = IntMatrix::identity(static_cast<std::size_t>(n_));
  e_ = id - a_;
  const auto einv = inverse(to_rational(e_));
  if (!einv) throw std::logic_error("StarQuiver: Euler matrix is singular");
  paths_ = to_integer(*einv);
  phi_ = to_integer(-(*einv * to_rational(e_.transpose())));
  const auto pinv = inverse(to_rational(phi_));
  if (!pinv) throw std::logic_error("StarQuiver: Coxeter matrix is singular");
  phi_inv_ = to_integer(*pinv);

  const auto ker = integer_kernel(phi_ - id);
  if (ker.size() != 1) throw std::logic_error("StarQuiver: Coxeter fixed lattice is not of rank one");
  delta_ = ker[0];
  if (std::accumulate(delta_.begin(), delta_.end(), std::int64_t{0}) < 0)
    for (auto& x : delta_) x = -x;
  build_tubes();
}

void StarQuiver::build_diagram() {
  std::vector<int> p = w_.weights();
  std::sort(p.begin(), p.end());
  std::vector<std::pair<int, int>> edges;  // undirected, oriented below for trees

  if (p.size() <= 2) {
    // Two paths of p_1 and p_2 arrows from the source 0 to the sink; missing weights count as 1.
    while (p.size() < 2) p.insert(p.begin(), 1);
    n_ = p[0] + p[1];
    const int sink = n_ - 1;
    a_ = IntMatrix(static_cast<std::size_t>(n_), static_cast<std::size_t>(n_));
    int next = 1;
    for (int len : p) {
      int prev = 0;
      for (int s = 1; s < len; ++s) {
        a_(static_cast<std::size_t>(prev), static_cast<std::size_t>(next)) += 1;
        prev = next++;
      }
      a_(static_cast<std::size_t>(prev), static_cast<std::size_t>(sink)) += 1;
    }
    diagram_ = n_ == 2 ? "A~1 (Kronecker)" : "A~" + std::to_string(n_ - 1);
    return;
  }

  // Trees, oriented toward vertex 0.
  if (p[0] == 2 && p[1] == 2) {
    const int m = p[2];  // D~_{m+2}: chain of m - 1 vertices, two leaves at each end
    n_ = m + 3;
    const int chain = m - 1;
    for (int c = 0; c + 1 < chain; ++c) edges.push_back({c, c + 1});
    edges.push_back({0, chain});
    edges.push_back({0, chain + 1});
    edges.push_back({chain - 1, chain + 2});
    edges.push_back({chain - 1, chain + 3});
    diagram_ = "D~" + std::to_string(m + 2);
  } else {
    int legs[3] = {0, 0, 0};  // extra vertices per leg
    if (p == std::vector<int>{2, 3, 3}) {
      legs[0] = legs[1] = legs[2] = 2;
      diagram_ = "E~6";
    } else if (p == std::vector<int>{2, 3, 4}) {
      legs[0] = 1;
      legs[1] = legs[2] = 3;
      diagram_ = "E~7";
    } else if (p == std::vector<int>{2, 3, 5}) {
      legs[0] = 1;
      legs[1] = 2;
      legs[2] = 5;
      diagram_ = "E~8";
    } else {
      throw Error(ErrorCode::NotDomestic, "no extended Dynkin diagram for " + w_.str());
    }
    n_ = 1 + legs[0] + legs[1] + legs[2];
    int next = 1;
    for (int leg : legs) {
      int prev = 0;
      for (int s = 0; s < leg; ++s) {
        edges.push_back({prev, next});
        prev = next++;
      }
    }
  }
  if (n_ != w_.k_rank()) throw std::logic_error("StarQuiver: vertex count mismatch");

  // Orient every edge from the vertex farther from 0 to the nearer one.
  std::vector<int> dist(static_cast<std::size_t>(n_), -1);
  dist[0] = 0;
  for (bool changed = true; changed;) {
    changed = false;
    for (auto [x, y] : edges) {
      auto& dx = dist[static_cast<std::size_t>(x)];
      auto& dy = dist[static_cast<std::size_t>(y)];
      if (dx >= 0 && dy < 0) dy = dx + 1, changed = true;
      if (dy >= 0 && dx < 0) dx = dy + 1, changed = true;
    }
  }
  a_ = IntMatrix(static_cast<std::size_t>(n_), static_cast<std::size_t>(n_));
  for (auto [x, y] : edges) {
    if (dist[static_cast<std::size_t>(x)] > dist[static_cast<std::size_t>(y)])
      a_(static_cast<std::size_t>(x), static_cast<std::size_t>(y)) += 1;
    else
      a_(static_cast<std::size_t>(y), static_cast<std::size_t>(x)) += 1;
  }
}

std::vector<RegularTube> regular_simples(const StarQuiver& s) {
  const auto& delta = s.null_root();
  const std::size_t n = delta.size();
  std::set<DimVector> roots;
  DimVector r(n, 0);
  while (true) {
    std::size_t i = 0;
    while (i < n && r[i] == delta[i]) r[i++] = 0;
    if (i == n) break;
    ++r[i];
    if (s.euler(r, r) == 1 && s.defect(r) == 0) roots.insert(r);
  }
  std::vector<RegularTube> tubes;
  std::set<DimVector> seen;
  for (const auto& root : roots) {
    if (seen.count(root)) continue;
    std::vector<DimVector> orbit{root};
    for (DimVector x = s.coxeter() * root; x != root; x = s.coxeter() * x) orbit.push_back(x);
    for (const auto& x : orbit) seen.insert(x);
    DimVector total(n, 0);
    for (const auto& x : orbit) total = sum(total, x);
    // Orbits of regular simples add up to the null root; longer regular
    // objects give multiples of it.
    if (total != delta || orbit.size() < 2) continue;
    tubes.push_back({static_cast<int>(orbit.size()), orbit});  // orbit[0] is lexicographically least
  }
  std::sort(tubes.begin(), tubes.end(), [](const RegularTube& a, const RegularTube& b) {
    return a.rank != b.rank ? a.rank < b.rank : a.simples < b.simples;
  });
  return tubes;
}

void StarQuiver::build_tubes() { tubes_ = regular_simples(*this); }

std::string StarQuiver::orientation() const {
  std::ostringstream os;
  bool first = true;
  for (int x = 0; x < n_; ++x)
    for (int y = 0; y < n_; ++y)
      for (std::int64_t c = 0; c < a_(static_cast<std::size_t>(x), static_cast<std::size_t>(y)); ++c) {
        os << (first ? "" : ",") << x << "->" << y;
        first = false;
      }
  return os.str();
}

std::int64_t StarQuiver::euler(const DimVector& x, const DimVector& y) const {
  std::int64_t s = 0;
  for (int i = 0; i < n_; ++i) {
    if (x[static_cast<std::size_t>(i)] == 0) continue;
    for (int j = 0; j < n_; ++j) s += x[static_cast<std::size_t>(i)] * e_(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) * y[static_cast<std::size_t>(j)];
  }
  return s;
}

DimVector StarQuiver::proj_dim(int v) const { return paths_.row(static_cast<std::size_t>(v)); }
DimVector StarQuiver::inj_dim(int v) const { return paths_.col(static_cast<std::size_t>(v)); }

DimVector StarQuiver::dim(const HerObject& x) const {
  validate(x);
  switch (x.kind) {
    case HerObject::Kind::PP: {
      DimVector d = proj_dim(x.v);
      for (std::int64_t i = 0; i < x.m; ++i) d = phi_inv_ * d;
      return d;
    }
    case HerObject::Kind::PI: {
      DimVector d = inj_dim(x.v);
      for (std::int64_t i = 0; i < x.m; ++i) d = phi_ * d;
      return d;
    }
    case HerObject::Kind::SP: {
      DimVector d = proj_dim(x.v);
      for (auto& c : d) c = -c;
      return d;
    }
    case HerObject::Kind::Reg: {
      const auto& tube = tubes_[static_cast<std::size_t>(x.tube - 1)];
      DimVector d(static_cast<std::size_t>(n_), 0);
      for (std::int64_t l = 0; l < x.n; ++l) d = sum(d, tube.simples[static_cast<std::size_t>(mod(x.k - l, tube.rank))]);
      return d;
    }
  }
  return {};
}

std::int64_t StarQuiver::rank(const HerObject& x) const { return std::llabs(defect(dim(x))); }

void StarQuiver::validate(const HerObject& x) const {
  auto bad = [&](const std::string& why) { throw Error(ErrorCode::InvalidArgument, x.str() + ": " + why); };
  if (x.kind == HerObject::Kind::Reg) {
    if (x.tube < 1 || x.tube > static_cast<int>(tubes_.size())) bad("no such exceptional tube");
    const int r = tubes_[static_cast<std::size_t>(x.tube - 1)].rank;
    if (x.k < 0 || x.k >= r) bad("tau index out of range");
    if (x.n < 1 || x.n >= r) bad("length must satisfy 1 <= n < tube rank");
    return;
  }
  if (x.v < 0 || x.v >= n_) bad("vertex out of range");
  if (x.m < 0) bad("tau exponent must be >= 0");
}

HerObject StarQuiver::parse_object(std::string_view s) const {
  const auto open = s.find('(');
  if (open == std::string_view::npos || s.back() != ')')
    throw Error(ErrorCode::ParseError, "bad object '" + std::string(s) + "'");
  const auto head = s.substr(0, open);
  const auto parts = split(s.substr(open + 1, s.size() - open - 2), ',');
  HerObject x;
  if ((head == "PP" || head == "PI") && parts.size() == 2) {
    const auto m = parse_int(parts[0], s);
    const auto v = static_cast<int>(parse_int(parts[1], s));
    x = head == "PP" ? HerObject::pp(m, v) : HerObject::pi(m, v);
  } else if (head == "SP" && parts.size() == 1) {
    x = HerObject::sp(static_cast<int>(parse_int(parts[0], s)));
  } else if (head == "R" && parts.size() == 3) {
    x = HerObject::reg(static_cast<int>(parse_int(parts[0], s)), parse_int(parts[1], s), parse_int(parts[2], s));
  } else {
    throw Error(ErrorCode::ParseError, "bad object '" + std::string(s) + "'");
  }
  validate(x);
  return x;
}

HerObject StarQuiver::cluster_tau(const HerObject& x) const {
  switch (x.kind) {
    case HerObject::Kind::PP: return x.m == 0 ? HerObject::sp(x.v) : HerObject::pp(x.m - 1, x.v);
    case HerObject::Kind::SP: return HerObject::pi(0, x.v);
    case HerObject::Kind::PI: return HerObject::pi(x.m + 1, x.v);
    case HerObject::Kind::Reg: {
      const int r = tubes_.at(static_cast<std::size_t>(x.tube - 1)).rank;
      return HerObject::reg(x.tube, mod(x.k + 1, r), x.n);
    }
  }
  return x;
}

HerObject StarQuiver::cluster_tau_inv(const HerObject& x) const {
  switch (x.kind) {
    case HerObject::Kind::PP: return HerObject::pp(x.m + 1, x.v);
    case HerObject::Kind::SP: return HerObject::pp(0, x.v);
    case HerObject::Kind::PI: return x.m == 0 ? HerObject::sp(x.v) : HerObject::pi(x.m - 1, x.v);
    case HerObject::Kind::Reg: {
      const int r = tubes_.at(static_cast<std::size_t>(x.tube - 1)).rank;
      return HerObject::reg(x.tube, mod(x.k - 1, r), x.n);
    }
  }
  return x;
}

std::vector<std::int64_t> StarQuiver::knit_level(const IntMatrix& a, int u, std::int64_t level) const {
  const auto n = static_cast<std::size_t>(n_);
  // Path counts of the quiver a: paths(a) = (I - a)^{-1}.
  const auto inv = inverse(to_rational(IntMatrix::identity(n) - a));
  const IntMatrix paths = to_integer(*inv);
  // Sinks of a first.
  std::vector<int> order;
  std::vector<bool> placed(n, false);
  while (order.size() < n)
    for (std::size_t v = 0; v < n; ++v) {
      if (placed[v]) continue;
      bool ready = true;
      for (std::size_t y = 0; y < n; ++y)
        if (a(v, y) > 0 && !placed[y]) ready = false;
      if (ready) {
        placed[v] = true;
        order.push_back(static_cast<int>(v));
      }
    }

  std::vector<std::int64_t> cur(n);
  for (std::size_t v = 0; v < n; ++v) cur[v] = paths(v, static_cast<std::size_t>(u));  // hom(P_u, P_v)
  for (std::int64_t l = 0; l < level; ++l) {
    // Mesh from (l, v) to (l+1, v): middle terms (l, x) for x -> v and (l+1, y) for v -> y.
    std::vector<std::int64_t> next(n, 0);
    for (int vi : order) {
      const auto v = static_cast<std::size_t>(vi);
      std::int64_t s = -cur[v];
      for (std::size_t x = 0; x < n; ++x) s += a(x, v) * cur[x];
      for (std::size_t y = 0; y < n; ++y) s += a(v, y) * next[y];
      next[v] = s;
    }
    cur = std::move(next);
  }
  return cur;
}

std::int64_t StarQuiver::knit_hom(int u, std::int64_t level, int v) const {
  return knit_level(a_, u, level)[static_cast<std::size_t>(v)];
}

std::int64_t StarQuiver::knit_hom_inj(int u, std::int64_t level, int v) const {
  // hom(tau^l I_u, I_v) = hom_{Q^op}(P_v, tau^{-l} P_u).
  return knit_level(a_.transpose(), v, level)[static_cast<std::size_t>(u)];
}

std::int64_t StarQuiver::hom_dim(const HerObject& x, const HerObject& y) const {
  using K = HerObject::Kind;
  if (!x.is_module() || !y.is_module()) throw Error(ErrorCode::InvalidArgument, "hom_dim needs module objects");
  validate(x);
  validate(y);
  if (x.kind == K::PP && y.kind == K::PP) return y.m >= x.m ? knit_hom(x.v, y.m - x.m, y.v) : 0;
  if (x.kind == K::PI && y.kind == K::PI) return x.m >= y.m ? knit_hom_inj(x.v, x.m - y.m, y.v) : 0;
  if (x.kind == K::Reg && y.kind == K::Reg) {
    if (x.tube != y.tube) return 0;
    const int r = tubes_[static_cast<std::size_t>(x.tube - 1)].rank;
    return tube_hom_dim(TubeObject::make(r, x.k, x.n), TubeObject::make(r, y.k, y.n));
  }
  // Forward in the order preprojective < regular < preinjective: ext vanishes.
  const auto stage = [](K k) { return k == K::PP ? 0 : k == K::Reg ? 1 : 2; };
  if (stage(x.kind) < stage(y.kind)) return euler(dim(x), dim(y));
  return 0;
}

std::int64_t StarQuiver::ext_dim(const HerObject& x, const HerObject& y) const {
  if (!x.is_module() || !y.is_module()) throw Error(ErrorCode::InvalidArgument, "ext_dim needs module objects");
  if (x.kind == HerObject::Kind::PP && x.m == 0) return 0;  // projective
  return hom_dim(y, cluster_tau(x));
}

std::int64_t StarQuiver::cluster_ext(const HerObject& x, const HerObject& y) const {
  const bool xs = x.kind == HerObject::Kind::SP, ys = y.kind == HerObject::Kind::SP;
  if (xs && ys) return 0;
  if (xs) return dim(y)[static_cast<std::size_t>(x.v)];
  if (ys) return dim(x)[static_cast<std::size_t>(y.v)];
  return ext_dim(x, y) + ext_dim(y, x);
}

// ---------------------------------------------------------------- clusters

std::string cluster_key(const ClusterSet& c) {
  std::vector<std::string> labels;
  for (const auto& x : c) labels.push_back(x.str());
  std::sort(labels.begin(), labels.end());
  std::string key;
  for (std::size_t i = 0; i < labels.size(); ++i) key += (i ? " " : "") + labels[i];
  return key;
}

ClusterSet shifted_projective_cluster(const StarQuiver& s) {
  ClusterSet c;
  for (int v = 0; v < s.size(); ++v) c.push_back(HerObject::sp(v));
  std::sort(c.begin(), c.end());
  return c;
}

ClusterSet projective_cluster(const StarQuiver& s) {
  ClusterSet c;
  for (int v = 0; v < s.size(); ++v) c.push_back(HerObject::pp(0, v));
  std::sort(c.begin(), c.end());
  return c;
}

bool is_cluster(const StarQuiver& s, const ClusterSet& c) {
  if (static_cast<int>(c.size()) != s.size()) return false;
  for (std::size_t a = 0; a < c.size(); ++a)
    for (std::size_t b = a; b < c.size(); ++b) {
      if (a != b && c[a] == c[b]) return false;
      if (s.cluster_ext(c[a], c[b]) != 0) return false;
    }
  return true;
}

std::vector<HerObject> cluster_candidates(const StarQuiver& s, std::int64_t window) {
  std::vector<HerObject> out;
  for (std::int64_t m = 0; m <= window; ++m)
    for (int v = 0; v < s.size(); ++v) out.push_back(HerObject::pp(m, v));
  for (std::int64_t m = 0; m <= window; ++m)
    for (int v = 0; v < s.size(); ++v) out.push_back(HerObject::pi(m, v));
  for (std::size_t j = 0; j < s.tubes().size(); ++j) {
    const int r = s.tubes()[j].rank;
    for (std::int64_t k = 0; k < r; ++k)
      for (std::int64_t n = 1; n < r; ++n) out.push_back(HerObject::reg(static_cast<int>(j + 1), k, n));
  }
  for (int v = 0; v < s.size(); ++v) out.push_back(HerObject::sp(v));
  return out;
}

HerMutation mutate(const StarQuiver& s, const ClusterSet& c, const HerObject& m, std::int64_t window) {
  if (std::find(c.begin(), c.end(), m) == c.end()) throw Error(ErrorCode::NotInSet, m.str() + " is not a member");
  ClusterSet rest;
  for (const auto& x : c)
    if (!(x == m)) rest.push_back(x);
  std::vector<HerObject> found;
  for (const auto& cand : cluster_candidates(s, window)) {
    if (cand == m || std::find(rest.begin(), rest.end(), cand) != rest.end()) continue;
    bool ok = true;
    for (const auto& r : rest)
      if (s.cluster_ext(cand, r) != 0) {
        ok = false;
        break;
      }
    if (ok) found.push_back(cand);
  }
  if (found.empty())
    throw Error(ErrorCode::WindowExhausted, "no complement for " + m.str() + " within window " + std::to_string(window));
  if (found.size() > 1)
    throw Error(ErrorCode::AmbiguousComplement, "complements " + found[0].str() + " and " + found[1].str());
  if (s.cluster_ext(m, found[0]) != 1)
    throw std::logic_error("mutate: exchange pair " + m.str() + ", " + found[0].str() + " has ext_C != 1");
  HerMutation out{rest, m, found[0]};
  out.cluster.push_back(found[0]);
  std::sort(out.cluster.begin(), out.cluster.end());
  return out;
}

bool ExchangeGraph::regular(int n) const {
  for (std::size_t i = 0; i < nodes.size(); ++i)
    if (expanded[i] && static_cast<int>(neighbors[i].size()) != n) return false;
  return true;
}

std::string ExchangeGraph::dot() const {
  std::ostringstream os;
  os << "graph exchange {\n";
  for (std::size_t i = 0; i < nodes.size(); ++i) os << "  n" << i << " [label=\"" << cluster_key(nodes[i]) << "\"];\n";
  for (auto [a, b] : edges) os << "  n" << a << " -- n" << b << ";\n";
  os << "}\n";
  return os.str();
}

ExchangeGraph exchange_bfs(const StarQuiver& s, const ClusterSet& start, int depth, std::int64_t window) {
  ExchangeGraph g;
  std::unordered_map<std::string, std::size_t> index;
  std::set<std::pair<std::size_t, std::size_t>> edge_set;
  auto add_node = [&](const ClusterSet& c, int d) {
    const auto key = cluster_key(c);
    auto it = index.find(key);
    if (it != index.end()) return it->second;
    g.nodes.push_back(c);
    g.depth.push_back(d);
    g.expanded.push_back(false);
    g.neighbors.emplace_back();
    index.emplace(key, g.nodes.size() - 1);
    return g.nodes.size() - 1;
  };
  add_node(start, 0);
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    if (g.depth[i] >= depth) continue;
    bool complete = true;
    const ClusterSet current = g.nodes[i];
    for (const auto& m : current) {
      HerMutation res;
      try {
        res = mutate(s, current, m, window);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::WindowExhausted) throw;
        ++g.window_exhausted;
        complete = false;
        continue;
      }
      const std::size_t j = add_node(res.cluster, g.depth[i] + 1);
      const auto e = std::minmax(i, j);
      if (edge_set.insert(e).second) {
        g.edges.push_back(e);
        g.neighbors[i].push_back(j);
        g.neighbors[j].push_back(i);
      }
    }
    g.expanded[i] = complete;
  }
  return g;
}

std::optional<int> exchange_distance(const StarQuiver& s, const ClusterSet& from, const ClusterSet& to, int max_depth,
                                     std::int64_t window) {
  std::map<std::string, int> dist[2];
  std::vector<ClusterSet> frontier[2] = {{from}, {to}};
  dist[0][cluster_key(from)] = 0;
  dist[1][cluster_key(to)] = 0;
  if (cluster_key(from) == cluster_key(to)) return 0;
  int reached[2] = {0, 0};
  while (reached[0] + reached[1] < max_depth && (!frontier[0].empty() || !frontier[1].empty())) {
    const int side = frontier[0].empty() ? 1 : frontier[1].empty() ? 0 : (frontier[0].size() <= frontier[1].size() ? 0 : 1);
    std::vector<ClusterSet> next;
    std::optional<int> best;
    for (const auto& c : frontier[side]) {
      for (const auto& m : c) {
        ClusterSet nb;
        try {
          nb = mutate(s, c, m, window).cluster;
        } catch (const Error& e) {
          if (e.code() != ErrorCode::WindowExhausted) throw;
          continue;
        }
        const auto key = cluster_key(nb);
        if (dist[side].count(key)) continue;
        dist[side][key] = reached[side] + 1;
        const auto other = dist[1 - side].find(key);
        if (other != dist[1 - side].end()) {
          const int total = reached[side] + 1 + other->second;
          if (!best || total < *best) best = total;
        }
        next.push_back(std::move(nb));
      }
    }
    if (best) return best;
    ++reached[side];
    frontier[side] = std::move(next);
  }
  return std::nullopt;
}

// ---------------------------------------------------------------- slices

bool find_slice(const StarQuiver& s, const ClusterSet& c) {
  if (static_cast<int>(c.size()) != s.size()) return false;
  std::vector<std::optional<std::int64_t>> pos(static_cast<std::size_t>(s.size()));
  for (const auto& x : c) {
    if (!x.transjective()) return false;
    auto& slot = pos[static_cast<std::size_t>(x.v)];
    if (slot) return false;
    slot = x.position();
  }
  const auto& a = s.arrows();
  for (int x = 0; x < s.size(); ++x)
    for (int y = 0; y < s.size(); ++y)
      if (a(static_cast<std::size_t>(x), static_cast<std::size_t>(y)) > 0) {
        const auto d = *pos[static_cast<std::size_t>(y)] - *pos[static_cast<std::size_t>(x)];
        if (d != 0 && d != 1) return false;
      }
  return true;
}

IntMatrix slice_quiver(const StarQuiver& s, const ClusterSet& c) {
  if (!find_slice(s, c)) throw Error(ErrorCode::InvalidArgument, "not a slice: " + cluster_key(c));
  const auto n = static_cast<std::size_t>(s.size());
  std::vector<std::int64_t> pos(n);
  for (const auto& x : c) pos[static_cast<std::size_t>(x.v)] = x.position();
  IntMatrix b(n, n);
  const auto& a = s.arrows();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      const auto mult = a(x, y);
      if (mult == 0) continue;
      if (pos[x] == pos[y]) {
        b(y, x) += mult;
        b(x, y) -= mult;
      } else {
        b(x, y) += mult;
        b(y, x) -= mult;
      }
    }
  return b;
}

SlicePath slice_path(const StarQuiver& s, const ClusterSet& c, int depth, std::int64_t window) {
  for (const auto& x : c)
    if (!x.transjective()) throw Error(ErrorCode::InvalidArgument, "slice_path needs a transjective cluster");
  struct Visit {
    ClusterSet cluster;
    int depth;
    std::optional<std::size_t> parent;
    HerObject removed, added;
  };
  std::vector<Visit> visits{{c, 0, std::nullopt, {}, {}}};
  std::set<std::string> seen{cluster_key(c)};
  for (std::size_t i = 0; i < visits.size(); ++i) {
    if (find_slice(s, visits[i].cluster)) {
      SlicePath out;
      out.end = visits[i].cluster;
      for (std::optional<std::size_t> at = i; visits[*at].parent; at = visits[*at].parent) {
        const auto& v = visits[*at];
        out.steps.push_back({v.removed, v.added, s.rank(v.removed), s.rank(v.added)});
      }
      std::reverse(out.steps.begin(), out.steps.end());
      for (const auto& st : out.steps)
        if (st.rank_added > st.rank_removed) out.rank_increase_observed = true;
      return out;
    }
    if (visits[i].depth >= depth) continue;
    const ClusterSet current = visits[i].cluster;
    for (const auto& m : current) {
      HerMutation res;
      try {
        res = mutate(s, current, m, window);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::WindowExhausted) throw;
        continue;
      }
      if (!res.added.transjective()) continue;
      if (!seen.insert(cluster_key(res.cluster)).second) continue;
      visits.push_back({res.cluster, visits[i].depth + 1, i, res.removed, res.added});
    }
  }
  throw Error(ErrorCode::DepthExhausted, "no slice within depth " + std::to_string(depth));
}

// ---------------------------------------------------------------- torsion reduction

namespace {

// Y lies in the wing of X when its composition factors are among those of X.
bool in_wing(const StarQuiver& s, const HerObject& root, const HerObject& y) {
  if (y.kind != HerObject::Kind::Reg || y.tube != root.tube) return false;
  const int r = s.tubes()[static_cast<std::size_t>(root.tube - 1)].rank;
  return mod(root.k - y.k, r) + y.n <= root.n;
}

}  // namespace

TorsionTrace reduce_torsion(const StarQuiver& s, const ClusterSet& c, int depth, std::int64_t window,
                            bool stop_at_simple) {
  TorsionTrace trace;
  ClusterSet current = c;
  std::set<std::string> visited{cluster_key(current)};
  auto regular_members = [&] {
    std::vector<HerObject> regs;
    for (const auto& x : current)
      if (x.kind == HerObject::Kind::Reg) regs.push_back(x);
    // Longest first: roots of branches come before their wing members.
    std::sort(regs.begin(), regs.end(), [](const HerObject& a, const HerObject& b) {
      return std::tie(b.n, a.tube, a.k) < std::tie(a.n, b.tube, b.k);
    });
    return regs;
  };
  if (regular_members().empty()) throw Error(ErrorCode::InvalidArgument, "cluster has no regular member");

  while (true) {
    const auto regs = regular_members();
    if (regs.empty()) break;
    if (stop_at_simple && regs.size() == 1 && regs[0].n == 1) break;
    if (static_cast<int>(trace.steps.size()) >= depth)
      throw Error(ErrorCode::DepthExhausted, "torsion part not removed within " + std::to_string(depth) + " mutations");

    std::optional<HerMutation> chosen;
    bool at_root = false;
    for (const auto& root : regs) {
      const bool is_root = std::none_of(regs.begin(), regs.end(), [&](const HerObject& o) {
        return !(o == root) && in_wing(s, o, root);
      });
      if (!is_root) continue;
      auto res = mutate(s, current, root, window);
      if (res.added.transjective()) {
        chosen = res;
        at_root = true;
        break;
      }
      // Prepare the root by a mutation inside its wing.
      for (auto it = regs.rbegin(); it != regs.rend() && !chosen; ++it) {
        if (*it == root || !in_wing(s, root, *it)) continue;
        auto w = mutate(s, current, *it, window);
        if (!visited.count(cluster_key(w.cluster))) chosen = w;
      }
      if (chosen) break;
    }
    if (!chosen) throw Error(ErrorCode::DepthExhausted, "no admissible reduction step from " + cluster_key(current));
    current = chosen->cluster;
    visited.insert(cluster_key(current));
    trace.steps.push_back({chosen->removed, chosen->added, at_root});
  }
  trace.end = current;
  return trace;
}

}  // namespace clustercat
