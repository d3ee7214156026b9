#include "clustercat/quiver.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "clustercat/error.hpp"

namespace clustercat {

namespace {

std::int64_t sgn(std::int64_t x) { return (x > 0) - (x < 0); }

std::size_t sz(int i) { return static_cast<std::size_t>(i); }

// Equitable colouring by iterated neighbourhood signatures; colours are ranks
// of sorted signatures, so the result depends only on the isomorphism class.
std::vector<int> refine(const IntMatrix& b) {
  const int n = static_cast<int>(b.rows());
  std::vector<int> color(sz(n), 0);
  int classes = n == 0 ? 0 : 1;
  while (true) {
    using Sig = std::pair<int, std::vector<std::pair<std::int64_t, int>>>;
    std::vector<Sig> sig(sz(n));
    for (int v = 0; v < n; ++v) {
      sig[sz(v)].first = color[sz(v)];
      for (int u = 0; u < n; ++u)
        if (b(sz(v), sz(u)) != 0) sig[sz(v)].second.emplace_back(b(sz(v), sz(u)), color[sz(u)]);
      std::sort(sig[sz(v)].second.begin(), sig[sz(v)].second.end());
    }
    std::vector<Sig> sorted = sig;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    for (int v = 0; v < n; ++v)
      color[sz(v)] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), sig[sz(v)]) - sorted.begin());
    const int now = static_cast<int>(sorted.size());
    if (now == classes) break;
    classes = now;
  }
  return color;
}

// u and v are exchanged by the transposition automorphism (u v).
bool twins(const IntMatrix& b, int u, int v) {
  if (b(sz(u), sz(v)) != 0) return false;
  for (std::size_t w = 0; w < b.rows(); ++w) {
    if (w == sz(u) || w == sz(v)) continue;
    if (b(sz(u), w) != b(sz(v), w)) return false;
  }
  return true;
}

struct Canonizer {
  const IntMatrix& b;
  int n;
  std::vector<int> color, required, perm;
  std::vector<bool> used;
  std::vector<std::vector<bool>> twin;
  std::vector<std::int64_t> key, best;
  std::vector<int> best_perm;
  bool have_best = false;

  explicit Canonizer(const IntMatrix& m) : b(m), n(static_cast<int>(m.rows())) {
    color = refine(b);
    required = color;
    std::sort(required.begin(), required.end());
    used.assign(sz(n), false);
    twin.assign(sz(n), std::vector<bool>(sz(n), false));
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (color[sz(u)] == color[sz(v)] && twins(b, u, v)) twin[sz(u)][sz(v)] = twin[sz(v)][sz(u)] = true;
  }

  // -1, 0, 1 as the current key prefix compares with the same prefix of best.
  int compare_prefix() const {
    if (!have_best) return -1;
    for (std::size_t i = 0; i < key.size(); ++i)
      if (key[i] != best[i]) return key[i] < best[i] ? -1 : 1;
    return 0;
  }

  void search(int d) {
    if (d == n) {
      if (compare_prefix() < 0) {
        best = key;
        best_perm = perm;
        have_best = true;
      }
      return;
    }
    for (int v = 0; v < n; ++v) {
      if (used[sz(v)] || color[sz(v)] != required[sz(d)]) continue;
      bool skip = false;
      for (int u = 0; u < v && !skip; ++u) skip = !used[sz(u)] && twin[sz(u)][sz(v)];
      if (skip) continue;
      const std::size_t mark = key.size();
      for (int j = 0; j < d; ++j) key.push_back(b(sz(v), sz(perm[sz(j)])));
      if (compare_prefix() <= 0) {
        used[sz(v)] = true;
        perm.push_back(v);
        search(d + 1);
        perm.pop_back();
        used[sz(v)] = false;
      }
      key.resize(mark);
    }
  }
};

std::string matrix_key(const IntMatrix& m) {
  std::ostringstream os;
  os << m.rows() << ':';
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i + 1; j < m.cols(); ++j) os << m(i, j) << ',';
  return os.str();
}

std::string power(const std::string& x, int e) {
  if (e == 0) return "";
  if (e == 1) return x;
  return x + "^" + std::to_string(e);
}

}  // namespace

bool is_skew(const IntMatrix& b) {
  if (b.rows() != b.cols()) return false;
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j)
      if (b(i, j) != -b(j, i)) return false;
  return true;
}

MutQuiver::MutQuiver(IntMatrix b, std::vector<std::string> labels) : b_(std::move(b)), labels_(std::move(labels)) {
  if (!is_skew(b_)) throw Error(ErrorCode::InvalidArgument, "exchange matrix must be square and skew-symmetric");
  if (labels_.empty())
    for (std::size_t i = 0; i < b_.rows(); ++i) labels_.push_back(std::to_string(i));
  if (labels_.size() != b_.rows()) throw Error(ErrorCode::InvalidArgument, "label count does not match matrix size");
}

std::int64_t MutQuiver::arrow_count() const {
  std::int64_t total = 0;
  for (std::size_t i = 0; i < b_.rows(); ++i)
    for (std::size_t j = 0; j < b_.cols(); ++j) total += std::max<std::int64_t>(0, b_(i, j));
  return total;
}

std::int64_t MutQuiver::max_entry() const {
  std::int64_t best = 0;
  for (std::size_t i = 0; i < b_.rows(); ++i)
    for (std::size_t j = 0; j < b_.cols(); ++j) best = std::max<std::int64_t>(best, std::llabs(b_(i, j)));
  return best;
}

std::string MutQuiver::dot() const {
  std::ostringstream os;
  os << "digraph Q {\n";
  for (std::size_t i = 0; i < b_.rows(); ++i) os << "  v" << i << " [label=\"" << labels_[i] << "\"];\n";
  for (std::size_t i = 0; i < b_.rows(); ++i)
    for (std::size_t j = 0; j < b_.cols(); ++j)
      if (b_(i, j) > 0) {
        os << "  v" << i << " -> v" << j;
        if (b_(i, j) > 1) os << " [label=\"" << b_(i, j) << "\"]";
        os << ";\n";
      }
  os << "}\n";
  return os.str();
}

MutQuiver fz_mutate(const MutQuiver& q, int k) {
  const int n = q.size();
  if (k < 0 || k >= n) throw Error(ErrorCode::InvalidArgument, "mutation vertex " + std::to_string(k) + " out of range");
  const auto& b = q.b();
  IntMatrix out(b.rows(), b.cols());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == k || j == k) {
        out(sz(i), sz(j)) = -b(sz(i), sz(j));
        continue;
      }
      const auto bik = b(sz(i), sz(k)), bkj = b(sz(k), sz(j));
      out(sz(i), sz(j)) = b(sz(i), sz(j)) + sgn(bik) * std::max<std::int64_t>(0, bik * bkj);
    }
  if (!is_skew(out)) throw std::logic_error("fz_mutate: result is not skew-symmetric");
  return MutQuiver(std::move(out), q.labels());
}

IntMatrix canonical_form(const IntMatrix& b) {
  if (!is_skew(b)) throw Error(ErrorCode::InvalidArgument, "canonical_form needs a skew-symmetric matrix");
  Canonizer c(b);
  c.search(0);
  IntMatrix out(b.rows(), b.cols());
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) = b(sz(c.best_perm[i]), sz(c.best_perm[j]));
  return out;
}

std::string canonical_key(const IntMatrix& b) { return matrix_key(canonical_form(b)); }

Presentation canonical_cluster_presentation(const WeightType& w) {
  if (w.t() != 3)
    throw Error(ErrorCode::WrongArity, "the cluster presentation is implemented for three arms, got " + std::to_string(w.t()));
  std::vector<std::string> labels{"0"};
  std::vector<std::vector<int>> arm_vertices(3);
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j < w.weight(i); ++j) {
      arm_vertices[sz(i - 1)].push_back(static_cast<int>(labels.size()));
      labels.push_back("(" + std::to_string(i) + "," + std::to_string(j) + ")");
    }
  const int omega_vertex = static_cast<int>(labels.size());
  labels.push_back("w");

  Presentation out;
  IntMatrix b(labels.size(), labels.size());
  auto add_arrow = [&](int from, int to, std::string name) {
    b(sz(from), sz(to)) += 1;
    b(sz(to), sz(from)) -= 1;
    out.arrows.push_back({from, to, std::move(name)});
  };
  for (int i = 1; i <= 3; ++i) {
    int prev = 0;
    const auto& chain = arm_vertices[sz(i - 1)];
    for (int j = 1; j <= w.weight(i); ++j) {
      const int next = j < w.weight(i) ? chain[sz(j - 1)] : omega_vertex;
      add_arrow(prev, next, "x" + std::to_string(i) + "[" + std::to_string(j) + "]");
      prev = next;
    }
  }
  add_arrow(omega_vertex, 0, "η");
  out.quiver = MutQuiver(std::move(b), labels);

  std::string sum;
  for (int i = 1; i <= 3; ++i) {
    if (i > 1) sum += " + ";
    sum += power("x" + std::to_string(i), w.weight(i));
  }
  out.relations.push_back(sum);
  for (int i = 1; i <= 3; ++i) {
    const std::string x = "x" + std::to_string(i);
    for (int a = 1; a <= w.weight(i); ++a) {
      std::string word;
      for (const auto& part : {power(x, w.weight(i) - a), std::string("η"), power(x, a - 1)})
        if (!part.empty()) word += (word.empty() ? "" : " ") + part;
      out.relations.push_back(word);
    }
  }
  return out;
}

std::string ClassReport::dot() const {
  std::ostringstream os;
  os << "graph mutation_class {\n";
  for (std::size_t i = 0; i < members.size(); ++i) os << "  n" << i << " [label=\"" << matrix_key(members[i]) << "\"];\n";
  for (const auto& [a, b] : edges) os << "  n" << a << " -- n" << b << ";\n";
  os << "}\n";
  return os.str();
}

ClassReport mutation_class_bfs(const MutQuiver& q, int depth, std::size_t node_cap) {
  if (depth < 0 && q.size() > 12)
    throw Error(ErrorCode::InvalidArgument, "exhaustive mutation class search is capped at 12 vertices");
  if (node_cap == 0) throw Error(ErrorCode::InvalidArgument, "node cap must be positive");
  ClassReport out;
  std::unordered_map<std::string, std::size_t> index;
  std::map<std::pair<std::size_t, std::size_t>, bool> seen_edges;
  auto visit = [&](const IntMatrix& m) -> std::pair<std::size_t, bool> {
    const auto canon = canonical_form(m);
    const auto key = matrix_key(canon);
    const auto it = index.find(key);
    if (it != index.end()) return {it->second, false};
    if (out.members.size() >= node_cap)
      throw Error(ErrorCode::NodeCapExceeded, "mutation class exceeds " + std::to_string(node_cap) + " classes");
    index.emplace(key, out.members.size());
    out.members.push_back(canon);
    return {out.members.size() - 1, true};
  };

  visit(q.b());
  std::vector<std::size_t> frontier{0};
  int level = 0;
  while (!frontier.empty() && (depth < 0 || level < depth)) {
    std::vector<std::size_t> next;
    for (auto idx : frontier) {
      const MutQuiver cur(out.members[idx]);
      for (int k = 0; k < cur.size(); ++k) {
        const auto mu = fz_mutate(cur, k);
        if (!(fz_mutate(mu, k) == cur)) throw std::logic_error("fz_mutate is not an involution");
        const auto [j, fresh] = visit(mu.b());
        if (fresh) next.push_back(j);
        const auto e = std::minmax(idx, j);
        if (e.first != e.second && !seen_edges[e]) {
          seen_edges[e] = true;
          out.edges.push_back(e);
        }
      }
    }
    frontier = std::move(next);
    if (!frontier.empty()) ++level;
  }
  out.complete = frontier.empty();
  out.depth_reached = level;
  out.class_size = out.members.size();
  for (const auto& m : out.members) out.max_entry = std::max(out.max_entry, MutQuiver(m).max_entry());
  return out;
}

}  // namespace clustercat
