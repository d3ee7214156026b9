#pragma once

// Quivers without loops and 2-cycles as skew-symmetric integer matrices,
// Fomin-Zelevinsky mutation, canonical forms up to vertex relabelling, and
// the cluster-tilted presentation of a canonical algebra with three arms.

#include <cstdint>
#include <string>
#include <vector>

#include "clustercat/linalg.hpp"
#include "clustercat/weights.hpp"

namespace clustercat {

class MutQuiver {
 public:
  MutQuiver() = default;
  // Throws InvalidArgument unless b is square and skew-symmetric.
  explicit MutQuiver(IntMatrix b, std::vector<std::string> labels = {});

  int size() const { return static_cast<int>(b_.rows()); }
  const IntMatrix& b() const { return b_; }
  std::int64_t operator()(int i, int j) const { return b_(static_cast<std::size_t>(i), static_cast<std::size_t>(j)); }
  const std::vector<std::string>& labels() const { return labels_; }
  std::int64_t arrow_count() const;  // sum of positive entries
  std::int64_t max_entry() const;
  std::string dot() const;

  friend bool operator==(const MutQuiver& a, const MutQuiver& b) { return a.b_ == b.b_; }

 private:
  IntMatrix b_;
  std::vector<std::string> labels_;
};

bool is_skew(const IntMatrix& b);

// b'_ij = -b_ij if k in {i, j}, else b_ij + sgn(b_ik) max(0, b_ik b_kj).
MutQuiver fz_mutate(const MutQuiver& q, int k);

// Relabelling P B P^T of least layered key among orderings that respect the
// colour-refined vertex partition; equal for isomorphic quivers.
IntMatrix canonical_form(const IntMatrix& b);
std::string canonical_key(const IntMatrix& b);

struct QuiverArrow {
  int from = 0, to = 0;
  std::string name;
};

struct Presentation {
  MutQuiver quiver;
  std::vector<QuiverArrow> arrows;
  std::vector<std::string> relations;
};

// Quiver on 0, the arm vertices and w: arms 0 -> (i,1) -> ... -> (i,p_i-1) -> w
// with arrows x_i, one arrow eta from w to 0; relations
// x_1^{p_1} + x_2^{p_2} + x_3^{p_3} and x_i^{p_i-a} eta x_i^{a-1}, 1 <= a <= p_i.
// WrongArity unless t = 3.
Presentation canonical_cluster_presentation(const WeightType& w);

struct ClassReport {
  std::size_t class_size = 0;
  bool complete = false;  // no unexplored frontier left
  int depth_reached = 0;
  std::int64_t max_entry = 0;
  std::vector<IntMatrix> members;  // canonical forms in discovery order
  std::vector<std::pair<std::size_t, std::size_t>> edges;

  std::string dot() const;
};

// BFS over isomorphism classes. depth < 0 explores until the class closes.
// NodeCapExceeded once more than node_cap classes are found.
ClassReport mutation_class_bfs(const MutQuiver& q, int depth, std::size_t node_cap);

}  // namespace clustercat
