#pragma once

// Line bundles and exceptional torsion sheaves on a weighted projective
// line: hom/ext dimensions, K-classes, tilting sets and exchange mutation.
//
// Torsion(i, k, n) is the tube object X_k^{(n)} of the rank p_i tube at the
// exceptional point of arm i, with X_0^{(1)} = S_i the simple satisfying
// hom(O, S_i) = 1. Its composition factors are S_{i,-k}, ..., S_{i,-k+n-1}
// and its top is S_{i,n-1-k}; S_i^{[j]} = Torsion(i, j-1, j).

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "clustercat/ktheory.hpp"
#include "clustercat/weights.hpp"

namespace clustercat {

struct SheafObject {
  enum class Kind { Line, Torsion };
  Kind kind = Kind::Line;
  LElement x;          // Line
  int arm = 0;         // Torsion, 1-based
  std::int64_t k = 0;  // Torsion, tau index mod p_arm
  std::int64_t n = 0;  // Torsion, length 1 <= n < p_arm

  static SheafObject line(const LElement& x) { return SheafObject{Kind::Line, x, 0, 0, 0}; }
  static SheafObject torsion(const WeightType& w, int arm, std::int64_t k, std::int64_t n);
  // "L(a1,...,at;m)" (normalized) or "T(i,k,n)".
  static SheafObject parse(std::string_view s, const WeightType& w);

  bool is_line() const { return kind == Kind::Line; }
  std::string str() const;

  friend bool operator==(const SheafObject&, const SheafObject&) = default;
  friend auto operator<=>(const SheafObject&, const SheafObject&) = default;
};

struct TiltingCheck {
  bool tilting = false;
  std::string reason;  // empty when tilting
  IntMatrix ext;       // ext(T_a, T_b) over the sorted members
};

struct MutationStep {
  SheafObject removed;
  SheafObject added;
  std::int64_t ext_removed_added = 0;  // ext(M, M*)
  std::int64_t ext_added_removed = 0;  // ext(M*, M)
};

struct MutationResult {
  std::vector<SheafObject> tilting;  // sorted
  MutationStep step;
};

class SheafCategory {
 public:
  explicit SheafCategory(const WeightType& w);

  const WeightType& weights() const { return w_; }
  const EulerData& euler() const { return e_; }
  std::size_t tilting_size() const { return e_.n(); }

  KClass k_class(const SheafObject& x) const;
  SheafObject tau(const SheafObject& x) const;
  SheafObject tau_inv(const SheafObject& x) const;
  // Action of the line bundle O(y): lines shift by y, Torsion(i, k, n) moves to k - a_i(y).
  SheafObject twist(const SheafObject& x, const LElement& y) const;

  std::int64_t hom_dim(const SheafObject& x, const SheafObject& y) const;
  std::int64_t ext_dim(const SheafObject& x, const SheafObject& y) const;
  // Dimension of the degree-one part Ext^1(X, tau^- Y) of Hom_C(X, Y).
  std::int64_t ideal_dim(const SheafObject& x, const SheafObject& y) const;
  std::int64_t cluster_hom_dim(const SheafObject& x, const SheafObject& y) const {
    return hom_dim(x, y) + ideal_dim(x, y);
  }

  TiltingCheck is_tilting(std::vector<SheafObject> t) const;
  std::vector<SheafObject> canonical_tilting() const;
  std::vector<SheafObject> squid_tilting() const;

  // Unique complement M* != M of T \ {M}. Lines are searched with
  // c-coefficient within `window` of the line members of T, torsion
  // exhaustively. WindowExhausted if nothing is found (also the case when the
  // complement is a bundle of rank >= 2), AmbiguousComplement if more than one.
  MutationResult mutate(const std::vector<SheafObject>& t, const SheafObject& m, std::int64_t window = 2) const;

  // Arm by arm, mutate O(j x_h) for j = p_h - 1 down to 1, turning T_can into
  // T_sq. Every step goes through mutate.
  std::vector<MutationStep> replay_squid(std::int64_t window = 2) const;

  // Lines with |m| <= m_bound (all a-vectors) followed by all torsion objects.
  std::vector<SheafObject> universe(std::int64_t m_bound) const;
  std::vector<SheafObject> torsion_objects() const;

 private:
  WeightType w_;
  EulerData e_;
};

}  // namespace clustercat
