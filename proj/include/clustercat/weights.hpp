#pragma once

// Weight types p = (p_1, ..., p_t) and the rank-one abelian group L(p)
// generated by x_1, ..., x_t, c with relations p_i x_i = c.

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "clustercat/rational.hpp"

namespace clustercat {

class WeightType {
 public:
  WeightType() = default;
  // Rejects weights < 2 and duplicate lambda tokens. An empty lambda list is
  // filled with default tokens "l3", "l4", ...
  explicit WeightType(std::vector<int> weights, std::vector<std::string> lambda = {});

  // "2,3,5" and optionally "a,b" for the parameters.
  static WeightType parse(std::string_view weights, std::string_view lambda = {});

  int t() const { return static_cast<int>(weights_.size()); }
  const std::vector<int>& weights() const { return weights_; }
  // Arms are numbered 1..t.
  int weight(int arm) const { return weights_.at(static_cast<std::size_t>(arm - 1)); }
  // Parameters are opaque: nothing in the library reads them.
  const std::vector<std::string>& lambda() const { return lambda_; }
  std::int64_t p_lcm() const { return lcm_; }

  // Rank of K_0: 2 + sum(p_i - 1).
  int k_rank() const;

  std::string str() const;

  friend bool operator==(const WeightType& a, const WeightType& b) { return a.weights_ == b.weights_; }

 private:
  std::vector<int> weights_;
  std::vector<std::string> lambda_;
  std::int64_t lcm_ = 1;
};

// Element sum a_i x_i + m c of L(p) in normal form 0 <= a_i < p_i.
struct LElement {
  std::vector<std::int64_t> a;
  std::int64_t m = 0;

  friend bool operator==(const LElement&, const LElement&) = default;
  friend auto operator<=>(const LElement&, const LElement&) = default;
};

LElement normal_form(const std::vector<std::int64_t>& a, std::int64_t m, const WeightType& w);

LElement l_zero(const WeightType& w);
LElement l_unit(const WeightType& w, int arm);  // x_arm
LElement l_c(const WeightType& w);
LElement l_add(const LElement& x, const LElement& y, const WeightType& w);
LElement l_neg(const LElement& x, const WeightType& w);
LElement l_sub(const LElement& x, const LElement& y, const WeightType& w);
LElement l_scale(const LElement& x, std::int64_t k, const WeightType& w);

// Degree with delta(x_i) = p_lcm / p_i and delta(c) = p_lcm.
std::int64_t delta(const LElement& x, const WeightType& w);

// Dualizing element (t - 2) c - sum x_i.
LElement omega(const WeightType& w);

Rational euler_characteristic(const WeightType& w);

enum class ReprKind { Domestic, Tubular, Wild };

struct ReprType {
  ReprKind kind;
  Rational chi;
};

ReprType classify(const WeightType& w);
std::string_view repr_kind_name(ReprKind kind);

// Order of the torsion subgroup of L(p) from the Smith form of the relations.
std::int64_t picard_torsion_order(const WeightType& w);

std::string l_str(const LElement& x);

}  // namespace clustercat
