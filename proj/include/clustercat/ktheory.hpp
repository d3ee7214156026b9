#pragma once

// Grothendieck group K_0 of coh X in the basis of line bundles O(x),
// 0 <= x <= c: Euler form, Coxeter transformation, rank/degree/slope, the
// tau-fixed radical lattice and the action of x -> x+1, x -> x/(1+x) on
// slopes.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "clustercat/linalg.hpp"
#include "clustercat/weights.hpp"

namespace clustercat {

using KClass = std::vector<std::int64_t>;

// dim Hom(O(x), O(y)) = max(0, m + 1) where m is the c-coefficient of y - x.
std::int64_t line_hom_dim(const LElement& x, const LElement& y, const WeightType& w);

struct KVertex {
  enum class Kind { Zero, Arm, Omega } kind;
  int arm = 0;  // 1-based, Arm only
  int j = 0;    // 1..p_arm - 1, Arm only

  std::string label() const;
};

// Basis order: O, then O(j x_i) arm by arm with j increasing, then O(c).
std::vector<KVertex> k_basis(const WeightType& w);

struct EulerData {
  WeightType weights;
  std::vector<KVertex> basis;
  std::vector<LElement> basis_elements;  // x_v with basis vector [O(x_v)]
  IntMatrix gram;                        // <e_v, e_w> = dim Hom(O(x_v), O(x_w))
  IntMatrix coxeter;                     // -G^{-1} G^T, the action of tau
  std::vector<KClass> radical_basis;     // saturated basis of ker(Phi - I)

  std::size_t n() const { return basis.size(); }
  std::size_t index_of(const KVertex& v) const;
};

EulerData build_euler(const WeightType& w);

std::int64_t euler_form(const EulerData& e, const KClass& x, const KClass& y);
std::int64_t k_rank(const KClass& x);
std::int64_t k_deg(const EulerData& e, const KClass& x);
KClass tau_K(const EulerData& e, const KClass& x);
KClass tau_inv_K(const EulerData& e, const KClass& x);

KClass basis_vector(const EulerData& e, std::size_t index);
KClass line_class(const EulerData& e, const LElement& x);
// Class [O(j x_i)] - [O((j-1) x_i)] of the simple torsion sheaf S_{i,j}, j mod p_i.
KClass simple_class(const EulerData& e, int arm, std::int64_t j);

KClass k_add(const KClass& x, const KClass& y);
KClass k_sub(const KClass& x, const KClass& y);

// Element of Q u {inf} as a reduced pair d/r with r >= 0; inf is 1/0.
class SlopeQ {
 public:
  SlopeQ() = default;
  SlopeQ(std::int64_t d, std::int64_t r);
  static SlopeQ infinity() { return SlopeQ(1, 0); }
  static SlopeQ parse(std::string_view s);

  std::int64_t d() const { return d_; }
  std::int64_t r() const { return r_; }
  bool is_infinite() const { return r_ == 0; }
  std::int64_t height() const;
  std::string str() const;

  friend bool operator==(const SlopeQ&, const SlopeQ&) = default;
  // Total order on Q u {inf} with inf the maximum.
  friend bool operator<(const SlopeQ& a, const SlopeQ& b);

 private:
  std::int64_t d_ = 0;
  std::int64_t r_ = 1;
};

// Throws ZeroClassSlope for the zero (rank, degree) pair.
SlopeQ slope(const EulerData& e, const KClass& x);

// Membership in the slope interval from p to q:
// (p, q) if p < q; (p, inf] u (-inf, q) if p > q; Q u {inf} minus q if p = q.
bool slope_interval_contains(const SlopeQ& r, const SlopeQ& p, const SlopeQ& q);

// Primitive class of R with the given slope; tubular types only.
KClass circle_from_slope(const SlopeQ& q, const EulerData& e);
SlopeQ circle_to_slope(const KClass& w, const EulerData& e);

// sigma: x -> x+1 and rho: x -> x/(1+x), acting on columns (d, r).
enum class MoebiusGen { Sigma, Rho };

struct Syllable {
  MoebiusGen gen;
  std::int64_t exp;  // nonzero
  friend bool operator==(const Syllable&, const Syllable&) = default;
};

// Product g_1^{e_1} ... g_k^{e_k}; the rightmost syllable acts first.
struct MoebiusWord {
  std::vector<Syllable> syllables;

  std::size_t syllable_length() const { return syllables.size(); }
  std::int64_t letter_length() const;
  // Space-separated tokens "s", "s-", "r^3", "r^-2", ... read right to left.
  std::string str() const;
  static MoebiusWord parse(std::string_view s);

  friend bool operator==(const MoebiusWord&, const MoebiusWord&) = default;
};

SlopeQ apply_word(const MoebiusWord& w, const SlopeQ& x);
// Subtractive Euclid on (d, r) with runs collapsed into syllables;
// apply_word(word_for_slope(q), inf) == q.
MoebiusWord word_for_slope(const SlopeQ& q);

// 2x2 integer matrix of gen^exp on (d, r) columns.
IntMatrix moebius_matrix(MoebiusGen gen, std::int64_t exp);

// Matrix of gen in the radical basis, transported along (deg, rank); tubular only.
QMatrix radical_action(const EulerData& e, MoebiusGen gen);
// Restriction of the Euler form to the radical basis.
IntMatrix radical_gram(const EulerData& e);

}  // namespace clustercat
