#pragma once

// Stable tubes of rank p and their cluster tubes. Objects X_i^{(n)} are
// labelled by socle: X_i^{(n)} is uniserial of length n with socle S_i and
// top S_{i-n+1}, and tau X_i^{(n)} = X_{i+1}^{(n)}.
//
// NilpRep realizes the tube as nilpotent representations of the cyclic
// quiver with arrows j -> j+1 over Q; it is the reference for everything
// the closed forms claim.

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "clustercat/linalg.hpp"

namespace clustercat {

struct TubeObject {
  int p = 1;
  std::int64_t i = 0;  // reduced mod p
  std::int64_t n = 1;  // length, >= 1

  static TubeObject make(int p, std::int64_t i, std::int64_t n);
  bool exceptional() const { return n < p; }
  std::string str() const;  // "X_i^(n)"

  friend bool operator==(const TubeObject&, const TubeObject&) = default;
  friend auto operator<=>(const TubeObject&, const TubeObject&) = default;
};

TubeObject tube_tau(const TubeObject& x);
TubeObject tube_tau_inv(const TubeObject& x);

// Number of l in [1, min(n, m)] with l = j - i + n mod p.
std::int64_t tube_hom_dim(const TubeObject& x, const TubeObject& y);
std::int64_t tube_ext_dim(const TubeObject& x, const TubeObject& y);

struct ClusterDims {
  std::int64_t d0 = 0;
  std::int64_t d1 = 0;
  std::int64_t total() const { return d0 + d1; }
  friend bool operator==(const ClusterDims&, const ClusterDims&) = default;
};

// (hom(X, Y), ext(X, tau^- Y)).
ClusterDims cluster_hom_dims(const TubeObject& x, const TubeObject& y);

// ---------------------------------------------------------------- oracle

class NilpRep {
 public:
  NilpRep() = default;
  NilpRep(int p, std::vector<std::size_t> dims, std::vector<QMatrix> maps);

  // Basis e_0..e_{n-1}, e_k at vertex top + k, arrows e_k -> e_{k+1}.
  static NilpRep uniserial(const TubeObject& x);
  static NilpRep zero(int p);
  static NilpRep direct_sum(const NilpRep& a, const NilpRep& b);

  int p() const { return p_; }
  std::size_t dim(std::int64_t vertex) const;
  std::size_t total_dim() const;
  // A_j : V_j -> V_{j+1}, a dim(j+1) x dim(j) matrix.
  const QMatrix& arrow(std::int64_t vertex) const;
  bool is_nilpotent() const;
  // Vertex rotation (tau V)_j = V_{j-1}.
  NilpRep tau() const;
  NilpRep tau_inv() const;

 private:
  std::size_t slot(std::int64_t vertex) const;
  int p_ = 1;
  std::vector<std::size_t> dims_;
  std::vector<QMatrix> maps_;
};

// Family of linear maps f_j : V_j -> W_j, one per vertex.
struct RepMap {
  std::vector<QMatrix> comps;

  static RepMap zero(const NilpRep& src, const NilpRep& dst);
  static RepMap identity(const NilpRep& v);
  bool is_zero() const;
  std::vector<Rational> flatten() const;
  friend bool operator==(const RepMap&, const RepMap&) = default;
};

bool is_morphism(const RepMap& f, const NilpRep& src, const NilpRep& dst);
RepMap compose(const RepMap& g, const RepMap& f);  // g after f
RepMap add(const RepMap& a, const RepMap& b);
RepMap scale(const RepMap& a, const Rational& s);
RepMap tau(const RepMap& f);
RepMap tau_inv(const RepMap& f);
// [f; g] : A -> B + C and [f, g] : B + C -> A, with B's basis first at each vertex.
RepMap stack(const RepMap& to_b, const RepMap& to_c);
RepMap juxtapose(const RepMap& from_b, const RepMap& from_c);
bool is_injective(const RepMap& f);
bool is_surjective(const RepMap& f, const NilpRep& dst);

// Basis of the solution space of B_j f_j = f_{j+1} A_j.
std::vector<RepMap> hom_basis(const NilpRep& src, const NilpRep& dst);
// Coordinates of f in the given basis; throws if f is not in the span.
std::vector<Rational> hom_coordinates(const std::vector<RepMap>& basis, const RepMap& f);
RepMap combination(const std::vector<RepMap>& basis, const std::vector<Rational>& coeffs, const NilpRep& src,
                   const NilpRep& dst);

// iota_i^{(n)} : X_i^{(n)} -> X_i^{(n+1)} and pi_i^{(n)} : X_{i+1}^{(n+1)} -> X_i^{(n)};
// both are the zero map when n = 0.
RepMap tube_iota(int p, std::int64_t i, std::int64_t n);
RepMap tube_pi(int p, std::int64_t i, std::int64_t n);

// ---------------------------------------------------------------- graded morphisms

// Element of Hom_C(X, Y) = Hom(X, Y) + Ext^1(X, tau^- Y). deg0 holds
// coordinates in hom_basis(X, Y); deg1 holds the values of the functional on
// hom_basis(tau^- Y, tau X), which realizes Ext^1(X, tau^- Y) by Serre duality.
struct GradedMorphism {
  TubeObject src, dst;
  std::vector<Rational> deg0;
  std::vector<Rational> deg1;

  bool is_zero() const;
  friend bool operator==(const GradedMorphism&, const GradedMorphism&) = default;
};

struct TubeReport {
  std::int64_t checked = 0;
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

// Oracle computations in one tube, with cached hom bases. Not thread-safe;
// use one instance per thread.
class TubeLab {
 public:
  explicit TubeLab(int p);

  int p() const { return p_; }
  TubeObject object(std::int64_t i, std::int64_t n) const { return TubeObject::make(p_, i, n); }
  const NilpRep& rep(const TubeObject& x);
  const std::vector<RepMap>& hom(const TubeObject& x, const TubeObject& y);

  std::int64_t oracle_hom_dim(const TubeObject& x, const TubeObject& y) { return static_cast<std::int64_t>(hom(x, y).size()); }

  GradedMorphism zero(const TubeObject& x, const TubeObject& y);
  GradedMorphism identity(const TubeObject& x);
  // g o f with rule (g0 + g1)(f0 + f1) = g0 f0 + (tau^- g0 . f1 + g1 . f0).
  GradedMorphism compose_graded(const GradedMorphism& g, const GradedMorphism& f);

  // For every tube index i, 1 <= n <= n_max and Z of length <= n_max:
  // f -> tau(iota) o f from Hom(Z, tau X_i^(n)) to Hom(Z, tau X_i^(n+1)) is
  // injective, and bijective when Z has length n.
  TubeReport check_yoneda_lemma(std::int64_t n_max);
  // Commutation iota pi = pi iota and exactness plus non-splitting of the
  // almost split sequences ending in X_i^(n), n <= n_max.
  TubeReport ar_sequence_check(std::int64_t n_max);

 private:
  int p_;
  std::map<TubeObject, NilpRep> reps_;
  std::map<std::pair<TubeObject, TubeObject>, std::vector<RepMap>> homs_;
};

}  // namespace clustercat
