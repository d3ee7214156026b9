#pragma once

// Tame hereditary model of the domestic case: the extended Dynkin quiver
// attached to a domestic weight type, its preprojective, regular and
// preinjective indecomposables, the shifted projectives of the cluster
// category, and the exchange graph of cluster-tilting sets.
//
// The transjective component is Z Q with coordinates (position, vertex):
// PP(m, v) = tau^{-m} P_v sits at m, SP(v) = P_v[1] = tau P_v at -1 and
// PI(m, v) = tau^m I_v = tau^{m+2} P_v at -2 - m.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "clustercat/ktheory.hpp"
#include "clustercat/linalg.hpp"
#include "clustercat/weights.hpp"

namespace clustercat {

using DimVector = std::vector<std::int64_t>;

struct HerObject {
  enum class Kind { PP, SP, PI, Reg };
  Kind kind = Kind::PP;
  std::int64_t m = 0;  // PP, PI
  int v = 0;           // PP, PI, SP
  int tube = 0;        // Reg, 1-based
  std::int64_t k = 0;  // Reg, tau index
  std::int64_t n = 0;  // Reg, length

  static HerObject pp(std::int64_t m, int v) { return {Kind::PP, m, v, 0, 0, 0}; }
  static HerObject pi(std::int64_t m, int v) { return {Kind::PI, m, v, 0, 0, 0}; }
  static HerObject sp(int v) { return {Kind::SP, 0, v, 0, 0, 0}; }
  static HerObject reg(int tube, std::int64_t k, std::int64_t n) { return {Kind::Reg, 0, 0, tube, k, n}; }

  bool transjective() const { return kind != Kind::Reg; }
  bool is_module() const { return kind != Kind::SP; }
  // Position in Z Q; transjective objects only.
  std::int64_t position() const;
  std::string str() const;  // "PP(m,v)", "PI(m,v)", "SP(v)", "R(j,k,n)"

  friend bool operator==(const HerObject&, const HerObject&) = default;
  friend auto operator<=>(const HerObject&, const HerObject&) = default;
};

struct RegularTube {
  int rank = 0;
  std::vector<DimVector> simples;  // simples[k + 1] = Phi simples[k]
};

class StarQuiver {
 public:
  // NotDomestic unless chi > 0.
  explicit StarQuiver(const WeightType& w);

  const WeightType& weights() const { return w_; }
  int size() const { return n_; }
  const std::string& diagram() const { return diagram_; }
  // arrows()(x, y) = number of arrows x -> y.
  const IntMatrix& arrows() const { return a_; }
  const IntMatrix& euler_matrix() const { return e_; }
  const IntMatrix& coxeter() const { return phi_; }
  const IntMatrix& coxeter_inv() const { return phi_inv_; }
  const DimVector& null_root() const { return delta_; }
  const std::vector<RegularTube>& tubes() const { return tubes_; }
  std::string orientation() const;  // "0->1,2->1,..."

  std::int64_t euler(const DimVector& x, const DimVector& y) const;
  std::int64_t defect(const DimVector& x) const { return euler(delta_, x); }

  DimVector proj_dim(int v) const;  // paths v -> u
  DimVector inj_dim(int v) const;   // paths u -> v
  // Dimension vector; SP(v) is sent to -dim P_v.
  DimVector dim(const HerObject& x) const;
  std::int64_t rank(const HerObject& x) const;  // |defect|

  // Throws InvalidArgument for out-of-range vertices, tubes or lengths.
  void validate(const HerObject& x) const;
  HerObject parse_object(std::string_view s) const;

  // Translation in the cluster category: tau PP(0, v) = SP(v), tau SP(v) = PI(0, v).
  HerObject cluster_tau(const HerObject& x) const;
  HerObject cluster_tau_inv(const HerObject& x) const;

  // hom(P_u, tau^{-level} P_v) by knitting the preprojective component,
  // seeded with path counts.
  std::int64_t knit_hom(int u, std::int64_t level, int v) const;
  // hom(tau^{level} I_u, I_v), knitting on the opposite quiver.
  std::int64_t knit_hom_inj(int u, std::int64_t level, int v) const;

  // Module objects only.
  std::int64_t hom_dim(const HerObject& x, const HerObject& y) const;
  std::int64_t ext_dim(const HerObject& x, const HerObject& y) const;
  // ext_C(X, Y) = ext(X, Y) + ext(Y, X); ext_C(SP(v), X) = (dim X)_v; SP-SP is 0.
  std::int64_t cluster_ext(const HerObject& x, const HerObject& y) const;

 private:
  void build_diagram();
  void build_tubes();
  std::vector<std::int64_t> knit_level(const IntMatrix& a, int u, std::int64_t level) const;

  WeightType w_;
  int n_ = 0;
  std::string diagram_;
  IntMatrix a_, e_, paths_, phi_, phi_inv_;
  DimVector delta_;
  std::vector<RegularTube> tubes_;
};

std::vector<RegularTube> regular_simples(const StarQuiver& s);

using ClusterSet = std::vector<HerObject>;  // kept sorted

std::string cluster_key(const ClusterSet& c);
ClusterSet shifted_projective_cluster(const StarQuiver& s);
ClusterSet projective_cluster(const StarQuiver& s);
bool is_cluster(const StarQuiver& s, const ClusterSet& c);

// Transjective objects with tau-exponent <= window, then all regular
// exceptional objects, then shifted projectives.
std::vector<HerObject> cluster_candidates(const StarQuiver& s, std::int64_t window);

struct HerMutation {
  ClusterSet cluster;
  HerObject removed, added;
};

HerMutation mutate(const StarQuiver& s, const ClusterSet& c, const HerObject& m, std::int64_t window = 8);

struct ExchangeGraph {
  std::vector<ClusterSet> nodes;
  std::vector<int> depth;
  std::vector<bool> expanded;  // all n mutations computed
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::vector<std::vector<std::size_t>> neighbors;
  std::size_t window_exhausted = 0;

  // Every expanded node has exactly n distinct neighbours.
  bool regular(int n) const;
  std::string dot() const;
};

ExchangeGraph exchange_bfs(const StarQuiver& s, const ClusterSet& start, int depth, std::int64_t window = 8);

// Length of a shortest mutation path from `from` to `to`, searched from both
// ends; nullopt when longer than max_depth.
std::optional<int> exchange_distance(const StarQuiver& s, const ClusterSet& from, const ClusterSet& to, int max_depth,
                                     std::int64_t window = 8);

// Section of Z Q: transjective members, one per vertex, with
// position(y) - position(x) in {0, 1} along every arrow x -> y.
bool find_slice(const StarQuiver& s, const ClusterSet& c);
// Quiver of a slice as a skew matrix on vertex indices: arrow x -> y of Q
// becomes y -> x when both sit at the same position, x -> y otherwise.
IntMatrix slice_quiver(const StarQuiver& s, const ClusterSet& c);

struct SliceStep {
  HerObject removed, added;
  std::int64_t rank_removed = 0, rank_added = 0;
};

struct SlicePath {
  std::vector<SliceStep> steps;
  ClusterSet end;
  bool rank_increase_observed = false;
};

// BFS through transjective clusters to a slice; DepthExhausted beyond depth.
SlicePath slice_path(const StarQuiver& s, const ClusterSet& c, int depth, std::int64_t window = 8);

struct TorsionStep {
  HerObject removed, added;
  bool root = false;  // mutation at the longest regular member of its tube
};

struct TorsionTrace {
  std::vector<TorsionStep> steps;
  ClusterSet end;
};

// Repeatedly mutate at the root of a regular branch; a root whose complement
// is still regular is first prepared by mutations inside its wing. Stops when
// no regular member is left, or when a single regular member of length one
// is left if stop_at_simple is set. DepthExhausted after `depth` mutations.
TorsionTrace reduce_torsion(const StarQuiver& s, const ClusterSet& c, int depth, std::int64_t window = 8,
                            bool stop_at_simple = false);

}  // namespace clustercat
