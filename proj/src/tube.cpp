#include "clustercat/tube.hpp"

#include <sstream>

#include "clustercat/error.hpp"

namespace clustercat {

namespace {

std::int64_t mod(std::int64_t a, std::int64_t p) { return ((a % p) + p) % p; }

void require_same_tube(const TubeObject& x, const TubeObject& y) {
  if (x.p != y.p) throw Error(ErrorCode::InvalidArgument, "tube objects of different rank");
}

}  // namespace

TubeObject TubeObject::make(int p, std::int64_t i, std::int64_t n) {
  if (p < 1) throw Error(ErrorCode::InvalidArgument, "tube rank must be >= 1");
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "tube object length must be >= 1");
  return TubeObject{p, mod(i, p), n};
}

std::string TubeObject::str() const { return "X_" + std::to_string(i) + "^(" + std::to_string(n) + ")"; }

TubeObject tube_tau(const TubeObject& x) { return TubeObject::make(x.p, x.i + 1, x.n); }
TubeObject tube_tau_inv(const TubeObject& x) { return TubeObject::make(x.p, x.i - 1, x.n); }

std::int64_t tube_hom_dim(const TubeObject& x, const TubeObject& y) {
  require_same_tube(x, y);
  const std::int64_t limit = std::min(x.n, y.n);
  const std::int64_t r = mod(y.i - x.i + x.n, x.p);
  const std::int64_t first = r == 0 ? x.p : r;
  return first <= limit ? (limit - first) / x.p + 1 : 0;
}

std::int64_t tube_ext_dim(const TubeObject& x, const TubeObject& y) { return tube_hom_dim(y, tube_tau(x)); }

ClusterDims cluster_hom_dims(const TubeObject& x, const TubeObject& y) {
  return {tube_hom_dim(x, y), tube_ext_dim(x, tube_tau_inv(y))};
}

// ---------------------------------------------------------------- NilpRep

NilpRep::NilpRep(int p, std::vector<std::size_t> dims, std::vector<QMatrix> maps)
    : p_(p), dims_(std::move(dims)), maps_(std::move(maps)) {
  if (dims_.size() != static_cast<std::size_t>(p_) || maps_.size() != dims_.size())
    throw std::invalid_argument("NilpRep: one space and one arrow per vertex");
  for (int j = 0; j < p_; ++j) {
    const auto& a = maps_[static_cast<std::size_t>(j)];
    if (a.rows() != dim(j + 1) || a.cols() != dim(j)) throw std::invalid_argument("NilpRep: arrow shape mismatch");
  }
}

std::size_t NilpRep::slot(std::int64_t vertex) const { return static_cast<std::size_t>(mod(vertex, p_)); }
std::size_t NilpRep::dim(std::int64_t vertex) const { return dims_[slot(vertex)]; }
const QMatrix& NilpRep::arrow(std::int64_t vertex) const { return maps_[slot(vertex)]; }

std::size_t NilpRep::total_dim() const {
  std::size_t s = 0;
  for (auto d : dims_) s += d;
  return s;
}

NilpRep NilpRep::zero(int p) {
  return NilpRep(p, std::vector<std::size_t>(static_cast<std::size_t>(p), 0),
                 std::vector<QMatrix>(static_cast<std::size_t>(p)));
}

NilpRep NilpRep::uniserial(const TubeObject& x) {
  const int p = x.p;
  const std::int64_t top = x.i - x.n + 1;
  std::vector<std::size_t> dims(static_cast<std::size_t>(p), 0);
  for (std::int64_t k = 0; k < x.n; ++k) ++dims[static_cast<std::size_t>(mod(top + k, p))];
  std::vector<QMatrix> maps;
  for (int j = 0; j < p; ++j) maps.emplace_back(dims[static_cast<std::size_t>(mod(j + 1, p))], dims[static_cast<std::size_t>(j)]);
  // e_k sits at vertex top + k with local index k / p.
  for (std::int64_t k = 0; k + 1 < x.n; ++k) {
    const auto v = static_cast<std::size_t>(mod(top + k, p));
    maps[v](static_cast<std::size_t>((k + 1) / p), static_cast<std::size_t>(k / p)) = Rational(1);
  }
  return NilpRep(p, std::move(dims), std::move(maps));
}

NilpRep NilpRep::direct_sum(const NilpRep& a, const NilpRep& b) {
  if (a.p_ != b.p_) throw std::invalid_argument("NilpRep::direct_sum: rank mismatch");
  std::vector<std::size_t> dims(a.dims_.size());
  std::vector<QMatrix> maps;
  for (std::size_t j = 0; j < dims.size(); ++j) dims[j] = a.dims_[j] + b.dims_[j];
  for (int j = 0; j < a.p_; ++j) {
    QMatrix m(a.dim(j + 1) + b.dim(j + 1), a.dim(j) + b.dim(j));
    const auto& ma = a.arrow(j);
    const auto& mb = b.arrow(j);
    for (std::size_t r = 0; r < ma.rows(); ++r)
      for (std::size_t c = 0; c < ma.cols(); ++c) m(r, c) = ma(r, c);
    for (std::size_t r = 0; r < mb.rows(); ++r)
      for (std::size_t c = 0; c < mb.cols(); ++c) m(ma.rows() + r, ma.cols() + c) = mb(r, c);
    maps.push_back(std::move(m));
  }
  return NilpRep(a.p_, std::move(dims), std::move(maps));
}

bool NilpRep::is_nilpotent() const {
  // Going around the cycle total_dim times must kill every vertex space.
  const std::size_t steps = total_dim() + 1;
  for (int start = 0; start < p_; ++start) {
    QMatrix acc = QMatrix::identity(dim(start));
    for (std::size_t s = 0; s < steps; ++s) acc = arrow(start + static_cast<std::int64_t>(s)) * acc;
    if (!acc.is_zero()) return false;
  }
  return true;
}

NilpRep NilpRep::tau() const {
  std::vector<std::size_t> dims(dims_.size());
  std::vector<QMatrix> maps(maps_.size());
  for (int j = 0; j < p_; ++j) {
    dims[static_cast<std::size_t>(j)] = dim(j - 1);
    maps[static_cast<std::size_t>(j)] = arrow(j - 1);
  }
  return NilpRep(p_, std::move(dims), std::move(maps));
}

NilpRep NilpRep::tau_inv() const {
  std::vector<std::size_t> dims(dims_.size());
  std::vector<QMatrix> maps(maps_.size());
  for (int j = 0; j < p_; ++j) {
    dims[static_cast<std::size_t>(j)] = dim(j + 1);
    maps[static_cast<std::size_t>(j)] = arrow(j + 1);
  }
  return NilpRep(p_, std::move(dims), std::move(maps));
}

// ---------------------------------------------------------------- RepMap

RepMap RepMap::zero(const NilpRep& src, const NilpRep& dst) {
  RepMap f;
  for (int j = 0; j < src.p(); ++j) f.comps.emplace_back(dst.dim(j), src.dim(j));
  return f;
}

RepMap RepMap::identity(const NilpRep& v) {
  RepMap f;
  for (int j = 0; j < v.p(); ++j) f.comps.push_back(QMatrix::identity(v.dim(j)));
  return f;
}

bool RepMap::is_zero() const {
  for (const auto& c : comps)
    if (!c.is_zero()) return false;
  return true;
}

std::vector<Rational> RepMap::flatten() const {
  std::vector<Rational> out;
  for (const auto& c : comps)
    for (std::size_t r = 0; r < c.rows(); ++r)
      for (std::size_t k = 0; k < c.cols(); ++k) out.push_back(c(r, k));
  return out;
}

bool is_morphism(const RepMap& f, const NilpRep& src, const NilpRep& dst) {
  const int p = src.p();
  if (f.comps.size() != static_cast<std::size_t>(p)) return false;
  for (int j = 0; j < p; ++j) {
    const auto& fj = f.comps[static_cast<std::size_t>(j)];
    if (fj.rows() != dst.dim(j) || fj.cols() != src.dim(j)) return false;
  }
  for (int j = 0; j < p; ++j) {
    const auto& fj = f.comps[static_cast<std::size_t>(j)];
    const auto& fn = f.comps[static_cast<std::size_t>(mod(j + 1, p))];
    if (!(dst.arrow(j) * fj == fn * src.arrow(j))) return false;
  }
  return true;
}

RepMap compose(const RepMap& g, const RepMap& f) {
  if (g.comps.size() != f.comps.size()) throw Error(ErrorCode::NotComposable, "representation maps of different rank");
  RepMap h;
  for (std::size_t j = 0; j < f.comps.size(); ++j) {
    if (g.comps[j].cols() != f.comps[j].rows()) throw Error(ErrorCode::NotComposable, "vertex dimension mismatch");
    h.comps.push_back(g.comps[j] * f.comps[j]);
  }
  return h;
}

RepMap add(const RepMap& a, const RepMap& b) {
  RepMap h;
  for (std::size_t j = 0; j < a.comps.size(); ++j) h.comps.push_back(a.comps[j] + b.comps.at(j));
  return h;
}

RepMap scale(const RepMap& a, const Rational& s) {
  RepMap h = a;
  for (auto& c : h.comps)
    for (std::size_t r = 0; r < c.rows(); ++r)
      for (std::size_t k = 0; k < c.cols(); ++k) c(r, k) *= s;
  return h;
}

RepMap tau(const RepMap& f) {
  const auto p = static_cast<std::int64_t>(f.comps.size());
  RepMap h;
  for (std::int64_t j = 0; j < p; ++j) h.comps.push_back(f.comps[static_cast<std::size_t>(mod(j - 1, p))]);
  return h;
}

RepMap tau_inv(const RepMap& f) {
  const auto p = static_cast<std::int64_t>(f.comps.size());
  RepMap h;
  for (std::int64_t j = 0; j < p; ++j) h.comps.push_back(f.comps[static_cast<std::size_t>(mod(j + 1, p))]);
  return h;
}

RepMap stack(const RepMap& to_b, const RepMap& to_c) {
  RepMap h;
  for (std::size_t j = 0; j < to_b.comps.size(); ++j) {
    const auto& b = to_b.comps[j];
    const auto& c = to_c.comps.at(j);
    if (b.cols() != c.cols()) throw std::invalid_argument("stack: source mismatch");
    QMatrix m(b.rows() + c.rows(), b.cols());
    for (std::size_t r = 0; r < b.rows(); ++r)
      for (std::size_t k = 0; k < b.cols(); ++k) m(r, k) = b(r, k);
    for (std::size_t r = 0; r < c.rows(); ++r)
      for (std::size_t k = 0; k < c.cols(); ++k) m(b.rows() + r, k) = c(r, k);
    h.comps.push_back(std::move(m));
  }
  return h;
}

RepMap juxtapose(const RepMap& from_b, const RepMap& from_c) {
  RepMap h;
  for (std::size_t j = 0; j < from_b.comps.size(); ++j) {
    const auto& b = from_b.comps[j];
    const auto& c = from_c.comps.at(j);
    if (b.rows() != c.rows()) throw std::invalid_argument("juxtapose: target mismatch");
    QMatrix m(b.rows(), b.cols() + c.cols());
    for (std::size_t r = 0; r < b.rows(); ++r) {
      for (std::size_t k = 0; k < b.cols(); ++k) m(r, k) = b(r, k);
      for (std::size_t k = 0; k < c.cols(); ++k) m(r, b.cols() + k) = c(r, k);
    }
    h.comps.push_back(std::move(m));
  }
  return h;
}

bool is_injective(const RepMap& f) {
  for (const auto& c : f.comps)
    if (rank(c) != c.cols()) return false;
  return true;
}

bool is_surjective(const RepMap& f, const NilpRep& dst) {
  for (std::size_t j = 0; j < f.comps.size(); ++j)
    if (rank(f.comps[j]) != dst.dim(static_cast<std::int64_t>(j))) return false;
  return true;
}

std::vector<RepMap> hom_basis(const NilpRep& src, const NilpRep& dst) {
  const int p = src.p();
  if (dst.p() != p) throw std::invalid_argument("hom_basis: rank mismatch");
  std::vector<std::size_t> offset(static_cast<std::size_t>(p) + 1, 0);
  for (int j = 0; j < p; ++j)
    offset[static_cast<std::size_t>(j) + 1] = offset[static_cast<std::size_t>(j)] + dst.dim(j) * src.dim(j);
  const std::size_t unknowns = offset.back();
  if (unknowns == 0) return {};
  auto var = [&](std::int64_t j, std::size_t r, std::size_t c) {
    const auto s = static_cast<std::size_t>(mod(j, p));
    return offset[s] + r * src.dim(j) + c;
  };

  std::size_t equations = 0;
  for (int j = 0; j < p; ++j) equations += dst.dim(j + 1) * src.dim(j);
  QMatrix sys(std::max<std::size_t>(equations, 1), unknowns);
  std::size_t row = 0;
  for (int j = 0; j < p; ++j) {
    const auto& a = src.arrow(j);
    const auto& b = dst.arrow(j);
    for (std::size_t r = 0; r < dst.dim(j + 1); ++r)
      for (std::size_t c = 0; c < src.dim(j); ++c, ++row) {
        // (B_j f_j)(r, c) - (f_{j+1} A_j)(r, c) = 0
        for (std::size_t k = 0; k < dst.dim(j); ++k)
          if (!b(r, k).is_zero()) sys(row, var(j, k, c)) += b(r, k);
        for (std::size_t k = 0; k < src.dim(j + 1); ++k)
          if (!a(k, c).is_zero()) sys(row, var(j + 1, r, k)) -= a(k, c);
      }
  }

  std::vector<RepMap> basis;
  for (const auto& v : nullspace(sys)) {
    RepMap f = RepMap::zero(src, dst);
    for (int j = 0; j < p; ++j)
      for (std::size_t r = 0; r < dst.dim(j); ++r)
        for (std::size_t c = 0; c < src.dim(j); ++c) f.comps[static_cast<std::size_t>(j)](r, c) = v[var(j, r, c)];
    basis.push_back(std::move(f));
  }
  return basis;
}

std::vector<Rational> hom_coordinates(const std::vector<RepMap>& basis, const RepMap& f) {
  const auto target = f.flatten();
  if (basis.empty()) {
    for (const auto& x : target)
      if (!x.is_zero()) throw std::logic_error("hom_coordinates: map outside the hom space");
    return {};
  }
  std::vector<std::vector<Rational>> flat;
  for (const auto& b : basis) flat.push_back(b.flatten());
  auto coords = coordinates(flat, target);
  if (!coords) throw std::logic_error("hom_coordinates: map outside the hom space");
  return *coords;
}

RepMap combination(const std::vector<RepMap>& basis, const std::vector<Rational>& coeffs, const NilpRep& src,
                   const NilpRep& dst) {
  if (coeffs.size() != basis.size()) throw Error(ErrorCode::NotComposable, "coefficient count does not match hom basis");
  RepMap f = RepMap::zero(src, dst);
  for (std::size_t k = 0; k < basis.size(); ++k)
    if (!coeffs[k].is_zero()) f = add(f, scale(basis[k], coeffs[k]));
  return f;
}

namespace {

NilpRep rep_or_zero(int p, std::int64_t i, std::int64_t n) {
  return n == 0 ? NilpRep::zero(p) : NilpRep::uniserial(TubeObject::make(p, i, n));
}

// e_k -> e'_{k + shift} for k < count, between uniserials with the given tops.
RepMap uniserial_map(int p, std::int64_t src_top, const NilpRep& src, const NilpRep& dst, std::int64_t shift,
                     std::int64_t count) {
  RepMap f = RepMap::zero(src, dst);
  for (std::int64_t k = 0; k < count; ++k) {
    const auto v = static_cast<std::size_t>(mod(src_top + k, p));
    f.comps[v](static_cast<std::size_t>((k + shift) / p), static_cast<std::size_t>(k / p)) = Rational(1);
  }
  return f;
}

}  // namespace

RepMap tube_iota(int p, std::int64_t i, std::int64_t n) {
  const auto src = rep_or_zero(p, i, n);
  const auto dst = rep_or_zero(p, i, n + 1);
  // Target top is one vertex earlier, so local positions shift by one.
  return uniserial_map(p, i - n + 1, src, dst, 1, n);
}

RepMap tube_pi(int p, std::int64_t i, std::int64_t n) {
  const auto src = rep_or_zero(p, i + 1, n + 1);
  const auto dst = rep_or_zero(p, i, n);
  return uniserial_map(p, i - n + 1, src, dst, 0, n);
}

// ---------------------------------------------------------------- TubeLab

bool GradedMorphism::is_zero() const {
  for (const auto& x : deg0)
    if (!x.is_zero()) return false;
  for (const auto& x : deg1)
    if (!x.is_zero()) return false;
  return true;
}

TubeLab::TubeLab(int p) : p_(p) {
  if (p < 1) throw Error(ErrorCode::InvalidArgument, "tube rank must be >= 1");
}

const NilpRep& TubeLab::rep(const TubeObject& x) {
  auto it = reps_.find(x);
  if (it == reps_.end()) it = reps_.emplace(x, NilpRep::uniserial(x)).first;
  return it->second;
}

const std::vector<RepMap>& TubeLab::hom(const TubeObject& x, const TubeObject& y) {
  const auto key = std::make_pair(x, y);
  auto it = homs_.find(key);
  if (it == homs_.end()) it = homs_.emplace(key, hom_basis(rep(x), rep(y))).first;
  return it->second;
}

GradedMorphism TubeLab::zero(const TubeObject& x, const TubeObject& y) {
  GradedMorphism g{x, y, {}, {}};
  g.deg0.assign(hom(x, y).size(), Rational(0));
  g.deg1.assign(hom(tube_tau_inv(y), tube_tau(x)).size(), Rational(0));
  return g;
}

GradedMorphism TubeLab::identity(const TubeObject& x) {
  GradedMorphism g = zero(x, x);
  g.deg0 = hom_coordinates(hom(x, x), RepMap::identity(rep(x)));
  return g;
}

GradedMorphism TubeLab::compose_graded(const GradedMorphism& g, const GradedMorphism& f) {
  if (!(f.dst == g.src)) throw Error(ErrorCode::NotComposable, f.dst.str() + " != " + g.src.str());
  const TubeObject x = f.src, y = f.dst, z = g.dst;
  if (f.deg0.size() != hom(x, y).size() || g.deg0.size() != hom(y, z).size() ||
      f.deg1.size() != hom(tube_tau_inv(y), tube_tau(x)).size() ||
      g.deg1.size() != hom(tube_tau_inv(z), tube_tau(y)).size())
    throw Error(ErrorCode::NotComposable, "graded morphism has the wrong shape");

  const RepMap f0 = combination(hom(x, y), f.deg0, rep(x), rep(y));
  const RepMap g0 = combination(hom(y, z), g.deg0, rep(y), rep(z));

  GradedMorphism h = zero(x, z);
  h.deg0 = hom_coordinates(hom(x, z), compose(g0, f0));

  // Degree one: functionals on Hom(tau^- Z, tau X).
  const auto& phis = hom(tube_tau_inv(z), tube_tau(x));
  const RepMap g0_shift = tau_inv(g0);  // tau^- Y -> tau^- Z
  const RepMap f0_shift = tau(f0);      // tau X -> tau Y
  for (std::size_t l = 0; l < phis.size(); ++l) {
    Rational value;
    // (tau^- g0)_* f1 evaluated at phi is f1(phi o tau^- g0).
    const auto via_f1 = hom_coordinates(hom(tube_tau_inv(y), tube_tau(x)), compose(phis[l], g0_shift));
    for (std::size_t k = 0; k < via_f1.size(); ++k) value += via_f1[k] * f.deg1[k];
    // f0^* g1 evaluated at phi is g1(tau f0 o phi).
    const auto via_g1 = hom_coordinates(hom(tube_tau_inv(z), tube_tau(y)), compose(f0_shift, phis[l]));
    for (std::size_t k = 0; k < via_g1.size(); ++k) value += via_g1[k] * g.deg1[k];
    h.deg1[l] = value;
  }
  return h;
}

TubeReport TubeLab::check_yoneda_lemma(std::int64_t n_max) {
  TubeReport report;
  for (std::int64_t i = 0; i < p_; ++i)
    for (std::int64_t n = 1; n <= n_max; ++n) {
      const TubeObject tx = tube_tau(object(i, n));
      const TubeObject tx1 = tube_tau(object(i, n + 1));
      const RepMap t_iota = tau(tube_iota(p_, i, n));
      if (!is_morphism(t_iota, rep(tx), rep(tx1))) {
        report.violations.push_back("tau(iota) is not a morphism for " + object(i, n).str());
        continue;
      }
      for (std::int64_t j = 0; j < p_; ++j)
        for (std::int64_t m = 1; m <= n_max; ++m) {
          const TubeObject z = object(j, m);
          const auto& src = hom(z, tx);
          const auto& dst = hom(z, tx1);
          QMatrix image(std::max<std::size_t>(dst.size(), 1), src.size());
          for (std::size_t k = 0; k < src.size(); ++k) {
            const auto c = hom_coordinates(dst, compose(t_iota, src[k]));
            for (std::size_t r = 0; r < c.size(); ++r) image(r, k) = c[r];
          }
          const std::size_t rk = src.empty() ? 0 : rank(image);
          ++report.checked;
          std::ostringstream where;
          where << "Z=" << z.str() << " X=" << object(i, n).str();
          if (rk != src.size())
            report.violations.push_back("not injective at " + where.str());
          else if (m == n && rk != dst.size())
            report.violations.push_back("not bijective at " + where.str());
        }
    }
  return report;
}

TubeReport TubeLab::ar_sequence_check(std::int64_t n_max) {
  TubeReport report;
  for (std::int64_t i = 0; i < p_; ++i)
    for (std::int64_t n = 1; n <= n_max; ++n) {
      ++report.checked;
      const std::string where = " at i=" + std::to_string(i) + " n=" + std::to_string(n);
      // iota_i^{(n-1)} pi_i^{(n-1)} = pi_i^{(n)} iota_{i+1}^{(n)} : X_{i+1}^{(n)} -> X_i^{(n)}
      const RepMap lhs = compose(tube_iota(p_, i, n - 1), tube_pi(p_, i, n - 1));
      const RepMap rhs = compose(tube_pi(p_, i, n), tube_iota(p_, i + 1, n));
      if (!(lhs == rhs)) report.violations.push_back("commutation fails" + where);

      const NilpRep& left = rep(object(i + 1, n));
      const NilpRep& right = rep(object(i, n));
      const NilpRep mid = NilpRep::direct_sum(rep(object(i + 1, n + 1)), rep_or_zero(p_, i, n - 1));
      const RepMap f = stack(tube_iota(p_, i + 1, n), tube_pi(p_, i, n - 1));
      const RepMap g = juxtapose(tube_pi(p_, i, n), scale(tube_iota(p_, i, n - 1), Rational(-1)));
      if (!is_morphism(f, left, mid) || !is_morphism(g, mid, right)) {
        report.violations.push_back("sequence maps are not morphisms" + where);
        continue;
      }
      if (!compose(g, f).is_zero()) report.violations.push_back("g o f != 0" + where);
      if (!is_injective(f)) report.violations.push_back("left map not injective" + where);
      if (!is_surjective(g, right)) report.violations.push_back("right map not surjective" + where);
      if (mid.total_dim() != left.total_dim() + right.total_dim())
        report.violations.push_back("middle term has the wrong dimension" + where);

      // Non-split: id_{X_i^(n)} is not of the form g o h.
      const auto lifts = hom_basis(right, mid);
      std::vector<std::vector<Rational>> images;
      for (const auto& h : lifts) images.push_back(compose(g, h).flatten());
      const auto id = RepMap::identity(right).flatten();
      if (!images.empty() && coordinates(images, id)) report.violations.push_back("sequence splits" + where);
    }
  return report;
}

}  // namespace clustercat
