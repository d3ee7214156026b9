#include "clustercat/ktheory.hpp"

#include <cstdlib>
#include <numeric>
#include <sstream>

#include "clustercat/error.hpp"

namespace clustercat {

namespace {

std::int64_t gcd64(std::int64_t a, std::int64_t b) { return std::gcd(std::llabs(a), std::llabs(b)); }

}  // namespace

std::int64_t line_hom_dim(const LElement& x, const LElement& y, const WeightType& w) {
  const LElement diff = l_sub(y, x, w);
  return diff.m >= 0 ? diff.m + 1 : 0;
}

std::string KVertex::label() const {
  switch (kind) {
    case Kind::Zero: return "0";
    case Kind::Omega: return "w";
    case Kind::Arm: return std::to_string(arm) + "." + std::to_string(j);
  }
  return "";
}

std::vector<KVertex> k_basis(const WeightType& w) {
  std::vector<KVertex> out;
  out.push_back({KVertex::Kind::Zero});
  for (int i = 1; i <= w.t(); ++i)
    for (int j = 1; j < w.weight(i); ++j) out.push_back({KVertex::Kind::Arm, i, j});
  out.push_back({KVertex::Kind::Omega});
  return out;
}

std::size_t EulerData::index_of(const KVertex& v) const {
  switch (v.kind) {
    case KVertex::Kind::Zero: return 0;
    case KVertex::Kind::Omega: return basis.size() - 1;
    case KVertex::Kind::Arm: {
      std::size_t idx = 1;
      for (int i = 1; i < v.arm; ++i) idx += static_cast<std::size_t>(weights.weight(i) - 1);
      return idx + static_cast<std::size_t>(v.j - 1);
    }
  }
  return 0;
}

EulerData build_euler(const WeightType& w) {
  EulerData e;
  e.weights = w;
  e.basis = k_basis(w);
  for (const auto& v : e.basis) {
    switch (v.kind) {
      case KVertex::Kind::Zero: e.basis_elements.push_back(l_zero(w)); break;
      case KVertex::Kind::Omega: e.basis_elements.push_back(l_c(w)); break;
      case KVertex::Kind::Arm: e.basis_elements.push_back(l_scale(l_unit(w, v.arm), v.j, w)); break;
    }
  }
  const std::size_t n = e.basis.size();
  e.gram = IntMatrix(n, n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) e.gram(a, b) = line_hom_dim(e.basis_elements[a], e.basis_elements[b], w);

  const auto ginv = inverse(to_rational(e.gram));
  if (!ginv) throw std::logic_error("build_euler: Gram matrix is singular");
  e.coxeter = to_integer(-(*ginv * to_rational(e.gram.transpose())));

  IntMatrix shifted = e.coxeter;
  for (std::size_t i = 0; i < n; ++i) shifted(i, i) -= 1;
  e.radical_basis = integer_kernel(shifted);
  return e;
}

std::int64_t euler_form(const EulerData& e, const KClass& x, const KClass& y) {
  std::int64_t s = 0;
  for (std::size_t a = 0; a < x.size(); ++a) {
    if (x[a] == 0) continue;
    for (std::size_t b = 0; b < y.size(); ++b) s += x[a] * e.gram(a, b) * y[b];
  }
  return s;
}

std::int64_t k_rank(const KClass& x) { return std::accumulate(x.begin(), x.end(), std::int64_t{0}); }

std::int64_t k_deg(const EulerData& e, const KClass& x) {
  std::int64_t d = 0;
  for (std::size_t v = 0; v < x.size(); ++v) d += x[v] * delta(e.basis_elements[v], e.weights);
  return d;
}

KClass tau_K(const EulerData& e, const KClass& x) { return e.coxeter * x; }

KClass tau_inv_K(const EulerData& e, const KClass& x) {
  // Phi^{-1} = -G^{-T} G; solve Phi y = x over Q and check integrality.
  const auto inv = inverse(to_rational(e.coxeter));
  if (!inv) throw std::logic_error("tau_inv_K: Coxeter matrix is singular");
  std::vector<Rational> xr(x.begin(), x.end());
  const auto y = *inv * xr;
  KClass out(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (!y[i].is_integer()) throw std::logic_error("tau_inv_K: non-integral preimage");
    out[i] = y[i].num();
  }
  return out;
}

KClass basis_vector(const EulerData& e, std::size_t index) {
  KClass v(e.n(), 0);
  v.at(index) = 1;
  return v;
}

KClass k_add(const KClass& x, const KClass& y) {
  KClass out(x);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += y.at(i);
  return out;
}

KClass k_sub(const KClass& x, const KClass& y) {
  KClass out(x);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] -= y.at(i);
  return out;
}

KClass line_class(const EulerData& e, const LElement& x) {
  // [O(x)] = [O] + m([O(c)] - [O]) + sum_i ([O(a_i x_i)] - [O]).
  const std::size_t n = e.n();
  KClass v(n, 0);
  v[0] += 1 - x.m;
  v[n - 1] += x.m;
  for (int i = 1; i <= e.weights.t(); ++i) {
    const auto a = x.a[static_cast<std::size_t>(i - 1)];
    if (a == 0) continue;
    v[e.index_of({KVertex::Kind::Arm, i, static_cast<int>(a)})] += 1;
    v[0] -= 1;
  }
  return v;
}

KClass simple_class(const EulerData& e, int arm, std::int64_t j) {
  const std::int64_t p = e.weights.weight(arm);
  j = ((j % p) + p) % p;
  KClass v(e.n(), 0);
  auto arm_index = [&](std::int64_t jj) -> std::size_t {
    if (jj == 0) return 0;
    return e.index_of({KVertex::Kind::Arm, arm, static_cast<int>(jj)});
  };
  if (j == 0) {
    v[e.n() - 1] += 1;
    v[arm_index(p - 1)] -= 1;
  } else {
    v[arm_index(j)] += 1;
    v[arm_index(j - 1)] -= 1;
  }
  return v;
}

// ---------------------------------------------------------------- slopes

SlopeQ::SlopeQ(std::int64_t d, std::int64_t r) {
  if (d == 0 && r == 0) throw Error(ErrorCode::ZeroClassSlope, "slope of the zero class");
  if (r < 0) {
    d = -d;
    r = -r;
  }
  if (r == 0) {
    d_ = 1;
    r_ = 0;
    return;
  }
  const auto g = gcd64(d, r);
  d_ = d / g;
  r_ = r / g;
}

SlopeQ SlopeQ::parse(std::string_view s) {
  if (s == "inf" || s == "oo" || s == "infinity") return infinity();
  try {
    const auto slash = s.find('/');
    std::size_t used = 0;
    const std::string num(s.substr(0, slash));
    const std::int64_t d = std::stoll(num, &used);
    if (used != num.size()) throw std::invalid_argument("trailing");
    std::int64_t r = 1;
    if (slash != std::string_view::npos) {
      const std::string den(s.substr(slash + 1));
      r = std::stoll(den, &used);
      if (used != den.size()) throw std::invalid_argument("trailing");
      if (r == 0) throw std::invalid_argument("zero denominator");
    }
    return SlopeQ(d, r);
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
    throw Error(ErrorCode::ParseError, "bad slope '" + std::string(s) + "'");
  }
}

std::int64_t SlopeQ::height() const { return std::max<std::int64_t>(std::llabs(d_), r_); }

std::string SlopeQ::str() const {
  if (r_ == 0) return "inf";
  if (r_ == 1) return std::to_string(d_);
  return std::to_string(d_) + "/" + std::to_string(r_);
}

bool operator<(const SlopeQ& a, const SlopeQ& b) {
  if (a.is_infinite()) return false;
  if (b.is_infinite()) return true;
  return static_cast<__int128>(a.d_) * b.r_ < static_cast<__int128>(b.d_) * a.r_;
}

SlopeQ slope(const EulerData& e, const KClass& x) {
  const auto r = k_rank(x);
  const auto d = k_deg(e, x);
  if (r == 0 && d == 0) throw Error(ErrorCode::ZeroClassSlope, "slope undefined: rank and degree vanish");
  return SlopeQ(d, r);
}

bool slope_interval_contains(const SlopeQ& r, const SlopeQ& p, const SlopeQ& q) {
  if (p < q) return p < r && r < q;
  if (q < p) return p < r || r < q;  // inf is the maximum, so (p, inf] is "p < r"
  return !(r == q);
}

// ---------------------------------------------------------------- rational circle

namespace {

void require_tubular(const EulerData& e) {
  if (e.radical_basis.size() != 2 || classify(e.weights).kind != ReprKind::Tubular)
    throw Error(ErrorCode::NotTubular, "weight type " + e.weights.str() + " is not tubular");
}

}  // namespace

KClass circle_from_slope(const SlopeQ& q, const EulerData& e) {
  require_tubular(e);
  const auto& b1 = e.radical_basis[0];
  const auto& b2 = e.radical_basis[1];
  // Linear form f = r * deg - d * rank vanishes exactly on classes of slope d/r.
  auto f = [&](const KClass& v) { return q.r() * k_deg(e, v) - q.d() * k_rank(v); };
  const std::int64_t f1 = f(b1), f2 = f(b2);
  if (f1 == 0 && f2 == 0) throw std::logic_error("circle_from_slope: slope form vanishes on R");
  const std::int64_t g = gcd64(f1, f2);
  const std::int64_t alpha = f2 / g, beta = -f1 / g;
  KClass w(e.n());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = alpha * b1[i] + beta * b2[i];
  const auto r = k_rank(w), d = k_deg(e, w);
  if (r < 0 || (r == 0 && d < 0))
    for (auto& x : w) x = -x;
  if (!(slope(e, w) == q)) throw std::logic_error("circle_from_slope: no class of slope " + q.str());
  return w;
}

SlopeQ circle_to_slope(const KClass& w, const EulerData& e) {
  require_tubular(e);
  return slope(e, w);
}

// ---------------------------------------------------------------- Moebius words

std::int64_t MoebiusWord::letter_length() const {
  std::int64_t n = 0;
  for (const auto& s : syllables) n += std::llabs(s.exp);
  return n;
}

std::string MoebiusWord::str() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < syllables.size(); ++i) {
    const auto& s = syllables[i];
    if (i) os << ' ';
    os << (s.gen == MoebiusGen::Sigma ? 's' : 'r');
    if (s.exp == -1) os << '-';
    else if (s.exp != 1) os << '^' << s.exp;
  }
  return os.str();
}

MoebiusWord MoebiusWord::parse(std::string_view s) {
  MoebiusWord w;
  std::istringstream is{std::string(s)};
  std::string tok;
  while (is >> tok) {
    Syllable syl{MoebiusGen::Sigma, 1};
    if (tok[0] == 's') syl.gen = MoebiusGen::Sigma;
    else if (tok[0] == 'r') syl.gen = MoebiusGen::Rho;
    else throw Error(ErrorCode::ParseError, "bad word token '" + tok + "'");
    const std::string rest = tok.substr(1);
    if (rest.empty()) syl.exp = 1;
    else if (rest == "-") syl.exp = -1;
    else if (rest[0] == '^') {
      try {
        std::size_t used = 0;
        syl.exp = std::stoll(rest.substr(1), &used);
        if (used != rest.size() - 1 || syl.exp == 0) throw std::invalid_argument("exp");
      } catch (const std::exception&) {
        throw Error(ErrorCode::ParseError, "bad word token '" + tok + "'");
      }
    } else {
      throw Error(ErrorCode::ParseError, "bad word token '" + tok + "'");
    }
    w.syllables.push_back(syl);
  }
  return w;
}

IntMatrix moebius_matrix(MoebiusGen gen, std::int64_t exp) {
  IntMatrix m = IntMatrix::identity(2);
  if (gen == MoebiusGen::Sigma) m(0, 1) = exp;
  else m(1, 0) = exp;
  return m;
}

SlopeQ apply_word(const MoebiusWord& w, const SlopeQ& x) {
  __int128 d = x.d(), r = x.r();
  for (auto it = w.syllables.rbegin(); it != w.syllables.rend(); ++it) {
    if (it->gen == MoebiusGen::Sigma) d += static_cast<__int128>(it->exp) * r;
    else r += static_cast<__int128>(it->exp) * d;
  }
  if (d > INT64_MAX || d < INT64_MIN || r > INT64_MAX || r < INT64_MIN)
    throw std::overflow_error("apply_word: overflow");
  return SlopeQ(static_cast<std::int64_t>(d), static_cast<std::int64_t>(r));
}

MoebiusWord word_for_slope(const SlopeQ& q) {
  // Reduce (d, r) to (1, 0) by inverse generators; the word is the reversed
  // sequence of their inverses. Each reduction run becomes one syllable.
  std::vector<Syllable> reduction;  // in order of application
  std::int64_t d = q.d(), r = q.r();
  auto push = [&](MoebiusGen g, std::int64_t e) {
    if (!reduction.empty() && reduction.back().gen == g) reduction.back().exp += e;
    else reduction.push_back({g, e});
  };
  while (r != 0) {
    if (d == 0) {
      // (0, 1) -> (1, 1) by sigma; the sigma move is preferred here.
      push(MoebiusGen::Sigma, 1);
      d = r;
    } else if (d > 0) {
      if (d > r) {
        const std::int64_t k = (d - 1) / r;  // largest k with d - k r >= 1
        push(MoebiusGen::Sigma, -k);
        d -= k * r;
      } else {
        const std::int64_t k = r / d;  // r - k d >= 0
        push(MoebiusGen::Rho, -k);
        r -= k * d;
      }
    } else {
      const std::int64_t a = -d;
      if (a > r) {
        const std::int64_t k = (a - 1) / r;
        push(MoebiusGen::Sigma, k);
        d += k * r;
      } else {
        const std::int64_t k = r / a;
        push(MoebiusGen::Rho, k);
        r -= k * a;
      }
    }
  }
  MoebiusWord w;
  for (auto it = reduction.begin(); it != reduction.end(); ++it) {
    // word = g_1^{-1} g_2^{-1} ... so that the last reduction acts first.
    w.syllables.push_back({it->gen, -it->exp});
  }
  return w;
}

IntMatrix radical_gram(const EulerData& e) {
  const std::size_t k = e.radical_basis.size();
  IntMatrix g(k, k);
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b) g(a, b) = euler_form(e, e.radical_basis[a], e.radical_basis[b]);
  return g;
}

QMatrix radical_action(const EulerData& e, MoebiusGen gen) {
  require_tubular(e);
  // Columns: (deg, rank) of the two radical basis vectors.
  QMatrix coords(2, 2);
  for (std::size_t j = 0; j < 2; ++j) {
    coords(0, j) = Rational(k_deg(e, e.radical_basis[j]));
    coords(1, j) = Rational(k_rank(e.radical_basis[j]));
  }
  const auto inv = inverse(coords);
  if (!inv) throw std::logic_error("radical_action: (deg, rank) degenerate on R");
  return *inv * to_rational(moebius_matrix(gen, 1)) * coords;
}

}  // namespace clustercat
