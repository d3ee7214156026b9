#include <gtest/gtest.h>

#include <optional>
#include <random>

#include "clustercat/error.hpp"
#include "clustercat/ktheory.hpp"

using namespace clustercat;

namespace {

const std::vector<std::vector<int>> kTubular{{2, 2, 2, 2}, {3, 3, 3}, {2, 4, 4}, {2, 3, 6}};
const std::vector<std::vector<int>> kMixed{{}, {2}, {3, 4}, {2, 2, 2}, {2, 3, 5}, {2, 2, 2, 2}, {2, 3, 6}, {2, 3, 7}};

// Monomials of the coordinate algebra in degree z. There are max(t, 2)
// generators; missing ones (t < 2) have degree c. For t >= 3 the relations
// rewrite X_i^{p_i} (i >= 3) in X_1, X_2, so standard monomials have
// e_i < p_i for i >= 3.
std::int64_t monomial_count(const LElement& z, const WeightType& w) {
  if (z.m < 0) return 0;
  const int t = w.t();
  const int vars = std::max(t, 2);
  std::vector<std::int64_t> bound;
  for (int i = 0; i < vars; ++i) {
    const std::int64_t p = i < t ? w.weights()[static_cast<std::size_t>(i)] : 1;
    bound.push_back(i < 2 ? p * (z.m + 1) : p - 1);
  }
  std::int64_t count = 0;
  std::vector<std::int64_t> e(static_cast<std::size_t>(vars), 0);
  while (true) {
    std::vector<std::int64_t> arms(e.begin(), e.begin() + t);
    std::int64_t extra = 0;
    for (int i = t; i < vars; ++i) extra += e[static_cast<std::size_t>(i)];
    if (normal_form(arms, extra, w) == z) ++count;
    int i = vars - 1;
    while (i >= 0 && ++e[static_cast<std::size_t>(i)] > bound[static_cast<std::size_t>(i)]) e[static_cast<std::size_t>(i--)] = 0;
    if (i < 0) break;
  }
  return count;
}

using Ext = std::optional<Rational>;  // nullopt is infinity

Ext moebius_oracle(MoebiusGen g, int sign, Ext x) {
  if (g == MoebiusGen::Sigma) return x ? Ext(*x + Rational(sign)) : x;
  // rho: x -> x / (1 + x); rho^-1: x -> x / (1 - x).
  if (!x) return Rational(sign);
  const Rational den = Rational(1) + Rational(sign) * *x;
  if (den.is_zero()) return std::nullopt;
  return *x / den;
}

Ext evaluate(const MoebiusWord& w, Ext x) {
  for (auto it = w.syllables.rbegin(); it != w.syllables.rend(); ++it)
    for (std::int64_t k = 0; k < std::llabs(it->exp); ++k) x = moebius_oracle(it->gen, it->exp > 0 ? 1 : -1, x);
  return x;
}

Ext as_ext(const SlopeQ& q) { return q.is_infinite() ? Ext() : Ext(Rational(q.d(), q.r())); }

KClass random_class(std::mt19937& rng, std::size_t n) {
  KClass v;
  for (std::size_t i = 0; i < n; ++i) v.push_back(static_cast<std::int64_t>(rng() % 7) - 3);
  return v;
}

}  // namespace

TEST(LineHom, MatchesMonomialCount) {
  std::mt19937 rng(1);
  for (const auto& p : std::vector<std::vector<int>>{{}, {3}, {2, 3}, {2, 2, 2}, {2, 3, 5}, {2, 2, 2, 2}}) {
    const WeightType w(p);
    for (int k = 0; k < 60; ++k) {
      std::vector<std::int64_t> a;
      for (int i = 0; i < w.t(); ++i) a.push_back(static_cast<std::int64_t>(rng() % 7) - 3);
      const auto z = normal_form(a, static_cast<std::int64_t>(rng() % 5) - 2, w);
      EXPECT_EQ(line_hom_dim(l_zero(w), z, w), monomial_count(z, w)) << w.str() << " " << l_str(z);
    }
  }
  const WeightType w({2, 3, 5});
  EXPECT_EQ(line_hom_dim(l_zero(w), l_c(w), w), 2);
}

TEST(Euler, BasisAndGramProperties) {
  for (const auto& p : kMixed) {
    const WeightType w(p);
    const auto e = build_euler(w);
    ASSERT_EQ(e.n(), static_cast<std::size_t>(w.k_rank()));
    EXPECT_EQ(determinant(to_rational(e.gram)), Rational(1)) << w.str();
    EXPECT_EQ(e.gram * e.coxeter, -e.gram.transpose());
    std::mt19937 rng(2);
    for (int k = 0; k < 100; ++k) {
      const auto x = random_class(rng, e.n());
      EXPECT_EQ(k_rank(tau_K(e, x)), k_rank(x));
      EXPECT_EQ(tau_inv_K(e, tau_K(e, x)), x);
      if (classify(w).kind == ReprKind::Tubular) { EXPECT_EQ(k_deg(e, tau_K(e, x)), k_deg(e, x)); }
    }
  }
  EXPECT_EQ(build_euler(WeightType({2, 3, 5})).n(), 9u);
}

TEST(Euler, ExampleValues) {
  const WeightType w({2, 3, 5});
  const auto e = build_euler(w);
  EXPECT_EQ(euler_form(e, line_class(e, l_zero(w)), line_class(e, l_c(w))), 2);
  const auto o = line_class(e, l_zero(w));
  EXPECT_EQ(k_rank(o), 1);
  EXPECT_EQ(k_deg(e, o), 0);
  EXPECT_EQ(slope(e, o), SlopeQ(0, 1));
  EXPECT_TRUE(slope(e, simple_class(e, 1, 0)).is_infinite());
  try {
    slope(e, KClass(e.n(), 0));
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), ErrorCode::ZeroClassSlope);
  }
}

TEST(Coxeter, TauOnLinesAndSimples) {
  for (const auto& p : kMixed) {
    const WeightType w(p);
    const auto e = build_euler(w);
    EXPECT_EQ(tau_K(e, line_class(e, l_zero(w))), line_class(e, omega(w)));
    for (int i = 1; i <= w.t(); ++i)
      for (int j = 0; j < w.weight(i); ++j) {
        EXPECT_EQ(tau_K(e, simple_class(e, i, j)), simple_class(e, i, j - 1));
        auto x = simple_class(e, i, j);
        for (int k = 0; k < w.weight(i); ++k) x = tau_K(e, x);
        EXPECT_EQ(x, simple_class(e, i, j));
      }
  }
}

TEST(Radical, RankAndSaturation) {
  for (const auto& p : kTubular) {
    const auto e = build_euler(WeightType(p));
    ASSERT_EQ(e.radical_basis.size(), 2u);
    IntMatrix b(2, e.n());
    for (std::size_t r = 0; r < 2; ++r)
      for (std::size_t c = 0; c < e.n(); ++c) b(r, c) = e.radical_basis[r][c];
    EXPECT_EQ(smith_invariants(b), (std::vector<std::int64_t>{1, 1}));
    for (const auto& v : e.radical_basis) EXPECT_EQ(tau_K(e, v), v);
    const auto g = radical_gram(e);
    EXPECT_EQ(g.transpose(), -g);
  }
  for (const auto& p : std::vector<std::vector<int>>{{2, 2, 2}, {2, 3, 5}, {3, 4}})
    EXPECT_EQ(build_euler(WeightType(p)).radical_basis.size(), 1u);
}

TEST(Radical, GeneratorsHaveDeterminantOneAndPreserveTheForm) {
  for (const auto& p : kTubular) {
    const auto e = build_euler(WeightType(p));
    const auto g = to_rational(radical_gram(e));
    for (auto gen : {MoebiusGen::Sigma, MoebiusGen::Rho}) {
      const auto m = radical_action(e, gen);
      EXPECT_EQ(determinant(m), Rational(1));
      EXPECT_EQ(m.transpose() * g * m, g);
      // integral on the lattice
      for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) EXPECT_TRUE(m(i, j).is_integer());
    }
  }
}

TEST(Circle, RoundTripAndCanonicalSign) {
  std::mt19937 rng(3);
  for (const auto& p : kTubular) {
    const auto e = build_euler(WeightType(p));
    const auto inf = circle_from_slope(SlopeQ::infinity(), e);
    EXPECT_EQ(k_rank(inf), 0);
    EXPECT_GT(k_deg(e, inf), 0);
    const auto zero = circle_from_slope(SlopeQ(0, 1), e);
    EXPECT_GT(k_rank(zero), 0);
    EXPECT_EQ(k_deg(e, zero), 0);
    for (int k = 0; k < 200; ++k) {
      std::int64_t d = 0, r = 0;
      while (d == 0 && r == 0) {
        d = static_cast<std::int64_t>(rng() % 41) - 20;
        r = static_cast<std::int64_t>(rng() % 21);
      }
      const SlopeQ q(d, r);
      const auto v = circle_from_slope(q, e);
      EXPECT_EQ(circle_to_slope(v, e), q);
      EXPECT_EQ(tau_K(e, v), v);
    }
  }
  try {
    circle_from_slope(SlopeQ(0, 1), build_euler(WeightType({2, 3, 5})));
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), ErrorCode::NotTubular);
  }
}

TEST(Slope, ParseAndOrder) {
  EXPECT_EQ(SlopeQ::parse("inf"), SlopeQ::infinity());
  EXPECT_EQ(SlopeQ::parse("-2/4"), SlopeQ(-1, 2));
  EXPECT_EQ(SlopeQ(3, -6), SlopeQ(-1, 2));
  EXPECT_EQ(SlopeQ(-1, 2).str(), "-1/2");
  EXPECT_TRUE(SlopeQ(5, 1) < SlopeQ::infinity());
  EXPECT_TRUE(SlopeQ(-1, 2) < SlopeQ(0, 1));
  EXPECT_THROW(SlopeQ::parse("1/0/2"), Error);
}

TEST(Interval, ThreeCases) {
  const auto q = [](const char* s) { return SlopeQ::parse(s); };
  EXPECT_TRUE(slope_interval_contains(q("inf"), q("3"), q("1")));
  EXPECT_FALSE(slope_interval_contains(q("2"), q("2"), q("2")));
  EXPECT_TRUE(slope_interval_contains(q("5"), q("2"), q("2")));
  EXPECT_TRUE(slope_interval_contains(q("2"), q("1"), q("3")));
  EXPECT_FALSE(slope_interval_contains(q("3"), q("1"), q("3")));
  EXPECT_FALSE(slope_interval_contains(q("inf"), q("1"), q("3")));
  EXPECT_TRUE(slope_interval_contains(q("-7"), q("3"), q("1")));
  EXPECT_FALSE(slope_interval_contains(q("2"), q("3"), q("1")));
}

TEST(Moebius, WordExamples) {
  EXPECT_TRUE(word_for_slope(SlopeQ::infinity()).syllables.empty());
  EXPECT_EQ(word_for_slope(SlopeQ(1, 1)).str(), "r");
  EXPECT_EQ(word_for_slope(SlopeQ(0, 1)).str(), "s- r");
  EXPECT_EQ(apply_word(MoebiusWord::parse("s- r"), SlopeQ::infinity()), SlopeQ(0, 1));
}

TEST(Moebius, GeneratorConventions) {
  EXPECT_EQ(evaluate(MoebiusWord::parse("r"), std::nullopt), Ext(Rational(1)));
  EXPECT_EQ(evaluate(MoebiusWord::parse("r"), Rational(-1)), Ext());
  EXPECT_EQ(apply_word(MoebiusWord::parse("r"), SlopeQ(-1, 1)), SlopeQ::infinity());
  EXPECT_EQ(apply_word(MoebiusWord::parse("s"), SlopeQ::infinity()), SlopeQ::infinity());
}

TEST(Moebius, ApplyWordMatchesFractionArithmetic) {
  std::mt19937 rng(4);
  for (int k = 0; k < 300; ++k) {
    MoebiusWord w;
    const int len = static_cast<int>(rng() % 6);
    for (int i = 0; i < len; ++i) {
      std::int64_t e = static_cast<std::int64_t>(rng() % 7) - 3;
      if (e == 0) e = 1;
      w.syllables.push_back({rng() % 2 ? MoebiusGen::Sigma : MoebiusGen::Rho, e});
    }
    std::int64_t d = 0, r = 0;
    while (d == 0 && r == 0) {
      d = static_cast<std::int64_t>(rng() % 11) - 5;
      r = static_cast<std::int64_t>(rng() % 6);
    }
    const SlopeQ x(d, r);
    EXPECT_EQ(as_ext(apply_word(w, x)), evaluate(w, as_ext(x))) << w.str() << " at " << x.str();
    EXPECT_EQ(MoebiusWord::parse(w.str()), w);
  }
}

TEST(Moebius, WordForSlopeInvertsAndIsShort) {
  for (std::int64_t d = -60; d <= 60; ++d)
    for (std::int64_t r = 0; r <= 60; ++r) {
      if (d == 0 && r == 0) continue;
      const SlopeQ q(d, r);
      const auto w = word_for_slope(q);
      ASSERT_EQ(apply_word(w, SlopeQ::infinity()), q);
      ASSERT_EQ(evaluate(w, std::nullopt), as_ext(q));
      int bits = 0;
      for (auto h = q.height(); h > 0; h >>= 1) ++bits;
      EXPECT_LE(w.syllable_length(), static_cast<std::size_t>(2 * bits + 4)) << q.str();
    }
}

TEST(Moebius, MatrixMatchesAction) {
  for (auto gen : {MoebiusGen::Sigma, MoebiusGen::Rho})
    for (std::int64_t e : {-3, -1, 1, 2}) {
      const auto m = moebius_matrix(gen, e);
      const std::vector<std::int64_t> col{3, 2};
      const auto out = m * col;
      MoebiusWord w{{{gen, e}}};
      EXPECT_EQ(apply_word(w, SlopeQ(3, 2)), SlopeQ(out[0], out[1]));
    }
}
