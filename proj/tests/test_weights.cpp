#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "clustercat/error.hpp"
#include "clustercat/weights.hpp"

using namespace clustercat;

namespace {

// Reduce one step at a time: move p_i from a_i into m until 0 <= a_i < p_i.
LElement slow_normalize(std::vector<std::int64_t> a, std::int64_t m, const WeightType& w) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    const int p = w.weights()[i];
    while (a[i] >= p) a[i] -= p, ++m;
    while (a[i] < 0) a[i] += p, --m;
  }
  return LElement{a, m};
}

LElement random_element(std::mt19937& rng, const WeightType& w) {
  std::vector<std::int64_t> a;
  for (int i = 0; i < w.t(); ++i) a.push_back(static_cast<std::int64_t>(rng() % 21) - 10);
  return normal_form(a, static_cast<std::int64_t>(rng() % 9) - 4, w);
}

const std::vector<std::vector<int>> kTypes{{}, {3}, {2, 2}, {2, 3, 5}, {2, 2, 2, 2}, {3, 4, 6}, {2, 3, 7}, {5, 5, 2, 3, 6}};

}  // namespace

TEST(WeightType, ParsesAndRejectsBadInput) {
  const auto w = WeightType::parse("2,3,5");
  EXPECT_EQ(w.weights(), (std::vector<int>{2, 3, 5}));
  EXPECT_EQ(w.p_lcm(), 30);
  EXPECT_EQ(w.k_rank(), 9);
  EXPECT_EQ(w.lambda().size(), 1u);
  EXPECT_EQ(WeightType::parse("").t(), 0);
  EXPECT_EQ(WeightType::parse("").p_lcm(), 1);
  EXPECT_THROW(WeightType::parse("2,1,3"), Error);
  EXPECT_THROW(WeightType::parse("2,x"), Error);
  EXPECT_THROW(WeightType::parse("2,2,2,2", "a,a"), Error);
  EXPECT_EQ(WeightType::parse("2,2,2,2", "a,b").lambda(), (std::vector<std::string>{"a", "b"}));
}

TEST(NormalForm, Examples) {
  const WeightType w({2, 3, 5});
  EXPECT_EQ(normal_form({2, 0, 0}, 0, w), (LElement{{0, 0, 0}, 1}));
  EXPECT_EQ(normal_form({0, 0, 0}, 0, w), l_zero(w));
  EXPECT_EQ(normal_form({1, 4, 6}, -1, w), (LElement{{1, 1, 1}, 1}));
  try {
    normal_form({1, 2}, 0, w);
    FAIL() << "length mismatch accepted";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidWeightVector);
  }
}

TEST(NormalForm, MatchesStepwiseNormalizer) {
  std::mt19937 rng(1);
  for (const auto& p : kTypes) {
    const WeightType w(p);
    for (int k = 0; k < 200; ++k) {
      std::vector<std::int64_t> a;
      for (int i = 0; i < w.t(); ++i) a.push_back(static_cast<std::int64_t>(rng() % 41) - 20);
      const auto m = static_cast<std::int64_t>(rng() % 11) - 5;
      EXPECT_EQ(normal_form(a, m, w), slow_normalize(a, m, w));
    }
  }
}

TEST(LGroup, AdditionIsAWellDefinedGroupLaw) {
  std::mt19937 rng(2);
  for (const auto& p : kTypes) {
    const WeightType w(p);
    for (int k = 0; k < 100; ++k) {
      const auto x = random_element(rng, w), y = random_element(rng, w), z = random_element(rng, w);
      EXPECT_EQ(l_add(x, y, w), l_add(y, x, w));
      EXPECT_EQ(l_add(l_add(x, y, w), z, w), l_add(x, l_add(y, z, w), w));
      EXPECT_EQ(l_add(x, l_neg(x, w), w), l_zero(w));
      EXPECT_EQ(delta(l_add(x, y, w), w), delta(x, w) + delta(y, w));
    }
    for (int i = 1; i <= w.t(); ++i) EXPECT_EQ(l_scale(l_unit(w, i), w.weight(i), w), l_c(w));
  }
}

TEST(Degree, Examples) {
  const WeightType w({2, 3, 5});
  EXPECT_EQ(delta(l_c(w), w), 30);
  EXPECT_EQ(delta(l_zero(w), w), 0);
  EXPECT_EQ(delta(omega(w), w), -1);
}

TEST(Omega, Examples) {
  EXPECT_EQ(omega(WeightType({2, 3, 5})), (LElement{{1, 2, 4}, -2}));
  EXPECT_EQ(omega(WeightType(std::vector<int>{})), (LElement{{}, -2}));
  // (t-2)c - sum x_i = 2c - 4c + sum (p_i - 1) x_i, so m = -2 here.
  const WeightType tub({2, 2, 2, 2});
  EXPECT_EQ(omega(tub), (LElement{{1, 1, 1, 1}, -2}));
  EXPECT_EQ(delta(omega(tub), tub), 0);
}

TEST(Omega, DegreeIsMinusLcmTimesChi) {
  for (const auto& p : kTypes) {
    const WeightType w(p);
    const auto chi = euler_characteristic(w);
    EXPECT_EQ(Rational(delta(omega(w), w)), Rational(-w.p_lcm()) * chi) << w.str();
  }
}

TEST(Classify, Examples) {
  const auto d = classify(WeightType({2, 3, 5}));
  EXPECT_EQ(d.kind, ReprKind::Domestic);
  EXPECT_EQ(d.chi, Rational(1, 30));
  const auto t = classify(WeightType({2, 2, 2, 2}));
  EXPECT_EQ(t.kind, ReprKind::Tubular);
  EXPECT_TRUE(t.chi.is_zero());
  const auto x = classify(WeightType({2, 3, 7}));
  EXPECT_EQ(x.kind, ReprKind::Wild);
  EXPECT_EQ(x.chi, Rational(-1, 42));
  EXPECT_EQ(repr_kind_name(ReprKind::Tubular), "tubular");
}

TEST(Picard, Examples) {
  EXPECT_EQ(picard_torsion_order(WeightType({2, 3})), 1);
  EXPECT_EQ(picard_torsion_order(WeightType({2, 2, 2, 2})), 8);
  EXPECT_EQ(picard_torsion_order(WeightType(std::vector<int>{})), 1);
}

TEST(Picard, ProductFormulaForSmallTypes) {
  std::mt19937 rng(4);
  for (int k = 0; k < 200; ++k) {
    std::vector<int> p;
    const int t = static_cast<int>(rng() % 6);
    std::int64_t prod = 1, l = 1;
    for (int i = 0; i < t; ++i) {
      p.push_back(2 + static_cast<int>(rng() % 5));
      prod *= p.back();
      l = std::lcm(l, static_cast<std::int64_t>(p.back()));
    }
    EXPECT_EQ(picard_torsion_order(WeightType(p)), prod / l);
  }
}

TEST(LElement, StringForm) {
  const WeightType w({2, 3, 5});
  EXPECT_EQ(l_str(LElement{{1, 2, 4}, -2}), "L(1,2,4;-2)");
}
