#include <gtest/gtest.h>

#include <algorithm>
#include <deque>
#include <numeric>
#include <random>
#include <set>

#include "clustercat/error.hpp"
#include "clustercat/quiver.hpp"

using namespace clustercat;

namespace {

IntMatrix oriented(int n, const std::vector<std::pair<int, int>>& arrows) {
  IntMatrix b(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
  for (auto [x, y] : arrows) {
    b(x, y) += 1;
    b(y, x) -= 1;
  }
  return b;
}

IntMatrix path(int n) {
  std::vector<std::pair<int, int>> a;
  for (int i = 0; i + 1 < n; ++i) a.emplace_back(i, i + 1);
  return oriented(n, a);
}

IntMatrix star(int legs) {
  std::vector<std::pair<int, int>> a;
  for (int i = 1; i <= legs; ++i) a.emplace_back(i, 0);
  return oriented(legs + 1, a);
}

// Star-shaped tree with arms of the given lengths hanging off vertex 0.
IntMatrix tree(const std::vector<int>& arm_lengths) {
  std::vector<std::pair<int, int>> a;
  int next = 1;
  for (int len : arm_lengths) {
    int prev = 0;
    for (int k = 0; k < len; ++k, ++next) {
      a.emplace_back(prev, next);
      prev = next;
    }
  }
  return oriented(next, a);
}

IntMatrix permuted(const IntMatrix& b, const std::vector<int>& perm) {
  IntMatrix out(b.rows(), b.cols());
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) out(perm[i], perm[j]) = b(i, j);
  return out;
}

// Least upper triangle over all n! relabellings.
std::vector<std::int64_t> brute_key(const IntMatrix& b) {
  std::vector<int> perm(b.rows());
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::int64_t> best;
  do {
    std::vector<std::int64_t> key;
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = i + 1; j < b.rows(); ++j) key.push_back(b(perm[i], perm[j]));
    if (best.empty() || key < best) best = key;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

std::size_t brute_class_size(const IntMatrix& start) {
  std::set<std::vector<std::int64_t>> seen{brute_key(start)};
  std::deque<MutQuiver> queue{MutQuiver(start)};
  while (!queue.empty()) {
    const auto q = queue.front();
    queue.pop_front();
    for (int k = 0; k < q.size(); ++k) {
      auto mu = fz_mutate(q, k);
      if (seen.insert(brute_key(mu.b())).second) queue.push_back(std::move(mu));
    }
  }
  return seen.size();
}

IntMatrix random_quiver(std::mt19937& rng, int n) {
  IntMatrix b(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const auto v = static_cast<std::int64_t>(rng() % 5) - 2;
      b(i, j) = v;
      b(j, i) = -v;
    }
  return b;
}

}  // namespace

TEST(MutQuiver, RejectsNonSkewMatrices) {
  EXPECT_THROW(MutQuiver(IntMatrix::from_rows({{0, 1}, {1, 0}})), Error);
  EXPECT_THROW(MutQuiver(IntMatrix::from_rows({{1, 0}, {0, 0}})), Error);
  EXPECT_THROW(MutQuiver(IntMatrix(2, 3)), Error);
  const MutQuiver q(path(4));
  EXPECT_EQ(q.arrow_count(), 3);
  EXPECT_EQ(q.max_entry(), 1);
}

TEST(FzMutation, IsAnInvolution) {
  std::mt19937 rng(5);
  for (int t = 0; t < 500; ++t) {
    const int n = 2 + static_cast<int>(rng() % 6);
    const MutQuiver q(random_quiver(rng, n));
    const int k = static_cast<int>(rng() % n);
    EXPECT_EQ(fz_mutate(fz_mutate(q, k), k), q);
  }
}

TEST(FzMutation, AtASinkReversesItsArrows) {
  const MutQuiver q(star(3));
  const auto mu = fz_mutate(q, 0);
  EXPECT_EQ(mu.b(), -q.b());
}

TEST(FzMutation, MiddleOfLinearA3GivesOrientedTriangle) {
  const auto mu = fz_mutate(MutQuiver(path(3)), 1);
  EXPECT_EQ(mu.b(), oriented(3, {{1, 0}, {2, 1}, {0, 2}}));
}

TEST(FzMutation, MatchesFormulaOnAKroneckerExample) {
  const MutQuiver q(IntMatrix::from_rows({{0, 2, 0}, {-2, 0, 1}, {0, -1, 0}}));
  EXPECT_EQ(fz_mutate(q, 1).b(), IntMatrix::from_rows({{0, -2, 2}, {2, 0, -1}, {-2, 1, 0}}));
}

TEST(CanonicalForm, InvariantUnderRelabelling) {
  std::mt19937 rng(9);
  for (int t = 0; t < 100; ++t) {
    const int n = 2 + static_cast<int>(rng() % 8);
    const auto b = random_quiver(rng, n);
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    EXPECT_EQ(canonical_form(permuted(b, perm)), canonical_form(b));
    EXPECT_EQ(canonical_key(permuted(b, perm)), canonical_key(b));
  }
}

TEST(CanonicalForm, SeparatesWhatBruteForceSeparates) {
  std::mt19937 rng(13);
  std::vector<IntMatrix> qs;
  for (int t = 0; t < 120; ++t) qs.push_back(random_quiver(rng, 4 + static_cast<int>(rng() % 2)));
  for (std::size_t i = 0; i < qs.size(); ++i)
    for (std::size_t j = i + 1; j < qs.size(); ++j)
      if (qs[i].rows() == qs[j].rows()) {
        EXPECT_EQ(canonical_key(qs[i]) == canonical_key(qs[j]), brute_key(qs[i]) == brute_key(qs[j]));
      }
}

TEST(MutationClass, SizesAgreeWithBruteForceOracle) {
  const std::vector<std::pair<IntMatrix, std::size_t>> cases{
      {path(3), 4}, {path(4), 6}, {path(5), 19}, {star(3), 6}, {tree({1, 1, 2}), 26}, {star(4), 10}};
  for (const auto& [b, size] : cases) {
    const auto r = mutation_class_bfs(MutQuiver(b), -1, 100000);
    EXPECT_TRUE(r.complete);
    EXPECT_EQ(r.class_size, size);
    EXPECT_EQ(brute_class_size(b), size);
    EXPECT_EQ(r.members.size(), r.class_size);
  }
}

TEST(MutationClass, TreeOrientationsShareAClass) {
  const auto a = mutation_class_bfs(MutQuiver(path(5)), -1, 1000);
  std::set<std::string> keys;
  for (const auto& m : a.members) keys.insert(canonical_key(m));
  EXPECT_TRUE(keys.count(canonical_key(oriented(5, {{1, 0}, {1, 2}, {3, 2}, {3, 4}}))));
  EXPECT_TRUE(keys.count(canonical_key(oriented(5, {{0, 1}, {2, 1}, {2, 3}, {4, 3}}))));
  EXPECT_FALSE(keys.count(canonical_key(star(4))));
}

TEST(MutationClass, DepthAndCap) {
  const auto r0 = mutation_class_bfs(MutQuiver(path(4)), 0, 10);
  EXPECT_EQ(r0.class_size, 1u);
  EXPECT_FALSE(r0.complete);
  try {
    mutation_class_bfs(MutQuiver(path(6)), -1, 5);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NodeCapExceeded);
  }
  EXPECT_THROW(mutation_class_bfs(MutQuiver(path(4)), -1, 0), Error);
}

TEST(Presentation, CountsAndLabels) {
  struct Case {
    std::vector<int> p;
    int vertices, arrows, relations;
  };
  for (const auto& c : std::vector<Case>{{{2, 2, 2}, 5, 7, 7}, {{2, 3, 5}, 9, 11, 11}, {{2, 3, 4}, 8, 10, 10}}) {
    const auto pr = canonical_cluster_presentation(WeightType(c.p));
    EXPECT_EQ(pr.quiver.size(), c.vertices);
    EXPECT_EQ(static_cast<int>(pr.arrows.size()), c.arrows);
    EXPECT_EQ(pr.quiver.arrow_count(), c.arrows);
    EXPECT_EQ(static_cast<int>(pr.relations.size()), c.relations);
    EXPECT_EQ(pr.quiver.labels().front(), "0");
    EXPECT_EQ(pr.quiver.labels().back(), "w");
    EXPECT_EQ(pr.arrows.back().name, "η");
    EXPECT_EQ(pr.arrows.back().from, c.vertices - 1);
    EXPECT_EQ(pr.arrows.back().to, 0);
  }
  const auto e8 = canonical_cluster_presentation(WeightType({2, 3, 5}));
  EXPECT_EQ(e8.relations.front(), "x1^2 + x2^3 + x3^5");
  for (const auto* r : {"x2^2 η", "x2 η x2", "η x2^2", "x1 η", "η x1"})
    EXPECT_NE(std::find(e8.relations.begin(), e8.relations.end(), r), e8.relations.end()) << r;
}

TEST(Presentation, NeedsThreeArms) {
  for (const auto& p : std::vector<std::vector<int>>{{2, 2}, {2, 2, 2, 2}, {}}) {
    try {
      canonical_cluster_presentation(WeightType(p));
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::WrongArity);
    }
  }
}

TEST(Presentation, MutationClassesOfTameTypesMatchExtendedDynkin) {
  // (2,2,2) and (2,3,3) give the extended Dynkin classes of D4~ and E6~.
  const auto d4 = mutation_class_bfs(canonical_cluster_presentation(WeightType({2, 2, 2})).quiver, -1, 100000);
  EXPECT_EQ(d4.class_size, 10u);
  EXPECT_EQ(d4.max_entry, 2);
  EXPECT_EQ(brute_class_size(star(4)), d4.class_size);

  const auto e6 = mutation_class_bfs(canonical_cluster_presentation(WeightType({2, 3, 3})).quiver, -1, 100000);
  const auto e6_tree = tree({2, 2, 2});
  EXPECT_EQ(e6.class_size, 132u);
  EXPECT_EQ(brute_class_size(e6_tree), 132u);
  std::set<std::string> keys;
  for (const auto& m : e6.members) keys.insert(canonical_key(m));
  EXPECT_TRUE(keys.count(canonical_key(e6_tree)));
}
