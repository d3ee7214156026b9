#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "clustercat/error.hpp"
#include "clustercat/sheaf.hpp"
#include "clustercat/tube.hpp"

using namespace clustercat;

namespace {

std::vector<SheafObject> parse_all(const std::vector<std::string>& names, const WeightType& w) {
  std::vector<SheafObject> out;
  for (const auto& s : names) out.push_back(SheafObject::parse(s, w));
  return out;
}

const std::vector<std::vector<int>> kTypes{{}, {3}, {2, 2}, {2, 2, 2}, {2, 3, 4}, {2, 3, 5}, {2, 2, 2, 2}, {3, 3, 3}};

}  // namespace

TEST(SheafObject, ParseAndPrintRoundTrip) {
  const WeightType w({2, 3, 5});
  for (const auto* s : {"L(0,0,0;0)", "L(1,2,4;-2)", "T(1,0,1)", "T(3,2,3)"}) {
    EXPECT_EQ(SheafObject::parse(s, w).str(), s);
  }
  EXPECT_EQ(SheafObject::parse("L(2,0,0;0)", w).str(), "L(0,0,0;1)");
  EXPECT_THROW(SheafObject::parse("T(3,0,5)", w), Error);
  EXPECT_THROW(SheafObject::parse("T(4,0,1)", w), Error);
  EXPECT_THROW(SheafObject::parse("Q(1)", w), Error);
}

TEST(SheafHom, Examples) {
  const WeightType w({2, 3, 5});
  const SheafCategory cat(w);
  const auto o = SheafObject::line(l_zero(w));
  const auto oc = SheafObject::line(l_c(w));
  EXPECT_EQ(cat.hom_dim(o, oc), 2);
  EXPECT_EQ(cat.hom_dim(oc, o), 0);
  EXPECT_EQ(cat.ext_dim(oc, o), 0);
  EXPECT_EQ(cat.ext_dim(o, SheafObject::line(omega(w))), 1);
  const auto s1 = SheafObject::torsion(w, 1, 0, 1);
  EXPECT_EQ(cat.hom_dim(o, s1), 1);
}

TEST(SheafHom, EulerIdentityAndSerreDuality) {
  for (const auto& p : kTypes) {
    const WeightType w(p);
    const SheafCategory cat(w);
    const auto u = cat.universe(1);
    for (const auto& x : u)
      for (const auto& y : u) {
        const auto h = cat.hom_dim(x, y), e = cat.ext_dim(x, y);
        ASSERT_EQ(h - e, euler_form(cat.euler(), cat.k_class(x), cat.k_class(y))) << x.str() << ", " << y.str();
        ASSERT_EQ(e, cat.hom_dim(y, cat.tau(x)));
      }
  }
}

TEST(SheafHom, TorsionPartMatchesTubeClosedForm) {
  const WeightType w({2, 3, 5});
  const SheafCategory cat(w);
  for (int arm = 1; arm <= 3; ++arm) {
    const int p = w.weight(arm);
    for (std::int64_t k = 0; k < p; ++k)
      for (std::int64_t n = 1; n < p; ++n)
        for (std::int64_t l = 0; l < p; ++l)
          for (std::int64_t m = 1; m < p; ++m)
            EXPECT_EQ(cat.hom_dim(SheafObject::torsion(w, arm, k, n), SheafObject::torsion(w, arm, l, m)),
                      tube_hom_dim(TubeObject::make(p, k, n), TubeObject::make(p, l, m)));
  }
}

TEST(SheafTau, KClassIsCoxeterImage) {
  for (const auto& p : kTypes) {
    const WeightType w(p);
    const SheafCategory cat(w);
    for (const auto& x : cat.universe(1)) {
      EXPECT_EQ(cat.k_class(cat.tau(x)), tau_K(cat.euler(), cat.k_class(x))) << x.str();
      EXPECT_EQ(cat.tau_inv(cat.tau(x)), x);
    }
  }
}

TEST(Tilting, CanonicalAndSquidAreTilting) {
  for (const auto& p : kTypes) {
    const WeightType w(p);
    const SheafCategory cat(w);
    const auto can = cat.canonical_tilting();
    const auto sq = cat.squid_tilting();
    EXPECT_EQ(can.size(), cat.tilting_size());
    EXPECT_EQ(sq.size(), cat.tilting_size());
    EXPECT_TRUE(cat.is_tilting(can).tilting) << w.str() << " " << cat.is_tilting(can).reason;
    EXPECT_TRUE(cat.is_tilting(sq).tilting) << w.str() << " " << cat.is_tilting(sq).reason;
  }
  EXPECT_EQ(SheafCategory(WeightType({2, 3, 5})).tilting_size(), 9u);
}

TEST(Tilting, SquidMembersForE8Type) {
  const WeightType w({2, 3, 5});
  const SheafCategory cat(w);
  auto expected = parse_all({"L(0,0,0;0)", "L(0,0,0;1)", "T(1,0,1)", "T(2,0,1)", "T(2,1,2)", "T(3,0,1)", "T(3,1,2)",
                             "T(3,2,3)", "T(3,3,4)"},
                            w);
  std::sort(expected.begin(), expected.end());
  auto sq = cat.squid_tilting();
  std::sort(sq.begin(), sq.end());
  EXPECT_EQ(sq, expected);
}

TEST(Tilting, WrongSimplesAreRejected) {
  const WeightType w({2, 3, 5});
  const SheafCategory cat(w);
  auto t = cat.squid_tilting();
  std::replace(t.begin(), t.end(), SheafObject::torsion(w, 1, 0, 1), SheafObject::torsion(w, 1, 1, 1));
  EXPECT_FALSE(cat.is_tilting(t).tilting);
  auto short_set = cat.squid_tilting();
  short_set.pop_back();
  const auto r = cat.is_tilting(short_set);
  EXPECT_FALSE(r.tilting);
  EXPECT_FALSE(r.reason.empty());
}

TEST(Tilting, PicardShiftsPreserveTilting) {
  std::mt19937 rng(3);
  for (const auto& p : kTypes) {
    const WeightType w(p);
    const SheafCategory cat(w);
    for (int k = 0; k < 10; ++k) {
      std::vector<std::int64_t> a;
      for (int i = 0; i < w.t(); ++i) a.push_back(static_cast<std::int64_t>(rng() % 7) - 3);
      const auto y = normal_form(a, static_cast<std::int64_t>(rng() % 5) - 2, w);
      for (const auto& base : {cat.canonical_tilting(), cat.squid_tilting()}) {
        std::vector<SheafObject> t;
        for (const auto& x : base) t.push_back(cat.twist(x, y));
        EXPECT_TRUE(cat.is_tilting(t).tilting) << w.str() << " shifted by " << l_str(y);
      }
    }
  }
}

TEST(Mutation, FirstSquidStep) {
  const WeightType w({2, 3, 5});
  const SheafCategory cat(w);
  const auto m = SheafObject::parse("L(0,0,4;0)", w);
  const auto r = cat.mutate(cat.canonical_tilting(), m);
  EXPECT_EQ(r.step.removed, m);
  EXPECT_EQ(r.step.added.str(), "T(3,0,1)");
  EXPECT_TRUE(cat.is_tilting(r.tilting).tilting);
  EXPECT_EQ(r.step.ext_removed_added + r.step.ext_added_removed, 1);
}

TEST(Mutation, IsAnInvolution) {
  for (const auto& p : std::vector<std::vector<int>>{{2, 2, 2}, {2, 3, 4}, {2, 3, 5}, {3, 3}}) {
    const WeightType w(p);
    const SheafCategory cat(w);
    for (const auto& base : {cat.canonical_tilting(), cat.squid_tilting()})
      for (const auto& m : base) {
        MutationResult r;
        try {
          r = cat.mutate(base, m);
        } catch (const Error& e) {
          // complements of higher rank are outside the line/torsion search
          EXPECT_EQ(e.code(), ErrorCode::WindowExhausted);
          continue;
        }
        EXPECT_TRUE(cat.is_tilting(r.tilting).tilting);
        const auto back = cat.mutate(r.tilting, r.step.added);
        auto sorted = base;
        std::sort(sorted.begin(), sorted.end());
        EXPECT_EQ(back.tilting, sorted) << w.str() << " at " << m.str();
        EXPECT_EQ(back.step.added, m);
      }
  }
}

TEST(Mutation, NonMemberIsRejected) {
  const WeightType w({2, 3, 5});
  const SheafCategory cat(w);
  try {
    cat.mutate(cat.canonical_tilting(), SheafObject::torsion(w, 1, 0, 1));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotInSet);
  }
}

TEST(Mutation, SquidReplayStepCounts) {
  EXPECT_EQ(SheafCategory(WeightType({2, 3, 5})).replay_squid().size(), 7u);
  EXPECT_EQ(SheafCategory(WeightType({2, 2, 2})).replay_squid().size(), 3u);
  EXPECT_EQ(SheafCategory(WeightType({2, 3, 4})).replay_squid().size(), 6u);
  for (const auto& p : kTypes) {
    if (p.empty()) continue;  // no arm to replay along
    const WeightType w(p);
    const SheafCategory cat(w);
    const auto steps = cat.replay_squid();
    auto t = cat.canonical_tilting();
    for (const auto& s : steps) t = cat.mutate(t, s.removed).tilting;
    auto sq = cat.squid_tilting();
    std::sort(sq.begin(), sq.end());
    EXPECT_EQ(t, sq) << w.str();
  }
}

TEST(Ideal, Examples) {
  {
    const WeightType w({2, 2, 2});
    const SheafCategory cat(w);
    const auto o = SheafObject::line(l_zero(w));
    const auto s1 = SheafObject::torsion(w, 1, 0, 1);
    EXPECT_EQ(cat.ideal_dim(s1, o), 1);
    EXPECT_EQ(cat.ideal_dim(o, s1), 0);
  }
  {
    const WeightType w({2, 3, 5});
    const SheafCategory cat(w);
    const auto o = SheafObject::line(l_zero(w));
    const auto oc = SheafObject::line(l_c(w));
    EXPECT_EQ(cat.ideal_dim(oc, o), 1);
    EXPECT_EQ(cat.ideal_dim(o, oc), 0);
    EXPECT_EQ(cat.cluster_hom_dim(o, oc), 2);
  }
}

TEST(Ideal, MatchesSerreDualHom) {
  for (const auto& p : kTypes) {
    const WeightType w(p);
    const SheafCategory cat(w);
    const auto u = cat.universe(1);
    for (const auto& x : u)
      for (const auto& y : u) ASSERT_EQ(cat.ideal_dim(x, y), cat.hom_dim(cat.tau_inv(y), cat.tau(x)));
  }
}
