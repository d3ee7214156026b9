#include <gtest/gtest.h>

#include <fstream>
#include <random>

#include <json.hpp>

#include "clustercat/error.hpp"
#include "clustercat/hereditary.hpp"

using namespace clustercat;

namespace {

// Representation with random matrices over F_p; for an exceptional dimension
// vector this is the indecomposable with that vector, with high probability.
struct RandomRep {
  DimVector dim;
  std::map<std::pair<int, int>, std::vector<Matrix<ModP>>> maps;  // (x, y) -> one matrix per arrow
};

RandomRep random_rep(const StarQuiver& s, const DimVector& d, std::mt19937_64& rng) {
  RandomRep r{d, {}};
  const auto& a = s.arrows();
  for (int x = 0; x < s.size(); ++x)
    for (int y = 0; y < s.size(); ++y)
      for (std::int64_t k = 0; k < a(x, y); ++k) {
        Matrix<ModP> m(static_cast<std::size_t>(d[y]), static_cast<std::size_t>(d[x]));
        for (std::size_t i = 0; i < m.rows(); ++i)
          for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = ModP(static_cast<std::int64_t>(rng() >> 2));
        r.maps[{x, y}].push_back(m);
      }
  return r;
}

// dim of {f_v} with Y_a f_x = f_y X_a for every arrow a : x -> y.
std::int64_t oracle_hom(const StarQuiver& s, const RandomRep& x, const RandomRep& y) {
  std::vector<std::size_t> offset(static_cast<std::size_t>(s.size()) + 1, 0);
  for (int v = 0; v < s.size(); ++v) offset[v + 1] = offset[v] + static_cast<std::size_t>(x.dim[v] * y.dim[v]);
  const std::size_t unknowns = offset.back();
  std::vector<std::vector<ModP>> rows;
  for (const auto& [edge, mats] : x.maps) {
    const auto [u, v] = edge;
    for (std::size_t k = 0; k < mats.size(); ++k) {
      const auto& xa = mats[k];
      const auto& ya = y.maps.at(edge)[k];
      for (std::int64_t r = 0; r < y.dim[v]; ++r)
        for (std::int64_t c = 0; c < x.dim[u]; ++c) {
          std::vector<ModP> row(unknowns, ModP(0));
          for (std::int64_t q = 0; q < y.dim[u]; ++q)
            row[offset[u] + static_cast<std::size_t>(q * x.dim[u] + c)] += ya(r, q);
          for (std::int64_t q = 0; q < x.dim[v]; ++q)
            row[offset[v] + static_cast<std::size_t>(r * x.dim[v] + q)] -= xa(q, c);
          rows.push_back(std::move(row));
        }
    }
  }
  if (rows.empty()) return static_cast<std::int64_t>(unknowns);
  Matrix<ModP> m(rows.size(), unknowns);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < unknowns; ++j) m(i, j) = rows[i][j];
  return static_cast<std::int64_t>(unknowns - rank(m));
}

std::vector<HerObject> module_sample(const StarQuiver& s) {
  std::vector<HerObject> out;
  for (int v = 0; v < s.size(); ++v)
    for (std::int64_t m = 0; m <= 2; ++m) {
      out.push_back(HerObject::pp(m, v));
      out.push_back(HerObject::pi(m, v));
    }
  for (std::size_t j = 0; j < s.tubes().size(); ++j) {
    const int r = s.tubes()[j].rank;
    for (std::int64_t k = 0; k < r; ++k)
      for (std::int64_t n = 1; n < r; ++n) out.push_back(HerObject::reg(static_cast<int>(j) + 1, k, n));
  }
  return out;
}

const std::vector<std::vector<int>> kDomestic{{}, {3}, {2, 2}, {2, 3}, {2, 2, 2}, {2, 2, 3}, {2, 3, 3}, {2, 3, 4}};

}  // namespace

TEST(StarQuiver, RejectsNonDomesticTypes) {
  for (const auto& p : std::vector<std::vector<int>>{{2, 2, 2, 2}, {2, 3, 6}, {2, 3, 7}}) {
    try {
      StarQuiver s{WeightType(p)};
      FAIL() << WeightType(p).str();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::NotDomestic);
    }
  }
}

TEST(StarQuiver, NullRootAndCoxeter) {
  for (const auto& p : kDomestic) {
    const StarQuiver s{WeightType(p)};
    EXPECT_EQ(s.size(), static_cast<int>(WeightType(p).k_rank())) << s.diagram();
    const auto& d = s.null_root();
    EXPECT_EQ(s.coxeter() * d, d);
    EXPECT_EQ(s.euler(d, d), 0);
    EXPECT_EQ(s.coxeter() * s.coxeter_inv(), IntMatrix::identity(static_cast<std::size_t>(s.size())));
  }
}

TEST(StarQuiver, HomMatchesGenericRepresentationsOverFp) {
  std::mt19937_64 rng(17);
  for (const auto& p : std::vector<std::vector<int>>{{2, 2, 2}, {2, 2}, {2, 3}}) {
    const StarQuiver s{WeightType(p)};
    const auto objs = module_sample(s);
    std::vector<RandomRep> reps;
    for (const auto& x : objs) reps.push_back(random_rep(s, s.dim(x), rng));
    for (std::size_t i = 0; i < objs.size(); ++i)
      for (std::size_t j = 0; j < objs.size(); ++j)
        ASSERT_EQ(s.hom_dim(objs[i], objs[j]), oracle_hom(s, reps[i], reps[j]))
            << s.diagram() << ": " << objs[i].str() << " -> " << objs[j].str();
  }
}

TEST(StarQuiver, EulerFormAndDefectSigns) {
  for (const auto& p : kDomestic) {
    const StarQuiver s{WeightType(p)};
    for (const auto& x : module_sample(s)) {
      for (const auto& y : module_sample(s))
        EXPECT_EQ(s.hom_dim(x, y) - s.ext_dim(x, y), s.euler(s.dim(x), s.dim(y)));
      const auto d = s.defect(s.dim(x));
      if (x.kind == HerObject::Kind::PP) { EXPECT_LT(d, 0) << x.str(); }
      if (x.kind == HerObject::Kind::PI) { EXPECT_GT(d, 0) << x.str(); }
      if (x.kind == HerObject::Kind::Reg) { EXPECT_EQ(d, 0) << x.str(); }
    }
  }
}

TEST(StarQuiver, RegularSimplesFormCoxeterOrbitsSummingToNullRoot) {
  const StarQuiver s{WeightType({2, 2, 2})};
  ASSERT_EQ(s.tubes().size(), 3u);
  for (const auto& t : s.tubes()) {
    EXPECT_EQ(t.rank, 2);
    DimVector sum(static_cast<std::size_t>(s.size()), 0);
    for (std::size_t k = 0; k < t.simples.size(); ++k) {
      EXPECT_EQ(s.coxeter() * t.simples[k], t.simples[(k + 1) % t.simples.size()]);
      EXPECT_EQ(s.euler(t.simples[k], t.simples[k]), 1);
      for (std::size_t v = 0; v < sum.size(); ++v) sum[v] += t.simples[k][v];
    }
    EXPECT_EQ(sum, s.null_root());
  }
  for (const auto& p : kDomestic) {
    const StarQuiver q{WeightType(p)};
    EXPECT_EQ(regular_simples(q).size(), q.tubes().size());
  }
}

TEST(HerObject, ParseRoundTripAndValidation) {
  const StarQuiver s{WeightType({2, 2, 2})};
  for (const auto* t : {"PP(0,1)", "PI(2,0)", "SP(4)", "R(1,1,1)"}) EXPECT_EQ(s.parse_object(t).str(), t);
  EXPECT_THROW(s.parse_object("SP(9)"), Error);
  EXPECT_THROW(s.parse_object("R(1,0,2)"), Error);
  EXPECT_THROW(s.parse_object("X(1)"), Error);
}

TEST(ClusterCategory, TranslationOnShiftedProjectives) {
  const StarQuiver s{WeightType({2, 3, 3})};
  for (int v = 0; v < s.size(); ++v) {
    EXPECT_EQ(s.cluster_tau(HerObject::pp(0, v)), HerObject::sp(v));
    EXPECT_EQ(s.cluster_tau(HerObject::sp(v)), HerObject::pi(0, v));
    EXPECT_EQ(s.cluster_tau_inv(HerObject::pi(0, v)), HerObject::sp(v));
    const auto x = HerObject::pp(1, v);
    EXPECT_EQ(s.cluster_tau_inv(s.cluster_tau(x)), x);
  }
}

TEST(ClusterCategory, ClusterExtIsSymmetric) {
  const StarQuiver s{WeightType({2, 2, 2})};
  auto objs = module_sample(s);
  for (int v = 0; v < s.size(); ++v) objs.push_back(HerObject::sp(v));
  for (const auto& x : objs)
    for (const auto& y : objs) EXPECT_EQ(s.cluster_ext(x, y), s.cluster_ext(y, x));
}

TEST(Clusters, StandardClustersAndMutationInvolution) {
  for (const auto& p : kDomestic) {
    const StarQuiver s{WeightType(p)};
    for (const auto& c : {shifted_projective_cluster(s), projective_cluster(s)}) {
      ASSERT_TRUE(is_cluster(s, c));
      for (const auto& m : c) {
        const auto r = mutate(s, c, m);
        EXPECT_NE(r.added, m);
        EXPECT_TRUE(is_cluster(s, r.cluster));
        const auto back = mutate(s, r.cluster, r.added);
        EXPECT_EQ(back.cluster, c);
        EXPECT_EQ(back.added, m);
      }
    }
    EXPECT_TRUE(find_slice(s, projective_cluster(s)));
  }
}

TEST(Clusters, NonMemberIsRejected) {
  const StarQuiver s{WeightType({2, 2, 2})};
  try {
    mutate(s, projective_cluster(s), HerObject::reg(1, 0, 1));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotInSet);
  }
}

TEST(ExchangeGraph, IsRegularNearTheStart) {
  for (const auto& p : std::vector<std::vector<int>>{{2, 2}, {2, 2, 2}, {2, 3}}) {
    const StarQuiver s{WeightType(p)};
    const auto g = exchange_bfs(s, shifted_projective_cluster(s), 3);
    EXPECT_TRUE(g.regular(s.size())) << s.diagram();
    EXPECT_EQ(g.window_exhausted, 0u);
    EXPECT_GT(g.nodes.size(), static_cast<std::size_t>(s.size()));
    const auto d = exchange_distance(s, g.nodes.front(), g.nodes.back(), 6);
    ASSERT_TRUE(d.has_value());
    EXPECT_LE(*d, g.depth.back());
  }
}

TEST(ExchangeGraph, DistanceZeroAndOne) {
  const StarQuiver s{WeightType({2, 2, 2})};
  const auto c = shifted_projective_cluster(s);
  EXPECT_EQ(exchange_distance(s, c, c, 3), 0);
  EXPECT_EQ(exchange_distance(s, c, mutate(s, c, c.front()).cluster, 3), 1);
}

TEST(ReduceTorsion, ClearsTheRegularPart) {
  const StarQuiver s{WeightType({2, 2, 2})};
  std::ifstream in(CLUSTERCAT_TEST_DATA "/d4_regular.json");
  ASSERT_TRUE(in.good());
  ClusterSet c;
  for (const auto& e : nlohmann::json::parse(in)) c.push_back(s.parse_object(e.get<std::string>()));
  std::sort(c.begin(), c.end());
  ASSERT_TRUE(is_cluster(s, c));
  const auto trace = reduce_torsion(s, c, 20);
  EXPECT_FALSE(trace.steps.empty());
  EXPECT_TRUE(is_cluster(s, trace.end));
  for (const auto& x : trace.end) EXPECT_TRUE(x.transjective()) << x.str();
  try {
    reduce_torsion(s, c, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DepthExhausted);
  }
}

TEST(SlicePath, ReachesASlice) {
  const StarQuiver s{WeightType({2, 2, 2})};
  auto c = projective_cluster(s);
  c = mutate(s, c, c.front()).cluster;
  const auto path = slice_path(s, c, 6);
  EXPECT_TRUE(find_slice(s, path.end));
  const auto q = slice_quiver(s, path.end);
  EXPECT_EQ(q + q.transpose(), IntMatrix(q.rows(), q.cols()));
}
