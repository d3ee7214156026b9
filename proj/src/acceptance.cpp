#include "clustercat/acceptance.hpp"

#include <chrono>
#include <functional>
#include <random>
#include <set>
#include <sstream>

#include "clustercat/error.hpp"
#include "clustercat/hereditary.hpp"
#include "clustercat/ktheory.hpp"
#include "clustercat/quiver.hpp"
#include "clustercat/sheaf.hpp"
#include "clustercat/tube.hpp"
#include "clustercat/weights.hpp"

namespace clustercat {

namespace {

using Rng = std::mt19937_64;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  int failures = 0;

  // Records the first few failures verbatim.
  void fail(const std::string& what) {
    pass = false;
    if (failures++ < 3) detail << (failures > 1 ? "; " : "") << what;
  }
};

std::int64_t uniform(Rng& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

template <class T>
const T& pick(Rng& rng, const std::vector<T>& v) {
  return v[static_cast<std::size_t>(uniform(rng, 0, static_cast<std::int64_t>(v.size()) - 1))];
}

std::string join(const std::vector<int>& v) {
  std::string s;
  for (auto x : v) s += (s.empty() ? "" : ",") + std::to_string(x);
  return s;
}

// ---------------------------------------------------------------- 1
void classification(Outcome& out, Rng&) {
  std::vector<std::vector<int>> domestic{{2, 2}, {2, 2, 2}, {2, 3, 3}, {2, 3, 4}, {2, 3, 5}};
  for (int n = 3; n <= 7; ++n) domestic.push_back({2, 2, n});
  const std::vector<std::vector<int>> tubular{{2, 2, 2, 2}, {3, 3, 3}, {2, 4, 4}, {2, 3, 6}};
  const std::vector<std::vector<int>> wild{{2, 3, 7}};
  int checked = 0;
  auto check = [&](const std::vector<std::vector<int>>& list, ReprKind kind) {
    for (const auto& p : list) {
      const auto r = classify(WeightType(p));
      ++checked;
      const int want_sign = kind == ReprKind::Domestic ? 1 : kind == ReprKind::Tubular ? 0 : -1;
      if (r.kind != kind || r.chi.sign() != want_sign)
        out.fail("(" + join(p) + ") classified " + std::string(repr_kind_name(r.kind)) + " chi=" + r.chi.str());
    }
  };
  check(domestic, ReprKind::Domestic);
  check(tubular, ReprKind::Tubular);
  check(wild, ReprKind::Wild);
  out.detail << (out.failures ? " | " : "") << checked << " weight types";
}

// ---------------------------------------------------------------- 2
void euler_identity(Outcome& out, Rng&) {
  std::int64_t pairs = 0;
  for (const auto& p : std::vector<std::vector<int>>{{2, 2, 2}, {2, 3, 5}, {2, 2, 2, 2}}) {
    const SheafCategory cat{WeightType(p)};
    const auto u = cat.universe(3);
    std::vector<KClass> cls;
    for (const auto& x : u) cls.push_back(cat.k_class(x));
    for (std::size_t a = 0; a < u.size(); ++a)
      for (std::size_t b = 0; b < u.size(); ++b) {
        ++pairs;
        const auto lhs = cat.hom_dim(u[a], u[b]) - cat.ext_dim(u[a], u[b]);
        const auto rhs = euler_form(cat.euler(), cls[a], cls[b]);
        if (lhs != rhs)
          out.fail("(" + join(p) + ") " + u[a].str() + ", " + u[b].str() + ": " + std::to_string(lhs) +
                   " != " + std::to_string(rhs));
      }
  }
  out.detail << (out.failures ? " | " : "") << pairs << " pairs";
}

// ---------------------------------------------------------------- 3
void radical_lattice(Outcome& out, Rng&) {
  const std::vector<std::vector<int>> tubular{{2, 2, 2, 2}, {3, 3, 3}, {2, 4, 4}, {2, 3, 6}};
  std::vector<std::vector<int>> domestic{{2, 2}, {2, 2, 2}, {2, 3, 3}, {2, 3, 4}, {2, 3, 5}};
  for (int n = 3; n <= 7; ++n) domestic.push_back({2, 2, n});
  for (const auto& p : tubular) {
    const auto e = build_euler(WeightType(p));
    if (e.radical_basis.size() != 2) {
      out.fail("(" + join(p) + ") radical rank " + std::to_string(e.radical_basis.size()));
      continue;
    }
    const auto g = radical_gram(e);
    if (!(g.transpose() == -g) || g.is_zero()) out.fail("(" + join(p) + ") restricted form not skew or zero");
  }
  for (const auto& p : domestic) {
    const auto e = build_euler(WeightType(p));
    if (e.radical_basis.size() != 1) out.fail("(" + join(p) + ") radical rank " + std::to_string(e.radical_basis.size()));
  }
  out.detail << (out.failures ? " | " : "") << tubular.size() << " tubular, " << domestic.size() << " domestic";
}

// ---------------------------------------------------------------- 4
void tube_oracle(Outcome& out, Rng&) {
  std::int64_t pairs = 0;
  for (int p = 1; p <= 4; ++p) {
    TubeLab lab(p);
    for (std::int64_t i = 0; i < p; ++i)
      for (std::int64_t n = 1; n <= 10; ++n)
        for (std::int64_t j = 0; j < p; ++j)
          for (std::int64_t m = 1; m <= 10; ++m) {
            const auto x = lab.object(i, n), y = lab.object(j, m);
            ++pairs;
            if (lab.oracle_hom_dim(x, y) != tube_hom_dim(x, y))
              out.fail("p=" + std::to_string(p) + " " + x.str() + " -> " + y.str());
          }
  }
  out.detail << (out.failures ? " | " : "") << pairs << " pairs";
}

// ---------------------------------------------------------------- 5
void yoneda_suite(Outcome& out, Rng&) {
  std::int64_t checked = 0;
  for (int p = 1; p <= 4; ++p) {
    TubeLab lab(p);
    const auto r = lab.check_yoneda_lemma(6);
    checked += r.checked;
    for (const auto& v : r.violations) out.fail("p=" + std::to_string(p) + " " + v);
  }
  out.detail << (out.failures ? " | " : "") << checked << " maps checked";
}

// ---------------------------------------------------------------- 6
std::vector<Rational> random_coeffs(Rng& rng, std::size_t n) {
  std::vector<Rational> v;
  for (std::size_t k = 0; k < n; ++k) v.emplace_back(uniform(rng, -2, 2));
  return v;
}

GradedMorphism random_graded(TubeLab& lab, Rng& rng, const TubeObject& x, const TubeObject& y, bool deg0, bool deg1) {
  auto f = lab.zero(x, y);
  if (deg0) f.deg0 = random_coeffs(rng, f.deg0.size());
  if (deg1) f.deg1 = random_coeffs(rng, f.deg1.size());
  return f;
}

void graded_composition(Outcome& out, Rng& rng) {
  std::int64_t squares = 0, triples = 0, nonzero = 0;
  for (int p = 1; p <= 4; ++p) {
    TubeLab lab(p);
    for (std::int64_t i = 0; i < p; ++i)
      for (std::int64_t n = 1; n <= 4; ++n)
        for (std::int64_t j = 0; j < p; ++j)
          for (std::int64_t m = 1; m <= 4; ++m) {
            const auto x = lab.object(i, n), y = lab.object(j, m);
            const auto z = lab.object(uniform(rng, 0, p - 1), uniform(rng, 1, 4));
            const auto f = random_graded(lab, rng, x, y, false, true);
            const auto g = random_graded(lab, rng, y, z, false, true);
            ++squares;
            if (!lab.compose_graded(g, f).is_zero()) out.fail("deg1 o deg1 != 0 for " + x.str() + " -> " + y.str() + " -> " + z.str());
          }
  }
  while (triples < 200) {
    const int p = static_cast<int>(uniform(rng, 1, 4));
    TubeLab lab(p);
    auto obj = [&] { return lab.object(uniform(rng, 0, p - 1), uniform(rng, 1, 5)); };
    const auto w = obj(), x = obj(), y = obj(), z = obj();
    const auto f = random_graded(lab, rng, w, x, true, true);
    const auto g = random_graded(lab, rng, x, y, true, true);
    const auto h = random_graded(lab, rng, y, z, true, true);
    const auto left = lab.compose_graded(h, lab.compose_graded(g, f));
    const auto right = lab.compose_graded(lab.compose_graded(h, g), f);
    ++triples;
    if (!left.is_zero()) ++nonzero;
    if (!(left == right)) out.fail("associativity fails for " + w.str() + " -> " + x.str() + " -> " + y.str() + " -> " + z.str());
  }
  out.detail << (out.failures ? " | " : "") << squares << " squared compositions, " << triples << " triples ("
             << nonzero << " nonzero)";
}

// ---------------------------------------------------------------- 7
void squid_replay(Outcome& out, Rng&) {
  for (const auto& p : std::vector<std::vector<int>>{{2, 2, 2}, {2, 3, 4}, {2, 3, 5}}) {
    const WeightType w(p);
    const SheafCategory cat(w);
    const auto trace = cat.replay_squid();
    std::size_t expected = 0;
    for (auto q : p) expected += static_cast<std::size_t>(q - 1);
    if (trace.size() != expected) out.fail("(" + join(p) + ") " + std::to_string(trace.size()) + " steps");
    auto current = cat.canonical_tilting();
    for (const auto& step : trace) {
      const auto it = std::find(current.begin(), current.end(), step.removed);
      if (it == current.end()) {
        out.fail("(" + join(p) + ") removed object not present");
        break;
      }
      *it = step.added;
      std::sort(current.begin(), current.end());
      const auto chk = cat.is_tilting(current);
      if (!chk.tilting) out.fail("(" + join(p) + ") intermediate not tilting: " + chk.reason);
      const auto a = cat.ext_dim(step.removed, step.added), b = cat.ext_dim(step.added, step.removed);
      if (!((a == 1 && b == 0) || (a == 0 && b == 1)))
        out.fail("(" + join(p) + ") exchange dims (" + std::to_string(a) + "," + std::to_string(b) + ")");
    }
    if (current != cat.squid_tilting()) out.fail("(" + join(p) + ") replay does not end at the squid");
    out.detail << (out.detail.tellp() > 0 ? ", " : "") << "(" << join(p) << ") " << trace.size() << " steps";
  }
}

// ---------------------------------------------------------------- 8
// Independent routes: case 1 is zero; case 2 is Hom(tau^- Y, tau X) from the
// Euler form; case 3 is the degree-one tube dimension; case 4 is the line
// formula on tau^- Y, tau X.
std::int64_t ideal_expected(const SheafCategory& cat, const SheafObject& x, const SheafObject& y) {
  const auto& w = cat.weights();
  if (x.is_line() && !y.is_line()) return 0;
  if (!x.is_line() && y.is_line())
    return euler_form(cat.euler(), cat.k_class(cat.tau_inv(y)), cat.k_class(cat.tau(x)));
  if (!x.is_line()) {
    if (x.arm != y.arm) return 0;
    const int p = w.weight(x.arm);
    return cluster_hom_dims(TubeObject::make(p, x.k, x.n), TubeObject::make(p, y.k, y.n)).d1;
  }
  return line_hom_dim(l_sub(y.x, omega(w), w), l_add(x.x, omega(w), w), w);
}

void ideal_table(Outcome& out, Rng& rng) {
  std::int64_t exhaustive = 0, mixed = 0;
  for (const auto& p : std::vector<std::vector<int>>{{2, 2, 2}, {2, 3, 5}, {2, 2, 2, 2}}) {
    const SheafCategory cat{WeightType(p)};
    const auto u = cat.universe(3);
    std::vector<SheafObject> lines, torsion;
    for (const auto& x : u) (x.is_line() ? lines : torsion).push_back(x);
    for (const auto& x : lines)
      for (const auto& y : torsion) {
        ++exhaustive;
        if (cat.ideal_dim(x, y) != 0) out.fail("(" + join(p) + ") case 1 nonzero at " + x.str() + ", " + y.str());
      }
    for (int k = 0; k < 50; ++k) {
      const int kind = k % 4;
      const auto& x = pick(rng, kind < 2 ? lines : torsion);
      const auto& y = pick(rng, kind == 0 || kind == 2 ? torsion : lines);
      ++mixed;
      const auto got = cat.ideal_dim(x, y), want = ideal_expected(cat, x, y);
      if (got != want)
        out.fail("(" + join(p) + ") " + x.str() + ", " + y.str() + ": " + std::to_string(got) + " != " + std::to_string(want));
      if (!x.is_line() && y.is_line() && cat.hom_dim(x, y) != 0)
        out.fail("(" + join(p) + ") torsion to line hom nonzero at " + x.str() + ", " + y.str());
    }
  }
  out.detail << (out.failures ? " | " : "") << exhaustive << " case-1 pairs, " << mixed << " mixed pairs";
}

// ---------------------------------------------------------------- 9
void exchange_regularity(Outcome& out, Rng&) {
  const StarQuiver s{WeightType({2, 2, 2})};
  try {
    const auto g = exchange_bfs(s, shifted_projective_cluster(s), 3);
    std::size_t expanded = 0;
    for (bool e : g.expanded) expanded += e;
    if (!g.regular(s.size())) out.fail("some expanded node does not have " + std::to_string(s.size()) + " neighbours");
    if (g.window_exhausted) out.fail(std::to_string(g.window_exhausted) + " window-exhausted mutations");
    out.detail << (out.failures ? " | " : "") << g.nodes.size() << " nodes, " << expanded << " expanded, "
               << g.edges.size() << " edges";
  } catch (const Error& e) {
    out.fail(std::string(error_code_name(e.code())) + ": " + e.what());
  }
}

// ---------------------------------------------------------------- 10
std::vector<int> sinks_and_sources(const IntMatrix& b) {
  std::vector<int> out;
  for (std::size_t v = 0; v < b.rows(); ++v) {
    bool pos = false, neg = false;
    for (std::size_t u = 0; u < b.cols(); ++u) {
      pos |= b(v, u) > 0;
      neg |= b(v, u) < 0;
    }
    if (!(pos && neg)) out.push_back(static_cast<int>(v));
  }
  return out;
}

void apr_fz(Outcome& out, Rng& rng) {
  std::size_t total = 0;
  for (const auto& p : std::vector<std::vector<int>>{{2, 2}, {2, 2, 2}}) {
    const StarQuiver s{WeightType(p)};
    auto c = projective_cluster(s);
    std::set<std::string> seen;
    int steps = 0;
    while (seen.size() < 20 && steps < 400) {
      ++steps;
      if (!find_slice(s, c)) {
        out.fail(s.diagram() + ": walk left the slices at " + cluster_key(c));
        break;
      }
      seen.insert(cluster_key(c));
      const auto b = slice_quiver(s, c);
      const int v = pick(rng, sinks_and_sources(b));
      const auto member = std::find_if(c.begin(), c.end(), [&](const HerObject& x) { return x.transjective() && x.v == v; });
      const auto mu = mutate(s, c, *member);
      if (!find_slice(s, mu.cluster)) {
        out.fail(s.diagram() + ": mutation at vertex " + std::to_string(v) + " of " + cluster_key(c) + " is not a slice");
        break;
      }
      if (!(slice_quiver(s, mu.cluster) == fz_mutate(MutQuiver(b), v).b()))
        out.fail(s.diagram() + ": quivers disagree at vertex " + std::to_string(v) + " of " + cluster_key(c));
      c = mu.cluster;
    }
    if (seen.size() < 20) out.fail(s.diagram() + ": only " + std::to_string(seen.size()) + " slices reached");
    total += seen.size();
    out.detail << (out.detail.tellp() > 0 ? ", " : "") << s.diagram() << " " << seen.size() << " slices/" << steps
               << " mutations";
  }
  (void)total;
}

// ---------------------------------------------------------------- 11
void connectedness(Outcome& out, Rng& rng) {
  const StarQuiver s{WeightType({2, 2, 2})};
  const auto start = shifted_projective_cluster(s);
  int max_dist = 0;
  for (int k = 0; k < 25; ++k) {
    auto c = start;
    const auto len = uniform(rng, 1, 10);
    for (std::int64_t step = 0; step < len; ++step) c = mutate(s, c, pick(rng, c), 6).cluster;
    if (!is_cluster(s, c)) {
      out.fail("random walk produced a non-cluster " + cluster_key(c));
      continue;
    }
    const auto d = exchange_distance(s, c, start, 10, 6);
    if (!d) out.fail(cluster_key(c) + " not within distance 10");
    else max_dist = std::max(max_dist, *d);
  }
  int with_increase = 0, max_len = 0;
  int built = 0;
  for (int attempt = 0; built < 10 && attempt < 200; ++attempt) {
    auto c = projective_cluster(s);
    const auto len = uniform(rng, 1, 10);
    for (std::int64_t step = 0; step < len; ++step) {
      const auto mu = mutate(s, c, pick(rng, c), 6);
      if (mu.added.transjective()) c = mu.cluster;
    }
    if (find_slice(s, c) && attempt < 100) continue;  // prefer clusters that are not already slices
    ++built;
    try {
      const auto path = slice_path(s, c, 10);
      if (!find_slice(s, path.end)) out.fail("slice_path ended off a slice from " + cluster_key(c));
      with_increase += path.rank_increase_observed;
      max_len = std::max(max_len, static_cast<int>(path.steps.size()));
    } catch (const Error& e) {
      out.fail(cluster_key(c) + ": " + e.what());
    }
  }
  if (built < 10) out.fail("only " + std::to_string(built) + " bundle-only clusters generated");
  out.detail << (out.failures ? " | " : "") << "25 walks, max distance " << max_dist << "; " << built
             << " bundle-only clusters, longest slice path " << max_len << ", rank increase seen on " << with_increase;
}

// ---------------------------------------------------------------- 12
void presentation(Outcome& out, Rng&) {
  for (const auto& p : std::vector<std::vector<int>>{{2, 2, 2}, {2, 3, 5}, {3, 3, 3}}) {
    const auto pr = canonical_cluster_presentation(WeightType(p));
    int sum = 0;
    for (auto q : p) sum += q;
    const int n = 2 + sum - 3;
    if (pr.quiver.size() != n || static_cast<int>(pr.arrows.size()) != sum + 1 ||
        static_cast<int>(pr.relations.size()) != sum + 1 || pr.quiver.arrow_count() != sum + 1)
      out.fail("(" + join(p) + ") counts " + std::to_string(pr.quiver.size()) + "/" + std::to_string(pr.arrows.size()) +
               "/" + std::to_string(pr.relations.size()));
    if (!is_skew(pr.quiver.b())) out.fail("(" + join(p) + ") exchange matrix not skew");
    out.detail << (out.detail.tellp() > 0 ? ", " : "") << "(" << join(p) << ") " << pr.quiver.size() << "/"
               << pr.arrows.size() << "/" << pr.relations.size();
  }
  const auto q = canonical_cluster_presentation(WeightType({2, 2, 2})).quiver;
  const auto a = mutation_class_bfs(q, -1, 10000);
  const auto b = mutation_class_bfs(q, -1, 10000);
  if (!a.complete) out.fail("(2,2,2) class search did not close");
  if (a.class_size != b.class_size || a.members != b.members) out.fail("(2,2,2) class search not deterministic");
  out.detail << "; (2,2,2) class size " << a.class_size << ", max entry " << a.max_entry;
}

// ---------------------------------------------------------------- 13
int bit_length(std::int64_t x) {
  int b = 0;
  while (x > 0) {
    ++b;
    x >>= 1;
  }
  return b;
}

void rational_circle(Outcome& out, Rng& rng) {
  std::size_t worst = 0;
  for (int k = 0; k < 200; ++k) {
    std::int64_t d = 0, r = 0;
    while (d == 0 && r == 0) {
      d = uniform(rng, -50, 50);
      r = uniform(rng, 0, 50);
    }
    const SlopeQ q(d, r);
    const auto word = word_for_slope(q);
    const auto back = apply_word(word, SlopeQ::infinity());
    const auto bound = static_cast<std::size_t>(2 * bit_length(q.height()) + 4);
    worst = std::max(worst, word.syllable_length());
    if (!(back == q)) out.fail(q.str() + " maps back to " + back.str());
    if (word.syllable_length() > bound)
      out.fail(q.str() + " word length " + std::to_string(word.syllable_length()) + " > " + std::to_string(bound));
  }
  const auto e = build_euler(WeightType({2, 2, 2, 2}));
  const auto g = to_rational(radical_gram(e));
  for (auto gen : {MoebiusGen::Sigma, MoebiusGen::Rho}) {
    const auto m = radical_action(e, gen);
    if (!(m.transpose() * g * m == g)) out.fail(std::string(gen == MoebiusGen::Sigma ? "sigma" : "rho") + " breaks the form");
  }
  out.detail << (out.failures ? " | " : "") << "200 slopes, longest word " << worst << " syllables";
}

struct Suite {
  const char* name;
  double budget;
  std::function<void(Outcome&, Rng&)> run;
};

const std::vector<Suite>& suites() {
  static const std::vector<Suite> all{
      {"classification", 1, classification},
      {"euler-identity", 30, euler_identity},
      {"radical-lattice", 0, radical_lattice},
      {"tube-oracle", 60, tube_oracle},
      {"yoneda", 0, yoneda_suite},
      {"graded-composition", 0, graded_composition},
      {"squid-replay", 0, squid_replay},
      {"ideal-table", 0, ideal_table},
      {"exchange-regularity", 60, exchange_regularity},
      {"apr-fz", 0, apr_fz},
      {"connectedness", 0, connectedness},
      {"presentation", 0, presentation},
      {"rational-circle", 0, rational_circle},
  };
  return all;
}

}  // namespace

const std::vector<std::string>& criterion_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& s : suites()) v.emplace_back(s.name);
    return v;
  }();
  return names;
}

int criterion_id(std::string_view name) {
  const auto& names = criterion_names();
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == name || std::to_string(i + 1) == name) return static_cast<int>(i + 1);
  return 0;
}

CriterionResult run_criterion(int id, std::uint64_t seed) {
  const auto& all = suites();
  if (id < 1 || id > static_cast<int>(all.size()))
    throw Error(ErrorCode::InvalidArgument, "no acceptance criterion " + std::to_string(id));
  const auto& suite = all[static_cast<std::size_t>(id - 1)];
  CriterionResult r;
  r.id = id;
  r.name = suite.name;
  r.budget_seconds = suite.budget;
  Outcome out;
  Rng rng(seed + static_cast<std::uint64_t>(id));
  const auto t0 = std::chrono::steady_clock::now();
  try {
    suite.run(out, rng);
  } catch (const std::exception& e) {
    out.fail(std::string("exception: ") + e.what());
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  r.pass = out.pass;
  r.detail = out.detail.str();
  if (suite.budget > 0 && r.seconds > suite.budget) {
    r.pass = false;
    r.detail += " | over time budget";
  }
  return r;
}

std::vector<CriterionResult> run_acceptance(std::uint64_t seed) {
  std::vector<CriterionResult> out;
  for (std::size_t i = 1; i <= suites().size(); ++i) out.push_back(run_criterion(static_cast<int>(i), seed));
  return out;
}

std::string format_result(const CriterionResult& r) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(2);
  os << (r.pass ? "PASS" : "FAIL") << " " << (r.id < 10 ? " " : "") << r.id << " " << r.name << "  (" << r.seconds
     << "s";
  if (r.budget_seconds > 0) os << " of " << r.budget_seconds << "s";
  os << ")  " << r.detail;
  return os.str();
}

}  // namespace clustercat
