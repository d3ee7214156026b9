// Command-line front end. Every command prints one JSON document (or DOT /
// text when asked); domain errors exit 1 with {"error", "detail"}, usage
// errors exit 2.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "clustercat/acceptance.hpp"
#include "clustercat/error.hpp"
#include "clustercat/hereditary.hpp"
#include "clustercat/ktheory.hpp"
#include "clustercat/quiver.hpp"
#include "clustercat/sheaf.hpp"
#include "clustercat/tube.hpp"
#include "clustercat/version.hpp"
#include "clustercat/weights.hpp"

using json = nlohmann::json;
using namespace clustercat;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string weights, lambda;
  std::string format = "json";
  std::uint64_t seed = 0;
  std::int64_t window = 0;  // 0: per-command default
  int depth = 3;
  std::size_t cap = 100000;
  std::string output;
};

RunConfig cfg;

WeightType weights_required() {
  if (cfg.weights.empty()) throw UsageError("--weights is required");
  return WeightType::parse(cfg.weights, cfg.lambda);
}

json base() {
  json j;
  j["tool_version"] = kToolVersion;
  if (cfg.weights.empty()) {
    j["weights"] = nullptr;
  } else {
    const auto w = WeightType::parse(cfg.weights, cfg.lambda);
    j["weights"] = w.weights();
  }
  return j;
}

std::ostream* out_stream = &std::cout;

// Text form: one "key: value" line per field, scalar arrays space-joined,
// nested containers indented below their key.
void write_text(std::ostream& os, const json& j, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  auto scalar = [](const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
  auto flat = [&](const json& v) {
    if (!v.is_array()) return false;
    return std::all_of(v.begin(), v.end(), [](const json& x) { return x.is_primitive(); });
  };
  auto line = [&](const json& v) {
    std::string out;
    for (const auto& x : v) out += (out.empty() ? "" : " ") + scalar(x);
    return out;
  };
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      if (v.is_primitive()) {
        os << pad << k << ": " << scalar(v) << "\n";
      } else if (flat(v)) {
        os << pad << k << ": " << line(v) << "\n";
      } else {
        os << pad << k << ":\n";
        write_text(os, v, indent + 2);
      }
    }
  } else if (j.is_array()) {
    for (const auto& v : j) {
      if (v.is_primitive()) {
        os << pad << scalar(v) << "\n";
      } else if (flat(v)) {
        os << pad << line(v) << "\n";
      } else {
        write_text(os, v, indent + 2);
        if (v.is_object()) os << "\n";
      }
    }
  } else {
    os << pad << scalar(j) << "\n";
  }
}

void emit(const json& j) {
  if (cfg.format == "text") {
    write_text(*out_stream, j, 0);
  } else {
    *out_stream << j.dump(2) << "\n";
  }
}
void emit_text(const std::string& s) { *out_stream << s; }

template <class T>
json matrix_json(const Matrix<T>& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if constexpr (std::is_same_v<T, Rational>)
        row.push_back(m(i, j).str());
      else
        row.push_back(m(i, j));
    }
    rows.push_back(row);
  }
  return rows;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json read_json(const std::string& path) {
  try {
    return json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, path + ": " + e.what());
  }
}

// A set file is a JSON array of object strings, or an object holding one
// under "tilting" or "cluster".
std::vector<std::string> read_set(const std::string& path) {
  json j = read_json(path);
  if (j.is_object()) {
    if (j.contains("tilting") && j["tilting"].is_array()) j = j["tilting"];
    else if (j.contains("cluster") && j["cluster"].is_array()) j = j["cluster"];
  }
  if (!j.is_array()) throw Error(ErrorCode::ParseError, path + ": expected an array of object strings");
  std::vector<std::string> out;
  for (const auto& x : j) {
    if (!x.is_string()) throw Error(ErrorCode::ParseError, path + ": expected an array of object strings");
    out.push_back(x.get<std::string>());
  }
  return out;
}

bool is_sheaf_syntax(const std::string& s) { return s.rfind("L(", 0) == 0 || s.rfind("T(", 0) == 0; }

bool all_sheaf(const std::vector<std::string>& v) {
  const auto n = std::count_if(v.begin(), v.end(), is_sheaf_syntax);
  if (n != 0 && n != static_cast<std::ptrdiff_t>(v.size()))
    throw Error(ErrorCode::ParseError, "set mixes sheaf and hereditary object syntax");
  return n != 0 || v.empty();
}

std::vector<SheafObject> parse_sheaves(const std::vector<std::string>& v, const WeightType& w) {
  std::vector<SheafObject> out;
  for (const auto& s : v) out.push_back(SheafObject::parse(s, w));
  return out;
}

ClusterSet parse_cluster(const std::vector<std::string>& v, const StarQuiver& s) {
  ClusterSet c;
  for (const auto& x : v) c.push_back(s.parse_object(x));
  std::sort(c.begin(), c.end());
  return c;
}

template <class Seq>
json strings(const Seq& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(x.str());
  return a;
}

IntMatrix parse_b_matrix(const json& j0) {
  const json& j = j0.is_object() && j0.contains("b") ? j0["b"] : j0;
  if (!j.is_array()) throw Error(ErrorCode::ParseError, "expected a square integer matrix");
  std::vector<std::vector<std::int64_t>> rows;
  for (const auto& r : j) {
    if (!r.is_array()) throw Error(ErrorCode::ParseError, "expected a square integer matrix");
    std::vector<std::int64_t> row;
    for (const auto& x : r) {
      if (!x.is_number_integer()) throw Error(ErrorCode::ParseError, "matrix entries must be integers");
      row.push_back(x.get<std::int64_t>());
    }
    rows.push_back(row);
  }
  for (const auto& r : rows)
    if (r.size() != rows.size()) throw Error(ErrorCode::ParseError, "expected a square integer matrix");
  return IntMatrix::from_rows(rows);
}

std::pair<std::int64_t, std::int64_t> parse_pair(const std::string& s) {
  const auto comma = s.find(',');
  if (comma == std::string::npos) throw UsageError("expected i,n but got '" + s + "'");
  try {
    return {std::stoll(s.substr(0, comma)), std::stoll(s.substr(comma + 1))};
  } catch (const std::exception&) {
    throw UsageError("expected i,n but got '" + s + "'");
  }
}

// ---------------------------------------------------------------- commands

void cmd_classify() {
  const auto w = weights_required();
  const auto r = classify(w);
  json j = base();
  j["chi"] = r.chi.str();
  j["type"] = repr_kind_name(r.kind);
  j["k_rank"] = w.k_rank();
  j["picard_torsion"] = picard_torsion_order(w);
  emit(j);
}

void cmd_kth(const std::string& what) {
  const auto w = weights_required();
  const auto e = build_euler(w);
  json j = base();
  json basis = json::array();
  for (const auto& v : e.basis) basis.push_back(v.label());
  j["basis"] = basis;
  if (what != "gram" && what != "coxeter" && what != "radical") throw UsageError("kth expects gram, coxeter or radical");
  // Every variant carries the common record; radical adds the lattice data.
  j["gram"] = matrix_json(e.gram);
  j["coxeter"] = matrix_json(e.coxeter);
  j["radical_rank"] = e.radical_basis.size();
  j["radical_basis"] = e.radical_basis;
  if (what == "radical") {
    j["radical_gram"] = matrix_json(radical_gram(e));
    if (e.radical_basis.size() == 2) {
      j["sigma"] = matrix_json(radical_action(e, MoebiusGen::Sigma));
      j["rho"] = matrix_json(radical_action(e, MoebiusGen::Rho));
    }
  }
  emit(j);
}

void cmd_slope_word(const std::string& q) {
  const auto s = SlopeQ::parse(q);
  const auto word = word_for_slope(s);
  json j = base();
  j["slope"] = s.str();
  j["word"] = word.str();
  j["syllables"] = word.syllable_length();
  j["letters"] = word.letter_length();
  j["image_of_inf"] = apply_word(word, SlopeQ::infinity()).str();
  if (!cfg.weights.empty()) {
    const auto e = build_euler(weights_required());
    if (classify(e.weights).kind == ReprKind::Tubular) j["radical_class"] = circle_from_slope(s, e);
  }
  emit(j);
}

void cmd_interval(const std::string& r, const std::string& p, const std::string& q) {
  json j = base();
  j["contains"] = slope_interval_contains(SlopeQ::parse(r), SlopeQ::parse(p), SlopeQ::parse(q));
  emit(j);
}

void cmd_tube_hom(int p, const std::string& xs, const std::string& ys) {
  const auto [i, n] = parse_pair(xs);
  const auto [k, m] = parse_pair(ys);
  TubeLab lab(p);
  const auto x = lab.object(i, n), y = lab.object(k, m);
  const auto c = cluster_hom_dims(x, y);
  json j = base();
  j["x"] = x.str();
  j["y"] = y.str();
  j["hom"] = tube_hom_dim(x, y);
  j["ext"] = tube_ext_dim(x, y);
  j["oracle_hom"] = lab.oracle_hom_dim(x, y);
  j["cluster"] = {{"deg0", c.d0}, {"deg1", c.d1}, {"total", c.total()}};
  emit(j);
}

void cmd_tube_report(int p, std::int64_t n_max, bool yp) {
  if (p < 1 || n_max < 1) throw Error(ErrorCode::InvalidArgument, "need rank >= 1 and max >= 1");
  TubeLab lab(p);
  const auto r = yp ? lab.check_yoneda_lemma(n_max) : lab.ar_sequence_check(n_max);
  json j = base();
  j["rank"] = p;
  j["max"] = n_max;
  j["checked"] = r.checked;
  j["violations"] = r.violations;
  emit(j);
}

void cmd_hom(const std::string& xs, const std::string& ys, bool ideal) {
  const auto w = weights_required();
  json j = base();
  if (all_sheaf({xs, ys})) {
    const SheafCategory cat(w);
    const auto x = SheafObject::parse(xs, w), y = SheafObject::parse(ys, w);
    j["x"] = x.str();
    j["y"] = y.str();
    j["hom"] = cat.hom_dim(x, y);
    j["ext"] = cat.ext_dim(x, y);
    j["ideal"] = cat.ideal_dim(x, y);
    j["cluster_hom"] = cat.cluster_hom_dim(x, y);
    if (!ideal) j["euler"] = euler_form(cat.euler(), cat.k_class(x), cat.k_class(y));
  } else {
    const StarQuiver s(w);
    const auto x = s.parse_object(xs), y = s.parse_object(ys);
    j["x"] = x.str();
    j["y"] = y.str();
    j["cluster_ext"] = s.cluster_ext(x, y);
    if (x.is_module() && y.is_module()) {
      j["hom"] = s.hom_dim(x, y);
      j["ext"] = s.ext_dim(x, y);
      j["ideal"] = s.ext_dim(x, s.cluster_tau_inv(y));
    }
  }
  emit(j);
}

json tilting_json(const SheafCategory& cat, const std::vector<SheafObject>& t) {
  const auto chk = cat.is_tilting(t);
  json j = base();
  auto sorted = t;
  std::sort(sorted.begin(), sorted.end());
  j["tilting"] = strings(sorted);
  j["size"] = sorted.size();
  j["is_tilting"] = chk.tilting;
  if (!chk.tilting) j["reason"] = chk.reason;
  j["ext"] = matrix_json(chk.ext);
  return j;
}

void cmd_tilt(const std::string& what, const std::string& file) {
  const auto w = weights_required();
  if (what == "canonical" || what == "squid") {
    const SheafCategory cat(w);
    emit(tilting_json(cat, what == "canonical" ? cat.canonical_tilting() : cat.squid_tilting()));
    return;
  }
  if (what != "check") throw UsageError("tilt expects canonical, squid or check FILE");
  if (file.empty()) throw UsageError("tilt check needs a FILE");
  const auto items = read_set(file);
  if (all_sheaf(items)) {
    const SheafCategory cat(w);
    emit(tilting_json(cat, parse_sheaves(items, w)));
    return;
  }
  const StarQuiver s(w);
  const auto c = parse_cluster(items, s);
  json j = base();
  j["cluster"] = strings(c);
  j["size"] = c.size();
  j["is_tilting"] = is_cluster(s, c);
  IntMatrix ext(c.size(), c.size());
  for (std::size_t a = 0; a < c.size(); ++a)
    for (std::size_t b = 0; b < c.size(); ++b) ext(a, b) = s.cluster_ext(c[a], c[b]);
  j["ext"] = matrix_json(ext);
  emit(j);
}

json step_json(const MutationStep& s) {
  return {{"removed", s.removed.str()}, {"added", s.added.str()}, {"ext_dims", {s.ext_removed_added, s.ext_added_removed}}};
}

void cmd_replay_squid() {
  const auto w = weights_required();
  const SheafCategory cat(w);
  const auto trace = cat.replay_squid(cfg.window > 0 ? cfg.window : 2);
  json j = base();
  j["steps"] = trace.size();
  json t = json::array();
  for (const auto& s : trace) t.push_back(step_json(s));
  j["trace"] = t;
  j["start"] = strings(cat.canonical_tilting());
  j["end"] = strings(cat.squid_tilting());
  emit(j);
}

void cmd_mutate(const std::string& file, const std::string& m) {
  const auto w = weights_required();
  const auto items = read_set(file);
  json j = base();
  if (all_sheaf(items) && is_sheaf_syntax(m)) {
    const SheafCategory cat(w);
    const auto res = cat.mutate(parse_sheaves(items, w), SheafObject::parse(m, w), cfg.window > 0 ? cfg.window : 2);
    j["tilting"] = strings(res.tilting);
    j["step"] = step_json(res.step);
  } else {
    const StarQuiver s(w);
    const auto c = parse_cluster(items, s);
    const auto res = mutate(s, c, s.parse_object(m), cfg.window > 0 ? cfg.window : 8);
    j["cluster"] = strings(res.cluster);
    j["step"] = {{"removed", res.removed.str()},
                 {"added", res.added.str()},
                 {"ext_dims", {s.cluster_ext(res.removed, res.added)}}};
  }
  emit(j);
}

void cmd_exchange(const std::string& start_file) {
  const auto w = weights_required();
  const StarQuiver s(w);
  const auto start = start_file.empty() ? shifted_projective_cluster(s) : parse_cluster(read_set(start_file), s);
  const auto g = exchange_bfs(s, start, cfg.depth, cfg.window > 0 ? cfg.window : 8);
  if (cfg.format == "dot") {
    emit_text(g.dot());
    return;
  }
  json j = base();
  j["diagram"] = s.diagram();
  j["depth"] = cfg.depth;
  j["nodes"] = g.nodes.size();
  j["edges"] = g.edges.size();
  j["expanded"] = std::count(g.expanded.begin(), g.expanded.end(), true);
  j["regular"] = g.regular(s.size());
  j["regular_degree"] = g.regular(s.size()) ? json(s.size()) : json(nullptr);
  j["window_exhausted"] = g.window_exhausted;
  std::size_t with_regular = 0;
  for (const auto& c : g.nodes)
    with_regular += std::any_of(c.begin(), c.end(), [](const HerObject& x) { return !x.transjective(); });
  j["clusters_with_regular_members"] = with_regular;
  emit(j);
}

void cmd_reduce_torsion(const std::string& file) {
  const auto w = weights_required();
  const StarQuiver s(w);
  const auto c = parse_cluster(read_set(file), s);
  const auto trace = reduce_torsion(s, c, cfg.depth, cfg.window > 0 ? cfg.window : 8);
  json j = base();
  json steps = json::array();
  for (const auto& st : trace.steps)
    steps.push_back({{"removed", st.removed.str()}, {"added", st.added.str()}, {"root", st.root}});
  j["steps"] = steps;
  j["start"] = strings(c);
  j["end"] = strings(trace.end);
  j["slice"] = find_slice(s, trace.end);
  emit(j);
}

void cmd_fz(const std::string& what, const std::string& file, int k, bool exhaustive) {
  if (what == "canonical-presentation") {
    const auto p = canonical_cluster_presentation(weights_required());
    if (cfg.format == "dot") {
      emit_text(p.quiver.dot());
      return;
    }
    json j = base();
    j["vertices"] = p.quiver.labels();
    json arrows = json::array();
    for (const auto& a : p.arrows) arrows.push_back({{"from", a.from}, {"to", a.to}, {"name", a.name}});
    j["arrows"] = arrows;
    j["relations"] = p.relations;
    j["b"] = matrix_json(p.quiver.b());
    j["counts"] = {{"vertices", p.quiver.size()}, {"arrows", p.arrows.size()}, {"relations", p.relations.size()}};
    emit(j);
    return;
  }
  if (file.empty()) throw UsageError("fz " + what + " needs a FILE with the exchange matrix");
  const MutQuiver q(parse_b_matrix(read_json(file)));
  if (what == "mutate") {
    const auto mu = fz_mutate(q, k);
    if (cfg.format == "dot") {
      emit_text(mu.dot());
      return;
    }
    json j = base();
    j["vertex"] = k;
    j["b"] = matrix_json(mu.b());
    emit(j);
  } else if (what == "class") {
    const auto r = mutation_class_bfs(q, exhaustive ? -1 : cfg.depth, cfg.cap);
    if (cfg.format == "dot") {
      emit_text(r.dot());
      return;
    }
    json j = base();
    j["class_size"] = r.class_size;
    j["max_entry"] = r.max_entry;
    j["complete"] = r.complete;
    j["depth_reached"] = r.depth_reached;
    emit(j);
  } else {
    throw UsageError("fz expects mutate, class or canonical-presentation");
  }
}

int cmd_verify(const std::string& suite) {
  std::vector<CriterionResult> results;
  if (suite.empty()) {
    results = run_acceptance(cfg.seed);
  } else {
    const int id = criterion_id(suite);
    if (id == 0) throw UsageError("unknown suite '" + suite + "'");
    results.push_back(run_criterion(id, cfg.seed));
  }
  std::size_t passed = 0;
  for (const auto& r : results) passed += r.pass;
  if (cfg.format == "text") {
    for (const auto& r : results) emit_text(format_result(r) + "\n");
  } else {
    json j = base();
    json arr = json::array();
    for (const auto& r : results)
      arr.push_back({{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
    j["results"] = arr;
    j["passed"] = passed;
    j["total"] = results.size();
    emit(j);
  }
  return passed == results.size() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"clustercat: cluster categories of weighted projective lines"};
  app.require_subcommand(1);
  app.add_option("--weights,-w", cfg.weights, "weight type, e.g. 2,3,5");
  app.add_option("--lambda", cfg.lambda, "parameter labels, e.g. a,b");
  app.add_option("--format", cfg.format, "json, dot or text")->check(CLI::IsMember({"json", "dot", "text"}));
  app.add_option("--seed", cfg.seed, "random seed (default 0)");
  app.add_option("--window", cfg.window, "complement search window")->check(CLI::PositiveNumber);
  app.add_option("--depth", cfg.depth, "search depth")->check(CLI::NonNegativeNumber);
  app.add_option("--cap", cfg.cap, "node cap")->check(CLI::PositiveNumber);
  app.add_option("--output,-o", cfg.output, "write output to a file");
  app.fallthrough();

  std::string a1, a2, a3, what, suite, start_file;
  int rank = 1, k = 0;
  std::int64_t n_max = 6;
  std::string xs, ys;
  bool exhaustive = false;
  std::function<int()> action;

  auto* classify_cmd = app.add_subcommand("classify", "Euler characteristic and representation type");
  classify_cmd->callback([&] { action = [] { cmd_classify(); return 0; }; });

  auto* kth = app.add_subcommand("kth", "Gram, Coxeter or radical data of K_0");
  kth->add_option("what", what)->required()->check(CLI::IsMember({"gram", "coxeter", "radical"}));
  kth->callback([&] { action = [&] { cmd_kth(what); return 0; }; });

  auto* sw = app.add_subcommand("slope-word", "word in sigma, rho sending inf to Q");
  sw->add_option("Q", a1)->required();
  sw->callback([&] { action = [&] { cmd_slope_word(a1); return 0; }; });

  auto* iv = app.add_subcommand("interval", "is R in the slope interval from P to Q");
  iv->add_option("R", a1)->required();
  iv->add_option("P", a2)->required();
  iv->add_option("Q", a3)->required();
  iv->callback([&] { action = [&] { cmd_interval(a1, a2, a3); return 0; }; });

  auto* tube = app.add_subcommand("tube", "tube hom dimensions and oracle checks");
  tube->add_option("what", what)->required()->check(CLI::IsMember({"hom", "check-yp", "check-ar"}));
  tube->add_option("--rank", rank)->check(CLI::PositiveNumber);
  tube->add_option("--x", xs, "i,n");
  tube->add_option("--y", ys, "j,m");
  tube->add_option("--max", n_max);
  tube->callback([&] {
    action = [&] {
      if (what == "hom") {
        if (xs.empty() || ys.empty()) throw UsageError("tube hom needs --x i,n and --y j,m");
        cmd_tube_hom(rank, xs, ys);
      } else {
        cmd_tube_report(rank, n_max, what == "check-yp");
      }
      return 0;
    };
  });

  auto* hom = app.add_subcommand("hom", "hom and ext dimensions of two objects");
  hom->add_option("X", a1)->required();
  hom->add_option("Y", a2)->required();
  hom->callback([&] { action = [&] { cmd_hom(a1, a2, false); return 0; }; });

  auto* ideal = app.add_subcommand("ideal", "dimension of the degree-one part of Hom_C(X, Y)");
  ideal->add_option("X", a1)->required();
  ideal->add_option("Y", a2)->required();
  ideal->callback([&] { action = [&] { cmd_hom(a1, a2, true); return 0; }; });

  auto* tilt = app.add_subcommand("tilt", "canonical and squid tilting sets, tilting check");
  tilt->add_option("what", what)->required()->check(CLI::IsMember({"canonical", "squid", "check"}));
  tilt->add_option("FILE", a1);
  tilt->callback([&] { action = [&] { cmd_tilt(what, a1); return 0; }; });

  auto* replay = app.add_subcommand("replay-squid", "mutation sequence from the canonical set to the squid");
  replay->callback([&] { action = [] { cmd_replay_squid(); return 0; }; });

  auto* mut = app.add_subcommand("mutate", "exchange one member of a tilting set or cluster");
  mut->add_option("FILE", a1)->required();
  mut->add_option("M", a2)->required();
  mut->callback([&] { action = [&] { cmd_mutate(a1, a2); return 0; }; });

  auto* ex = app.add_subcommand("exchange", "BFS of the exchange graph in the hereditary model");
  ex->add_option("--start", start_file, "cluster file (default: shifted projectives)");
  ex->callback([&] { action = [&] { cmd_exchange(start_file); return 0; }; });

  auto* red = app.add_subcommand("reduce-torsion", "mutate regular members out of a cluster");
  red->add_option("FILE", a1)->required();
  red->callback([&] { action = [&] { cmd_reduce_torsion(a1); return 0; }; });

  auto* fz = app.add_subcommand("fz", "quiver mutation");
  fz->add_option("what", what)->required()->check(CLI::IsMember({"mutate", "class", "canonical-presentation"}));
  fz->add_option("FILE", a1);
  fz->add_option("K", k);
  fz->add_flag("--exhaustive", exhaustive, "explore the whole mutation class");
  fz->callback([&] { action = [&] { cmd_fz(what, a1, k, exhaustive); return 0; }; });

  auto* verify = app.add_subcommand("verify", "run the acceptance suites");
  verify->add_option("--suite", suite, "suite name or number");
  verify->callback([&] { action = [&] { return cmd_verify(suite); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n\n" << app.help();
    return 2;
  }

  std::ofstream file_out;
  if (!cfg.output.empty()) {
    file_out.open(cfg.output);
    if (!file_out) {
      std::cerr << "cannot write " << cfg.output << "\n";
      return 2;
    }
    out_stream = &file_out;
  }

  try {
    return action();
  } catch (const UsageError& e) {
    std::cerr << e.what() << "\n\n" << app.help();
    return 2;
  } catch (const Error& e) {
    json j;
    j["tool_version"] = kToolVersion;
    j["weights"] = nullptr;
    try {
      if (!cfg.weights.empty()) j["weights"] = WeightType::parse(cfg.weights, cfg.lambda).weights();
    } catch (const Error&) {
      j["weights"] = cfg.weights;
    }
    j["error"] = error_code_name(e.code());
    j["detail"] = e.what();
    *out_stream << j.dump(2) << "\n";
    return 1;
  }
}
