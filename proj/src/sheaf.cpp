#include "clustercat/sheaf.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "clustercat/error.hpp"
#include "clustercat/tube.hpp"

namespace clustercat {

namespace {

std::int64_t mod(std::int64_t a, std::int64_t p) { return ((a % p) + p) % p; }

std::int64_t parse_int(std::string_view tok, std::string_view whole) {
  std::string s(tok);
  s.erase(std::remove(s.begin(), s.end(), ' '), s.end());
  try {
    std::size_t used = 0;
    const auto v = std::stoll(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw Error(ErrorCode::ParseError, "bad integer '" + s + "' in '" + std::string(whole) + "'");
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

// All a-vectors with 0 <= a_i < p_i, lexicographic.
std::vector<std::vector<std::int64_t>> all_residues(const WeightType& w) {
  std::vector<std::vector<std::int64_t>> out;
  std::vector<std::int64_t> a(w.weights().size(), 0);
  while (true) {
    out.push_back(a);
    int i = static_cast<int>(a.size()) - 1;
    while (i >= 0 && ++a[static_cast<std::size_t>(i)] == w.weights()[static_cast<std::size_t>(i)]) {
      a[static_cast<std::size_t>(i)] = 0;
      --i;
    }
    if (i < 0) break;
  }
  return out;
}

TubeObject tube_of(const WeightType& w, const SheafObject& x) {
  return TubeObject::make(w.weight(x.arm), x.k, x.n);
}

}  // namespace

SheafObject SheafObject::torsion(const WeightType& w, int arm, std::int64_t k, std::int64_t n) {
  if (arm < 1 || arm > w.t()) throw Error(ErrorCode::InvalidArgument, "torsion arm " + std::to_string(arm) + " out of range");
  const int p = w.weight(arm);
  if (n < 1 || n >= p)
    throw Error(ErrorCode::InvalidArgument, "exceptional torsion needs 1 <= n < " + std::to_string(p) + ", got " +
                                                std::to_string(n));
  SheafObject o;
  o.kind = Kind::Torsion;
  o.arm = arm;
  o.k = mod(k, p);
  o.n = n;
  return o;
}

SheafObject SheafObject::parse(std::string_view s, const WeightType& w) {
  const auto open = s.find('(');
  if (open == std::string_view::npos || s.back() != ')')
    throw Error(ErrorCode::ParseError, "bad sheaf object '" + std::string(s) + "'");
  const auto head = s.substr(0, open);
  const auto body = s.substr(open + 1, s.size() - open - 2);
  if (head == "L") {
    const auto semi = body.find(';');
    if (semi == std::string_view::npos) throw Error(ErrorCode::ParseError, "line needs ';m' in '" + std::string(s) + "'");
    std::vector<std::int64_t> a;
    const auto left = body.substr(0, semi);
    if (!left.empty())
      for (auto tok : split(left, ',')) a.push_back(parse_int(tok, s));
    return line(normal_form(a, parse_int(body.substr(semi + 1), s), w));
  }
  if (head == "T") {
    const auto parts = split(body, ',');
    if (parts.size() != 3) throw Error(ErrorCode::ParseError, "torsion needs T(i,k,n): '" + std::string(s) + "'");
    return torsion(w, static_cast<int>(parse_int(parts[0], s)), parse_int(parts[1], s), parse_int(parts[2], s));
  }
  throw Error(ErrorCode::ParseError, "bad sheaf object '" + std::string(s) + "'");
}

std::string SheafObject::str() const {
  if (kind == Kind::Line) return l_str(x);
  std::ostringstream os;
  os << "T(" << arm << "," << k << "," << n << ")";
  return os.str();
}

SheafCategory::SheafCategory(const WeightType& w) : w_(w), e_(build_euler(w)) {}

KClass SheafCategory::k_class(const SheafObject& x) const {
  if (x.is_line()) return line_class(e_, x.x);
  KClass v(e_.n(), 0);
  for (std::int64_t l = 0; l < x.n; ++l) v = k_add(v, simple_class(e_, x.arm, -x.k + l));
  return v;
}

SheafObject SheafCategory::tau(const SheafObject& x) const {
  if (x.is_line()) return SheafObject::line(l_add(x.x, omega(w_), w_));
  return SheafObject::torsion(w_, x.arm, x.k + 1, x.n);
}

SheafObject SheafCategory::tau_inv(const SheafObject& x) const {
  if (x.is_line()) return SheafObject::line(l_sub(x.x, omega(w_), w_));
  return SheafObject::torsion(w_, x.arm, x.k - 1, x.n);
}

SheafObject SheafCategory::twist(const SheafObject& x, const LElement& y) const {
  if (x.is_line()) return SheafObject::line(l_add(x.x, y, w_));
  return SheafObject::torsion(w_, x.arm, x.k - y.a.at(static_cast<std::size_t>(x.arm - 1)), x.n);
}

std::int64_t SheafCategory::hom_dim(const SheafObject& x, const SheafObject& y) const {
  if (x.is_line() && y.is_line()) return line_hom_dim(x.x, y.x, w_);
  if (x.is_line()) return euler_form(e_, k_class(x), k_class(y));  // Ext^1(line, torsion) = 0
  if (y.is_line()) return 0;
  if (x.arm != y.arm) return 0;
  return tube_hom_dim(tube_of(w_, x), tube_of(w_, y));
}

std::int64_t SheafCategory::ext_dim(const SheafObject& x, const SheafObject& y) const {
  return hom_dim(y, tau(x));
}

std::int64_t SheafCategory::ideal_dim(const SheafObject& x, const SheafObject& y) const {
  return ext_dim(x, tau_inv(y));
}

TiltingCheck SheafCategory::is_tilting(std::vector<SheafObject> t) const {
  std::sort(t.begin(), t.end());
  TiltingCheck out;
  out.ext = IntMatrix(t.size(), t.size());
  for (std::size_t a = 0; a < t.size(); ++a)
    for (std::size_t b = 0; b < t.size(); ++b) out.ext(a, b) = ext_dim(t[a], t[b]);
  if (std::adjacent_find(t.begin(), t.end()) != t.end()) {
    out.reason = "repeated member";
    return out;
  }
  if (t.size() != e_.n()) {
    out.reason = "expected " + std::to_string(e_.n()) + " members, got " + std::to_string(t.size());
    return out;
  }
  for (std::size_t a = 0; a < t.size(); ++a)
    for (std::size_t b = 0; b < t.size(); ++b)
      if (out.ext(a, b) != 0) {
        out.reason = "ext(" + t[a].str() + ", " + t[b].str() + ") = " + std::to_string(out.ext(a, b));
        return out;
      }
  out.tilting = true;
  return out;
}

std::vector<SheafObject> SheafCategory::canonical_tilting() const {
  std::vector<SheafObject> t;
  for (const auto& x : e_.basis_elements) t.push_back(SheafObject::line(x));
  std::sort(t.begin(), t.end());
  return t;
}

std::vector<SheafObject> SheafCategory::squid_tilting() const {
  std::vector<SheafObject> t{SheafObject::line(l_zero(w_)), SheafObject::line(l_c(w_))};
  for (int i = 1; i <= w_.t(); ++i)
    for (int j = 1; j < w_.weight(i); ++j) t.push_back(SheafObject::torsion(w_, i, j - 1, j));
  std::sort(t.begin(), t.end());
  return t;
}

std::vector<SheafObject> SheafCategory::torsion_objects() const {
  std::vector<SheafObject> out;
  for (int i = 1; i <= w_.t(); ++i)
    for (std::int64_t k = 0; k < w_.weight(i); ++k)
      for (std::int64_t n = 1; n < w_.weight(i); ++n) out.push_back(SheafObject::torsion(w_, i, k, n));
  return out;
}

std::vector<SheafObject> SheafCategory::universe(std::int64_t m_bound) const {
  std::vector<SheafObject> out;
  const auto residues = all_residues(w_);
  for (std::int64_t m = -m_bound; m <= m_bound; ++m)
    for (const auto& a : residues) out.push_back(SheafObject::line(LElement{a, m}));
  for (auto& x : torsion_objects()) out.push_back(x);
  return out;
}

MutationResult SheafCategory::mutate(const std::vector<SheafObject>& t, const SheafObject& m, std::int64_t window) const {
  if (std::find(t.begin(), t.end(), m) == t.end()) throw Error(ErrorCode::NotInSet, m.str() + " is not a member");
  if (window < 1) throw Error(ErrorCode::InvalidArgument, "window must be >= 1");
  std::vector<SheafObject> rest;
  for (const auto& x : t)
    if (!(x == m)) rest.push_back(x);

  std::int64_t lo = 0, hi = 0;
  bool any_line = false;
  for (const auto& x : t)
    if (x.is_line()) {
      lo = any_line ? std::min(lo, x.x.m) : x.x.m;
      hi = any_line ? std::max(hi, x.x.m) : x.x.m;
      any_line = true;
    }
  lo -= window;
  hi += window;

  // Lines by increasing |m|, then a-vector; then torsion in arm/index/length order.
  std::vector<SheafObject> candidates;
  std::vector<std::int64_t> ms;
  for (std::int64_t v = lo; v <= hi; ++v) ms.push_back(v);
  std::stable_sort(ms.begin(), ms.end(), [](std::int64_t a, std::int64_t b) { return std::llabs(a) < std::llabs(b); });
  const auto residues = all_residues(w_);
  for (auto v : ms)
    for (const auto& a : residues) candidates.push_back(SheafObject::line(LElement{a, v}));
  for (auto& x : torsion_objects()) candidates.push_back(x);

  std::vector<SheafObject> found;
  for (const auto& c : candidates) {
    if (c == m || std::find(rest.begin(), rest.end(), c) != rest.end()) continue;
    bool rigid = true;
    for (const auto& r : rest)
      if (ext_dim(c, r) != 0 || ext_dim(r, c) != 0) {
        rigid = false;
        break;
      }
    if (rigid) found.push_back(c);
  }
  if (found.empty())
    throw Error(ErrorCode::WindowExhausted, "no complement for " + m.str() + " within window " + std::to_string(window));
  if (found.size() > 1)
    throw Error(ErrorCode::AmbiguousComplement, "complements " + found[0].str() + " and " + found[1].str());

  MutationResult out;
  out.step = {m, found[0], ext_dim(m, found[0]), ext_dim(found[0], m)};
  const auto a = out.step.ext_removed_added, b = out.step.ext_added_removed;
  if (!((a == 1 && b == 0) || (a == 0 && b == 1)))
    throw std::logic_error("mutate: exchange pair has ext dims (" + std::to_string(a) + "," + std::to_string(b) + ")");
  out.tilting = rest;
  out.tilting.push_back(found[0]);
  std::sort(out.tilting.begin(), out.tilting.end());
  return out;
}

std::vector<MutationStep> SheafCategory::replay_squid(std::int64_t window) const {
  if (w_.t() < 1) throw Error(ErrorCode::InvalidArgument, "squid replay needs t >= 1");
  std::vector<MutationStep> trace;
  auto current = canonical_tilting();
  for (int h = 1; h <= w_.t(); ++h)
    for (int j = w_.weight(h) - 1; j >= 1; --j) {
      const auto target = SheafObject::line(l_scale(l_unit(w_, h), j, w_));
      auto res = mutate(current, target, window);
      current = std::move(res.tilting);
      trace.push_back(res.step);
    }
  return trace;
}

}  // namespace clustercat
