#include "clustercat/weights.hpp"

#include <numeric>
#include <set>
#include <sstream>

#include "clustercat/error.hpp"
#include "clustercat/linalg.hpp"

namespace clustercat {

namespace {

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  if (s.empty()) return out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.emplace_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

WeightType::WeightType(std::vector<int> weights, std::vector<std::string> lambda)
    : weights_(std::move(weights)), lambda_(std::move(lambda)) {
  for (int p : weights_)
    if (p < 2) throw Error(ErrorCode::InvalidWeightType, "weights must be >= 2, got " + std::to_string(p));
  const std::size_t expected = weights_.size() > 2 ? weights_.size() - 2 : 0;
  if (lambda_.empty()) {
    for (std::size_t i = 0; i < expected; ++i) lambda_.push_back("l" + std::to_string(i + 3));
  }
  if (lambda_.size() != expected)
    throw Error(ErrorCode::InvalidWeightType, "expected " + std::to_string(expected) + " lambda parameters, got " +
                                                  std::to_string(lambda_.size()));
  if (std::set<std::string>(lambda_.begin(), lambda_.end()).size() != lambda_.size())
    throw Error(ErrorCode::InvalidWeightType, "lambda parameters must be pairwise distinct");
  for (int p : weights_) lcm_ = std::lcm(lcm_, static_cast<std::int64_t>(p));
}

WeightType WeightType::parse(std::string_view weights, std::string_view lambda) {
  std::vector<int> p;
  for (const auto& tok : split(weights, ',')) {
    if (tok.empty()) throw Error(ErrorCode::ParseError, "empty weight in '" + std::string(weights) + "'");
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(tok, &used);
    } catch (const std::exception&) {
      throw Error(ErrorCode::ParseError, "bad weight '" + tok + "'");
    }
    if (used != tok.size()) throw Error(ErrorCode::ParseError, "bad weight '" + tok + "'");
    p.push_back(v);
  }
  return WeightType(std::move(p), split(lambda, ','));
}

int WeightType::k_rank() const {
  int n = 2;
  for (int p : weights_) n += p - 1;
  return n;
}

std::string WeightType::str() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < weights_.size(); ++i) os << (i ? "," : "") << weights_[i];
  return os.str();
}

LElement normal_form(const std::vector<std::int64_t>& a, std::int64_t m, const WeightType& w) {
  if (a.size() != w.weights().size())
    throw Error(ErrorCode::InvalidWeightVector, "weight vector has length " + std::to_string(a.size()) +
                                                    ", expected " + std::to_string(w.weights().size()));
  LElement out;
  out.a.resize(a.size());
  out.m = m;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const std::int64_t p = w.weights()[i];
    const std::int64_t q = floor_div(a[i], p);
    out.a[i] = a[i] - q * p;
    out.m += q;
  }
  return out;
}

LElement l_zero(const WeightType& w) { return LElement{std::vector<std::int64_t>(w.weights().size(), 0), 0}; }

LElement l_unit(const WeightType& w, int arm) {
  std::vector<std::int64_t> a(w.weights().size(), 0);
  a.at(static_cast<std::size_t>(arm - 1)) = 1;
  return normal_form(a, 0, w);
}

LElement l_c(const WeightType& w) { return LElement{std::vector<std::int64_t>(w.weights().size(), 0), 1}; }

LElement l_add(const LElement& x, const LElement& y, const WeightType& w) {
  std::vector<std::int64_t> a(x.a.size());
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = x.a[i] + y.a.at(i);
  return normal_form(a, x.m + y.m, w);
}

LElement l_neg(const LElement& x, const WeightType& w) {
  std::vector<std::int64_t> a(x.a.size());
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = -x.a[i];
  return normal_form(a, -x.m, w);
}

LElement l_sub(const LElement& x, const LElement& y, const WeightType& w) { return l_add(x, l_neg(y, w), w); }

LElement l_scale(const LElement& x, std::int64_t k, const WeightType& w) {
  std::vector<std::int64_t> a(x.a.size());
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = k * x.a[i];
  return normal_form(a, k * x.m, w);
}

std::int64_t delta(const LElement& x, const WeightType& w) {
  std::int64_t d = x.m * w.p_lcm();
  for (std::size_t i = 0; i < x.a.size(); ++i) d += x.a[i] * (w.p_lcm() / w.weights()[i]);
  return d;
}

LElement omega(const WeightType& w) {
  return normal_form(std::vector<std::int64_t>(w.weights().size(), -1), w.t() - 2, w);
}

Rational euler_characteristic(const WeightType& w) {
  Rational chi(2);
  for (int p : w.weights()) chi -= Rational(1) - Rational(1, p);
  return chi;
}

ReprType classify(const WeightType& w) {
  const Rational chi = euler_characteristic(w);
  const ReprKind kind = chi.sign() > 0 ? ReprKind::Domestic : chi.sign() == 0 ? ReprKind::Tubular : ReprKind::Wild;
  return {kind, chi};
}

std::string_view repr_kind_name(ReprKind kind) {
  switch (kind) {
    case ReprKind::Domestic: return "domestic";
    case ReprKind::Tubular: return "tubular";
    case ReprKind::Wild: return "wild";
  }
  return "";
}

std::int64_t picard_torsion_order(const WeightType& w) {
  const std::size_t t = w.weights().size();
  if (t == 0) return 1;
  // Generators x_1..x_t, c; relation rows p_i x_i - c.
  IntMatrix rel(t, t + 1);
  for (std::size_t i = 0; i < t; ++i) {
    rel(i, i) = w.weights()[i];
    rel(i, t) = -1;
  }
  std::int64_t order = 1;
  for (auto d : smith_invariants(rel)) order *= d;
  return order;
}

std::string l_str(const LElement& x) {
  std::ostringstream os;
  os << "L(";
  for (std::size_t i = 0; i < x.a.size(); ++i) os << (i ? "," : "") << x.a[i];
  os << ";" << x.m << ")";
  return os.str();
}

}  // namespace clustercat
