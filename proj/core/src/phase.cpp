#include "newtonosc/phase.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <json.hpp>

#include "newtonosc/error.hpp"

namespace newtonosc {

using nlohmann::json;

Multidegree::Multidegree(std::vector<int> exponents) : exponents_(std::move(exponents)) {
  for (int e : exponents_) {
    if (e < 0) throw ParseError("negative exponent in multidegree");
  }
}

int Multidegree::total() const noexcept {
  int s = 0;
  for (int e : exponents_) s += e;
  return s;
}

RationalVector Multidegree::as_rational() const {
  RationalVector v;
  v.reserve(exponents_.size());
  for (int e : exponents_) v.emplace_back(e);
  return v;
}

RationalVector Multidegree::plus_ones() const {
  RationalVector v;
  v.reserve(exponents_.size());
  for (int e : exponents_) v.emplace_back(e + 1);
  return v;
}

Multidegree operator+(const Multidegree& a, const Multidegree& b) {
  std::vector<int> e(a.size());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = a[i] + b[i];
  return Multidegree(std::move(e));
}

// ---------------------------------------------------------------------------

Phase::Phase(std::size_t dimension, std::vector<Term> terms)
    : dimension_(dimension), terms_(std::move(terms)) {
  coeff_d_.reserve(terms_.size());
  for (const auto& t : terms_) coeff_d_.push_back(t.coefficient.get_d());
}

Phase Phase::create(std::size_t dimension, std::vector<Term> terms) {
  if (dimension == 0) throw ParseError("dimension must be at least 1");
  std::map<Multidegree, Rational> merged;
  for (auto& t : terms) {
    if (t.exponent.size() != dimension) {
      throw ParseError("dimension mismatch: term has " + std::to_string(t.exponent.size()) +
                       " exponents, expected " + std::to_string(dimension));
    }
    const int total = t.exponent.total();
    if (sgn(t.coefficient) != 0 && total == 0) throw ParseError("constant term forbidden");
    if (sgn(t.coefficient) != 0 && total == 1) throw ParseError("linear term forbidden");
    merged[t.exponent] += t.coefficient;
  }
  std::vector<Term> out;
  for (auto& [alpha, c] : merged) {
    if (sgn(c) != 0) out.push_back({alpha, c});
  }
  if (out.empty()) throw ParseError("phase has no nonzero terms");
  return Phase(dimension, std::move(out));
}

std::vector<Multidegree> Phase::support() const {
  std::vector<Multidegree> s;
  s.reserve(terms_.size());
  for (const auto& t : terms_) s.push_back(t.exponent);
  return s;
}

int Phase::max_total_degree() const {
  int k = 0;
  for (const auto& t : terms_) k = std::max(k, t.exponent.total());
  return k;
}

Phase Phase::truncated(int k) const {
  std::vector<Term> kept;
  for (const auto& t : terms_) {
    if (t.exponent.total() <= k) kept.push_back(t);
  }
  if (kept.empty()) throw DomainError("truncation to degree " + std::to_string(k) + " is empty");
  return Phase(dimension_, std::move(kept));
}

Phase Phase::restricted(const std::function<bool(const Multidegree&)>& keep) const {
  std::vector<Term> kept;
  for (const auto& t : terms_) {
    if (keep(t.exponent)) kept.push_back(t);
  }
  if (kept.empty()) throw DomainError("restriction removed every term");
  return Phase(dimension_, std::move(kept));
}

void Phase::check_point(std::span<const double> x) const {
  if (x.size() != dimension_) {
    throw DomainError("dimension mismatch: point has " + std::to_string(x.size()) +
                      " coordinates, phase has " + std::to_string(dimension_));
  }
}

namespace {

double monomial(const Multidegree& alpha, std::span<const double> x) {
  double v = 1.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (int k = 0; k < alpha[i]; ++k) v *= x[i];
  }
  return v;
}

// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace

double Phase::evaluate(std::span<const double> x) const {
  check_point(x);
  CompensatedSum s;
  for (std::size_t t = 0; t < terms_.size(); ++t) s.add(coeff_d_[t] * monomial(terms_[t].exponent, x));
  return s.value();
}

std::vector<double> Phase::gradient(std::span<const double> x) const {
  check_point(x);
  std::vector<double> g(dimension_, 0.0);
  for (std::size_t j = 0; j < dimension_; ++j) {
    CompensatedSum s;
    for (std::size_t t = 0; t < terms_.size(); ++t) {
      const auto& alpha = terms_[t].exponent;
      if (alpha[j] == 0) continue;
      double v = coeff_d_[t] * alpha[j];
      for (std::size_t i = 0; i < dimension_; ++i) {
        const int p = (i == j) ? alpha[i] - 1 : alpha[i];
        for (int k = 0; k < p; ++k) v *= x[i];
      }
      s.add(v);
    }
    g[j] = s.value();
  }
  return g;
}

std::vector<double> Phase::scaled_gradient(std::span<const double> x) const {
  check_point(x);
  std::vector<double> g(dimension_, 0.0);
  for (std::size_t j = 0; j < dimension_; ++j) {
    CompensatedSum s;
    for (std::size_t t = 0; t < terms_.size(); ++t) {
      const auto& alpha = terms_[t].exponent;
      if (alpha[j] != 0) s.add(coeff_d_[t] * alpha[j] * monomial(alpha, x));
    }
    g[j] = s.value();
  }
  return g;
}

double Phase::partial_bound(std::size_t i, std::span<const double> radii) const {
  double bound = 0.0;
  for (std::size_t t = 0; t < terms_.size(); ++t) {
    const auto& alpha = terms_[t].exponent;
    if (alpha[i] == 0) continue;
    double v = std::abs(coeff_d_[t]) * alpha[i];
    for (std::size_t k = 0; k < dimension_; ++k) {
      const int p = (k == i) ? alpha[k] - 1 : alpha[k];
      for (int m = 0; m < p; ++m) v *= radii[k];
    }
    bound += v;
  }
  return bound;
}

bool Phase::is_additively_separable() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const Term& t) {
    int nonzero = 0;
    for (int e : t.exponent.exponents()) nonzero += (e != 0);
    return nonzero <= 1;
  });
}

// ---------------------------------------------------------------------------

namespace {

Rational coefficient_from_json(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(std::to_string(j.get<long long>()));
  throw ParseError("field 'coefficient' must be a \"p/q\" string or an integer");
}

}  // namespace

Phase parse_phase(std::string_view document) {
  json doc;
  try {
    doc = json::parse(document);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("phase document is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("phase document must be an object");
  if (!doc.contains("dimension") || !doc["dimension"].is_number_integer() ||
      doc["dimension"].get<long long>() < 1) {
    throw ParseError("field 'dimension' must be a positive integer");
  }
  const auto d = static_cast<std::size_t>(doc["dimension"].get<long long>());
  if (!doc.contains("terms") || !doc["terms"].is_array()) {
    throw ParseError("field 'terms' must be an array");
  }
  std::vector<Term> terms;
  for (const auto& jt : doc["terms"]) {
    if (!jt.is_object() || !jt.contains("exponents") || !jt["exponents"].is_array()) {
      throw ParseError("field 'terms[].exponents' must be an array of integers");
    }
    std::vector<int> e;
    for (const auto& je : jt["exponents"]) {
      if (!je.is_number_integer() || je.get<long long>() < 0) {
        throw ParseError("field 'terms[].exponents' must hold nonnegative integers");
      }
      e.push_back(static_cast<int>(je.get<long long>()));
    }
    if (!jt.contains("coefficient")) throw ParseError("field 'terms[].coefficient' is missing");
    terms.push_back({Multidegree(std::move(e)), coefficient_from_json(jt["coefficient"])});
  }
  return Phase::create(d, std::move(terms));
}

std::string serialize_phase(const Phase& phase) {
  json doc;
  doc["dimension"] = phase.dimension();
  json terms = json::array();
  for (const auto& t : phase.terms()) {
    terms.push_back({{"exponents", std::vector<int>(t.exponent.exponents().begin(),
                                                    t.exponent.exponents().end())},
                     {"coefficient", to_string(t.coefficient)}});
  }
  doc["terms"] = std::move(terms);
  return doc.dump(2);
}

// ---------------------------------------------------------------------------

CutoffSpec CutoffSpec::bump(double radius) {
  if (!(radius > 0)) throw DomainError("cutoff radius must be positive");
  return CutoffSpec{radius, Kind::Bump, 0};
}

CutoffSpec CutoffSpec::smoothstep(double radius, int order) {
  if (!(radius > 0)) throw DomainError("cutoff radius must be positive");
  if (order < 2) throw DomainError("smoothstep order must be at least 2");
  return CutoffSpec{radius, Kind::Smoothstep, order};
}

double CutoffSpec::factor(double x) const {
  const double u = x / radius;
  const double s = 1.0 - u * u;
  if (s <= 0.0) return 0.0;
  if (kind == Kind::Bump) return std::exp(-1.0 / s);
  return std::pow(s, smoothstep_order);
}

double CutoffSpec::evaluate(std::span<const double> x) const {
  double v = 1.0;
  for (double xi : x) v *= factor(xi);
  return v;
}

CutoffSpec parse_cutoff(std::string_view document) {
  json doc;
  try {
    doc = json::parse(document);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("cutoff document is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("radius") || !doc["radius"].is_number()) {
    throw ParseError("field 'radius' must be a number");
  }
  const double r = doc["radius"].get<double>();
  if (!(r > 0)) throw ParseError("field 'radius' must be positive");
  const json kind = doc.value("kind", json("bump"));
  if (kind.is_string() && kind.get<std::string>() == "bump") return CutoffSpec::bump(r);
  if (kind.is_object() && kind.contains("smoothstep") && kind["smoothstep"].is_number_integer()) {
    const int m = kind["smoothstep"].get<int>();
    if (m < 2) throw ParseError("field 'kind.smoothstep' must be at least 2");
    return CutoffSpec::smoothstep(r, m);
  }
  throw ParseError("field 'kind' must be \"bump\" or {\"smoothstep\": m}");
}

std::string serialize_cutoff(const CutoffSpec& cutoff) {
  json doc;
  doc["radius"] = cutoff.radius;
  if (cutoff.kind == CutoffSpec::Kind::Bump) {
    doc["kind"] = "bump";
  } else {
    doc["kind"] = {{"smoothstep", cutoff.smoothstep_order}};
  }
  return doc.dump();
}

}  // namespace newtonosc
