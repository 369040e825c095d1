#include "newtonosc/report.hpp"

#include <cmath>
#include <cstdio>

#include "json.hpp"

namespace newtonosc {

namespace {

using Json = nlohmann::ordered_json;

Json number(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

Json doubles(std::span<const double> v) {
  Json out = Json::array();
  for (double x : v) out.push_back(number(x));
  return out;
}

Json ints(std::span<const int> v) {
  Json out = Json::array();
  for (int x : v) out.push_back(x);
  return out;
}

Json rationals(std::span<const Rational> v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(to_string(x));
  return out;
}

Json header(const Provenance& prov) {
  Json j = Json::object();
  j["tool_version"] = std::string(tool_version());
  if (!prov.config_hash.empty()) {
    j["config_hash"] = prov.config_hash;
    j["seed"] = prov.seed;
  }
  return j;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string csv_preamble(const Provenance& prov, std::string_view columns) {
  std::string out = "# newtonosc " + std::string(tool_version());
  if (!prov.config_hash.empty()) out += " config " + prov.config_hash + " seed " + std::to_string(prov.seed);
  out += "\n";
  out += columns;
  out += "\n";
  return out;
}

}  // namespace

std::string_view tool_version() { return NEWTONOSC_VERSION; }

std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string format_double(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

std::string polyhedron_report_json(const NewtonPolyhedron& polyhedron, const Provenance& prov) {
  Json j = header(prov);
  Json ext = Json::array();
  for (const auto& a : polyhedron.extreme_points()) ext.push_back(ints(a.exponents()));
  j["extreme_points"] = ext;
  Json normals = Json::array();
  for (const auto& w : polyhedron.facet_normals()) normals.push_back(rationals(w));
  j["facet_normals"] = normals;
  try {
    j["newton_distance"] = to_string(polyhedron.newton_distance());
  } catch (const std::exception&) {
    j["newton_distance"] = nullptr;
  }
  j["convenient"] = polyhedron.convenient();
  Json faces = Json::array();
  for (const auto& f : polyhedron.compact_faces()) {
    Json face;
    face["dim"] = f.dimension;
    Json verts = Json::array();
    for (auto v : f.vertex_ids) verts.push_back(ints(polyhedron.extreme_points()[v].exponents()));
    face["vertices"] = verts;
    face["facets"] = f.containing_facets;
    Json support = Json::array();
    for (const auto& s : f.support_points) support.push_back(ints(s.exponents()));
    face["support"] = support;
    faces.push_back(face);
  }
  j["compact_faces"] = faces;
  return dump(j);
}

std::string ladder_report_json(const ExponentLadder& ladder, const Provenance& prov) {
  Json j = header(prov);
  j["p_max"] = to_string(ladder.p_max);
  j["n_max"] = ladder.n_max;
  j["beta_bounds"] = ladder.beta_bounds;
  j["decomposition_filter"] = ladder.decomposition_filter;
  Json terms = Json::array();
  for (const auto& t : ladder.terms) {
    Json term;
    term["p"] = to_string(t.p);
    term["d"] = t.multiplicity;
    Json wit = Json::array();
    for (const auto& w : t.witnesses) {
      Json x;
      x["beta"] = ints(w.beta.exponents());
      x["n"] = w.n;
      x["codim"] = w.codim;
      wit.push_back(x);
    }
    term["witnesses"] = wit;
    terms.push_back(term);
  }
  j["terms"] = terms;
  return dump(j);
}

std::string nondegeneracy_report_json(const NondegeneracyVerdict& verdict, const Provenance& prov) {
  Json j = header(prov);
  j["status"] = to_string(verdict.status);
  j["reason"] = verdict.reason;
  j["params"] = {{"grid_per_axis", verdict.params.grid_per_axis},
                 {"refine_depth", verdict.params.refine_depth},
                 {"degeneracy_tol", verdict.params.degeneracy_tol}};
  Json faces = Json::array();
  for (const auto& f : verdict.faces) {
    Json face;
    face["face"] = f.face_index;
    face["dim"] = f.dimension;
    face["min_norm"] = number(f.min_norm);
    face["argmin"] = doubles(f.argmin);
    face["analytic"] = f.analytic;
    face["degenerate"] = f.degenerate;
    faces.push_back(face);
  }
  j["faces"] = faces;
  if (!verdict.witness.empty()) {
    j["witness"] = doubles(verdict.witness);
    j["witness_face"] = verdict.witness_face;
  }
  return dump(j);
}

std::string constants_report_json(const ConstantsReport& r, const Provenance& prov) {
  Json j = header(prov);
  j["a"] = number(r.a);
  j["rho"] = number(r.rho);
  for (std::size_t m = 0; m < r.c.size(); ++m) j["C" + std::to_string(m)] = number(r.c[m]);
  for (std::size_t m = 0; m < r.c_prime.size(); ++m) j["C_prime" + std::to_string(m + 1)] = number(r.c_prime[m]);
  for (std::size_t m = 0; m < r.b.size(); ++m) j["b" + std::to_string(m + 1)] = number(r.b[m]);
  j["p"] = number(r.p);
  j["delta_prime"] = number(r.delta_prime);
  j["delta"] = number(r.delta);
  j["s"] = number(r.s);
  for (std::size_t m = 0; m < r.log10_c.size(); ++m) j["log10_C" + std::to_string(m)] = number(r.log10_c[m]);
  for (std::size_t m = 0; m < r.log10_c_prime.size(); ++m) {
    j["log10_C_prime" + std::to_string(m + 1)] = number(r.log10_c_prime[m]);
  }
  for (std::size_t m = 0; m < r.log10_b.size(); ++m) j["log10_b" + std::to_string(m + 1)] = number(r.log10_b[m]);
  j["log10_s"] = number(r.log10_s);
  j["k"] = r.k;
  j["grid"] = r.grid;
  return dump(j);
}

std::string decay_report_json(const DecayFit& fit, const DecayComparison& cmp, const Provenance& prov) {
  Json j = header(prov);
  j["p_hat"] = number(fit.p_hat);
  j["q_hat"] = fit.q_hat;
  j["C_hat"] = number(fit.c_hat);
  j["residual"] = number(fit.rms_residual);
  j["rms_by_q"] = doubles(fit.rms_by_q);
  j["window"] = {number(fit.window_lo), number(fit.window_hi)};
  j["points"] = fit.points;
  j["p_theory"] = to_string(cmp.p_theory);
  j["q_theory"] = cmp.q_theory;
  j["p_tolerance"] = number(cmp.p_tolerance);
  j["pass"] = cmp.pass;
  return dump(j);
}

std::string expansion_report_json(const ExpansionFit& fit, const Provenance& prov) {
  Json j = header(prov);
  Json terms = Json::array();
  for (const auto& t : fit.terms) {
    terms.push_back({{"p", to_string(t.p)},
                     {"r", t.r},
                     {"re", number(t.coefficient.real())},
                     {"im", number(t.coefficient.imag())}});
  }
  j["terms"] = terms;
  j["residual_exponent"] = number(fit.residual_exponent);
  j["condition_number"] = number(fit.condition_number);
  j["nuisance_terms"] = fit.nuisance_terms;
  return dump(j);
}

std::string sweep_csv(const SweepResult& sweep, const Provenance& prov) {
  std::string out = csv_preamble(prov, "lambda,re,im,abs,est_error,flagged");
  for (const auto& r : sweep.rows) {
    out += format_double(r.lambda) + "," + format_double(r.value.real()) + "," + format_double(r.value.imag()) +
           "," + format_double(std::abs(r.value)) + "," + format_double(r.est_error) + "," +
           (r.flagged ? "1" : "0") + "\n";
  }
  return out;
}

std::string lemma1_csv(const std::vector<DyadicRatioRow>& rows, const Provenance& prov) {
  std::string out = csv_preamble(prov, "lambda,j,value,bound,ratio");
  for (const auto& r : rows) {
    std::string j;
    for (std::size_t i = 0; i < r.j.size(); ++i) j += (i ? ";" : "") + std::to_string(r.j[i]);
    out += "," + j + "," + format_double(r.box_min) + "," + format_double(r.envelope) + "," +
           format_double(r.ratio) + "\n";
  }
  return out;
}

std::string box_check_csv(const std::vector<BoxBoundRow>& rows, const Provenance& prov) {
  std::string out = csv_preamble(prov, "lambda,j,value,bound,ratio,reliable");
  for (const auto& r : rows) {
    out += format_double(r.lambda) + "," + std::to_string(r.j) + "," + format_double(r.value) + "," +
           format_double(r.bound) + "," + format_double(r.ratio) + "," + (r.reliable ? "1" : "0") + "\n";
  }
  return out;
}

std::string bound_sum_csv(const std::vector<BoundSumRow>& rows, const Provenance& prov) {
  std::string out = csv_preamble(prov, "lambda,j,value,bound,ratio");
  for (const auto& r : rows) {
    out += format_double(r.lambda) + ",," + format_double(r.value) + "," + format_double(r.bound) + "," +
           format_double(r.ratio) + "\n";
  }
  return out;
}

}  // namespace newtonosc
