#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "newtonosc/bounds.hpp"
#include "newtonosc/decay_fit.hpp"
#include "newtonosc/ladder.hpp"
#include "newtonosc/nondegeneracy.hpp"
#include "newtonosc/polyhedron.hpp"
#include "newtonosc/quadrature.hpp"

namespace newtonosc {

/// Tool version string compiled into the library.
std::string_view tool_version();

/// 64-bit FNV-1a.
std::uint64_t fnv1a(std::string_view bytes);

/// Recorded in every report. Empty config_hash means "omit".
struct Provenance {
  std::string config_hash;
  std::uint64_t seed = 0;
};

/// "%.17g".
std::string format_double(double value);

std::string polyhedron_report_json(const NewtonPolyhedron& polyhedron, const Provenance& prov = {});
std::string ladder_report_json(const ExponentLadder& ladder, const Provenance& prov = {});
std::string nondegeneracy_report_json(const NondegeneracyVerdict& verdict, const Provenance& prov = {});
std::string constants_report_json(const ConstantsReport& report, const Provenance& prov = {});

struct DecayComparison {
  Rational p_theory;
  int q_theory = 0;
  double p_tolerance = 0.0;
  bool pass = false;
};
std::string decay_report_json(const DecayFit& fit, const DecayComparison& comparison, const Provenance& prov = {});
std::string expansion_report_json(const ExpansionFit& fit, const Provenance& prov = {});

/// Leading "# newtonosc <version> config <hash> seed <seed>" line, then the header.
std::string sweep_csv(const SweepResult& sweep, const Provenance& prov = {});
std::string lemma1_csv(const std::vector<DyadicRatioRow>& rows, const Provenance& prov = {});
std::string box_check_csv(const std::vector<BoxBoundRow>& rows, const Provenance& prov = {});

struct BoundSumRow {
  double lambda = 0.0;
  double value = 0.0;  ///< S(lambda)
  double bound = 0.0;  ///< lambda^{-p} log^q lambda
  double ratio = 0.0;
};
std::string bound_sum_csv(const std::vector<BoundSumRow>& rows, const Provenance& prov = {});

}  // namespace newtonosc
