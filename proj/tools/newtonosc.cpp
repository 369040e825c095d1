#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "newtonosc/newtonosc.hpp"

namespace fs = std::filesystem;
using namespace newtonosc;
using Json = nlohmann::ordered_json;

namespace {

enum ExitCode : int {
  kOk = 0,
  kParse = 1,
  kDegenerate = 2,
  kInconclusive = 3,
  kSweepFailure = 4,
  kVerifyFailed = 5,
};

std::string read_file(const std::string& path, const std::string& field) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(field + ": cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out << text;
}

// Flag value, else config value at a dotted path, else the default.
class Settings {
 public:
  void load(const std::optional<std::string>& path) {
    if (!path) return;
    const std::string text = read_file(*path, "config");
    try {
      config_ = Json::parse(text);
    } catch (const std::exception& e) {
      throw ParseError(std::string("config: ") + e.what());
    }
    if (!config_.is_object()) throw ParseError("config: top level must be an object");
  }

  template <class T>
  T get(const std::optional<T>& flag, const std::string& dotted, T fallback) const {
    if (flag) return *flag;
    const Json* node = &config_;
    std::size_t start = 0;
    while (start <= dotted.size()) {
      const std::size_t dot = dotted.find('.', start);
      const std::string key = dotted.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
      if (!node->is_object() || !node->contains(key)) return fallback;
      node = &(*node)[key];
      if (dot == std::string::npos) break;
      start = dot + 1;
    }
    try {
      return node->get<T>();
    } catch (const std::exception& e) {
      throw ParseError("config field '" + dotted + "': " + e.what());
    }
  }

  const Json* find(const std::string& key) const {
    if (!config_.is_object() || !config_.contains(key)) return nullptr;
    return &config_[key];
  }

 private:
  Json config_ = Json::object();
};

struct Common {
  std::optional<std::string> config;
  std::optional<std::string> out;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> phase;
};

struct Context {
  Settings settings;
  fs::path out_dir;
  std::uint64_t seed = 0;
  Phase phase = Phase::create(1, {{Multidegree({2}), Rational(1)}});
  std::string phase_path;
};

Context make_context(const Common& common) {
  Context ctx;
  ctx.settings.load(common.config);
  ctx.out_dir = ctx.settings.get<std::string>(common.out, "out", ".");
  ctx.seed = ctx.settings.get<std::uint64_t>(common.seed, "seed", 0);
  ctx.phase_path = ctx.settings.get<std::string>(common.phase, "phase", "");
  if (ctx.phase_path.empty()) throw ParseError("phase: no phase file given");
  try {
    ctx.phase = parse_phase(read_file(ctx.phase_path, "phase"));
  } catch (const ParseError& e) {
    throw ParseError(std::string("phase: ") + e.what());
  }
  fs::create_directories(ctx.out_dir);
  return ctx;
}

Provenance provenance(const Context& ctx, Json effective) {
  effective["phase"] = Json::parse(serialize_phase(ctx.phase));
  effective["seed"] = ctx.seed;
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(effective.dump())));
  return {buf, ctx.seed};
}

Rational rational_setting(const Settings& s, const std::optional<std::string>& flag, const std::string& key,
                          const Rational& fallback) {
  const auto text = s.get<std::string>(flag, key, "");
  if (text.empty()) return fallback;
  try {
    return parse_rational(text);
  } catch (const ParseError& e) {
    throw ParseError("field '" + key + "': " + e.what());
  }
}

struct NondegOptions {
  std::optional<int> grid;
  std::optional<int> refine;
  std::optional<double> tol;
  std::optional<int> k;
};

NondegeneracyParams nondeg_params(const Settings& s, const NondegOptions& o) {
  NondegeneracyParams p;
  p.grid_per_axis = s.get<int>(o.grid, "nondegeneracy.grid", p.grid_per_axis);
  p.refine_depth = s.get<int>(o.refine, "nondegeneracy.refine", p.refine_depth);
  p.degeneracy_tol = s.get<double>(o.tol, "nondegeneracy.tol", p.degeneracy_tol);
  if (p.grid_per_axis < 2) throw ParseError("field 'nondegeneracy.grid': must be at least 2");
  if (p.refine_depth < 0) throw ParseError("field 'nondegeneracy.refine': must be nonnegative");
  if (!(p.degeneracy_tol > 0.0)) throw ParseError("field 'nondegeneracy.tol': must be positive");
  return p;
}

Json params_json(const NondegeneracyParams& p) {
  return {{"grid", p.grid_per_axis}, {"refine", p.refine_depth}, {"tol", p.degeneracy_tol}};
}

int status_exit(NondegeneracyStatus s) {
  switch (s) {
    case NondegeneracyStatus::Nondegenerate: return kOk;
    case NondegeneracyStatus::Degenerate: return kDegenerate;
    case NondegeneracyStatus::Inconclusive: return kInconclusive;
  }
  return kInconclusive;
}

struct LadderOptions {
  std::optional<std::string> p_max;
  std::optional<int> n_max;
  std::optional<bool> filter;
  std::optional<int> beta_bound;
};

constexpr int kDefaultBetaBound = 16;

ExponentLadder run_ladder(const Context& ctx, const NewtonPolyhedron& n, const LadderOptions& o, Json& eff) {
  const Rational p0 = 1 / n.newton_distance();
  const Rational p_max = rational_setting(ctx.settings, o.p_max, "ladder.p_max", p0 + 1);
  const int n_max = ctx.settings.get<int>(o.n_max, "ladder.n_max", static_cast<int>(n.dimension()) + 1);
  const bool filter = ctx.settings.get<bool>(o.filter, "ladder.filter", true);
  std::optional<int> beta_bound;
  const int bb = ctx.settings.get<int>(o.beta_bound, "ladder.beta_bound", -1);
  if (bb >= 0) {
    beta_bound = bb;
  } else if (!n.convenient()) {
    beta_bound = kDefaultBetaBound;
  }
  if (n_max < 0) throw ParseError("field 'ladder.n_max': must be nonnegative");
  eff["ladder"] = {{"p_max", to_string(p_max)}, {"n_max", n_max}, {"filter", filter},
                   {"beta_bound", beta_bound ? *beta_bound : -1}};
  return exponent_ladder(n, p_max, n_max, filter, beta_bound);
}

CutoffSpec cutoff_setting(const Context& ctx, const std::optional<std::string>& file, const std::optional<double>& radius) {
  CutoffSpec c;
  if (file) {
    c = parse_cutoff(read_file(*file, "cutoff"));
  } else if (const Json* node = ctx.settings.find("cutoff")) {
    try {
      c = parse_cutoff(node->dump());
    } catch (const ParseError& e) {
      throw ParseError(std::string("config field 'cutoff': ") + e.what());
    }
  }
  if (radius) {
    if (!(*radius > 0.0)) throw ParseError("field 'radius': must be positive");
    c.radius = *radius;
  }
  return c;
}

std::vector<double> geometric_grid(double lo, double hi, int points) {
  std::vector<double> out;
  for (int k = 0; k < points; ++k) {
    out.push_back(k + 1 == points ? hi : lo * std::pow(hi / lo, static_cast<double>(k) / (points - 1)));
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Newton polyhedron invariants and oscillatory integral decay"};
  app.set_version_flag("--version", std::string(tool_version()));
  app.require_subcommand(1);

  Common common;
  app.add_option("--config", common.config, "JSON config file");
  app.add_option("--out", common.out, "Output directory");
  app.add_option("--seed", common.seed, "Seed recorded in every output");

  NondegOptions nd;
  LadderOptions lo;
  auto add_phase = [&](CLI::App* sub) { sub->add_option("phase", common.phase, "Phase JSON file"); };
  auto add_nondeg = [&](CLI::App* sub) {
    sub->add_option("--grid", nd.grid, "Samples per free coordinate");
    sub->add_option("--refine", nd.refine, "Refinement rounds");
    sub->add_option("--tol", nd.tol, "Degeneracy tolerance");
  };
  auto add_ladder = [&](CLI::App* sub) {
    sub->add_option("--p-max", lo.p_max, "Largest exponent, as p/q");
    sub->add_option("--n-max", lo.n_max, "Largest n");
    sub->add_option("--filter", lo.filter, "Decomposition filter (true/false)");
    sub->add_option("--beta-bound", lo.beta_bound, "Componentwise bound on beta");
  };

  auto* analyze = app.add_subcommand("analyze", "Polyhedron, ladder and nondegeneracy reports");
  add_phase(analyze);
  add_nondeg(analyze);
  add_ladder(analyze);

  auto* nondeg = app.add_subcommand("nondegeneracy", "Nondegeneracy verdict");
  add_phase(nondeg);
  add_nondeg(nondeg);
  nondeg->add_option("--k", nd.k, "Check the degree-k truncation instead");

  auto* ladder = app.add_subcommand("ladder", "Exponent ladder");
  add_phase(ladder);
  add_ladder(ladder);

  std::optional<std::string> cutoff_file;
  std::optional<double> radius, lambda_min, lambda_max, p_tol;
  std::optional<int> points, quality, j_max, j_min, grid, n_max_box;
  std::optional<std::vector<int>> beta_opt;
  bool force = false;

  auto* verify = app.add_subcommand("verify-decay", "Lambda sweep and decay fit");
  add_phase(verify);
  add_nondeg(verify);
  verify->add_option("--cutoff", cutoff_file, "Cutoff JSON file");
  verify->add_option("--radius", radius, "Cutoff radius");
  verify->add_option("--lambda-min", lambda_min, "Smallest lambda");
  verify->add_option("--lambda-max", lambda_max, "Largest lambda");
  verify->add_option("--points", points, "Geometric grid size");
  verify->add_option("--quality", quality, "Quadrature quality, 1 to 5");
  verify->add_option("--p-tol", p_tol, "Allowed |p_hat - p_0|");
  verify->add_flag("--force", force, "Skip the nondegeneracy precondition");

  auto* bounds = app.add_subcommand("bounds", "Constants report, gradient ratios and dyadic sum");
  add_phase(bounds);
  bounds->add_option("--j-max", j_max, "Last dyadic level");
  bounds->add_option("--grid", grid, "Grid points per axis for infima");
  bounds->add_option("--lambda-min", lambda_min, "Smallest lambda");
  bounds->add_option("--lambda-max", lambda_max, "Largest lambda");
  bounds->add_option("--points", points, "Geometric grid size");

  auto* box = app.add_subcommand("box-check", "Per-box bound ratios");
  add_phase(box);
  box->add_option("--beta", beta_opt, "Monomial weight exponents");
  box->add_option("--lambda-min", lambda_min, "Smallest lambda");
  box->add_option("--lambda-max", lambda_max, "Largest lambda");
  box->add_option("--points", points, "Geometric grid size");
  box->add_option("--j-min", j_min, "First dyadic level");
  box->add_option("--j-max", j_max, "Last dyadic level");
  box->add_option("--quality", quality, "Quadrature quality, 1 to 5");
  box->add_option("--n-max", n_max_box, "Largest N in the bound");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kParse;
  }

  try {
    Context ctx = make_context(common);
    const auto& s = ctx.settings;
    const std::size_t d = ctx.phase.dimension();
    const auto polyhedron = NewtonPolyhedron::build(ctx.phase);

    if (analyze->parsed() || nondeg->parsed() || ladder->parsed()) {
      Json eff = {{"command", app.get_subcommands().front()->get_name()}};
      std::optional<NondegeneracyVerdict> verdict;
      std::optional<ExponentLadder> lad;
      if (!ladder->parsed()) {
        const auto params = nondeg_params(s, nd);
        eff["nondegeneracy"] = params_json(params);
        const int k = s.get<int>(nd.k, "nondegeneracy.k", 0);
        if (k > 0) eff["nondegeneracy"]["k"] = k;
        verdict = k > 0 ? check_k_nondegenerate(ctx.phase, k, params) : check_nondegenerate(ctx.phase, params);
      }
      if (!nondeg->parsed()) lad = run_ladder(ctx, polyhedron, lo, eff);
      const auto prov = provenance(ctx, eff);
      if (analyze->parsed()) write_file(ctx.out_dir / "polyhedron.json", polyhedron_report_json(polyhedron, prov));
      if (lad) {
        write_file(ctx.out_dir / "ladder.json", ladder_report_json(*lad, prov));
        for (const auto& t : lad->terms) std::cout << "p = " << to_string(t.p) << "  d = " << t.multiplicity << "\n";
      }
      if (verdict) {
        write_file(ctx.out_dir / "nondegeneracy.json", nondegeneracy_report_json(*verdict, prov));
        std::cout << "verdict: " << to_string(verdict->status);
        if (!verdict->reason.empty()) std::cout << " (" << verdict->reason << ")";
        std::cout << "\n";
        return status_exit(verdict->status);
      }
      return kOk;
    }

    if (verify->parsed()) {
      Json eff = {{"command", "verify-decay"}};
      if (!force) {
        const auto params = nondeg_params(s, nd);
        const auto verdict = check_nondegenerate(ctx.phase, params);
        if (verdict.status != NondegeneracyStatus::Nondegenerate) {
          std::cerr << "phase is " << to_string(verdict.status) << "; rerun with --force to sweep anyway\n";
          return status_exit(verdict.status);
        }
      }
      const auto cutoff = cutoff_setting(ctx, cutoff_file, radius);
      const double lmin = s.get<double>(lambda_min, "lambda_min", 1e2);
      const double lmax = s.get<double>(lambda_max, "lambda_max", d == 1 ? 1e6 : 1e5);
      const int npts = s.get<int>(points, "points", 16);
      const int q = s.get<int>(quality, "quality", 1);
      const double tol = s.get<double>(p_tol, "p_tol", 0.05);
      if (!(lmin > 2.0) || !(lmax > lmin)) throw ParseError("field 'lambda_min'/'lambda_max': need 2 < lambda_min < lambda_max");
      if (npts < 8) throw ParseError("field 'points': need at least 8");
      if (q < 1 || q > 5) throw ParseError("field 'quality': must lie in [1, 5]");
      eff["cutoff"] = Json::parse(serialize_cutoff(cutoff));
      eff["lambda"] = {lmin, lmax, npts};
      eff["quality"] = q;
      eff["p_tol"] = tol;
      const auto prov = provenance(ctx, eff);

      try {
        const auto rep = constants_report(ctx.phase, polyhedron);
        if (cutoff.radius > rep.s) {
          std::cerr << "warning: cutoff radius " << cutoff.radius << " exceeds the explicit radius s = " << rep.s << "\n";
        }
      } catch (const Error&) {
      }

      const Multidegree zero(std::vector<int>(d, 0));
      const auto sweep = lambda_sweep(ctx.phase, cutoff, zero, lmin, lmax, npts, q);
      write_file(ctx.out_dir / "sweep.csv", sweep_csv(sweep, prov));
      const auto fit = decay_fit(sweep, d);
      const auto [p_theory, q_theory] = theoretical_bound(polyhedron, zero);
      DecayComparison cmp{p_theory, q_theory, tol, false};
      cmp.pass = std::abs(fit.p_hat - p_theory.get_d()) <= tol && fit.q_hat == q_theory;
      write_file(ctx.out_dir / "fit.json", decay_report_json(fit, cmp, prov));
      std::printf("theory p = %s q = %d; fitted p = %.6f q = %d: %s\n", to_string(p_theory).c_str(), q_theory,
                  fit.p_hat, fit.q_hat, cmp.pass ? "pass" : "fail");
      return cmp.pass ? kOk : kVerifyFailed;
    }

    if (bounds->parsed()) {
      const int g = s.get<int>(grid, "bounds.grid", 64);
      const int jm = s.get<int>(j_max, "bounds.j_max", 20);
      const double lmin = s.get<double>(lambda_min, "lambda_min", 1e2);
      const double lmax = s.get<double>(lambda_max, "lambda_max", 1e8);
      const int npts = s.get<int>(points, "points", 25);
      if (g < 2) throw ParseError("field 'bounds.grid': must be at least 2");
      if (jm < 1) throw ParseError("field 'bounds.j_max': must be at least 1");
      if (!(lmin > 2.0) || !(lmax > lmin) || npts < 2) throw ParseError("field 'lambda_min'/'lambda_max'/'points': invalid window");
      Json eff = {{"command", "bounds"}, {"grid", g}, {"j_max", jm}, {"lambda", {lmin, lmax, npts}}};
      const auto prov = provenance(ctx, eff);
      const auto rep = constants_report(ctx.phase, polyhedron, g);
      write_file(ctx.out_dir / "constants.json", constants_report_json(rep, prov));
      write_file(ctx.out_dir / "lemma1.csv",
                 lemma1_csv(gradient_ratio_table(ctx.phase, polyhedron, jm, g), prov));
      const Multidegree zero(std::vector<int>(d, 0));
      const auto [p_theory, q_theory] = theoretical_bound(polyhedron, zero);
      std::vector<BoundSumRow> rows;
      for (double lam : geometric_grid(lmin, lmax, npts)) {
        BoundSumRow r;
        r.lambda = lam;
        r.value = dyadic_bound_sum(polyhedron, zero, lam);
        r.bound = std::pow(lam, -p_theory.get_d()) * std::pow(std::log(lam), q_theory);
        r.ratio = r.value / r.bound;
        rows.push_back(r);
      }
      write_file(ctx.out_dir / "boundsum.csv", bound_sum_csv(rows, prov));
      std::printf("a = %.17g rho = %.17g s = %.17g\n", rep.a, rep.rho, rep.s);
      return kOk;
    }

    if (box->parsed()) {
      std::vector<int> beta = beta_opt ? *beta_opt : std::vector<int>(d, 0);
      if (beta.size() != d) throw ParseError("field 'beta': needs one exponent per variable");
      const double lmin = s.get<double>(lambda_min, "lambda_min", 1e2);
      const double lmax = s.get<double>(lambda_max, "lambda_max", 1e6);
      const int npts = s.get<int>(points, "points", 9);
      const int j0 = s.get<int>(j_min, "box.j_min", 0);
      const int j1 = s.get<int>(j_max, "box.j_max", 10);
      const int q = s.get<int>(quality, "quality", 2);
      if (!(lmin > 2.0) || !(lmax > lmin) || npts < 2) throw ParseError("field 'lambda_min'/'lambda_max'/'points': invalid window");
      if (q < 1 || q > 5) throw ParseError("field 'quality': must lie in [1, 5]");
      Json eff = {{"command", "box-check"}, {"beta", beta}, {"lambda", {lmin, lmax, npts}},
                  {"j", {j0, j1}}, {"quality", q}};
      std::optional<int> nmax;
      if (n_max_box) {
        nmax = *n_max_box;
        eff["n_max"] = *nmax;
      }
      const auto prov = provenance(ctx, eff);
      const auto lambdas = geometric_grid(lmin, lmax, npts);
      const auto rows = box_bound_check(ctx.phase, polyhedron, Multidegree(beta), lambdas, j0, j1, q, nmax);
      write_file(ctx.out_dir / "boxcheck.csv", box_check_csv(rows, prov));
      double cmax = 0.0;
      for (const auto& r : rows) {
        if (r.reliable) cmax = std::max(cmax, r.ratio);
      }
      std::printf("max J/B over reliable rows: %.6g\n", cmax);
      return kOk;
    }
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kParse;
  } catch (const DegeneratePhaseError& e) {
    std::cerr << "degenerate: " << e.what() << "\n";
    return kDegenerate;
  } catch (const SweepFailureError& e) {
    std::cerr << "sweep failure: " << e.what() << "\n";
    return kSweepFailure;
  } catch (const BudgetExceededError& e) {
    std::cerr << "sweep failure: " << e.what() << "\n";
    return kSweepFailure;
  } catch (const FitError& e) {
    std::cerr << "sweep failure: " << e.what() << "\n";
    return kSweepFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kParse;
  }
  return kOk;
}
