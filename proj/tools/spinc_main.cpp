#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "spinc/analysis.hpp"
#include "spinc/errors.hpp"
#include "spinc/report.hpp"
#include "spinc/simd/kernels.hpp"
#include "spinc/verify.hpp"

namespace {

enum Exit { kPass = 0, kFailure = 1, kUsage = 2 };

struct RunConfig {
  std::uint64_t seed = 1;
  int samples = 10000;
  std::optional<double> tol;
  std::optional<int> grid;
  int refine_depth = 20;
  int loop_points = 1024;
  std::string format = "text";
  std::string out;
  unsigned threads = 0;
  std::optional<double> loop_radius;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw spinc::ParseError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(cfg.out, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write '" + cfg.out + "'");
  f << text;
}

spinc::AnalysisOptions analysis_options(const RunConfig& cfg) {
  spinc::AnalysisOptions o;
  o.grid_n = cfg.grid.value_or(64);
  o.refine_depth = cfg.refine_depth;
  o.tol = cfg.tol.value_or(1e-8);
  o.loop_points = cfg.loop_points;
  o.seed = cfg.seed;
  o.threads = cfg.threads;
  o.loop_radius = cfg.loop_radius;
  return o;
}

void check_config(const RunConfig& cfg) {
  if (cfg.samples < 1) throw CLI::ValidationError("--samples", "must be at least 1");
  if (cfg.grid && *cfg.grid < 8) throw CLI::ValidationError("--grid", "must be at least 8");
  if (cfg.refine_depth < 0) throw CLI::ValidationError("--refine-depth", "must be nonnegative");
  if (cfg.loop_points < 8) throw CLI::ValidationError("--loop-points", "must be at least 8");
  if (cfg.tol && !(*cfg.tol > 0.0)) throw CLI::ValidationError("--tol", "must be positive");
  if (cfg.loop_radius && !(*cfg.loop_radius > 0.0)) throw CLI::ValidationError("--loop-radius", "must be positive");
  spinc::parse_format(cfg.format);
}

int cmd_verify(const RunConfig& cfg, const std::vector<std::string>& only) {
  spinc::VerifyConfig v;
  v.seed = cfg.seed;
  v.samples = cfg.samples;
  v.tol = cfg.tol;
  if (cfg.grid) v.grid_n = *cfg.grid;
  v.refine_depth = cfg.refine_depth;
  v.loop_points = cfg.loop_points;
  v.threads = cfg.threads;
  v.only = only;
  const spinc::VerifyReport r = spinc::run_verify(v);
  emit(cfg, spinc::render(r, spinc::parse_format(cfg.format)));
  return r.all_pass() ? kPass : kFailure;
}

spinc::ImmersionSpec load_spec(const std::string& path) {
  try {
    return spinc::parse_spec(read_file(path));
  } catch (const spinc::ParseError& e) {
    throw spinc::ParseError(path + ": " + e.detail, e.line, e.column);
  }
}

int cmd_analyze(const RunConfig& cfg, const std::string& path) {
  const spinc::ImmersionSpec spec = load_spec(path);
  const spinc::AnalysisReport r = spinc::analyze(spec, analysis_options(cfg));
  emit(cfg, spinc::render(r, spinc::parse_format(cfg.format), cfg.seed));
  return kPass;
}

struct CurveArgs {
  std::string spec_path, p, q, r, target = "S4";
  std::optional<int> degree;
  int delta = 0;
};

int cmd_curve(const RunConfig& cfg, const CurveArgs& a) {
  spinc::ImmersionSpec spec;
  if (!a.spec_path.empty()) {
    spec = load_spec(a.spec_path);
    if (!spec.curve) throw spinc::ParseError(a.spec_path + ": map.curve: missing");
  } else {
    if (a.p.empty() || a.q.empty() || a.r.empty())
      throw CLI::ValidationError("curve", "give --spec or all of --p, --q and --r");
    nlohmann::json curve;
    std::size_t longest = 0;
    for (auto [name, text] : {std::pair{"p", &a.p}, {"q", &a.q}, {"r", &a.r}}) {
      try {
        curve[name] = nlohmann::json::parse(*text);
      } catch (const nlohmann::json::parse_error& e) {
        throw spinc::ParseError(std::string("--") + name + ": invalid JSON coefficient list");
      }
      if (curve[name].is_array()) longest = std::max(longest, curve[name].size());
    }
    curve["degree"] = a.degree.value_or(int(longest) - 1);
    const nlohmann::json doc{{"domain", {{"type", "sphere"}}}, {"target", {{"type", a.target}}}, {"map", {{"curve", curve}}}};
    spec = spinc::parse_spec(doc.dump());
  }
  if (a.delta < 0) throw CLI::ValidationError("--delta", "must be nonnegative");
  const spinc::CurveClassification c =
      spinc::classify_curve(*spec.curve, spec.target.type, a.delta, cfg.samples, analysis_options(cfg));
  emit(cfg, spinc::render(c, spinc::parse_format(cfg.format), cfg.seed));
  if (!c.refusal.empty()) {
    std::cerr << "spinc: classification refused: " << c.refusal << "\n";
    return kFailure;
  }
  return c.pseudoholomorphic ? kPass : kFailure;
}

int cmd_maslov(const RunConfig& cfg, const std::string& path, const std::vector<std::string>& loop_texts) {
  const spinc::ImmersionSpec spec = load_spec(path);
  std::vector<spinc::ParamLoop> loops;
  for (const auto& t : loop_texts) loops.push_back(spinc::parse_loop(t));
  const spinc::AnalysisOptions opt = analysis_options(cfg);
  if (spec.target.type != spinc::TargetType::C2) throw spinc::PreconditionError("Maslov windings need target C2");
  const spinc::AnalysisReport r = spinc::analyze(spec, opt);
  if (!r.totally_real)
    throw spinc::PreconditionError("immersion is not totally real (" + std::to_string(r.records.size()) +
                                   " complex points found)");
  const auto m = spinc::maslov_windings(spec, loops, opt);
  emit(cfg, spinc::render(m, spinc::parse_format(cfg.format), cfg.seed));
  return kPass;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Complex points, Higgs-field splittings and pseudoholomorphic spheres of surfaces in four-space"};
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig cfg;
  app.add_option("--seed", cfg.seed, "seed of every random draw")->capture_default_str();
  app.add_option("--samples", cfg.samples, "random draws per suite / curve samples")->capture_default_str();
  app.add_option("--tol", cfg.tol, "classification tolerance; for verify it replaces every residual threshold");
  app.add_option("--grid", cfg.grid, "scan grid size (analyze: 64, verify: 32)");
  app.add_option("--refine-depth", cfg.refine_depth, "bisection depth")->capture_default_str();
  app.add_option("--loop-points", cfg.loop_points, "initial points on winding loops")->capture_default_str();
  app.add_option("--loop-radius", cfg.loop_radius, "fixed index loop radius (default: adaptive)");
  app.add_option("--format", cfg.format, "json, csv or text")->capture_default_str();
  app.add_option("--out", cfg.out, "write the report here instead of stdout");
  app.add_option("--threads", cfg.threads, "worker threads (0: all cores); results do not depend on it");
  std::string isa;
  app.add_option("--isa", isa, "force a kernel variant: scalar or avx2");

  auto* verify = app.add_subcommand("verify", "run the identity and invariant suites");
  std::vector<std::string> only;
  verify->add_option("--suite", only, "run only these suites");
  bool list = false;
  verify->add_flag("--list", list, "list suite names");

  auto* analyze = app.add_subcommand("analyze", "find, index and count complex points of an immersion");
  std::string spec_path;
  analyze->add_option("spec", spec_path, "immersion spec (JSON)")->required();

  auto* curve = app.add_subcommand("curve", "classify the sphere given by a rational curve");
  CurveArgs ca;
  curve->add_option("--spec", ca.spec_path, "spec file with a map.curve");
  curve->add_option("--p", ca.p, "coefficients of p as JSON [[re, im], ...], s^k t^(d-k) order");
  curve->add_option("--q", ca.q, "coefficients of q");
  curve->add_option("--r", ca.r, "coefficients of r");
  curve->add_option("--degree", ca.degree, "degree (default: longest list - 1)");
  curve->add_option("--target", ca.target, "S4 or CP2")->capture_default_str();
  curve->add_option("--delta", ca.delta, "number of ordinary double points")->capture_default_str();

  auto* maslov = app.add_subcommand("maslov", "Maslov windings of a totally real immersion");
  std::string maslov_spec;
  std::vector<std::string> loops;
  maslov->add_option("spec", maslov_spec, "immersion spec (JSON)")->required();
  maslov->add_option("--loop", loops, "theta:<phi0>, phi:<theta0> or circle:<x>,<y>,<r>")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }

  try {
    check_config(cfg);
    if (!isa.empty()) spinc::simd::set_isa(isa == "avx2" ? spinc::simd::Isa::avx2 : spinc::simd::Isa::scalar);
    if (*verify) {
      if (list) {
        for (const auto& n : spinc::suite_names()) std::cout << n << "\n";
        return kPass;
      }
      return cmd_verify(cfg, only);
    }
    if (*analyze) return cmd_analyze(cfg, spec_path);
    if (*curve) return cmd_curve(cfg, ca);
    if (*maslov) return cmd_maslov(cfg, maslov_spec, loops);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "spinc: " << e.what() << "\n" << app.help();
    return kUsage;
  } catch (const spinc::ParseError& e) {
    std::cerr << "spinc: parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "spinc: " << e.what() << "\n";
    return kUsage;
  } catch (const spinc::Error& e) {
    std::cerr << "spinc: " << e.what() << "\n";
    return kFailure;
  } catch (const std::exception& e) {
    std::cerr << "spinc: " << e.what() << "\n";
    return kFailure;
  }
  return kUsage;
}
