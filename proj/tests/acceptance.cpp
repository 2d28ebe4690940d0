// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "spinc/analysis.hpp"
#include "spinc/errors.hpp"
#include "spinc/higgs_field.hpp"
#include "spinc/random.hpp"

#ifndef SPINC_SPEC_DIR
#error "SPINC_SPEC_DIR must point at the spec corpus"
#endif

using namespace spinc;

namespace {

constexpr cplx I(0.0, 1.0);
constexpr double pi = std::numbers::pi;
int failures = 0;

void report(const char* name, bool pass, const std::string& detail) {
  std::printf("%s %-28s %s\n", pass ? "PASS" : "FAIL", name, detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double spinor_diff(const Spinor& p, const Spinor& q) { return std::hypot(std::abs(p.a - q.a), std::abs(p.b - q.b)); }

void psi_round_trip() {
  const auto t0 = std::chrono::steady_clock::now();
  Sampler s(1, 1);
  double worst = 0.0;
  for (int n = 0; n < 10000; ++n) {
    const ProjectiveLine L = s.line(Chirality::plus), Lp = s.line(Chirality::minus);
    const auto [M, Mp] = psi_inverse(psi(L, Lp));
    worst = std::max({worst, projective_distance(L, M), projective_distance(Lp, Mp)});
    const OrientedPlane T = s.plane();
    const auto [N, Np] = psi_inverse(T);
    worst = std::max(worst, plane_distance(psi(N, Np), T));
  }
  const double secs = seconds_since(t0);
  report("psi-round-trip", worst < 1e-9 && secs < 5.0, fmt("max distance %.3g (< 1e-9), %.2f s (< 5 s)", worst, secs));
}

void clifford_identity() {
  Sampler s(1, 2);
  double prod = 0.0, homothety = 0.0;
  for (int n = 0; n < 10000; ++n) {
    const Quaternion A = s.quaternion();
    const Spinor phi = s.spinor();
    const Spinor out = clifford_mul({A}, phi);
    const Quaternion direct = A * phi.quaternion();
    prod = std::max(prod, max_abs_diff(out.quaternion(), direct) / (1.0 + direct.norm()));
    homothety = std::max(homothety, std::abs(out.norm() - A.norm() * phi.norm()) / (A.norm() * phi.norm()));
  }
  report("clifford-identity", prod < 1e-12 && homothety < 1e-12,
         fmt("product error %.3g, homothety relative error %.3g (< 1e-12)", prod, homothety));
}

void complement_property() {
  Sampler s(1, 3);
  double worst = 0.0;
  for (int n = 0; n < 10000; ++n) {
    const ProjectiveLine L = s.line(Chirality::plus), Lp = s.line(Chirality::minus);
    worst = std::max(worst, plane_distance(plane_complement(psi(L, Lp)), psi(L.perp(), Lp)));
  }
  report("complement-property", worst < 1e-10, fmt("max plane distance %.3g (< 1e-10)", worst));
}

void membership_oracle() {
  // Direct test on T = (A, B): psi in L iff B psi = (A psi) i, psi in L-perp iff B psi = -(A psi) i.
  Sampler s(1, 4);
  int disagreements = 0;
  for (int n = 0; n < 10000; ++n) {
    const OrientedPlane T = s.plane();
    const auto [L, Lp] = psi_inverse(T);
    const int which = n % 3;
    const Spinor v = which == 0 ? L.rep() * s.complex() : which == 1 ? L.perp().rep() * s.complex() : s.spinor();
    const Spinor ap = clifford_mul(T.a(), v), bp = clifford_mul(T.b(), v);
    const double scale = v.norm();
    Membership direct = Membership::Neither;
    if (spinor_diff(bp, ap * I) < 1e-8 * scale) direct = Membership::InL;
    else if (spinor_diff(bp, ap * -I) < 1e-8 * scale) direct = Membership::InLperp;
    if (membership(T, v) != direct) ++disagreements;
  }
  report("membership-oracle", disagreements == 0, fmt("%.0f disagreements on 10000 samples", disagreements));
}

void psi_linearity() {
  Sampler s(1, 5);
  double anti = 0.0, lin = 0.0;
  for (int n = 0; n < 1000; ++n) {
    const ProjectiveLine L = s.line(Chirality::plus), Lp = s.line(Chirality::minus);
    const cplx c = s.unit_complex();
    anti = std::max(anti, psi_linearity_residual(L, Lp, c, PsiSlot::plus, 1e-4));
    lin = std::max(lin, psi_linearity_residual(L, Lp, c, PsiSlot::minus, 1e-4));
  }
  report("psi-antilinear-linear", anti < 1e-6 && lin < 1e-6,
         fmt("antilinear residual %.3g, linear residual %.3g (< 1e-6, step 1e-4)", anti, lin));
}

void inversion_differential() {
  Sampler s(1, 6);
  DphiResidual worst;
  for (int n = 0; n < 1000; ++n) {
    const DphiResidual r = dphi_linearity_check(s.vec2(), 1e-4);
    worst.perp_linearity = std::max(worst.perp_linearity, r.perp_linearity);
    worst.radial_antilinearity = std::max(worst.radial_antilinearity, r.radial_antilinearity);
    worst.perp_scale = std::max(worst.perp_scale, r.perp_scale);
    worst.radial_scale = std::max(worst.radial_scale, r.radial_scale);
  }
  const double scale = std::max(worst.perp_scale, worst.radial_scale);
  report("inversion-differential", worst.max() < 1e-6,
         fmt("linear %.3g, antilinear %.3g, scale %.3g (< 1e-6)", worst.perp_linearity, worst.radial_antilinearity,
             scale));
}

void inversion_at_infinity() {
  Sampler s(1, 7);
  int bad_rank = 0;
  double angle = 0.0;
  for (int n = 0; n < 1000; ++n) {
    const ImlResult r = iml_rank_check(s.vec2());
    if (r.rank != 2) ++bad_rank;
    angle = std::max(angle, r.angle);
  }
  report("inversion-at-infinity", bad_rank == 0 && angle < 1e-5,
         fmt("rank != 2 at %.0f of 1000, max angle %.3g (< 1e-5)", bad_rank, angle));
}

void wedge_identity() {
  Sampler s(1, 8);
  double worst = 0.0;
  for (int n = 0; n < 10000; ++n) worst = std::max(worst, wedge_identity_residual(s.plane(), s.spinor()));
  report("wedge-identity", worst < 1e-10, fmt("max residual %.3g (< 1e-10)", worst));
}

void local_model() {
  const LocalRepresentatives rep = local_representatives(StandardHiggsField{});
  auto unwrapped = [](const std::function<cplx(double)>& f) {
    double total = 0.0;
    cplx prev = f(0.0);
    for (int k = 1; k <= 1024; ++k) {
      const cplx c = f(2.0 * pi * k / 1024);
      total += std::arg(c / prev);
      prev = c;
    }
    return total / (2.0 * pi);
  };
  const double wphi = unwrapped([&](double t) { return rep.phi(0.1 * std::exp(I * t)); });
  const double wchi = unwrapped([&](double t) { return rep.chi(0.1 * std::exp(I * t)); });
  const double res = std::max(std::abs(wphi - std::round(wphi)), std::abs(wchi - std::round(wchi)));
  // Zeros: each representative vanishes only at the origin, transversally.
  const bool transverse = std::abs(rep.phi(0.0)) == 0.0 && std::abs(rep.chi(0.0)) == 0.0 &&
                          std::abs(rep.phi(1e-6)) > 0.0 && std::abs(rep.chi(1e-6)) > 0.0;
  report("local-model-windings", std::lround(wphi) == -1 && std::lround(wchi) == 1 && res < 0.1 && transverse,
         fmt("phi %.6g, chi %.6g, residual %.3g (< 0.1)", wphi, wchi, res));
}

void graph_indices() {
  AnalysisOptions opt;
  opt.grid_n = 64;
  opt.refine_depth = 20;
  for (int k = 2; k <= 4; ++k) {
    const auto t0 = std::chrono::steady_clock::now();
    const ImmersionSpec spec = make_component_spec(Domain{}, Target{}, "z", "zb^" + std::to_string(k));
    const AnalysisReport r = analyze(spec, opt);
    const double secs = seconds_since(t0);
    const int expected = oracle::winding(
        [k](double t) { return double(k) * std::pow(std::conj(0.5 * std::exp(I * t)), k - 1); });
    bool pass = r.records.size() == 1 && secs < 10.0;
    int index = 0;
    double where = 0.0;
    if (pass) {
      const auto& rec = r.records[0];
      where = std::hypot(rec.location.x, rec.location.y);
      pass = rec.kind == PlaneKind::QComplex && rec.index && *rec.index == expected && expected == -(k - 1) &&
             where < 1e-5;
      index = rec.index.value_or(0);
    }
    const std::string name = "graph-index-k" + std::to_string(k);
    report(name.c_str(), pass,
           std::to_string(r.records.size()) + " record(s), index " + std::to_string(index) + " (oracle " +
               std::to_string(expected) + ")" + fmt(", |z| %.2g, %.2f s (< 10 s)", where, secs));
  }
}

void clifford_torus() {
  Domain d;
  d.type = DomainType::Torus;
  const ImmersionSpec spec = make_component_spec(d, Target{}, "0.7071067811865476*z", "0.7071067811865476*w");
  AnalysisOptions opt;
  opt.grid_n = 64;
  const AnalysisReport r = analyze(spec, opt);
  const BundleCheck b = totally_real_bundle_check(spec, opt);
  const auto m = maslov_windings(spec, {parse_loop("theta:0"), parse_loop("phi:0")}, opt);
  const bool maslov = m.size() == 2 && m[0].winding == 1 && m[1].winding == 1;
  const double cross = std::max(m[0].cross_check, m[1].cross_check);
  report("clifford-torus",
         r.records.empty() && r.net_count == 0 && b.pass && b.points == 64 * 64 && maslov && cross < 1e-8,
         std::to_string(r.records.size()) + " complex points, net " + std::to_string(r.net_count) + ", bundle " +
             (b.pass ? "pass" : "FAIL") + " at " + std::to_string(b.points) + " points, Maslov (" +
             std::to_string(m[0].winding) + ", " + std::to_string(m[1].winding) + ")" +
             fmt(", cross-check %.3g (< 1e-8)", cross));
}

void degree_one_curves() {
  Sampler s(1, 9);
  AnalysisOptions opt;
  opt.seed = 1;
  double chi = 0.0;
  int phi_samples = 0, curves = 0, failed = 0;
  while (curves < 5) {
    RationalCurve c{1, {}};
    for (auto& poly : c.coeffs) poly = {s.complex(), s.complex()};
    const CurveClassification k = classify_curve(c, TargetType::S4, 0, 10000, opt);
    if (!k.refusal.empty()) continue; // random curves are transverse almost surely
    ++curves;
    chi = std::max(chi, k.max_chi_ratio);
    phi_samples += k.phi_chart_samples;
    if (!(k.pseudoholomorphic && k.injective && k.embedded_sphere && k.phi_chart_samples > 0)) ++failed;
  }
  const bool genus = plucker_genus(1, 0) == 0 && plucker_genus(2, 0) == 0 && plucker_genus(3, 0) == 1 &&
                     plucker_genus(3, 1) == 0;
  report("degree-one-curves", failed == 0 && chi < 1e-8 && genus,
         fmt("5 curves x 10000 samples, max chi ratio %.3g (< 1e-8), %.0f inversion-chart samples, ", chi,
             phi_samples) +
             std::to_string(failed) + " not embedded, genus table " + (genus ? "exact" : "WRONG"));
}

void higgs_zero() {
  // (s, t, s + t) meets the line at infinity, which pr sends to the Higgs zero, at [1 : -1].
  Target t;
  t.type = TargetType::S4;
  const RationalCurve c{1, {{{0.0, 1.0}, {1.0, 0.0}, {1.0, 1.0}}}};
  const ImmersionSpec spec = make_curve_spec(t, c);
  AnalysisOptions opt;
  opt.grid_n = 64;
  const AnalysisReport r = analyze(spec, opt);
  int both = 0, at_zero = 0, other = 0;
  double psi_at_both = 0.0;
  for (const auto& rec : r.records) {
    if (rec.kind != PlaneKind::Both) {
      ++other;
      continue;
    }
    ++both;
    psi_at_both = std::max(psi_at_both, gauss_map(spec, rec.location).psi.norm());
    if (map_point(spec, rec.location).is_infinity()) ++at_zero;
  }
  const CurveClassification k = classify_curve(c, TargetType::S4, 0, 10000, opt);
  const bool pass = both == 1 && at_zero == 1 && other == 0 && psi_at_both <= 1e-6 && k.max_both_psi <= 1e-6;
  report("higgs-zero-both", pass,
         std::to_string(both) + " Both record(s), " + std::to_string(at_zero) + " at the zero, " +
             std::to_string(other) + " other" +
             fmt("; max |psi| among Both: %.3g on records, %.3g on samples (<= 1e-6)", psi_at_both,
                 k.max_both_psi));
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string verdicts(const ImmersionSpec& spec, const AnalysisOptions& opt) {
  try {
    const AnalysisReport r = analyze(spec, opt);
    std::string out = std::string(r.totally_real ? "R" : "-") + (r.pseudoholomorphic ? "P" : "-");
    for (const auto& rec : r.records)
      out += std::string(" ") + to_string(rec.kind) + ":" + (rec.index ? std::to_string(*rec.index) : "none");
    out += " net " + std::to_string(r.net_count);
    return out;
  } catch (const Error& e) {
    return std::string("error: ") + e.what();
  }
}

void scale_invariance() {
  Sampler s(1, 10);
  int specs = 0, changed = 0;
  std::string first_change;
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(SPINC_SPEC_DIR))
    if (e.path().extension() == ".json") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  for (const auto& f : files) {
    const ImmersionSpec spec = parse_spec(read_file(f));
    AnalysisOptions plain;
    plain.grid_n = 48;
    AnalysisOptions scaled = plain;
    const double a = s.uniform(-1, 1), b = s.uniform(-1, 1), c = s.uniform(0.5, 3), d = s.uniform(0, 2 * pi);
    scaled.higgs_scale = [=](const ParamPoint& p) { return std::exp(a * std::sin(c * p.x + d) + b * std::cos(p.y)); };
    ++specs;
    if (verdicts(spec, plain) != verdicts(spec, scaled)) {
      ++changed;
      if (first_change.empty()) first_change = f.filename().string();
    }
  }
  report("higgs-scale-invariance", changed == 0 && specs > 0,
         std::to_string(specs) + " corpus specs, " + std::to_string(changed) + " changed" +
             (first_change.empty() ? "" : " (first: " + first_change + ")"));
}

} // namespace

int main() {
  psi_round_trip();
  clifford_identity();
  complement_property();
  membership_oracle();
  psi_linearity();
  inversion_differential();
  inversion_at_infinity();
  wedge_identity();
  local_model();
  graph_indices();
  clifford_torus();
  degree_one_curves();
  higgs_zero();
  scale_invariance();
  std::printf("%s\n", failures == 0 ? "all criteria pass" : "FAILURES");
  return failures == 0 ? 0 : 1;
}
