#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "spinc/immersion.hpp"

namespace spinc {

struct AnalysisOptions {
  int grid_n = 64;
  int refine_depth = 20;
  double tol = 1e-8;
  int loop_points = 1024;
  std::uint64_t seed = 0;
  unsigned threads = 0; // 0: hardware concurrency
  std::optional<double> loop_radius;
  HiggsScale higgs_scale;
};

// Winding number of a closed complex-valued loop t in [0, 1] -> f(t), sampled
// at n points and refined by doubling until every phase step is below pi/2.
struct Winding {
  int winding = 0;
  bool ok = false;
  int points = 0;
  double min_modulus = 0.0;
};
Winding loop_winding(const std::function<cplx(double)>& f, int n, int max_points = 1 << 16);

struct ComplexPointRecord {
  ParamPoint location;
  PlaneKind kind = PlaneKind::Neither;
  std::optional<int> index; // empty for Both
  double loop_radius = 0.0;
  double residual = 0.0;    // |chi| / |psi| (Q) or |phi| / |psi| (Qbar) at the location
};

struct ScanSummary {
  int nodes = 0;
  int both_nodes = 0;
  int chi_below_tol = 0;
  int phi_below_tol = 0;
  double min_chi_ratio = 1.0;
  double min_phi_ratio = 1.0;
  double max_chi_ratio = 0.0;
  bool chi_non_isolated = false;
  bool phi_non_isolated = false;
};

struct AnalysisReport {
  DomainType domain = DomainType::Disk;
  TargetType target = TargetType::C2;
  AnalysisOptions options;
  std::vector<ComplexPointRecord> records;
  ScanSummary scan;
  std::vector<HCrossing> h_crossings;
  int net_count = 0;
  int q_count = 0;
  int qbar_count = 0;
  bool pseudoholomorphic = false;
  bool totally_real = false;
  bool boundary_incomplete = false; // disk: counts exclude the boundary contribution
};

// Locates isolated complex points by grid scan plus bisection. Records carry
// no index yet; see index_of_zero.
std::vector<ComplexPointRecord> scan_complex_points(const ImmersionSpec& spec, const AnalysisOptions& opt,
                                                    ScanSummary* summary = nullptr);

// Winding of the local representative of chi (QComplex) or phi (QbarComplex)
// around a positively oriented parameter circle, in the trivialization given by
// projecting a fixed reference spinor onto the moving line.
int index_of_zero(const ImmersionSpec& spec, const ComplexPointRecord& rec, double loop_radius,
                  const AnalysisOptions& opt);

AnalysisReport analyze(const ImmersionSpec& spec, const AnalysisOptions& opt);

// Closed loops in the parameter domain.
struct ParamLoop {
  enum class Kind { Theta, Phi, Circle };
  Kind kind = Kind::Circle;
  double a = 0.0; // Theta: fixed phi; Phi: fixed theta; Circle: center x
  double b = 0.0; // Circle: center y
  double r = 0.0; // Circle: radius
  int chart = 0;
  ParamPoint at(double t) const;
  std::string describe() const;
};
// "theta:<phi0>", "phi:<theta0>" or "circle:<x>,<y>,<r>"; throws ParseError.
ParamLoop parse_loop(const std::string& text);

struct MaslovResult {
  ParamLoop loop;
  int winding = 0;       // winding of phi ^ chi
  int wedge_winding = 0; // winding of v ^ w for an oriented orthonormal tangent frame
  double cross_check = 0.0; // max |v ^ w + 2i phi ^ chi|
};
// Requires target C2 and a nowhere-complex loop (PreconditionError otherwise).
std::vector<MaslovResult> maslov_windings(const ImmersionSpec& spec, const std::vector<ParamLoop>& loops,
                                          const AnalysisOptions& opt);

// Builds T -> normal bundle through the line L' (A |-> N with N chi = A phi)
// on the scan grid and checks it is an orientation-reversing isometry.
struct BundleCheck {
  bool pass = false;
  int points = 0;
  double max_isometry_defect = 0.0;
  double max_det = -1.0;
  double max_normal_residual = 0.0;
};
BundleCheck totally_real_bundle_check(const ImmersionSpec& spec, const AnalysisOptions& opt);

// Classification of pr o curve in S4 (or the curve itself in CP2).
struct CurveClassification {
  int degree = 0;
  int delta = 0;
  std::optional<int> genus;
  std::vector<HCrossing> crossings;
  bool transverse = true;
  std::string refusal; // non-empty: classification refused
  int samples = 0;
  int phi_chart_samples = 0;
  int both_samples = 0;
  double max_chi_ratio = 0.0;
  double max_both_psi = 0.0;  // largest |psi| among samples classified Both
  bool pseudoholomorphic = false;
  double min_image_distance = 0.0; // over sample pairs more than 1e-3 apart in the parameter
  bool injective = false;
  bool embedded_sphere = false;
};
CurveClassification classify_curve(const RationalCurve& c, TargetType target, int delta, int samples,
                                   const AnalysisOptions& opt);

// Chordal distance of two parameter points on their domain (sphere charts are compared on CP^1).
double param_distance(const ImmersionSpec& spec, const ParamPoint& a, const ParamPoint& b);

} // namespace spinc
