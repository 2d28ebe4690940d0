#include "spinc/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <Eigen/Dense>

#include "spinc/analysis.hpp"
#include "spinc/random.hpp"
#include "spinc/simd/kernels.hpp"

namespace spinc {

namespace {

constexpr cplx I(0.0, 1.0);
constexpr double kPi = std::numbers::pi;

struct Outcome {
  double residual = 0.0;
  int samples = 0;
  std::string detail;
};

struct Suite {
  const char* name;
  double threshold;
  bool overridable; // false for counts and for suites with a fixed acceptance rule
  std::function<Outcome(Sampler&, int, const VerifyConfig&)> run;
};

std::uint64_t stream_of(const std::string& name) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : name) h = (h ^ c) * 1099511628211ull;
  return h;
}

Spinor random_in(Sampler& s, const ProjectiveLine& L) { return L.rep() * s.complex(); }

AnalysisOptions analysis_options(const VerifyConfig& cfg) {
  AnalysisOptions o;
  o.grid_n = cfg.grid_n;
  o.refine_depth = cfg.refine_depth;
  o.loop_points = cfg.loop_points;
  o.seed = cfg.seed;
  o.threads = cfg.threads;
  return o;
}

ImmersionSpec disk_graph(const std::string& h, int orientation = 1, const std::string& first = "z") {
  Domain d;
  d.orientation = orientation;
  return make_component_spec(d, Target{}, first, h);
}

// Direct complex-line test for planes of the C^2 model: i acts by right
// multiplication, and the complex orientation is (v, v i).
PlaneKind direct_kind(const OrientedPlane& T, double tol) {
  const Quaternion ai = T.first() * Quaternion::unit_i();
  const Quaternion bi = T.second() * Quaternion::unit_i();
  const double defect = (ai - T.project(ai)).norm() + (bi - T.project(bi)).norm();
  if (defect >= tol) return PlaneKind::Neither;
  return dot(ai, T.second()) > 0.0 ? PlaneKind::QComplex : PlaneKind::QbarComplex;
}

std::string describe_records(const AnalysisReport& r) {
  std::ostringstream os;
  os.precision(3);
  for (const auto& rec : r.records) {
    os << to_string(rec.kind) << "@(" << rec.location.x << "," << rec.location.y << ")";
    if (rec.index) os << "=" << *rec.index;
    os << " ";
  }
  return os.str();
}

const std::vector<Suite>& suites() {
  static const std::vector<Suite> all = {
      {"quat-assoc", 1e-12, true,
       [](Sampler& s, int n, const VerifyConfig&) {
         Outcome o{0.0, n, ""};
         for (int k = 0; k < n; ++k) {
           const Quaternion p = s.quaternion(), q = s.quaternion(), r = s.quaternion();
           o.residual = std::max(o.residual, max_abs_diff((p * q) * r, p * (q * r)));
         }
         return o;
       }},
      {"quat-norm-mult", 1e-12, true,
       [](Sampler& s, int n, const VerifyConfig&) {
         Outcome o{0.0, n, ""};
         for (int k = 0; k < n; ++k) {
           const Quaternion p = s.quaternion(), q = s.quaternion();
           o.residual = std::max(o.residual, std::abs((p * q).norm() - p.norm() * q.norm()) / (p.norm() * q.norm()));
         }
         return o;
       }},
      {"mlt-matrix", 1e-14, true,
       [](Sampler& s, int n, const VerifyConfig&) {
         Outcome o{0.0, n, ""};
         for (int k = 0; k < n; ++k) {
           const Quaternion p = s.unit_quaternion(), q = s.unit_quaternion();
           const Vec2c m = apply(left_mult_matrix(p), {q.pair().a, q.pair().b});
           const ComplexPair d = (p * q).pair();
           o.residual = std::max({o.residual, std::abs(m[0] - d.a), std::abs(m[1] - d.b)});
         }
         return o;
       }},
      {"orientation", 0.0, false,
       [](Sampler&, int, const VerifyConfig&) {
         const Quaternion one = Quaternion::one(), i = Quaternion::unit_i(), j = Quaternion::unit_j(),
                          k = Quaternion::unit_k();
         const bool ok = orientation_sign(one, i, j, -k) == 1 && orientation_sign(one, i, j, k) == -1;
         return Outcome{ok ? 0.0 : 1.0, 2, "(1,i,j,-k) positive, (1,i,j,k) negative"};
       }},
      {"clifford-identity", 1e-12, true,
       [](Sampler& s, int n, const VerifyConfig&) {
         Outcome o{0.0, n, ""};
         for (int k = 0; k < n; ++k) {
           const HomothetyV A{s.quaternion()};
           const Spinor phi = s.spinor();
           const Spinor direct = Spinor::from_quaternion(A.q * phi.quaternion(), Chirality::minus);
           o.residual = std::max(o.residual, distance(clifford_mul(A, phi), direct) / (A.norm() * phi.norm()));
         }
         return o;
       }},
      {"homothety", 1e-12, true,
       [](Sampler& s, int n, const VerifyConfig&) {
         Outcome o{0.0, n, ""};
         for (int k = 0; k < n; ++k) {
           const HomothetyV A{s.quaternion()};
           const Spinor phi = s.spinor();
           const double ref = A.norm() * phi.norm();
           o.residual = std::max(o.residual, std::abs(clifford_mul(A, phi).norm() - ref) / ref);
         }
         return o;
       }},
      {"det-v", 1e-12, true,
       [](Sampler& s, int n, const VerifyConfig&) {
         Outcome o{0.0, n, ""};
         for (int k = 0; k < n; ++k) {
           const HomothetyV A{s.quaternion()};
           const double n2 = A.q.norm2();
           const cplx d = det(A.matrix());
           o.residual = std::max({o.residual, std::abs(det_V(A) - n2) / n2, std::abs(d - n2) / n2});
         }
         return o;
       }},
      {"wedge-bilinear", 1e-12, true,
       [](Sampler& s, int n, const VerifyConfig&) {
         Outcome o{0.0, n, ""};
         for (int k = 0; k < n; ++k) {
           const Spinor p = s.spinor(), q = s.spinor(), r = s.spinor();
           const cplx c = s.complex();
           const double scale = (p.norm() + q.norm()) * r.norm() * (1.0 + std::abs(c));
           const double lin = std::abs(wedge(p * c + q, r) - (wedge(p, r) * c + wedge(q, r))) / scale;
           const double anti = std::abs(wedge(p, r) + wedge(r, p)) / scale;
           o.residual = std::max({o.residual, lin, anti});
         }
         return o;
       }},
      {"bss", 1e-12, true,
       [](Sampler& s, int n, const VerifyConfig&) {
         Outcome o{0.0, n, ""};
         for (int k = 0; k < n; ++k) {
           const Spinor psi = s.spinor();
           const AdaptedBases b = adapt_bases(psi);
           const double first = distance(b.phi_plus, normalized(psi));
           const double unitary = std::max({std::abs(b.phi_plus.norm() - 1.0), std::abs(b.chi_plus.norm() - 1.0),
                                            std::abs(inner(b.phi_plus, b.chi_plus)),
                                            std::abs(b.phi_minus.norm() - 1.0), std::abs(b.chi_minus.norm() - 1.0),
                                            std::abs(inner(b.phi_minus, b.chi_minus))});
           const double area = std::max(std::abs(wedge(b.phi_plus, b.chi_plus) - 1.0),
                                        std::abs(wedge(b.phi_minus, b.chi_minus) - 1.0));
           o.residual = std::max({o.residual, first, unitary, area});
         }
         return o;
       }},
      {"psi-roundtrip", 1e-9, true,
       [](Sampler& s, int n, const VerifyConfig&) {
         Outcome o{0.0, n, ""};
         for (int k = 0; k < n; ++k) {
           const ProjectiveLine L = s.line(Chirality::plus), Lp = s.line(Chirality::minus);
           const auto back = psi_inverse(psi(L, Lp));
           const OrientedPlane T = s.plane();
           const auto lines = psi_inverse(T);
           o.residual = std::max({o.residual, projective_distance(L, back.first),
                                  projective_distance(Lp, back.second),
                                  plane_distance(psi(lines.first, lines.second), T)});
         }
         return o;
       }},
      {"psi-hom", 1e-10, true,
       [](Sampler& s, int n, const VerifyConfig&) {
         Outcome o{0.0, n, "A L in L' for the basis of psi(L, L'); rescaled representatives"};
         for (int k = 0; k < n; ++k) {
           const ProjectiveLine L = s.line(Chirality::plus), Lp = s.line(Chirality::minus);
           const OrientedPlane T = psi(L, Lp);
           const double da = projective_distance(ProjectiveLine::from_spinor(clifford_mul(T.a(), L.rep())), Lp);
           const double db = projective_distance(ProjectiveLine::from_spinor(clifford_mul(T.b(), L.rep())), Lp);
           const OrientedPlane T2 =
               psi_from_reps(random_in(s, L).quaternion(), random_in(s, Lp).quaternion());
           o.residual = std::max({o.residual, da, db, plane_distance(T, T2)});
         }
         return o;
       }},
      {"complement-b", 1e-10, true,
       [](Sampler& s, int n, const VerifyConfig&) {
         Outcome o{0.0, n, ""};
         for (int k = 0; k < n; ++k) {
           const ProjectiveLine L = s.line(Chirality::plus), Lp = s.line(Chirality::minus);
           o.residual = std::max(o.residual, plane_distance(plane_complement(psi(L, Lp)), psi(L.perp(), Lp)));
         }
         return o;
       }},
      {"membership-c", 0.0, false,
       [](Sampler& s, int n, const VerifyConfig&) {
         Outcome o{0.0, n, ""};
         int counts[3] = {0, 0, 0};
         for (int k = 0; k < n; ++k) {
           const OrientedPlane T = s.plane();
           const ProjectiveLine L = psi_inverse(T).first;
           const Spinor p = k % 3 == 0 ? random_in(s, L) : k % 3 == 1 ? random_in(s, L.perp()) : s.spinor();
           const Spinor ap = clifford_mul(T.a(), p), bp = clifford_mul(T.b(), p);
           const double scale = 1e-8 * p.norm();
           const Membership direct = (bp - ap * I).norm() < scale    ? Membership::InL
                                     : (bp + ap * I).norm() < scale ? Membership::InLperp
                                                                    : Membership::Neither;
           const Membership m = membership(T, p);
           ++counts[int(m)];
           if (m != direct) o.residual += 1.0;
         }
         o.detail = "InL " + std::to_string(counts[0]) + ", InLperp " + std::to_string(counts[1]) + ", Neither " +
                    std::to_string(counts[2]) + "; residual counts disagreements";
         return o;
       }},
      {"inc-antilinearity", 1e-6, true,
       [](Sampler& s, int n, const VerifyConfig&) {
         Outcome o{0.0, n, "step 1e-4"};
         for (int k = 0; k < n; ++k) {
           const ProjectiveLine L = s.line(Chirality::plus), Lp = s.line(Chirality::minus);
           o.residual = std::max(o.residual, psi_linearity_residual(L, Lp, s.unit_complex(), PsiSlot::plus));
         }
         return o;
       }},
      {"rebih-linearity", 1e-6, true,
       [](Sampler& s, int n, const VerifyConfig&) {
         Outcome o{0.0, n, "step 1e-4"};
         for (int k = 0; k < n; ++k) {
           const ProjectiveLine L = s.line(Chirality::plus), Lp = s.line(Chirality::minus);
           o.residual = std::max(o.residual, psi_linearity_residual(L, Lp, s.unit_complex(), PsiSlot::minus));
         }
         return o;
       }},
      {"dph-linearity", 1e-6, true,
       [](Sampler& s, int n, const VerifyConfig&) {
         Outcome o{0.0, n, "|y| in [0.5, 2], step 1e-4"};
         for (int k = 0; k < n; ++k) {
           Vec2c y = s.vec2();
           y = cplx(s.uniform(0.5, 2.0) / norm(y)) * y;
           o.residual = std::max(o.residual, dphi_linearity_check(y).max());
         }
         return o;
       }},
      {"iml-rank", 1e-5, true,
       [](Sampler& s, int n, const VerifyConfig&) {
         Outcome o{0.0, n, ""};
         int bad_rank = 0;
         for (int k = 0; k < n; ++k) {
           const ImlResult r = iml_rank_check(s.vec2());
           if (r.rank != 2) ++bad_rank;
           o.residual = std::max(o.residual, r.rank == 2 ? r.angle : INFINITY);
         }
         o.detail = "residual is the largest principal angle; samples with rank != 2: " + std::to_string(bad_rank);
         return o;
       }},
      {"pr-homogeneity", 1e-12, true,
       [](Sampler& s, int n, const VerifyConfig&) {
         Outcome o{0.0, n, ""};
         for (int k = 0; k < n; ++k) {
           const Vec2c y = s.vec2();
           const cplx z = k % 10 == 0 ? cplx(0.0) : s.complex(), c = s.complex();
           const S4Point a = pr(CP2Point::from_homogeneous(y, z));
           const S4Point b = pr(CP2Point::from_homogeneous(c * y, c * z));
           o.residual = std::max(o.residual, s4_chordal_distance(a, b));
         }
         return o;
       }},
      {"phi-involution", 1e-6, true,
       [](Sampler& s, int n, const VerifyConfig&) {
         Outcome o{0.0, n, "involution and finite-difference conformality, step 1e-4 |y|"};
         for (int k = 0; k < n; ++k) {
           const Vec2c y = s.vec2();
           const double inv = s4_chordal_distance(inversion_phi(inversion_phi(S4Point::finite(y))), S4Point::finite(y));
           // Random orthonormal real frame of V.
           std::array<Eigen::Vector4d, 4> e;
           for (int a = 0; a < 4; ++a) {
             e[a] = Eigen::Vector4d(s.gauss(), s.gauss(), s.gauss(), s.gauss());
             for (int b = 0; b < a; ++b) e[a] -= e[a].dot(e[b]) * e[b];
             e[a].normalize();
           }
           const double h = 1e-4 * norm(y);
           auto phi = [](const Vec2c& v) { return inversion_phi(S4Point::finite(v)).y(); };
           std::array<Eigen::Vector4d, 4> img;
           for (int a = 0; a < 4; ++a) {
             const Vec2c d{cplx(e[a][0], e[a][1]), cplx(e[a][2], e[a][3])};
             const Vec2c diff = phi(y + cplx(h) * d) - phi(y - cplx(h) * d);
             const auto rc = real_coords(diff);
             img[a] = Eigen::Vector4d(rc[0], rc[1], rc[2], rc[3]) / (2.0 * h);
           }
           const double scale = 1.0 / norm2(y);
           double conf = 0.0;
           for (int a = 0; a < 4; ++a)
             for (int b = a; b < 4; ++b)
               conf = std::max(conf, std::abs(img[a].dot(img[b]) - (a == b ? scale * scale : 0.0)) / (scale * scale));
           o.residual = std::max({o.residual, inv, conf});
         }
         return o;
       }},
      {"theta-roundtrip", 1e-10, true,
       [](Sampler& s, int n, const VerifyConfig&) {
         Outcome o{0.0, n, ""};
         for (int k = 0; k < n; ++k) {
           const ThetaChart chart(HVec2{s.quaternion(), s.quaternion()});
           const Vec2c y = s.vec2();
           const Vec2c back = chart.theta_inverse(chart.theta(S4Point::finite(y))).y();
           const bool inf_ok = chart.theta_inverse(chart.theta(S4Point::infinity())).is_infinity();
           o.residual = std::max({o.residual, norm(back - y) / (1.0 + norm(y)), inf_ok ? 0.0 : INFINITY});
         }
         return o;
       }},
      {"split-reconstruction", 1e-12, true,
       [](Sampler& s, int n, const VerifyConfig&) {
         Outcome o{0.0, n, "also: nonzero psi is never classified Both"};
         for (int k = 0; k < n; ++k) {
           const OrientedPlane T = s.plane();
           const Spinor psi = s.spinor();
           const SpinorSplit sp = split_at(psi, T);
           const double rec = distance(sp.phi + sp.chi, psi) / psi.norm();
           const double orth = std::abs(inner(sp.phi, sp.chi)) / psi.norm2();
           const bool both = classify_plane(psi, T).kind == PlaneKind::Both;
           o.residual = std::max({o.residual, rec, orth, both ? INFINITY : 0.0});
         }
         return o;
       }},
      {"wedge-identity", 1e-10, true,
       [](Sampler& s, int n, const VerifyConfig&) {
         Outcome o{0.0, n, "relative to |psi|^2"};
         for (int k = 0; k < n; ++k) {
           const OrientedPlane T = s.plane();
           const Spinor psi = s.spinor();
           o.residual = std::max(o.residual, wedge_identity_residual(T, psi) / psi.norm2());
         }
         return o;
       }},
      {"classification-oracle", 0.0, false,
       [](Sampler& s, int n, const VerifyConfig&) {
         Outcome o{0.0, 0, ""};
         int counts[4] = {0, 0, 0, 0};
         auto check = [&](const OrientedPlane& T, const Spinor& psi) {
           const PlaneKind k = classify_plane(psi, T).kind;
           ++counts[int(k)];
           ++o.samples;
           if (k != direct_kind(T, 1e-8)) o.residual += 1.0;
         };
         for (int k = 0; k < n; ++k) {
           const Quaternion a = s.quaternion();
           const Quaternion i = Quaternion::unit_i();
           const OrientedPlane T = k % 3 == 0   ? OrientedPlane::from_spanning(a, a * i)
                                   : k % 3 == 1 ? OrientedPlane::from_spanning(a, -(a * i))
                                                : s.plane();
           check(T, Spinor{cplx(s.uniform(0.1, 10.0)), 0.0});
         }
         // Gauss planes of test immersions, including their exact complex points.
         const std::vector<ImmersionSpec> specs = {disk_graph("zb^2"), disk_graph("z*zb"), disk_graph("zb^3"),
                                                   disk_graph("z^2"), disk_graph("zb")};
         for (const auto& spec : specs) {
           check(gauss_map(spec, {0, 0.0, 0.0}).plane, gauss_map(spec, {0, 0.0, 0.0}).psi);
           for (int k = 0; k < std::max(1, n / 10); ++k) {
             const GaussSample g = gauss_map(spec, {0, s.uniform(-1, 1), s.uniform(-1, 1)});
             check(g.plane, g.psi);
           }
         }
         o.detail = "QComplex " + std::to_string(counts[0]) + ", QbarComplex " + std::to_string(counts[1]) +
                    ", Neither " + std::to_string(counts[3]) + "; residual counts disagreements";
         return o;
       }},
      {"local-model-winding", 0.1, false,
       [](Sampler& s, int, const VerifyConfig& cfg) {
         StandardHiggsField H;
         H.u = {s.quaternion(), s.quaternion()};
         const LocalRepresentatives rep = local_representatives(H);
         Outcome o{0.0, 2, ""};
         auto wind = [&](auto f, int expected) {
           double total = 0.0;
           const int m = cfg.loop_points;
           for (int k = 0; k < m; ++k) {
             const cplx a = f(0.1 * std::polar(1.0, 2.0 * kPi * k / m));
             const cplx b = f(0.1 * std::polar(1.0, 2.0 * kPi * (k + 1) / m));
             total += std::arg(b / a);
           }
           const double turns = total / (2.0 * kPi);
           const long w = std::lround(turns);
           // Transverse zero at 0: Jacobian determinant |f_z|^2 - |f_zb|^2 nonzero with the winding's sign.
           const double h = 1e-6;
           const cplx fx = (f(h) - f(-h)) / (2 * h), fy = (f(cplx(0, h)) - f(cplx(0, -h))) / (2 * h);
           const double jac = fx.real() * fy.imag() - fx.imag() * fy.real();
           const bool transverse = std::abs(f(0.0)) == 0.0 && jac * expected > 0.0;
           o.residual = std::max(o.residual, std::abs(turns - double(w)) + (w == expected && transverse ? 0.0 : 1.0));
           return w;
         };
         const long wp = wind([&](cplx z) { return rep.phi(z); }, -1);
         const long wc = wind([&](cplx z) { return rep.chi(z); }, +1);
         o.detail = "phi winding " + std::to_string(wp) + ", chi winding " + std::to_string(wc) +
                    "; residual is the rounding error (plus 1 on a wrong or non-transverse zero)";
         return o;
       }},
      {"residual-acs", 1e-6, true,
       [](Sampler& s, int n, const VerifyConfig&) {
         Outcome o{0.0, n, "step 1e-4"};
         for (int k = 0; k < n; ++k) {
           StandardHiggsField H;
           H.u = {s.quaternion(), s.quaternion()};
           o.residual = std::max(o.residual, residual_acs_defect(H, s.vec2()));
         }
         return o;
       }},
      {"simd-equivalence", 0.0, false,
       [](Sampler& s, int n, const VerifyConfig&) {
         Outcome o{0.0, n, ""};
         simd::QuatArrays a(n), b(n), e(n);
         for (int k = 0; k < n; ++k) {
           a.set(k, s.quaternion());
           b.set(k, s.quaternion());
           e.set(k, s.unit_quaternion());
         }
         const simd::Isa saved = simd::active_isa();
         simd::set_isa(simd::Isa::scalar);
         simd::QuatArrays ref;
         std::vector<double> rphi, rchi;
         simd::quat_mul(a, b, ref);
         simd::split_norms(e, a, rphi, rchi);
         std::string tested = "scalar";
         for (simd::Isa isa : {simd::Isa::avx2}) {
           if (!simd::isa_available(isa)) continue;
           simd::set_isa(isa);
           tested += std::string(", ") + simd::to_string(isa);
           simd::QuatArrays out;
           std::vector<double> phi, chi;
           simd::quat_mul(a, b, out);
           simd::split_norms(e, a, phi, chi);
           for (int k = 0; k < n; ++k)
             o.residual = std::max({o.residual, max_abs_diff(out.get(k), ref.get(k)), std::abs(phi[k] - rphi[k]),
                                    std::abs(chi[k] - rchi[k])});
         }
         simd::set_isa(saved);
         // The scalar kernels themselves against the reference algebra.
         double algebra = 0.0;
         for (int k = 0; k < n; ++k) {
           algebra = std::max(algebra, max_abs_diff(ref.get(k), a.get(k) * b.get(k)));
           const Spinor ee = Spinor::from_quaternion(e.get(k)), pp = Spinor::from_quaternion(a.get(k));
           algebra = std::max({algebra, std::abs(rphi[k] - std::abs(inner(ee, pp))),
                               std::abs(rchi[k] - std::abs(inner(perp(ee), pp)))});
         }
         std::ostringstream os;
         os << "variants: " << tested << "; scalar kernels vs reference algebra " << algebra;
         o.detail = os.str();
         if (algebra > 1e-13) o.residual = std::max(o.residual, algebra);
         return o;
       }},
      {"plucker-genus", 0.0, false,
       [](Sampler&, int, const VerifyConfig&) {
         struct Row {
           int d, delta;
           std::optional<int> g;
         };
         const Row rows[] = {{1, 0, 0}, {2, 0, 0}, {3, 0, 1}, {3, 1, 0}, {4, 0, 3}, {4, 3, 0}, {3, 2, std::nullopt}};
         Outcome o{0.0, int(std::size(rows)), "(1,0)->0 (2,0)->0 (3,0)->1 (3,1)->0 (4,0)->3 (4,3)->0 (3,2)->none"};
         for (const Row& r : rows)
           if (plucker_genus(r.d, r.delta) != r.g) o.residual += 1.0;
         return o;
       }},
      {"line-spheres", 1e-8, false,
       [](Sampler& s, int n, const VerifyConfig& cfg) {
         RationalCurve c;
         c.degree = 1;
         for (auto& p : c.coeffs) p = {s.complex(), s.complex()};
         AnalysisOptions opt = analysis_options(cfg);
         const CurveClassification k = classify_curve(c, TargetType::S4, 0, n, opt);
         Outcome o{k.max_chi_ratio, k.samples, ""};
         if (!k.embedded_sphere || k.phi_chart_samples == 0) o.residual = std::max(o.residual, 1.0);
         std::ostringstream os;
         os << "random line: injective " << (k.injective ? "yes" : "no") << ", inversion-chart samples "
            << k.phi_chart_samples << ", genus " << (k.genus ? std::to_string(*k.genus) : "none");
         o.detail = os.str();
         return o;
       }},
      {"infinity-smoothness", 10.0, false,
       [](Sampler& s, int, const VerifyConfig&) {
         RationalCurve c;
         c.degree = 1;
         for (auto& p : c.coeffs) p = {s.complex(), s.complex()};
         const Target t{TargetType::S4, {}};
         const ImmersionSpec spec = make_curve_spec(t, c);
         const HCrossing x = h_transversality_check(c).at(0);
         auto G = [&](cplx w) { return inversion_phi(map_point(spec, {x.chart, w.real(), w.imag()})).y(); };
         // Second differences in the inversion chart as the crossing is approached.
         const double h = 1e-3;
         std::vector<double> second;
         for (int e = 2; e <= 6; ++e) {
           const cplx w = x.w + std::polar(std::pow(10.0, -e), 0.7);
           double m = 0.0;
           for (cplx d : {cplx(h, 0), cplx(0, h)}) m = std::max(m, norm(G(w + d) - cplx(2.0) * G(w) + G(w - d)) / (h * h));
           second.push_back(m);
         }
         Outcome o{0.0, int(second.size()), "growth of second differences from distance 1e-2 to 1e-6"};
         const double base = std::max(second.front(), 1e-12);
         for (double v : second) o.residual = std::max(o.residual, v / base);
         return o;
       }},
      {"graph-index", 0.0, false,
       [](Sampler&, int, const VerifyConfig& cfg) {
         const AnalysisOptions opt = analysis_options(cfg);
         Outcome o{0.0, 0, ""};
         const std::pair<const char*, int> cases[] = {{"zb^2", -1}, {"zb^3", -2}, {"zb^4", -3}, {"z*zb", 1}};
         for (auto [h, expected] : cases) {
           const AnalysisReport r = analyze(disk_graph(h), opt);
           ++o.samples;
           const bool ok = r.records.size() == 1 && r.records[0].kind == PlaneKind::QComplex &&
                           std::hypot(r.records[0].location.x, r.records[0].location.y) < 1e-5 &&
                           r.records[0].index == expected && r.boundary_incomplete;
           if (!ok) o.residual += 1.0;
           o.detail += std::string("(z, ") + h + "): " + describe_records(r) + "; ";
         }
         return o;
       }},
      {"orientation-covariance", 0.0, false,
       [](Sampler&, int, const VerifyConfig& cfg) {
         const AnalysisOptions opt = analysis_options(cfg);
         const AnalysisReport a = analyze(disk_graph("zb^2"), opt);
         const AnalysisReport b = analyze(disk_graph("zb^2", -1), opt);
         const AnalysisReport c = analyze(disk_graph("z^2", 1, "zb"), opt);
         Outcome o{0.0, 3, "(z, zb^2) reversed and (zb, z^2): " + describe_records(b) + "| " + describe_records(c)};
         auto swapped = [](const AnalysisReport& x, const AnalysisReport& y) {
           if (x.records.size() != y.records.size()) return false;
           for (std::size_t k = 0; k < x.records.size(); ++k) {
             const auto &p = x.records[k], &q = y.records[k];
             const bool kinds = (p.kind == PlaneKind::QComplex && q.kind == PlaneKind::QbarComplex) ||
                                (p.kind == PlaneKind::QbarComplex && q.kind == PlaneKind::QComplex);
             if (!kinds || !p.index || !q.index || *p.index != -*q.index) return false;
           }
           return !x.records.empty();
         };
         if (!swapped(a, b)) o.residual += 1.0;
         if (!swapped(a, c)) o.residual += 1.0;
         return o;
       }},
      {"winding-additivity", 0.0, false,
       [](Sampler&, int, const VerifyConfig& cfg) {
         const AnalysisOptions opt = analysis_options(cfg);
         const ImmersionSpec spec = disk_graph("0.3333333333333333*zb^3 - 0.09*zb");
         const AnalysisReport r = analyze(spec, opt);
         ComplexPointRecord big;
         big.location = {0, 0.0, 0.0};
         big.kind = PlaneKind::QComplex;
         int large = 0;
         Outcome o{0.0, int(r.records.size()) + 1, ""};
         try {
           large = index_of_zero(spec, big, 0.6, opt);
         } catch (const std::exception& e) {
           o.residual = 1.0;
           o.detail = e.what();
           return o;
         }
         o.residual = std::abs(large - r.q_count) + (r.records.size() == 2 ? 0.0 : 1.0);
         o.detail = "radius 0.6 loop: " + std::to_string(large) + ", indices: " + describe_records(r);
         return o;
       }},
      {"index-stability", 0.0, false,
       [](Sampler&, int, const VerifyConfig& cfg) {
         AnalysisOptions opt = analysis_options(cfg);
         const std::vector<ImmersionSpec> specs = {disk_graph("zb^3"), disk_graph("0.3333333333333333*zb^3 - 0.09*zb")};
         Outcome o{0.0, 0, "grid doubled and loop radius halved"};
         for (const auto& spec : specs) {
           const AnalysisReport r = analyze(spec, opt);
           AnalysisOptions fine = opt;
           fine.grid_n = 2 * opt.grid_n;
           const AnalysisReport rf = analyze(spec, fine);
           if (rf.records.size() != r.records.size()) o.residual += 1.0;
           for (std::size_t k = 0; k < r.records.size(); ++k) {
             ++o.samples;
             if (!r.records[k].index) continue;
             const int halved = index_of_zero(spec, r.records[k], 0.5 * r.records[k].loop_radius, opt);
             if (halved != *r.records[k].index) o.residual += 1.0;
             if (k < rf.records.size() && rf.records[k].index != r.records[k].index) o.residual += 1.0;
           }
         }
         return o;
       }},
      {"scale-invariance", 1e-9, false,
       [](Sampler& s, int, const VerifyConfig& cfg) {
         AnalysisOptions opt = analysis_options(cfg);
         Domain torus;
         torus.type = DomainType::Torus;
         const std::vector<ImmersionSpec> specs = {
             disk_graph("zb^2"), disk_graph("zb^3"), disk_graph("z*zb"),
             make_component_spec(torus, Target{}, "0.7071067811865476*z", "0.7071067811865476*w"),
             make_component_spec(torus, Target{}, "z + z*w", "w + z")};
         Outcome o{0.0, 0, "residual is the largest record displacement (infinite on any verdict or index change)"};
         for (const auto& spec : specs) {
           const double a = s.uniform(0.1, 3.0), b = s.uniform(0.1, 3.0), c0 = s.uniform(0.1, 3.0);
           AnalysisOptions scaled = opt;
           scaled.higgs_scale = [=](const ParamPoint& p) {
             const double r2 = p.x * p.x + p.y * p.y;
             return c0 + a * r2 + b * r2 * r2;
           };
           const AnalysisReport r = analyze(spec, opt), q = analyze(spec, scaled);
           ++o.samples;
           const bool same = r.records.size() == q.records.size() && r.totally_real == q.totally_real &&
                             r.pseudoholomorphic == q.pseudoholomorphic && r.net_count == q.net_count;
           if (!same) {
             o.residual = INFINITY;
             continue;
           }
           for (std::size_t k = 0; k < r.records.size(); ++k) {
             if (r.records[k].kind != q.records[k].kind || r.records[k].index != q.records[k].index)
               o.residual = INFINITY;
             o.residual = std::max(o.residual, param_distance(spec, r.records[k].location, q.records[k].location));
           }
         }
         return o;
       }},
      {"totally-real-torus", 1e-8, false,
       [](Sampler&, int, const VerifyConfig& cfg) {
         AnalysisOptions opt = analysis_options(cfg);
         Domain torus;
         torus.type = DomainType::Torus;
         const ImmersionSpec spec =
             make_component_spec(torus, Target{}, "0.7071067811865476*z", "0.7071067811865476*w");
         const AnalysisReport r = analyze(spec, opt);
         const BundleCheck bc = totally_real_bundle_check(spec, opt);
         const auto m = maslov_windings(spec, {parse_loop("theta:0"), parse_loop("phi:0")}, opt);
         Outcome o{0.0, bc.points, ""};
         for (const auto& x : m) o.residual = std::max(o.residual, x.cross_check);
         const bool ok = r.totally_real && r.net_count == 0 && bc.pass && m[0].winding == 1 && m[1].winding == 1 &&
                         m[0].wedge_winding == 1 && m[1].wedge_winding == 1;
         if (!ok) o.residual = INFINITY;
         std::ostringstream os;
         os << "Clifford torus: totally real " << (r.totally_real ? "yes" : "no") << ", bundle map "
            << (bc.pass ? "orientation-reversing isometry" : "FAILED") << ", Maslov (" << m[0].winding << ", "
            << m[1].winding << "); residual is the wedge cross-check";
         o.detail = os.str();
         return o;
       }},
  };
  return all;
}

} // namespace

bool VerifyReport::all_pass() const {
  return std::all_of(suites.begin(), suites.end(), [](const SuiteResult& s) { return s.pass; });
}

std::vector<std::string> suite_names() {
  std::vector<std::string> out;
  for (const Suite& s : suites()) out.push_back(s.name);
  return out;
}

VerifyReport run_verify(const VerifyConfig& cfg) {
  if (cfg.samples < 1) throw std::invalid_argument("samples must be at least 1");
  const auto names = suite_names();
  for (const auto& n : cfg.only)
    if (std::find(names.begin(), names.end(), n) == names.end()) throw std::invalid_argument("unknown suite '" + n + "'");
  VerifyReport rep;
  rep.seed = cfg.seed;
  rep.samples = cfg.samples;
  for (const Suite& suite : suites()) {
    if (!cfg.only.empty() && std::find(cfg.only.begin(), cfg.only.end(), suite.name) == cfg.only.end()) continue;
    Sampler sampler(cfg.seed, stream_of(suite.name));
    SuiteResult r;
    r.name = suite.name;
    r.threshold = suite.overridable && cfg.tol ? *cfg.tol : suite.threshold;
    try {
      const Outcome o = suite.run(sampler, cfg.samples, cfg);
      r.samples = o.samples;
      r.max_residual = o.residual;
      r.detail = o.detail;
      r.pass = std::isfinite(o.residual) && (suite.threshold == 0.0 && !suite.overridable ? o.residual == 0.0
                                                                                        : o.residual < r.threshold);
    } catch (const std::exception& e) {
      r.max_residual = INFINITY;
      r.detail = std::string("error: ") + e.what();
      r.pass = false;
    }
    rep.suites.push_back(r);
  }
  return rep;
}

} // namespace spinc
