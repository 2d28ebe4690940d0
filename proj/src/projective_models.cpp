#include "spinc/projective_models.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "spinc/errors.hpp"

namespace spinc {

namespace {

constexpr cplx I(0.0, 1.0);

double max_coeff(const std::vector<cplx>& c) {
  double m = 0.0;
  for (const auto& x : c) m = std::max(m, std::abs(x));
  return m;
}

cplx horner(const std::vector<cplx>& asc, cplx x) {
  cplx acc = 0.0;
  for (auto it = asc.rbegin(); it != asc.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::vector<cplx> derivative_coeffs(const std::vector<cplx>& asc) {
  std::vector<cplx> d;
  for (std::size_t k = 1; k < asc.size(); ++k) d.push_back(double(k) * asc[k]);
  return d;
}

// Coefficients of p(1, w) in ascending powers of w.
std::vector<cplx> reversed_chart(const std::vector<cplx>& c) { return {c.rbegin(), c.rend()}; }

} // namespace

double norm2(const Vec2c& y) { return std::norm(y[0]) + std::norm(y[1]); }
double norm(const Vec2c& y) { return std::sqrt(norm2(y)); }
cplx hermitian(const Vec2c& x, const Vec2c& y) { return std::conj(x[0]) * y[0] + std::conj(x[1]) * y[1]; }
Vec2c operator+(const Vec2c& x, const Vec2c& y) { return {x[0] + y[0], x[1] + y[1]}; }
Vec2c operator-(const Vec2c& x, const Vec2c& y) { return {x[0] - y[0], x[1] - y[1]}; }
Vec2c operator*(cplx c, const Vec2c& y) { return {c * y[0], c * y[1]}; }
std::array<double, 4> real_coords(const Vec2c& y) { return {y[0].real(), y[0].imag(), y[1].real(), y[1].imag()}; }

CP2Point CP2Point::from_homogeneous(const Vec2c& y, cplx z) {
  const double n = std::sqrt(norm2(y) + std::norm(z));
  if (!(n > 0.0) || !std::isfinite(n)) throw DomainError("zero vector does not define a point of CP2");
  const cplx lead = std::abs(z) > 1e-8 * n ? z : (std::abs(y[0]) > 1e-8 * n ? y[0] : y[1]);
  const cplx phase = std::conj(lead) / (std::abs(lead) * n);
  return CP2Point(phase * y, phase * z);
}

const Vec2c& S4Point::y() const {
  if (inf_) throw DomainError("point at infinity has no affine coordinates");
  return y_;
}

std::array<double, 5> s4_embed(const S4Point& p) {
  if (p.is_infinity()) return {0.0, 0.0, 0.0, 0.0, 1.0};
  const auto c = real_coords(p.y());
  const double r2 = norm2(p.y());
  const double d = 1.0 + r2;
  return {2.0 * c[0] / d, 2.0 * c[1] / d, 2.0 * c[2] / d, 2.0 * c[3] / d, (r2 - 1.0) / d};
}

double s4_chordal_distance(const S4Point& p, const S4Point& q) {
  const auto a = s4_embed(p);
  const auto b = s4_embed(q);
  double acc = 0.0;
  for (int i = 0; i < 5; ++i) acc += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(acc);
}

S4Point pr(const CP2Point& p) {
  if (std::abs(p.z()) < 1e-300) return S4Point::infinity();
  return S4Point::finite({p.y()[0] / p.z(), p.y()[1] / p.z()});
}

S4Point inversion_phi(const S4Point& p) {
  if (p.is_infinity()) return S4Point::finite({0.0, 0.0});
  const double r2 = norm2(p.y());
  if (r2 == 0.0) return S4Point::infinity();
  return S4Point::finite(cplx(1.0 / r2) * p.y());
}

std::array<CJet, 2> pr_jet(const std::array<CJet, 3>& h) { return {h[0] / h[2], h[1] / h[2]}; }

std::array<CJet, 2> phi_jet(const std::array<CJet, 2>& y) {
  const CJet n = y[0] * conj(y[0]) + y[1] * conj(y[1]);
  return {y[0] / n, y[1] / n};
}

Vec2c dphi(const Vec2c& y, const Vec2c& v) {
  const double r2 = norm2(y);
  const double re = hermitian(y, v).real();
  return cplx(1.0 / r2) * v - cplx(2.0 * re / (r2 * r2)) * y;
}

double DphiResidual::max() const {
  return std::max({perp_linearity, radial_antilinearity, perp_scale, radial_scale});
}

DphiResidual dphi_linearity_check(const Vec2c& y, double h) {
  const double r2 = norm2(y);
  if (!(r2 > 0.0)) throw DomainError("inversion differential at the origin");
  const double n = std::sqrt(r2);
  // The inversion is homogeneous of degree -1, so the step scales with |y|.
  const double step = h * n;
  auto d = [&](const Vec2c& v) {
    const Vec2c p = inversion_phi(S4Point::finite(y + cplx(step) * v)).y();
    const Vec2c m = inversion_phi(S4Point::finite(y - cplx(step) * v)).y();
    return cplx(1.0 / (2.0 * step)) * (p - m);
  };
  const Vec2c vp = cplx(1.0 / n) * Vec2c{-std::conj(y[1]), std::conj(y[0])};
  const Vec2c vr = cplx(1.0 / n) * y;
  const Vec2c dp = d(vp), dpi = d(I * vp);
  const Vec2c dr = d(vr), dri = d(I * vr);
  DphiResidual out;
  out.perp_linearity = norm(dpi - I * dp) * r2;
  out.radial_antilinearity = norm(dri + I * dr) * r2;
  out.perp_scale = norm(dp - cplx(1.0 / r2) * vp) * r2;
  out.radial_scale = std::abs(norm(dr) * r2 - 1.0);
  return out;
}

ImlResult iml_rank_check(const Vec2c& line_direction, double h) {
  const double n = norm(line_direction);
  if (!(n > 0.0)) throw DomainError("zero line direction");
  const Vec2c y = cplx(1.0 / n) * line_direction;
  const Vec2c yp{-std::conj(y[1]), std::conj(y[0])};
  // Affine chart (w, z) |-> [y + w yp : z] around [y : 0].
  auto G = [&](cplx w, cplx z) {
    const S4Point p = inversion_phi(pr(CP2Point::from_homogeneous(y + w * yp, z)));
    return real_coords(p.y());
  };
  Eigen::Matrix4d J;
  const std::array<std::pair<cplx, cplx>, 4> dirs{{{1.0, 0.0}, {I, 0.0}, {0.0, 1.0}, {0.0, I}}};
  for (int j = 0; j < 4; ++j) {
    const auto [dw, dz] = dirs[j];
    const auto p = G(h * dw, h * dz);
    const auto m = G(-h * dw, -h * dz);
    for (int i = 0; i < 4; ++i) J(i, j) = (p[i] - m[i]) / (2.0 * h);
  }
  Eigen::JacobiSVD<Eigen::Matrix4d> svd(J, Eigen::ComputeFullU);
  const Eigen::Vector4d sv = svd.singularValues();
  ImlResult out;
  for (int i = 0; i < 4; ++i) out.singular_values[i] = sv(i);
  for (int i = 0; i < 4; ++i)
    if (sv(i) > 1e-6 * sv(0)) ++out.rank;
  const Eigen::Matrix<double, 4, 2> U = svd.matrixU().leftCols<2>();
  Eigen::Matrix<double, 4, 2> Lb;
  const auto a = real_coords(y);
  const auto b = real_coords(I * y);
  for (int i = 0; i < 4; ++i) {
    Lb(i, 0) = a[i];
    Lb(i, 1) = b[i];
  }
  // Largest principal angle between the image and the line.
  const Eigen::Matrix<double, 4, 2> off = Lb - U * (U.transpose() * Lb);
  Eigen::JacobiSVD<Eigen::Matrix<double, 4, 2>> s2(off);
  out.angle = std::asin(std::min(1.0, s2.singularValues()(0)));
  return out;
}

Quaternion hinner(const HVec2& x, const HVec2& y) { return x[0] * quat_conj(y[0]) + x[1] * quat_conj(y[1]); }
double hnorm2(const HVec2& x) { return x[0].norm2() + x[1].norm2(); }
HVec2 operator+(const HVec2& x, const HVec2& y) { return {x[0] + y[0], x[1] + y[1]}; }
HVec2 operator-(const HVec2& x, const HVec2& y) { return {x[0] - y[0], x[1] - y[1]}; }
HVec2 operator*(const Quaternion& h, const HVec2& x) { return {h * x[0], h * x[1]}; }

QuatLine QuatLine::from_vector(const HVec2& w) {
  const double n = std::sqrt(hnorm2(w));
  if (!(n > 0.0) || !std::isfinite(n)) throw DomainError("zero vector does not span a quaternionic line");
  const Quaternion& lead = w[0].norm() > 1e-8 * n ? w[0] : w[1];
  return QuatLine((1.0 / (lead.norm() * n)) * quat_conj(lead) * w);
}

HVec2 QuatLine::project(const HVec2& x) const { return hinner(x, rep_) * rep_; }

double quatline_distance(const QuatLine& a, const QuatLine& b) {
  return std::sqrt(hnorm2(b.rep() - a.project(b.rep())));
}

ThetaChart::ThetaChart(const HVec2& u) : u_(u) {
  if (!(hnorm2(u) > 0.0)) throw DomainError("Higgs vector u must be nonzero");
  HVec2 e;
  if (u[0].norm() >= u[1].norm())
    e = {-(quat_conj(u[1]) * quat_inv(quat_conj(u[0]))), Quaternion::one()};
  else
    e = {Quaternion::one(), -(quat_conj(u[0]) * quat_inv(quat_conj(u[1])))};
  e_ = Quaternion{1.0 / std::sqrt(hnorm2(e)), 0.0, 0.0, 0.0} * e;
}

HVec2 ThetaChart::embed(const Vec2c& y) const {
  const Quaternion c{y[0].real(), y[0].imag(), y[1].real(), y[1].imag()};
  return c * e_;
}

Vec2c ThetaChart::project(const HVec2& v) const {
  const Quaternion c = hinner(v, e_);
  return {cplx(c.w, c.x), cplx(c.y, c.z)};
}

QuatLine ThetaChart::theta(const S4Point& y) const {
  if (y.is_infinity()) return QuatLine::from_vector(e_);
  return QuatLine::from_vector(embed(y.y()) + u_);
}

S4Point ThetaChart::theta_inverse(const QuatLine& L) const {
  const HVec2& w = L.rep();
  const Quaternion g = hinner(w, u_);
  const double u2 = hnorm2(u_);
  if (g.norm() <= 1e-12 * std::sqrt(u2)) return S4Point::infinity();
  const HVec2 v = (u2 * quat_inv(g)) * w - u_;
  return S4Point::finite(project(v));
}

void validate_curve(const RationalCurve& c) {
  if (c.degree < 1) throw InvalidCurveError("curve degree must be at least 1");
  double scale = 0.0;
  for (const auto& poly : c.coeffs) {
    if (poly.size() != std::size_t(c.degree) + 1)
      throw InvalidCurveError("each polynomial needs degree + 1 coefficients");
    scale = std::max(scale, max_coeff(poly));
  }
  if (!(scale > 0.0)) throw InvalidCurveError("curve is identically zero");
  // Common zeros: check every zero of the first nonvanishing polynomial.
  const std::vector<cplx>* lead = nullptr;
  for (const auto& poly : c.coeffs)
    if (max_coeff(poly) > 1e-12 * scale) {
      lead = &poly;
      break;
    }
  std::vector<std::pair<cplx, cplx>> zeros;
  for (const cplx w : polynomial_roots(*lead)) zeros.emplace_back(w, 1.0);
  if (std::abs(lead->back()) <= 1e-12 * max_coeff(*lead)) zeros.emplace_back(1.0, 0.0);
  for (auto [s, t] : zeros) {
    const double n = std::sqrt(std::norm(s) + std::norm(t));
    const auto v = evaluate_homogeneous(c, s / n, t / n);
    if (std::abs(v[0]) + std::abs(v[1]) + std::abs(v[2]) < 1e-9 * scale)
      throw InvalidCurveError("p, q and r share a common zero");
  }
}

std::array<cplx, 3> evaluate_homogeneous(const RationalCurve& c, cplx s, cplx t) {
  std::array<cplx, 3> out{};
  for (int m = 0; m < 3; ++m) {
    cplx acc = 0.0;
    for (int k = 0; k <= c.degree; ++k) acc += c.coeffs[m][k] * std::pow(s, k) * std::pow(t, c.degree - k);
    out[m] = acc;
  }
  return out;
}

CP2Point evaluate_curve(const RationalCurve& c, cplx s, cplx t) {
  const auto v = evaluate_homogeneous(c, s, t);
  if (std::abs(v[0]) + std::abs(v[1]) + std::abs(v[2]) == 0.0)
    throw InvalidCurveError("curve has a base point");
  return CP2Point::from_homogeneous({v[0], v[1]}, v[2]);
}

CurveJet curve_jet(const RationalCurve& c, cplx w, int chart) {
  CurveJet out{};
  for (int m = 0; m < 3; ++m) {
    const std::vector<cplx> asc = chart == 0 ? c.coeffs[m] : reversed_chart(c.coeffs[m]);
    out.value[m] = horner(asc, w);
    out.derivative[m] = horner(derivative_coeffs(asc), w);
  }
  return out;
}

std::vector<cplx> polynomial_roots(const std::vector<cplx>& ascending) {
  const double scale = max_coeff(ascending);
  int m = int(ascending.size()) - 1;
  while (m >= 0 && std::abs(ascending[m]) <= 1e-12 * scale) --m;
  if (m <= 0) return {};
  Eigen::MatrixXcd C = Eigen::MatrixXcd::Zero(m, m);
  for (int i = 1; i < m; ++i) C(i, i - 1) = 1.0;
  for (int i = 0; i < m; ++i) C(i, m - 1) = -ascending[i] / ascending[m];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(C, false);
  std::vector<cplx> roots(es.eigenvalues().data(), es.eigenvalues().data() + m);
  std::sort(roots.begin(), roots.end(), [](cplx a, cplx b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return roots;
}

std::vector<HCrossing> h_transversality_check(const RationalCurve& c) {
  validate_curve(c);
  const auto& r = c.coeffs[2];
  const double scale = max_coeff(r);
  if (!(scale > 0.0)) throw InvalidCurveError("curve lies in the line at infinity");
  std::vector<HCrossing> out;

  // Cluster finite roots so that multiple roots are reported once.
  std::vector<cplx> roots = polynomial_roots(r);
  std::vector<bool> used(roots.size(), false);
  const auto dr = derivative_coeffs(r);
  const auto rr = reversed_chart(r);
  const auto drr = derivative_coeffs(rr);
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (used[i]) continue;
    cplx sum = roots[i];
    int mult = 1;
    for (std::size_t j = i + 1; j < roots.size(); ++j)
      if (!used[j] && std::abs(roots[j] - roots[i]) < 1e-5 * (1.0 + std::abs(roots[i]))) {
        used[j] = true;
        sum += roots[j];
        ++mult;
      }
    const cplx w = sum / double(mult);
    HCrossing x;
    x.multiplicity = mult;
    if (std::abs(w) <= 1.0) {
      x.chart = 0;
      x.w = w;
      x.derivative = std::abs(horner(dr, w));
    } else {
      x.chart = 1;
      x.w = 1.0 / w;
      x.derivative = std::abs(horner(drr, x.w));
    }
    x.transverse = mult == 1 && x.derivative > 1e-8 * scale;
    out.push_back(x);
  }

  int at_inf = 0;
  for (int k = c.degree; k >= 0 && std::abs(r[k]) <= 1e-12 * scale; --k) ++at_inf;
  if (at_inf > 0) {
    HCrossing x;
    x.chart = 1;
    x.w = 0.0;
    x.multiplicity = at_inf;
    x.derivative = std::abs(horner(drr, 0.0));
    x.transverse = at_inf == 1 && x.derivative > 1e-8 * scale;
    out.push_back(x);
  }
  return out;
}

std::optional<int> plucker_genus(int degree, int delta) {
  if (degree < 1 || delta < 0) return std::nullopt;
  const int twice = (degree - 1) * (degree - 2) - 2 * delta;
  if (twice < 0) return std::nullopt;
  return twice / 2;
}

std::vector<NodeCandidate> candidate_nodes(const RationalCurve& c, int grid, double tol) {
  struct Sample {
    cplx w;
    std::array<cplx, 3> v;
  };
  std::vector<Sample> samples;
  for (int chart = 0; chart < 2; ++chart)
    for (int i = 0; i < grid; ++i)
      for (int j = 0; j < grid; ++j) {
        const cplx w(-1.0 + 2.0 * (i + 0.5) / grid, -1.0 + 2.0 * (j + 0.5) / grid);
        if (std::abs(w) > 1.0 || (chart == 1 && std::abs(w) == 0.0)) continue;
        auto v = chart == 0 ? evaluate_homogeneous(c, w, 1.0) : evaluate_homogeneous(c, 1.0, w);
        const double n = std::sqrt(std::norm(v[0]) + std::norm(v[1]) + std::norm(v[2]));
        if (!(n > 0.0)) continue;
        for (auto& x : v) x /= n;
        samples.push_back({chart == 0 ? w : 1.0 / w, v});
      }
  std::vector<NodeCandidate> out;
  for (std::size_t i = 0; i < samples.size(); ++i)
    for (std::size_t j = i + 1; j < samples.size(); ++j) {
      const auto& a = samples[i];
      const auto& b = samples[j];
      const double pa = std::abs(a.w - b.w) / std::sqrt((1 + std::norm(a.w)) * (1 + std::norm(b.w)));
      if (pa < 0.2) continue;
      const cplx ip = std::conj(a.v[0]) * b.v[0] + std::conj(a.v[1]) * b.v[1] + std::conj(a.v[2]) * b.v[2];
      const double d = std::sqrt(std::max(0.0, 1.0 - std::norm(ip)));
      if (d < tol) out.push_back({a.w, b.w, d});
    }
  return out;
}

} // namespace spinc
