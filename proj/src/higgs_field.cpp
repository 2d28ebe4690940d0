#include "spinc/higgs_field.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace spinc {

namespace {
constexpr cplx I(0.0, 1.0);
}

HVec2 higgs_value(const StandardHiggsField& H, const QuatLine& L) {
  // L = H w with |w| = 1, so the projection is <u, w> w.
  return hinner(H.u, L.rep()) * L.rep();
}

double higgs_norm(const StandardHiggsField& H, const S4Point& y) {
  if (y.is_infinity()) return 0.0;
  return std::sqrt(hnorm2(higgs_value(H, H.chart().theta(y))));
}

SpinorSplit split_at(const Spinor& psi, const OrientedPlane& T) {
  const Spinor e = psi_inverse(T).first.rep();
  const Spinor f = perp(e);
  const cplx a = inner(e, psi);
  const cplx b = inner(f, psi);
  return {e * a, f * b, std::abs(a), std::abs(b)};
}

const char* to_string(PlaneKind k) {
  switch (k) {
  case PlaneKind::QComplex: return "QComplex";
  case PlaneKind::QbarComplex: return "QbarComplex";
  case PlaneKind::Both: return "Both";
  case PlaneKind::Neither: return "Neither";
  }
  return "?";
}

PlaneClassification classify_plane(const Spinor& psi, const OrientedPlane& T, double tol) {
  PlaneClassification out;
  out.psi_norm = psi.norm();
  if (out.psi_norm < 1e-10) {
    out.kind = PlaneKind::Both;
    return out;
  }
  const SpinorSplit s = split_at(psi, T);
  out.phi_norm = s.phi_norm;
  out.chi_norm = s.chi_norm;
  const double thr = tol * std::max(out.psi_norm, 1e-30);
  if (s.chi_norm < thr)
    out.kind = PlaneKind::QComplex;
  else if (s.phi_norm < thr)
    out.kind = PlaneKind::QbarComplex;
  return out;
}

double wedge_identity_residual(const OrientedPlane& T, const Spinor& psi) {
  const SpinorSplit s = split_at(psi, T);
  const cplx lhs = wedge(clifford_mul(T.a(), psi), clifford_mul(T.b(), psi));
  return std::abs(lhs + 2.0 * I * wedge(s.phi, s.chi));
}

cplx LocalRepresentatives::phi(cplx z) const {
  return std::conj(z) / ((std::norm(z) + 1.0) * u_norm * u_norm);
}

cplx LocalRepresentatives::chi(cplx z) const { return z / ((std::norm(z) + 1.0) * u_norm * u_norm); }

LocalRepresentatives local_representatives(const StandardHiggsField& H) { return {H.u_norm()}; }

double residual_acs_defect(const StandardHiggsField& H, const Vec2c& y, double h) {
  const ThetaChart chart = H.chart();
  const QuatLine L = chart.theta(S4Point::finite(y));
  const HVec2 psi = higgs_value(H, L);
  auto off_line = [&](const HVec2& x) { return x - L.project(x); };
  auto coords = [](const HVec2& x) {
    Eigen::Matrix<double, 8, 1> c;
    c << x[0].w, x[0].x, x[0].y, x[0].z, x[1].w, x[1].x, x[1].y, x[1].z;
    return c;
  };
  const std::array<Vec2c, 4> basis{Vec2c{1.0, 0.0}, Vec2c{I, 0.0}, Vec2c{0.0, 1.0}, Vec2c{0.0, I}};

  // Tangent vector of dTheta(v) evaluated on psi, as a vector in L-perp.
  Eigen::Matrix<double, 8, 4> G;
  for (int k = 0; k < 4; ++k) {
    const QuatLine lp = chart.theta(S4Point::finite(y + cplx(h) * basis[k]));
    const QuatLine lm = chart.theta(S4Point::finite(y - cplx(h) * basis[k]));
    const HVec2 d = Quaternion{0.5 / h, 0.0, 0.0, 0.0} * (lp.project(psi) - lm.project(psi));
    G.col(k) = coords(off_line(d));
  }
  const auto qr = G.colPivHouseholderQr();
  double defect = 0.0;
  for (int k = 0; k < 4; ++k) {
    HVec2 gk;
    for (int m = 0; m < 2; ++m)
      gk[m] = Quaternion{G(4 * m, k), G(4 * m + 1, k), G(4 * m + 2, k), G(4 * m + 3, k)};
    const Eigen::Matrix<double, 4, 1> c = qr.solve(coords(Quaternion::unit_i() * gk));
    Vec2c jv{0.0, 0.0};
    for (int m = 0; m < 4; ++m) jv = jv + cplx(c(m)) * basis[m];
    defect = std::max(defect, norm(jv - I * basis[k]));
  }
  return defect;
}

} // namespace spinc
