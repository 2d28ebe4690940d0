#include "spinc/grassmannian.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "spinc/errors.hpp"

namespace spinc {

namespace {

constexpr double kCanonicalThreshold = 1e-8;
constexpr double kOrthonormalRepair = 1e-8;

Spinor canonical_phase(const Spinor& s) {
  const cplx lead = std::abs(s.a) > kCanonicalThreshold ? s.a : s.b;
  return s * (std::conj(lead) / std::abs(lead));
}

ProjectiveLine eigenline(const Quaternion& n, Chirality c) {
  // Left multiplication by s + v has eigenvalues s +- i|v|; take the one in the upper half plane.
  const double v = std::sqrt(n.x * n.x + n.y * n.y + n.z * n.z);
  if (!(v > 1e-12 * std::max(1.0, n.norm()))) throw DomainError("plane basis has real eigenvalues");
  const cplx z(n.w, v);
  const ComplexPair p = n.pair();
  const Spinor x1{z - std::conj(p.a), p.b, c};
  const Spinor x2{std::conj(p.b), p.a - z, c};
  return ProjectiveLine::from_spinor(x1.norm2() >= x2.norm2() ? x1 : x2);
}

} // namespace

ProjectiveLine ProjectiveLine::from_spinor(const Spinor& s) {
  const double n = s.norm();
  if (!(n > 0.0) || !std::isfinite(n)) throw DomainError("projective line of zero spinor");
  return ProjectiveLine(canonical_phase(s * cplx(1.0 / n)));
}

ProjectiveLine ProjectiveLine::from_quaternion(const Quaternion& q, Chirality c) {
  return from_spinor(Spinor::from_quaternion(q, c));
}

ProjectiveLine ProjectiveLine::perp() const { return from_spinor(spinc::perp(rep_)); }

double projective_distance(const ProjectiveLine& L1, const ProjectiveLine& L2) {
  // 2 - 2c written as 2 (1 - c^2) / (1 + c) to avoid cancellation near c = 1.
  const double c = std::abs(inner(L1.rep(), L2.rep()));
  const double s = std::abs(inner(perp(L1.rep()), L2.rep()));
  return s * std::sqrt(2.0 / (1.0 + std::min(c, 1.0)));
}

OrientedPlane OrientedPlane::from_basis(const Quaternion& a, const Quaternion& b) {
  const double defect = std::max({std::abs(a.norm() - 1.0), std::abs(b.norm() - 1.0), std::abs(dot(a, b))});
  if (!(defect <= kOrthonormalRepair)) throw DomainError("plane basis is not orthonormal");
  return from_spanning(a, b);
}

OrientedPlane OrientedPlane::from_spanning(const Quaternion& a, const Quaternion& b) {
  const double na = a.norm();
  if (!(na > 0.0)) throw DomainError("degenerate plane basis");
  const Quaternion e1 = (1.0 / na) * a;
  const Quaternion r = b - dot(b, e1) * e1;
  const double nr = r.norm();
  if (!(nr > 1e-14 * b.norm()) || !(nr > 0.0)) throw DomainError("degenerate plane basis");
  return OrientedPlane(e1, (1.0 / nr) * r);
}

Bivector OrientedPlane::bivector() const {
  const auto u = a_.coords();
  const auto v = b_.coords();
  Bivector out{};
  int k = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) out[k++] = u[i] * v[j] - u[j] * v[i];
  return out;
}

Quaternion OrientedPlane::project(const Quaternion& x) const { return dot(x, a_) * a_ + dot(x, b_) * b_; }

double plane_distance(const OrientedPlane& s, const OrientedPlane& t) {
  const Bivector p = s.bivector();
  const Bivector q = t.bivector();
  double acc = 0.0;
  for (int i = 0; i < 6; ++i) acc += (p[i] - q[i]) * (p[i] - q[i]);
  return std::sqrt(acc);
}

bool same_oriented_plane(const OrientedPlane& s, const OrientedPlane& t, double tol) {
  const Quaternion& a = s.first();
  const Quaternion& b = s.second();
  if ((a - t.project(a)).norm() > tol || (b - t.project(b)).norm() > tol) return false;
  const double m00 = dot(a, t.first()), m01 = dot(a, t.second());
  const double m10 = dot(b, t.first()), m11 = dot(b, t.second());
  const double d = m00 * m11 - m01 * m10;
  return std::abs(d - 1.0) <= tol;
}

double oriented_volume(const Quaternion& a, const Quaternion& b, const Quaternion& c, const Quaternion& d) {
  Eigen::Matrix4d m;
  const std::array<Quaternion, 4> cols{a, b, c, d};
  for (int j = 0; j < 4; ++j) {
    const auto v = cols[j].coords();
    for (int i = 0; i < 4; ++i) m(i, j) = v[i];
  }
  return -m.determinant();
}

int orientation_sign(const Quaternion& a, const Quaternion& b, const Quaternion& c, const Quaternion& d) {
  return oriented_volume(a, b, c, d) >= 0.0 ? 1 : -1;
}

OrientedPlane psi_from_reps(const Quaternion& p, const Quaternion& q) {
  const Quaternion pc = quat_conj(normalized(p));
  const Quaternion qn = normalized(q);
  return OrientedPlane::from_basis(qn * pc, qn * Quaternion::unit_i() * pc);
}

OrientedPlane psi(const ProjectiveLine& L, const ProjectiveLine& Lp) {
  if (L.chirality() != Chirality::plus || Lp.chirality() != Chirality::minus)
    throw std::invalid_argument("psi expects a line in S+ and a line in S-");
  return psi_from_reps(L.rep().quaternion(), Lp.rep().quaternion());
}

std::pair<ProjectiveLine, ProjectiveLine> psi_inverse(const OrientedPlane& T) {
  const Quaternion& A = T.first();
  const Quaternion& B = T.second();
  return {eigenline(quat_conj(A) * B, Chirality::plus), eigenline(-(A * quat_conj(B)), Chirality::minus)};
}

OrientedPlane plane_complement(const OrientedPlane& T) {
  const std::array<Quaternion, 4> e{Quaternion::one(), Quaternion::unit_i(), Quaternion::unit_j(),
                                    Quaternion::unit_k()};
  auto best_residual = [&](const Quaternion* extra) {
    Quaternion best{};
    double best_norm = -1.0;
    for (const auto& v : e) {
      Quaternion r = v - T.project(v);
      if (extra) r = r - dot(r, *extra) * *extra;
      const double n = r.norm();
      if (n > best_norm) {
        best_norm = n;
        best = r;
      }
    }
    return (1.0 / best_norm) * best;
  };
  const Quaternion c = best_residual(nullptr);
  Quaternion d = best_residual(&c);
  if (orientation_sign(T.first(), T.second(), c, d) < 0) d = -d;
  // (c, d) now carries the direct-sum orientation; return the opposite one.
  return OrientedPlane::from_basis(c, -d);
}

const char* to_string(Membership m) {
  switch (m) {
  case Membership::InL: return "InL";
  case Membership::InLperp: return "InLperp";
  case Membership::Neither: return "Neither";
  }
  return "?";
}

Membership membership(const OrientedPlane& T, const Spinor& psi_spinor, double tol) {
  const Spinor s = normalized(psi_spinor);
  const Spinor& e = psi_inverse(T).first.rep();
  if (std::abs(inner(perp(e), s)) < tol) return Membership::InL;
  if (std::abs(inner(e, s)) < tol) return Membership::InLperp;
  return Membership::Neither;
}

PlaneTangent operator+(const PlaneTangent& s, const PlaneTangent& t) { return {s.at_a + t.at_a, s.at_b + t.at_b}; }
PlaneTangent operator-(const PlaneTangent& s, const PlaneTangent& t) { return {s.at_a - t.at_a, s.at_b - t.at_b}; }
PlaneTangent operator*(double c, const PlaneTangent& t) { return {c * t.at_a, c * t.at_b}; }

PlaneTangent grassmann_acs(const OrientedPlane&, const PlaneTangent& h) { return {h.at_b, -h.at_a}; }

PlaneTangent plane_tangent_fd(const std::function<OrientedPlane(double)>& curve, double h) {
  const OrientedPlane t0 = curve(0.0);
  const OrientedPlane tp = curve(h);
  const OrientedPlane tm = curve(-h);
  auto column = [&](const Quaternion& x) {
    const Quaternion d = (1.0 / (2.0 * h)) * (tp.project(x) - tm.project(x));
    return d - t0.project(d);
  };
  return {column(t0.first()), column(t0.second())};
}

PlaneTangent psi_differential_fd(const ProjectiveLine& L, const ProjectiveLine& Lp, cplx c, PsiSlot slot,
                                 double h) {
  const Quaternion p = L.rep().quaternion();
  const Quaternion q = Lp.rep().quaternion();
  const Quaternion cq = Quaternion::from_complex(c);
  if (slot == PsiSlot::plus) {
    const Quaternion dir = p * Quaternion::unit_j() * cq;
    return plane_tangent_fd([&](double t) { return psi_from_reps(p + t * dir, q); }, h);
  }
  const Quaternion dir = q * Quaternion::unit_j() * cq;
  return plane_tangent_fd([&](double t) { return psi_from_reps(p, q + t * dir); }, h);
}

double psi_linearity_residual(const ProjectiveLine& L, const ProjectiveLine& Lp, cplx c, PsiSlot slot, double h) {
  const OrientedPlane T = psi(L, Lp);
  const PlaneTangent d = psi_differential_fd(L, Lp, c, slot, h);
  const PlaneTangent di = psi_differential_fd(L, Lp, cplx(0.0, 1.0) * c, slot, h);
  const PlaneTangent jd = grassmann_acs(T, d);
  return slot == PsiSlot::plus ? (di + jd).norm() : (di - jd).norm();
}

} // namespace spinc
