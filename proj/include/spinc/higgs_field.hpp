#pragma once

#include <functional>

#include "spinc/grassmannian.hpp"
#include "spinc/projective_models.hpp"

namespace spinc {

// The section L |-> orthogonal projection of u onto L of the tautological
// bundle over P(W), W = H^2; it vanishes exactly at u-perp.
struct StandardHiggsField {
  HVec2 u{Quaternion::one(), Quaternion{}};

  ThetaChart chart() const { return ThetaChart(u); }
  double u_norm() const { return std::sqrt(hnorm2(u)); }
};

HVec2 higgs_value(const StandardHiggsField& H, const QuatLine& L);
// |psi| at the point of S with coordinates y (Theta chart); zero at infinity.
double higgs_norm(const StandardHiggsField& H, const S4Point& y);

struct SpinorSplit {
  Spinor phi; // component in L
  Spinor chi; // component in L-perp
  double phi_norm = 0.0;
  double chi_norm = 0.0;
};
// Decomposition of psi along S+ = L + L-perp where (L, L') = psi_inverse(T).
SpinorSplit split_at(const Spinor& psi, const OrientedPlane& T);

enum class PlaneKind { QComplex, QbarComplex, Both, Neither };
const char* to_string(PlaneKind k);

struct PlaneClassification {
  PlaneKind kind = PlaneKind::Neither;
  double psi_norm = 0.0;
  double phi_norm = 0.0;
  double chi_norm = 0.0;
};
// chi below tol * |psi| means Q-complex, phi below it Qbar-complex; |psi| < 1e-10 is Both.
PlaneClassification classify_plane(const Spinor& psi, const OrientedPlane& T, double tol = 1e-8);

// |A psi ^ B psi + 2i phi ^ chi| for the positive orthonormal basis (A, B) of T.
double wedge_identity_residual(const OrientedPlane& T, const Spinor& psi);

// Local representatives of the two components of the Higgs field near its
// zero, in the trivializations of the local model.
struct LocalRepresentatives {
  double u_norm = 1.0;
  cplx phi(cplx z) const;
  cplx chi(cplx z) const;
};
LocalRepresentatives local_representatives(const StandardHiggsField& H);

// Finite-difference check that the complex structure induced on the tangent
// space at Theta(y) by Clifford multiplication with psi/|psi| is the standard
// one of V. Returns max_k |J v_k - i v_k| over a real basis v_k of V.
double residual_acs_defect(const StandardHiggsField& H, const Vec2c& y, double h = 1e-4);

} // namespace spinc
