#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <utility>

#include "spinc/spin_geometry.hpp"

namespace spinc {

// Complex line in S+ or S-, stored by a unit representative whose first
// component of modulus above 1e-8 is real and positive.
class ProjectiveLine {
public:
  // Throws DomainError for the zero spinor.
  static ProjectiveLine from_spinor(const Spinor& s);
  static ProjectiveLine from_quaternion(const Quaternion& q, Chirality c);

  const Spinor& rep() const { return rep_; }
  Chirality chirality() const { return rep_.chirality; }
  ProjectiveLine perp() const;

private:
  explicit ProjectiveLine(const Spinor& s) : rep_(s) {}
  Spinor rep_;
};

// Fubini-Study chordal distance: min over phases of |rep1 - rep2 e^{it}|.
double projective_distance(const ProjectiveLine& L1, const ProjectiveLine& L2);

using Bivector = std::array<double, 6>;

// Oriented 2-plane in V = H, kept with an orthonormal positive basis.
class OrientedPlane {
public:
  // Accepts a basis whose orthonormality defect is at most 1e-8 and repairs it
  // with one Gram-Schmidt pass; anything worse throws DomainError.
  static OrientedPlane from_basis(const Quaternion& a, const Quaternion& b);
  // Gram-Schmidt on an arbitrary independent pair (throws if dependent).
  static OrientedPlane from_spanning(const Quaternion& a, const Quaternion& b);

  HomothetyV a() const { return {a_}; }
  HomothetyV b() const { return {b_}; }
  const Quaternion& first() const { return a_; }
  const Quaternion& second() const { return b_; }
  OrientedPlane reversed() const { return OrientedPlane(b_, a_); }
  Bivector bivector() const;
  // Orthogonal projection of x onto the plane.
  Quaternion project(const Quaternion& x) const;

private:
  OrientedPlane(const Quaternion& a, const Quaternion& b) : a_(a), b_(b) {}
  Quaternion a_;
  Quaternion b_;
};

// Distance of the unit bivectors; zero iff equal as oriented planes.
double plane_distance(const OrientedPlane& s, const OrientedPlane& t);
// Projects one basis onto the other span and asks for a rotation (det > 0).
bool same_oriented_plane(const OrientedPlane& s, const OrientedPlane& t, double tol = 1e-9);

// +1 / -1 for the canonical orientation of V, in which (1, i, j, k) is negative.
int orientation_sign(const Quaternion& a, const Quaternion& b, const Quaternion& c, const Quaternion& d);
double oriented_volume(const Quaternion& a, const Quaternion& b, const Quaternion& c, const Quaternion& d);

// The plane of homotheties mapping L into L', oriented as Hom(L, L').
OrientedPlane psi(const ProjectiveLine& L, const ProjectiveLine& Lp);
// Same, from arbitrary nonzero representatives (p of L, q of L').
OrientedPlane psi_from_reps(const Quaternion& p, const Quaternion& q);
// Inverse of psi. Throws DomainError if the eigenvalues come out real.
std::pair<ProjectiveLine, ProjectiveLine> psi_inverse(const OrientedPlane& T);

// Orthogonal complement with the orientation opposite to the direct-sum one,
// built directly from an orthonormal completion (no use of psi).
OrientedPlane plane_complement(const OrientedPlane& T);

enum class Membership { InL, InLperp, Neither };
const char* to_string(Membership m);
Membership membership(const OrientedPlane& T, const Spinor& psi, double tol = 1e-8);

// Tangent vector of the Grassmannian at T: its values on the basis (A, B),
// each lying in the orthogonal complement of T.
struct PlaneTangent {
  Quaternion at_a;
  Quaternion at_b;
  double norm() const { return std::sqrt(at_a.norm2() + at_b.norm2()); }
};
PlaneTangent operator+(const PlaneTangent& s, const PlaneTangent& t);
PlaneTangent operator-(const PlaneTangent& s, const PlaneTangent& t);
PlaneTangent operator*(double c, const PlaneTangent& t);

// Complex structure coming from T being a complex line: (J h)(t) = h(i t).
PlaneTangent grassmann_acs(const OrientedPlane& T, const PlaneTangent& h);

// Central difference of a curve of planes through curve(0), read off from
// the orthogonal projectors so that basis choices along the curve do not matter.
PlaneTangent plane_tangent_fd(const std::function<OrientedPlane(double)>& curve, double h);

enum class PsiSlot { plus, minus };

// d/dt psi along L(t) = [p + t p j c] (plus slot) or L'(t) = [q + t q j c].
PlaneTangent psi_differential_fd(const ProjectiveLine& L, const ProjectiveLine& Lp, cplx c, PsiSlot slot,
                                 double h = 1e-4);
// |dPsi(i c) + J dPsi(c)| in the plus slot and |dPsi(i c) - J dPsi(c)| in the minus slot.
double psi_linearity_residual(const ProjectiveLine& L, const ProjectiveLine& Lp, cplx c, PsiSlot slot,
                              double h = 1e-4);

} // namespace spinc
