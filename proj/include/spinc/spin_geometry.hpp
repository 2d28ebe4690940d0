#pragma once

#include "spinc/quaternion.hpp"

namespace spinc {

enum class Chirality { plus, minus };

// Element of the model half-spin space S+ or S- (both copies of H = C^2,
// complex scalars acting from the right).
struct Spinor {
  cplx a;
  cplx b;
  Chirality chirality = Chirality::plus;

  static Spinor from_quaternion(const Quaternion& q, Chirality c = Chirality::plus) {
    const ComplexPair p = q.pair();
    return {p.a, p.b, c};
  }
  Quaternion quaternion() const { return Quaternion::from_pair(a, b); }
  Vec2c coords() const { return {a, b}; }
  double norm2() const { return std::norm(a) + std::norm(b); }
  double norm() const;
};

Spinor operator+(const Spinor& p, const Spinor& q);
Spinor operator-(const Spinor& p, const Spinor& q);
// Right complex scalar multiplication.
Spinor operator*(const Spinor& p, cplx c);
Spinor operator*(cplx c, const Spinor& p);

// Hermitian product, conjugate-linear in the first slot, with 1 and j orthonormal.
cplx inner(const Spinor& p, const Spinor& q);
// p j: the unit direction orthogonal to p, with p wedge perp(p) = |p|^2.
Spinor perp(const Spinor& p);
Spinor normalized(const Spinor& p);
double distance(const Spinor& p, const Spinor& q);

// Real homothety S+ -> S- given by left quaternion multiplication.
struct HomothetyV {
  Quaternion q;

  Mat2c matrix() const { return left_mult_matrix(q); }
  double norm() const { return q.norm(); }
};

// Complex area form a d - b c; both arguments must share a chirality.
cplx wedge(const Spinor& phi, const Spinor& chi);
// A . phi for phi in S+, landing in S-.
Spinor clifford_mul(const HomothetyV& A, const Spinor& phi);
// Complex determinant of the 2x2 matrix of A; equals |A|^2.
double det_V(const HomothetyV& A);

struct AdaptedBases {
  Spinor phi_plus;
  Spinor chi_plus;
  Spinor phi_minus;
  Spinor chi_minus;
};

// Unitary bases of S+ and S- whose first vector in S+ is psi/|psi| and whose
// area forms agree. Throws DomainError for psi = 0.
AdaptedBases adapt_bases(const Spinor& psi);

} // namespace spinc
