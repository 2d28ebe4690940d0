#include "spinc/spin_geometry.hpp"

#include <cmath>
#include <stdexcept>

#include "spinc/errors.hpp"

namespace spinc {

double Spinor::norm() const { return std::sqrt(norm2()); }

Spinor operator+(const Spinor& p, const Spinor& q) { return {p.a + q.a, p.b + q.b, p.chirality}; }
Spinor operator-(const Spinor& p, const Spinor& q) { return {p.a - q.a, p.b - q.b, p.chirality}; }
Spinor operator*(const Spinor& p, cplx c) { return {p.a * c, p.b * c, p.chirality}; }
Spinor operator*(cplx c, const Spinor& p) { return p * c; }

cplx inner(const Spinor& p, const Spinor& q) { return std::conj(p.a) * q.a + std::conj(p.b) * q.b; }

Spinor perp(const Spinor& p) { return {-std::conj(p.b), std::conj(p.a), p.chirality}; }

Spinor normalized(const Spinor& p) {
  const double n = p.norm();
  if (!(n > 0.0)) throw DomainError("cannot normalize zero spinor");
  return p * cplx(1.0 / n);
}

double distance(const Spinor& p, const Spinor& q) { return (p - q).norm(); }

cplx wedge(const Spinor& phi, const Spinor& chi) {
  if (phi.chirality != chi.chirality) throw std::invalid_argument("wedge of spinors of different chirality");
  return phi.a * chi.b - phi.b * chi.a;
}

Spinor clifford_mul(const HomothetyV& A, const Spinor& phi) {
  if (phi.chirality != Chirality::plus) throw std::invalid_argument("clifford_mul expects a spinor in S+");
  const Vec2c v = apply(A.matrix(), phi.coords());
  return {v[0], v[1], Chirality::minus};
}

double det_V(const HomothetyV& A) {
  const ComplexPair c = A.q.pair();
  return std::norm(c.a) + std::norm(c.b);
}

AdaptedBases adapt_bases(const Spinor& psi) {
  if (psi.chirality != Chirality::plus) throw std::invalid_argument("adapt_bases expects a spinor in S+");
  const Spinor phi = normalized(psi);
  return {phi, perp(phi), {1.0, 0.0, Chirality::minus}, {0.0, 1.0, Chirality::minus}};
}

} // namespace spinc
