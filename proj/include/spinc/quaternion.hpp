#pragma once

#include <array>
#include <complex>

namespace spinc {

using cplx = std::complex<double>;
using Mat2c = std::array<std::array<cplx, 2>, 2>;
using Vec2c = std::array<cplx, 2>;

// Pair (a, b) of complex numbers standing for the quaternion a + j b.
struct ComplexPair {
  cplx a;
  cplx b;
};

// Quaternion w + x i + y j + z k, with ij = k.
struct Quaternion {
  double w = 0.0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  static constexpr Quaternion one() { return {1.0, 0.0, 0.0, 0.0}; }
  static constexpr Quaternion unit_i() { return {0.0, 1.0, 0.0, 0.0}; }
  static constexpr Quaternion unit_j() { return {0.0, 0.0, 1.0, 0.0}; }
  static constexpr Quaternion unit_k() { return {0.0, 0.0, 0.0, 1.0}; }

  static Quaternion from_complex(cplx c) { return {c.real(), c.imag(), 0.0, 0.0}; }
  // a + j b; note j b = Re(b) j - Im(b) k.
  static Quaternion from_pair(cplx a, cplx b) { return {a.real(), a.imag(), b.real(), -b.imag()}; }
  static Quaternion from_pair(const ComplexPair& p) { return from_pair(p.a, p.b); }

  ComplexPair pair() const { return {cplx(w, x), cplx(y, -z)}; }
  std::array<double, 4> coords() const { return {w, x, y, z}; }
  static Quaternion from_coords(const std::array<double, 4>& c) { return {c[0], c[1], c[2], c[3]}; }

  double norm2() const { return w * w + x * x + y * y + z * z; }
  double norm() const;
};

Quaternion operator+(const Quaternion& p, const Quaternion& q);
Quaternion operator-(const Quaternion& p, const Quaternion& q);
Quaternion operator-(const Quaternion& p);
Quaternion operator*(double s, const Quaternion& q);
Quaternion operator*(const Quaternion& q, double s);
Quaternion operator*(const Quaternion& p, const Quaternion& q);

Quaternion quat_mul(const Quaternion& p, const Quaternion& q);
Quaternion quat_conj(const Quaternion& q);
// Throws DomainError for q = 0.
Quaternion quat_inv(const Quaternion& q);
double quat_norm(const Quaternion& q);
// Euclidean inner product of coefficient vectors, i.e. Re(p conj(q)).
double dot(const Quaternion& p, const Quaternion& q);
Quaternion normalized(const Quaternion& q);
double max_abs_diff(const Quaternion& p, const Quaternion& q);

// Matrix of z |-> p z on H = C + jC, acting on pairs (a, b) of z = a + j b,
// with complex scalars acting from the right.
Mat2c left_mult_matrix(const Quaternion& p);
Vec2c apply(const Mat2c& m, const Vec2c& v);
cplx det(const Mat2c& m);

} // namespace spinc
