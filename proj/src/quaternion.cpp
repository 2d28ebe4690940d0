#include "spinc/quaternion.hpp"

#include <algorithm>
#include <cmath>

#include "spinc/errors.hpp"

namespace spinc {

double Quaternion::norm() const { return std::sqrt(norm2()); }

Quaternion operator+(const Quaternion& p, const Quaternion& q) {
  return {p.w + q.w, p.x + q.x, p.y + q.y, p.z + q.z};
}

Quaternion operator-(const Quaternion& p, const Quaternion& q) {
  return {p.w - q.w, p.x - q.x, p.y - q.y, p.z - q.z};
}

Quaternion operator-(const Quaternion& p) { return {-p.w, -p.x, -p.y, -p.z}; }

Quaternion operator*(double s, const Quaternion& q) { return {s * q.w, s * q.x, s * q.y, s * q.z}; }
Quaternion operator*(const Quaternion& q, double s) { return s * q; }
Quaternion operator*(const Quaternion& p, const Quaternion& q) { return quat_mul(p, q); }

Quaternion quat_mul(const Quaternion& a, const Quaternion& b) {
  return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
          a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
          a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
          a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
}

Quaternion quat_conj(const Quaternion& q) { return {q.w, -q.x, -q.y, -q.z}; }

Quaternion quat_inv(const Quaternion& q) {
  const double n2 = q.norm2();
  if (!(n2 > 0.0)) throw DomainError("inverse of zero quaternion");
  return (1.0 / n2) * quat_conj(q);
}

double quat_norm(const Quaternion& q) { return q.norm(); }

double dot(const Quaternion& p, const Quaternion& q) {
  return p.w * q.w + p.x * q.x + p.y * q.y + p.z * q.z;
}

Quaternion normalized(const Quaternion& q) {
  const double n = q.norm();
  if (!(n > 0.0)) throw DomainError("cannot normalize zero quaternion");
  return (1.0 / n) * q;
}

double max_abs_diff(const Quaternion& p, const Quaternion& q) {
  return std::max({std::abs(p.w - q.w), std::abs(p.x - q.x), std::abs(p.y - q.y), std::abs(p.z - q.z)});
}

Mat2c left_mult_matrix(const Quaternion& p) {
  const ComplexPair c = p.pair();
  return {{{c.a, -std::conj(c.b)}, {c.b, std::conj(c.a)}}};
}

Vec2c apply(const Mat2c& m, const Vec2c& v) {
  return {m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1]};
}

cplx det(const Mat2c& m) { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }

} // namespace spinc
