#pragma once

#include "spinc/quaternion.hpp"

namespace spinc {

// Complex value together with its Wirtinger derivatives d/dw and d/dwbar.
struct CJet {
  cplx v{};
  cplx dw{};
  cplx dwb{};

  static CJet constant(cplx c) { return {c, 0.0, 0.0}; }
  static CJet variable(cplx w) { return {w, 1.0, 0.0}; }
  // Real partials for w = x + i y.
  cplx dx() const { return dw + dwb; }
  cplx dy() const { return cplx(0.0, 1.0) * (dw - dwb); }
};

inline CJet operator+(const CJet& a, const CJet& b) { return {a.v + b.v, a.dw + b.dw, a.dwb + b.dwb}; }
inline CJet operator-(const CJet& a, const CJet& b) { return {a.v - b.v, a.dw - b.dw, a.dwb - b.dwb}; }
inline CJet operator*(const CJet& a, const CJet& b) {
  return {a.v * b.v, a.dw * b.v + a.v * b.dw, a.dwb * b.v + a.v * b.dwb};
}
inline CJet operator*(cplx c, const CJet& a) { return {c * a.v, c * a.dw, c * a.dwb}; }
inline CJet operator/(const CJet& a, const CJet& b) {
  const cplx b2 = b.v * b.v;
  return {a.v / b.v, (a.dw * b.v - a.v * b.dw) / b2, (a.dwb * b.v - a.v * b.dwb) / b2};
}
inline CJet conj(const CJet& a) { return {std::conj(a.v), std::conj(a.dwb), std::conj(a.dw)}; }

} // namespace spinc
