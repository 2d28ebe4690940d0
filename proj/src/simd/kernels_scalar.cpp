#include <cmath>

#include "kernels_impl.hpp"

namespace spinc::simd::detail {

void quat_mul_scalar(std::size_t n, QuatPtrs a, QuatPtrs b, QuatOut o) {
  for (std::size_t i = 0; i < n; ++i) {
    const double aw = a.w[i], ax = a.x[i], ay = a.y[i], az = a.z[i];
    const double bw = b.w[i], bx = b.x[i], by = b.y[i], bz = b.z[i];
    o.w[i] = aw * bw - ax * bx - ay * by - az * bz;
    o.x[i] = aw * bx + ax * bw + ay * bz - az * by;
    o.y[i] = aw * by - ax * bz + ay * bw + az * bx;
    o.z[i] = aw * bz + ax * by - ay * bx + az * bw;
  }
}

void split_norms_scalar(std::size_t n, QuatPtrs e, QuatPtrs p, double* phi, double* chi) {
  for (std::size_t i = 0; i < n; ++i) {
    const double ew = e.w[i], ex = e.x[i], ey = e.y[i], ez = e.z[i];
    const double pw = p.w[i], px = p.x[i], py = p.y[i], pz = p.z[i];
    const double re1 = ew * pw + ex * px + ey * py + ez * pz;
    const double im1 = ew * px - ex * pw + ez * py - ey * pz;
    // e j = (-ey, -ez, ew, ex) spans the orthogonal complement.
    const double re2 = ew * py - ey * pw - ez * px + ex * pz;
    const double im2 = ez * pw - ey * px + ex * py - ew * pz;
    phi[i] = std::sqrt(re1 * re1 + im1 * im1);
    chi[i] = std::sqrt(re2 * re2 + im2 * im2);
  }
}

} // namespace spinc::simd::detail
