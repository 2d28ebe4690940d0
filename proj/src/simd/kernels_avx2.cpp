#include <immintrin.h>

#include <cmath>

#include "kernels_impl.hpp"

namespace spinc::simd::detail {

namespace {
inline __m256d ld(const double* p) { return _mm256_loadu_pd(p); }
inline __m256d mul(__m256d a, __m256d b) { return _mm256_mul_pd(a, b); }
inline __m256d add(__m256d a, __m256d b) { return _mm256_add_pd(a, b); }
inline __m256d sub(__m256d a, __m256d b) { return _mm256_sub_pd(a, b); }
} // namespace

// Same operation order as the scalar kernels, so results agree bit for bit.
void quat_mul_avx2(std::size_t n, QuatPtrs a, QuatPtrs b, QuatOut o) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d aw = ld(a.w + i), ax = ld(a.x + i), ay = ld(a.y + i), az = ld(a.z + i);
    const __m256d bw = ld(b.w + i), bx = ld(b.x + i), by = ld(b.y + i), bz = ld(b.z + i);
    _mm256_storeu_pd(o.w + i, sub(sub(sub(mul(aw, bw), mul(ax, bx)), mul(ay, by)), mul(az, bz)));
    _mm256_storeu_pd(o.x + i, sub(add(add(mul(aw, bx), mul(ax, bw)), mul(ay, bz)), mul(az, by)));
    _mm256_storeu_pd(o.y + i, add(add(sub(mul(aw, by), mul(ax, bz)), mul(ay, bw)), mul(az, bx)));
    _mm256_storeu_pd(o.z + i, add(sub(add(mul(aw, bz), mul(ax, by)), mul(ay, bx)), mul(az, bw)));
  }
  if (i < n) quat_mul_scalar(n - i, {a.w + i, a.x + i, a.y + i, a.z + i}, {b.w + i, b.x + i, b.y + i, b.z + i},
                             {o.w + i, o.x + i, o.y + i, o.z + i});
}

void split_norms_avx2(std::size_t n, QuatPtrs e, QuatPtrs p, double* phi, double* chi) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d ew = ld(e.w + i), ex = ld(e.x + i), ey = ld(e.y + i), ez = ld(e.z + i);
    const __m256d pw = ld(p.w + i), px = ld(p.x + i), py = ld(p.y + i), pz = ld(p.z + i);
    const __m256d re1 = add(add(add(mul(ew, pw), mul(ex, px)), mul(ey, py)), mul(ez, pz));
    const __m256d im1 = sub(add(sub(mul(ew, px), mul(ex, pw)), mul(ez, py)), mul(ey, pz));
    const __m256d re2 = add(sub(sub(mul(ew, py), mul(ey, pw)), mul(ez, px)), mul(ex, pz));
    const __m256d im2 = sub(add(sub(mul(ez, pw), mul(ey, px)), mul(ex, py)), mul(ew, pz));
    _mm256_storeu_pd(phi + i, _mm256_sqrt_pd(add(mul(re1, re1), mul(im1, im1))));
    _mm256_storeu_pd(chi + i, _mm256_sqrt_pd(add(mul(re2, re2), mul(im2, im2))));
  }
  if (i < n) split_norms_scalar(n - i, {e.w + i, e.x + i, e.y + i, e.z + i}, {p.w + i, p.x + i, p.y + i, p.z + i},
                                phi + i, chi + i);
}

} // namespace spinc::simd::detail
