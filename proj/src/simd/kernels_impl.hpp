#pragma once

#include <cstddef>

namespace spinc::simd::detail {

struct QuatPtrs {
  const double* w;
  const double* x;
  const double* y;
  const double* z;
};
struct QuatOut {
  double* w;
  double* x;
  double* y;
  double* z;
};

void quat_mul_scalar(std::size_t n, QuatPtrs a, QuatPtrs b, QuatOut o);
void split_norms_scalar(std::size_t n, QuatPtrs e, QuatPtrs p, double* phi, double* chi);

#if SPINC_BUILD_AVX2
void quat_mul_avx2(std::size_t n, QuatPtrs a, QuatPtrs b, QuatOut o);
void split_norms_avx2(std::size_t n, QuatPtrs e, QuatPtrs p, double* phi, double* chi);
#endif

} // namespace spinc::simd::detail
