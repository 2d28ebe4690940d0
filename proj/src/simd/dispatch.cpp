#include <atomic>
#include <cstdlib>
#include <cstring>
#include <stdexcept>

#include "kernels_impl.hpp"
#include "spinc/simd/kernels.hpp"

namespace spinc::simd {

namespace {

bool cpu_has_avx2() {
#if SPINC_BUILD_AVX2 && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Isa initial_isa() {
  const char* env = std::getenv("SPINC_ISA");
  if (env && std::strcmp(env, "scalar") == 0) return Isa::scalar;
  return cpu_has_avx2() ? Isa::avx2 : Isa::scalar;
}

std::atomic<Isa>& current() {
  static std::atomic<Isa> isa{initial_isa()};
  return isa;
}

detail::QuatPtrs in(const QuatArrays& q) { return {q.w.data(), q.x.data(), q.y.data(), q.z.data()}; }
detail::QuatOut out(QuatArrays& q) { return {q.w.data(), q.x.data(), q.y.data(), q.z.data()}; }

} // namespace

const char* to_string(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

bool isa_available(Isa isa) { return isa == Isa::scalar || cpu_has_avx2(); }
Isa detected_isa() { return initial_isa(); }
Isa active_isa() { return current().load(); }

void set_isa(Isa isa) {
  if (!isa_available(isa)) throw std::invalid_argument(std::string("kernel variant unavailable: ") + to_string(isa));
  current().store(isa);
}

void quat_mul(const QuatArrays& a, const QuatArrays& b, QuatArrays& o) {
  const std::size_t n = a.size();
  if (b.size() != n) throw std::invalid_argument("quat_mul: size mismatch");
  o.resize(n);
#if SPINC_BUILD_AVX2
  if (active_isa() == Isa::avx2) return detail::quat_mul_avx2(n, in(a), in(b), out(o));
#endif
  detail::quat_mul_scalar(n, in(a), in(b), out(o));
}

void split_norms(const QuatArrays& e, const QuatArrays& psi, std::vector<double>& phi, std::vector<double>& chi) {
  const std::size_t n = e.size();
  if (psi.size() != n) throw std::invalid_argument("split_norms: size mismatch");
  phi.resize(n);
  chi.resize(n);
#if SPINC_BUILD_AVX2
  if (active_isa() == Isa::avx2) return detail::split_norms_avx2(n, in(e), in(psi), phi.data(), chi.data());
#endif
  detail::split_norms_scalar(n, in(e), in(psi), phi.data(), chi.data());
}

} // namespace spinc::simd
