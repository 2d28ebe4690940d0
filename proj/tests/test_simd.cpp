#include <doctest.h>

#include <cstdlib>
#include <cstring>

#include "spinc/higgs_field.hpp"
#include "spinc/random.hpp"
#include "spinc/simd/kernels.hpp"

using namespace spinc;
using namespace spinc::simd;

namespace {
// Sizes that exercise both the vector body and the scalar tail.
constexpr std::size_t kSizes[] = {0, 1, 3, 4, 5, 17, 1000, 1023};

QuatArrays random_batch(Sampler& s, std::size_t n, bool unit = false) {
  QuatArrays a(n);
  for (std::size_t i = 0; i < n; ++i) a.set(i, unit ? s.unit_quaternion() : s.quaternion());
  return a;
}

struct IsaGuard {
  Isa saved = active_isa();
  ~IsaGuard() { set_isa(saved); }
};
} // namespace

TEST_CASE("environment pin selects the scalar kernels") {
  const char* env = std::getenv("SPINC_ISA");
  if (env && std::strcmp(env, "scalar") == 0) CHECK(active_isa() == Isa::scalar);
  CHECK(isa_available(Isa::scalar));
  CHECK(isa_available(detected_isa()));
}

TEST_CASE("quaternion product kernel matches the reference product") {
  Sampler s(61);
  for (std::size_t n : kSizes) {
    const QuatArrays a = random_batch(s, n), b = random_batch(s, n);
    QuatArrays out;
    quat_mul(a, b, out);
    REQUIRE(out.size() == n);
    for (std::size_t i = 0; i < n; ++i) CHECK(max_abs_diff(out.get(i), a.get(i) * b.get(i)) < 1e-14);
  }
}

TEST_CASE("split norm kernel matches split_at") {
  Sampler s(62);
  for (std::size_t n : kSizes) {
    const QuatArrays e = random_batch(s, n, true), p = random_batch(s, n);
    std::vector<double> phi, chi;
    split_norms(e, p, phi, chi);
    REQUIRE(phi.size() == n);
    for (std::size_t i = 0; i < n; ++i) {
      const Spinor es = Spinor::from_quaternion(e.get(i)), ps = Spinor::from_quaternion(p.get(i));
      CHECK(phi[i] == doctest::Approx(std::abs(inner(es, ps))).epsilon(1e-13));
      CHECK(chi[i] == doctest::Approx(std::abs(inner(perp(es), ps))).epsilon(1e-13));
    }
  }
}

TEST_CASE("variants agree") {
  if (!isa_available(Isa::avx2)) {
    MESSAGE("AVX2 variant unavailable on this machine; equivalence not exercised");
    CHECK_THROWS_AS(set_isa(Isa::avx2), std::invalid_argument);
    return;
  }
  IsaGuard guard;
  Sampler s(63);
  for (std::size_t n : kSizes) {
    const QuatArrays a = random_batch(s, n), b = random_batch(s, n, true);
    QuatArrays m0, m1;
    std::vector<double> p0, c0, p1, c1;
    set_isa(Isa::scalar);
    quat_mul(a, b, m0);
    split_norms(b, a, p0, c0);
    set_isa(Isa::avx2);
    quat_mul(a, b, m1);
    split_norms(b, a, p1, c1);
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(max_abs_diff(m0.get(i), m1.get(i)) < 1e-14 * (1 + a.get(i).norm() * b.get(i).norm()));
      CHECK(std::abs(p0[i] - p1[i]) < 1e-14 * (1 + a.get(i).norm()));
      CHECK(std::abs(c0[i] - c1[i]) < 1e-14 * (1 + a.get(i).norm()));
    }
  }
}

TEST_CASE("size mismatch is rejected") {
  QuatArrays a(3), b(4), out;
  CHECK_THROWS_AS(quat_mul(a, b, out), std::invalid_argument);
}
