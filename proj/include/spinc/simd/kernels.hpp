#pragma once

#include <cstddef>
#include <vector>

#include "spinc/quaternion.hpp"

namespace spinc::simd {

// Structure-of-arrays batch of quaternions.
struct QuatArrays {
  std::vector<double> w, x, y, z;

  QuatArrays() = default;
  explicit QuatArrays(std::size_t n) : w(n), x(n), y(n), z(n) {}
  std::size_t size() const { return w.size(); }
  void resize(std::size_t n) {
    w.resize(n);
    x.resize(n);
    y.resize(n);
    z.resize(n);
  }
  void set(std::size_t i, const Quaternion& q) {
    w[i] = q.w;
    x[i] = q.x;
    y[i] = q.y;
    z[i] = q.z;
  }
  Quaternion get(std::size_t i) const { return {w[i], x[i], y[i], z[i]}; }
};

enum class Isa { scalar, avx2 };
const char* to_string(Isa isa);

// Best variant supported by both the build and the running CPU. Setting
// SPINC_ISA=scalar in the environment pins the scalar reference kernels.
Isa detected_isa();
Isa active_isa();
// Throws std::invalid_argument if the variant is unavailable here.
void set_isa(Isa isa);
bool isa_available(Isa isa);

// out[i] = a[i] * b[i].
void quat_mul(const QuatArrays& a, const QuatArrays& b, QuatArrays& out);

// Reading quaternions as spinors (a + j b): for unit line representatives
// e[i], phi[i] = |<e, psi>| and chi[i] = |<e j, psi>|, the moduli of the
// components of psi[i] along the line and its orthogonal complement.
void split_norms(const QuatArrays& e, const QuatArrays& psi, std::vector<double>& phi, std::vector<double>& chi);

} // namespace spinc::simd
