#pragma once

#include <cstdint>
#include <random>

#include "spinc/grassmannian.hpp"
#include "spinc/projective_models.hpp"

namespace spinc {

// Seeded sampler for the random draws of the verification suites. Gaussian
// coordinates make directions uniform on the unit spheres.
class Sampler {
public:
  explicit Sampler(std::uint64_t seed, std::uint64_t stream = 0) {
    std::seed_seq seq{std::uint32_t(seed), std::uint32_t(seed >> 32), std::uint32_t(stream),
                      std::uint32_t(stream >> 32)};
    rng_.seed(seq);
  }

  double gauss() { return normal_(rng_); }
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  cplx complex() { return {gauss(), gauss()}; }
  cplx unit_complex() {
    const cplx c = complex();
    return c / std::abs(c);
  }
  Quaternion quaternion() { return {gauss(), gauss(), gauss(), gauss()}; }
  Quaternion unit_quaternion() { return normalized(quaternion()); }
  Spinor spinor(Chirality c = Chirality::plus) { return {complex(), complex(), c}; }
  Vec2c vec2() { return {complex(), complex()}; }
  ProjectiveLine line(Chirality c) { return ProjectiveLine::from_spinor(spinor(c)); }
  OrientedPlane plane() { return OrientedPlane::from_spanning(quaternion(), quaternion()); }
  std::mt19937_64& engine() { return rng_; }

private:
  std::mt19937_64 rng_;
  std::normal_distribution<double> normal_;
};

} // namespace spinc
