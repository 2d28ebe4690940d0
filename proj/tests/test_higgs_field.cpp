#include <doctest.h>

#include "oracles.hpp"
#include "spinc/higgs_field.hpp"
#include "spinc/random.hpp"

using namespace spinc;

namespace {
constexpr cplx I(0.0, 1.0);

double hdist(const HVec2& a, const HVec2& b) { return std::sqrt(hnorm2(a - b)); }
} // namespace

TEST_CASE("standard Higgs field on an explicit line") {
  // u = (1, 0), v = (0, 1) orthogonal with equal length: the value at H(u + v) is (u + v) / 2.
  const StandardHiggsField H;
  const HVec2 v{Quaternion{}, Quaternion::one()};
  const HVec2 psi = higgs_value(H, QuatLine::from_vector(H.u + v));
  CHECK(hdist(psi, Quaternion{0.5, 0, 0, 0} * (H.u + v)) < 1e-15);
  // Zero at u-perp, which the chart puts at infinity.
  CHECK(std::sqrt(hnorm2(higgs_value(H, QuatLine::from_vector(v)))) < 1e-15);
  CHECK(higgs_norm(H, S4Point::infinity()) == 0.0);
  CHECK(higgs_norm(H, S4Point::finite({0.0, 0.0})) == doctest::Approx(1.0));
}

TEST_CASE("Higgs field is the orthogonal projection of u") {
  Sampler s(51);
  for (int n = 0; n < 500; ++n) {
    StandardHiggsField H;
    H.u = {s.quaternion(), s.quaternion()};
    const HVec2 w{s.quaternion(), s.quaternion()};
    const QuatLine L = QuatLine::from_vector(w);
    const HVec2 psi = higgs_value(H, L);
    // Residual u - psi is orthogonal to the line, and psi lies on it.
    CHECK(hinner(H.u - psi, w).norm() < 1e-12 * std::sqrt(hnorm2(H.u) * hnorm2(w)));
    CHECK(hdist(L.project(psi), psi) < 1e-12 * std::sqrt(hnorm2(H.u)));
    // Norm in the chart falls off like (1 + |y|^2 / |u|^2)^-1/2.
    const Vec2c y = s.vec2();
    const double u2 = hnorm2(H.u);
    CHECK(higgs_norm(H, S4Point::finite(y)) ==
          doctest::Approx(std::sqrt(u2) / std::sqrt(1.0 + norm2(y) / u2)).epsilon(1e-10));
  }
}

TEST_CASE("split reconstructs psi") {
  Sampler s(52);
  for (int n = 0; n < 10000; ++n) {
    const Spinor psi = s.spinor();
    const OrientedPlane T = s.plane();
    const SpinorSplit sp = split_at(psi, T);
    const Spinor sum = sp.phi + sp.chi;
    CHECK(std::abs(sum.a - psi.a) + std::abs(sum.b - psi.b) < 1e-12 * (1 + psi.norm()));
    CHECK(std::abs(inner(sp.phi, sp.chi)) < 1e-12 * (1 + psi.norm2()));
    CHECK(sp.phi_norm * sp.phi_norm + sp.chi_norm * sp.chi_norm == doctest::Approx(psi.norm2()).epsilon(1e-12));
  }
}

TEST_CASE("wedge identity") {
  Sampler s(53);
  double worst = 0.0;
  for (int n = 0; n < 10000; ++n) {
    const Spinor psi = s.spinor();
    worst = std::max(worst, wedge_identity_residual(s.plane(), psi) / std::max(1.0, psi.norm2()));
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("classification against a direct complex-line test") {
  // T = span(A, A i) is closed under right multiplication by i; by the
  // convention used here its Higgs spinor has no component off L.
  Sampler s(54);
  for (int n = 0; n < 1000; ++n) {
    const Quaternion A = s.quaternion();
    const Spinor psi = s.spinor();
    const OrientedPlane T = OrientedPlane::from_spanning(A, A * Quaternion::unit_i());
    const auto [L, Lp] = psi_inverse(T);
    // Psi aligned with L gives a Q-complex plane, with L-perp the Qbar one.
    CHECK(classify_plane(L.rep() * s.complex(), T).kind == PlaneKind::QComplex);
    CHECK(classify_plane(L.perp().rep() * s.complex(), T).kind == PlaneKind::QbarComplex);
    CHECK(classify_plane(psi, s.plane()).kind == PlaneKind::Neither);
  }
  CHECK(classify_plane({0.0, 0.0}, Sampler(1).plane()).kind == PlaneKind::Both);
}

TEST_CASE("classification of the C^2 model") {
  // psi = (1, 0): a complex line L of C^2 with its complex orientation is
  // Q-complex, the same line reversed is Qbar-complex.
  Sampler s(55);
  const Spinor psi{1.0, 0.0};
  for (int n = 0; n < 1000; ++n) {
    const Quaternion v = s.quaternion();
    const OrientedPlane T = OrientedPlane::from_spanning(v, v * Quaternion::unit_i());
    CHECK(classify_plane(psi, T).kind == PlaneKind::QComplex);
    CHECK(classify_plane(psi, T.reversed()).kind == PlaneKind::QbarComplex);
  }
  // Totally real plane span(1, j) with (1, j) real: neither.
  const auto R = OrientedPlane::from_basis(Quaternion::one(), Quaternion::unit_j());
  CHECK(classify_plane(psi, R).kind == PlaneKind::Neither);
}

TEST_CASE("local representatives wind -1 and +1") {
  const LocalRepresentatives rep = local_representatives(StandardHiggsField{});
  const double r = 0.1;
  CHECK(oracle::winding([&](double t) { return rep.phi(r * std::exp(I * t)); }) == -1);
  CHECK(oracle::winding([&](double t) { return rep.chi(r * std::exp(I * t)); }) == 1);
  CHECK(std::abs(rep.phi(0.3)) == doctest::Approx(0.3 / 1.09));
}

TEST_CASE("induced complex structure on V is the standard one") {
  Sampler s(56);
  for (int n = 0; n < 100; ++n) {
    StandardHiggsField H;
    H.u = {s.quaternion(), s.quaternion()};
    CHECK(residual_acs_defect(H, s.vec2()) < 1e-6);
  }
}
