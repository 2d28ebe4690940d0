#include <doctest.h>

#include "oracles.hpp"
#include "spinc/errors.hpp"
#include "spinc/grassmannian.hpp"
#include "spinc/random.hpp"

using namespace spinc;

namespace {
Eigen::Vector4d ev(const Quaternion& q) { return oracle::vec(q); }

Spinor spinor_of(const Quaternion& q, Chirality c) { return Spinor::from_quaternion(q, c); }
} // namespace

TEST_CASE("psi of the basic lines") {
  const auto L = ProjectiveLine::from_spinor({1.0, 0.0, Chirality::plus});
  const auto Lp = ProjectiveLine::from_spinor({1.0, 0.0, Chirality::minus});
  const OrientedPlane T = psi(L, Lp);
  CHECK(max_abs_diff(T.first(), Quaternion::one()) < 1e-15);
  CHECK(max_abs_diff(T.second(), Quaternion::unit_i()) < 1e-15);

  const OrientedPlane U = psi_from_reps(Quaternion::one(), Quaternion::unit_j());
  CHECK(max_abs_diff(U.first(), Quaternion::unit_j()) < 1e-15);
  CHECK(max_abs_diff(U.second(), -Quaternion::unit_k()) < 1e-15);

  CHECK_THROWS_AS(psi(Lp, L), std::invalid_argument);
}

TEST_CASE("psi agrees with the kernel oracle") {
  Sampler s(31);
  for (int n = 0; n < 1000; ++n) {
    const Quaternion p = s.quaternion(), q = s.quaternion();
    const OrientedPlane T = psi_from_reps(p, q);
    const auto ref = oracle::hom_plane(ev(p), ev(q));
    int orient = 0;
    const double gap = oracle::plane_gap(ev(T.first()), ev(T.second()), ref.a.normalized(), ref.b.normalized(),
                                         &orient);
    CHECK(gap < 1e-10);
    CHECK(orient == 1);
    // Every element of the plane maps p into the line of q.
    const Spinor img = spinor_of(T.first() * p, Chirality::minus);
    const Spinor qs = spinor_of(q, Chirality::minus);
    CHECK(std::abs(inner(perp(qs), img)) < 1e-12 * (1 + qs.norm() * img.norm()));
  }
}

TEST_CASE("psi is independent of the representatives") {
  Sampler s(32);
  for (int n = 0; n < 200; ++n) {
    const Spinor p = s.spinor(Chirality::plus), q = s.spinor(Chirality::minus);
    const cplx c1 = s.complex(), c2 = s.complex();
    const OrientedPlane T1 = psi(ProjectiveLine::from_spinor(p), ProjectiveLine::from_spinor(q));
    const OrientedPlane T2 = psi(ProjectiveLine::from_spinor(p * c1), ProjectiveLine::from_spinor(q * c2));
    CHECK(plane_distance(T1, T2) < 1e-12);
  }
}

TEST_CASE("psi round trip") {
  Sampler s(33);
  for (int n = 0; n < 10000; ++n) {
    const ProjectiveLine L = s.line(Chirality::plus), Lp = s.line(Chirality::minus);
    const auto [M, Mp] = psi_inverse(psi(L, Lp));
    CHECK(projective_distance(L, M) < 1e-9);
    CHECK(projective_distance(Lp, Mp) < 1e-9);
    const OrientedPlane T = s.plane();
    const auto [N, Np] = psi_inverse(T);
    CHECK(plane_distance(psi(N, Np), T) < 1e-9);
  }
}

TEST_CASE("orientation flip swaps to the perpendicular lines") {
  Sampler s(34);
  for (int n = 0; n < 200; ++n) {
    const OrientedPlane T = s.plane();
    const auto [L, Lp] = psi_inverse(T);
    const auto [M, Mp] = psi_inverse(T.reversed());
    CHECK(projective_distance(M, L.perp()) < 1e-9);
    CHECK(projective_distance(Mp, Lp.perp()) < 1e-9);
    CHECK(plane_distance(T, T.reversed()) > 1.0);
  }
}

TEST_CASE("orthogonal complement") {
  const OrientedPlane T = OrientedPlane::from_basis(Quaternion::one(), Quaternion::unit_i());
  const OrientedPlane C = plane_complement(T);
  const OrientedPlane expect = psi(ProjectiveLine::from_spinor({0.0, 1.0, Chirality::plus}),
                                   ProjectiveLine::from_spinor({1.0, 0.0, Chirality::minus}));
  CHECK(plane_distance(C, expect) < 1e-12);

  Sampler s(35);
  for (int n = 0; n < 10000; ++n) {
    const ProjectiveLine L = s.line(Chirality::plus), Lp = s.line(Chirality::minus);
    const OrientedPlane P = psi(L, Lp);
    const OrientedPlane Q = plane_complement(P);
    CHECK(plane_distance(Q, psi(L.perp(), Lp)) < 1e-10);
    CHECK(std::abs(dot(P.first(), Q.first())) < 1e-12);
    CHECK(std::abs(dot(P.second(), Q.second())) < 1e-12);
    CHECK(orientation_sign(P.first(), P.second(), Q.first(), Q.second()) == -1);
  }
}

TEST_CASE("membership") {
  Sampler s(36);
  int disagreements = 0;
  for (int n = 0; n < 10000; ++n) {
    const ProjectiveLine L = s.line(Chirality::plus), Lp = s.line(Chirality::minus);
    const OrientedPlane T = psi(L, Lp);
    const cplx c = s.complex();
    const int which = n % 3;
    Spinor v = which == 0 ? L.rep() * c : which == 1 ? L.perp().rep() * c : s.spinor();
    const Membership expect = which == 0 ? Membership::InL : which == 1 ? Membership::InLperp : Membership::Neither;
    if (membership(T, v) != expect) ++disagreements;
  }
  CHECK(disagreements == 0);
}

TEST_CASE("psi is antilinear in L and linear in L'") {
  Sampler s(37);
  for (int n = 0; n < 1000; ++n) {
    const ProjectiveLine L = s.line(Chirality::plus), Lp = s.line(Chirality::minus);
    const cplx c = s.unit_complex();
    CHECK(psi_linearity_residual(L, Lp, c, PsiSlot::plus) < 1e-6);
    CHECK(psi_linearity_residual(L, Lp, c, PsiSlot::minus) < 1e-6);
  }
}

TEST_CASE("oriented planes") {
  CHECK_THROWS_AS(OrientedPlane::from_spanning(Quaternion::one(), 2.0 * Quaternion::one()), DomainError);
  CHECK_THROWS_AS(OrientedPlane::from_basis(Quaternion::one(), Quaternion::one()), DomainError);
  const auto T = OrientedPlane::from_spanning({1, 0, 0, 0}, {1, 1, 0, 0});
  CHECK(max_abs_diff(T.second(), Quaternion::unit_i()) < 1e-15);
  CHECK(same_oriented_plane(T, OrientedPlane::from_basis({0, 1, 0, 0}, {-1, 0, 0, 0})));
  CHECK_FALSE(same_oriented_plane(T, T.reversed()));
  CHECK_THROWS_AS(ProjectiveLine::from_spinor({0.0, 0.0}), DomainError);
}
