#include <doctest.h>

#include "spinc/errors.hpp"
#include "spinc/projective_models.hpp"
#include "spinc/random.hpp"

using namespace spinc;

namespace {
constexpr cplx I(0.0, 1.0);

RationalCurve curve(int d, std::vector<cplx> p, std::vector<cplx> q, std::vector<cplx> r) {
  return {d, {std::move(p), std::move(q), std::move(r)}};
}

double dist(const Vec2c& a, const Vec2c& b) { return norm(a - b); }
} // namespace

TEST_CASE("pr and the inversion at the special points") {
  CHECK(pr(CP2Point::from_homogeneous({1.0, 2.0}, 0.0)).is_infinity());
  CHECK(inversion_phi(S4Point::finite({0.0, 0.0})).is_infinity());
  CHECK(norm(inversion_phi(S4Point::infinity()).y()) == 0.0);
  CHECK_THROWS_AS(S4Point::infinity().y(), DomainError);
  CHECK_THROWS_AS(CP2Point::from_homogeneous({0.0, 0.0}, 0.0), DomainError);
}

TEST_CASE("pr is homogeneous") {
  Sampler s(41);
  for (int n = 0; n < 1000; ++n) {
    const Vec2c y = s.vec2();
    const cplx z = s.complex(), lambda = s.complex();
    const S4Point a = pr(CP2Point::from_homogeneous(y, z));
    const S4Point b = pr(CP2Point::from_homogeneous(lambda * y, lambda * z));
    CHECK(dist(a.y(), b.y()) < 1e-12 * (1 + norm(a.y())));
    CHECK(dist(a.y(), cplx(1.0) / z * y) < 1e-12 * (1 + norm(a.y())));
  }
}

TEST_CASE("inversion is an involution exchanging 0 and infinity") {
  Sampler s(42);
  for (int n = 0; n < 1000; ++n) {
    const Vec2c y = s.vec2();
    const S4Point p = S4Point::finite(y);
    const S4Point once = inversion_phi(p);
    CHECK(std::abs(norm(once.y()) * norm(y) - 1.0) < 1e-14);
    CHECK(dist(inversion_phi(once).y(), y) < 1e-13 * (1 + norm(y)));
    // A reflection of the round sphere: chordal distances are preserved.
    const S4Point q = S4Point::finite(s.vec2());
    CHECK(std::abs(s4_chordal_distance(p, q) - s4_chordal_distance(once, inversion_phi(q))) < 1e-12);
  }
}

TEST_CASE("inversion differential") {
  const Vec2c y{2.0, 0.0};
  const Vec2c v{0.0, 1.0};
  CHECK(norm(dphi(y, v)) == doctest::Approx(0.25).epsilon(1e-15));
  // Radial direction is reflected.
  const Vec2c r = dphi(y, {1.0, 0.0});
  CHECK(std::abs(r[0] + 0.25) < 1e-15);

  Sampler s(43);
  for (int n = 0; n < 1000; ++n) {
    const Vec2c yy = s.vec2();
    const DphiResidual res = dphi_linearity_check(yy);
    CHECK(res.max() < 1e-6);
    // Finite-difference oracle of the inversion itself.
    const Vec2c w = s.vec2();
    const double h = 1e-6;
    const Vec2c fd = cplx(0.5 / h) * (inversion_phi(S4Point::finite(yy + cplx(h) * w)).y() -
                                      inversion_phi(S4Point::finite(yy - cplx(h) * w)).y());
    CHECK(dist(fd, dphi(yy, w)) < 1e-6 * (1 + norm(w)) / norm2(yy));
  }
}

TEST_CASE("inversion after pr near the line at infinity has rank 2") {
  Sampler s(44);
  for (int n = 0; n < 1000; ++n) {
    const ImlResult res = iml_rank_check(s.vec2());
    CHECK(res.rank == 2);
    CHECK(res.angle < 1e-5);
  }
}

TEST_CASE("Theta chart round trip") {
  Sampler s(45);
  for (int n = 0; n < 200; ++n) {
    const HVec2 u{s.quaternion(), s.quaternion()};
    const ThetaChart chart(u);
    const Vec2c y = s.vec2();
    const S4Point back = chart.theta_inverse(chart.theta(S4Point::finite(y)));
    REQUIRE_FALSE(back.is_infinity());
    CHECK(dist(back.y(), y) < 1e-10 * (1 + norm(y)));
    CHECK(chart.theta_inverse(chart.theta(S4Point::infinity())).is_infinity());
    // Embedded vectors are orthogonal to u.
    CHECK(hinner(chart.embed(y), u).norm() < 1e-12 * (1 + norm(y)) * std::sqrt(hnorm2(u)));
  }
  CHECK_THROWS_AS(ThetaChart(HVec2{}), DomainError);
}

TEST_CASE("curve validation") {
  CHECK_NOTHROW(validate_curve(curve(1, {1, 0}, {0, 1}, {1, 1})));
  CHECK_THROWS_AS(validate_curve(curve(1, {1, 0}, {0, 1}, {1})), InvalidCurveError);
  CHECK_THROWS_AS(validate_curve(curve(1, {0, 0}, {0, 0}, {0, 0})), InvalidCurveError);
  CHECK_THROWS_AS(validate_curve(curve(0, {1}, {1}, {1})), InvalidCurveError);
  // (s t, s^2, s t) vanishes at s = 0.
  CHECK_THROWS_AS(validate_curve(curve(2, {0, 1, 0}, {0, 0, 1}, {0, 1, 0})), InvalidCurveError);
  // (t^2, t^2, s t) vanishes at t = 0, i.e. at the chart-1 origin.
  CHECK_THROWS_AS(validate_curve(curve(2, {1, 0, 0}, {1, 0, 0}, {0, 1, 0})), InvalidCurveError);
}

TEST_CASE("coefficient k multiplies s^k t^(d-k)") {
  const RationalCurve c = curve(2, {1, 0, 0}, {0, 0, 1}, {0, 1, 0});
  const auto v = evaluate_homogeneous(c, 2.0, 3.0);
  CHECK(std::abs(v[0] - 9.0) == 0.0);
  CHECK(std::abs(v[1] - 4.0) == 0.0);
  CHECK(std::abs(v[2] - 6.0) == 0.0);
  const CurveJet j0 = curve_jet(c, 2.0, 0);
  CHECK(std::abs(j0.value[1] - 4.0) == 0.0);
  CHECK(std::abs(j0.derivative[1] - 4.0) == 0.0);
  const CurveJet j1 = curve_jet(c, 2.0, 1);
  CHECK(std::abs(j1.value[0] - 4.0) == 0.0);
  CHECK(std::abs(j1.value[1] - 1.0) == 0.0);
}

TEST_CASE("line crossing the line at infinity") {
  // (s, t, s + t) meets z = 0 at [1 : -1].
  const RationalCurve c = curve(1, {0, 1}, {1, 0}, {1, 1});
  const auto xs = h_transversality_check(c);
  REQUIRE(xs.size() == 1);
  CHECK(xs[0].chart == 0);
  CHECK(std::abs(xs[0].w + 1.0) < 1e-12);
  CHECK(xs[0].transverse);
  CHECK(pr(evaluate_curve(c, 1.0, -1.0)).is_infinity());
}

TEST_CASE("conic crossings at s = 0 and t = 0") {
  const RationalCurve c = curve(2, {0, 0, 1}, {1, 0, 0}, {0, 1, 0});
  const auto xs = h_transversality_check(c);
  REQUIRE(xs.size() == 2);
  bool at_s0 = false, at_t0 = false;
  for (const auto& x : xs) {
    CHECK(x.transverse);
    if (x.chart == 0 && std::abs(x.w) < 1e-12) at_s0 = true;
    if (x.chart == 1 && std::abs(x.w) < 1e-12) at_t0 = true;
  }
  CHECK(at_s0);
  CHECK(at_t0);
}

TEST_CASE("tangency with the line at infinity is not transverse") {
  // r = s^2: double zero at s = 0.
  const RationalCurve c = curve(2, {1, 0, 0}, {0, 1, 0}, {0, 0, 1});
  const auto xs = h_transversality_check(c);
  REQUIRE(xs.size() == 1);
  CHECK(xs[0].multiplicity == 2);
  CHECK_FALSE(xs[0].transverse);
}

TEST_CASE("Pluecker genus") {
  CHECK(plucker_genus(1, 0) == 0);
  CHECK(plucker_genus(2, 0) == 0);
  CHECK(plucker_genus(3, 0) == 1);
  CHECK(plucker_genus(3, 1) == 0);
  CHECK(plucker_genus(4, 0) == 3);
  CHECK_FALSE(plucker_genus(2, 1).has_value());
  CHECK_FALSE(plucker_genus(0, 0).has_value());
}

TEST_CASE("polynomial roots") {
  // (x - 1)(x - 2i)(x + 3) in ascending order.
  const cplx a = 1.0, b = 2.0 * I, c = -3.0;
  const std::vector<cplx> asc{-a * b * c, a * b + b * c + a * c, -(a + b + c), 1.0};
  const auto roots = polynomial_roots(asc);
  REQUIRE(roots.size() == 3);
  for (cplx r : {a, b, c}) {
    double best = 1e9;
    for (cplx x : roots) best = std::min(best, std::abs(x - r));
    CHECK(best < 1e-12);
  }
  CHECK(polynomial_roots({1.0}).empty());
}

TEST_CASE("node candidates of a nodal cubic") {
  // x = u^2 - 1, y = u (u^2 - 1) with u = s / t; u = 1 and u = -1 share the image.
  const RationalCurve c = curve(3, {-1, 0, 1, 0}, {0, -1, 0, 1}, {1, 0, 0, 0});
  const auto nodes = candidate_nodes(c, 49, 0.1);
  bool found = false;
  for (const auto& n : nodes)
    if (std::abs(std::abs(n.w1) - 1.0) < 0.2 && std::abs(std::abs(n.w2) - 1.0) < 0.2) found = true;
  CHECK(found);
}
