#include <doctest.h>

#include "oracles.hpp"
#include "spinc/errors.hpp"
#include "spinc/expression.hpp"

using namespace spinc;
using namespace spinc::expr;

namespace {
constexpr cplx I(0.0, 1.0);

Bindings at_z(cplx z) {
  Bindings b{};
  b[int(Var::z)] = z;
  b[int(Var::zb)] = std::conj(z);
  return b;
}
} // namespace

TEST_CASE("evaluation and Wirtinger derivatives") {
  const Expression e = Expression::parse("(1+2i)*z*zb + z^3");
  CHECK(std::abs(e.eval(at_z(1.0)) - cplx(2.0, 2.0)) < 1e-15);
  CHECK(std::abs(e.derivative(Var::zb).eval(at_z(1.0)) - cplx(1.0, 2.0)) < 1e-15);
  CHECK(std::abs(e.derivative(Var::z).eval(at_z(1.0)) - cplx(4.0, 2.0)) < 1e-15);
  CHECK(e.uses(Var::z));
  CHECK(e.uses(Var::zb));
  CHECK_FALSE(e.uses(Var::w));
}

TEST_CASE("symbolic derivatives match numerical Wirtinger derivatives") {
  const Expression e = Expression::parse("0.5i*zb^3 - 2*z*zb^2 + (z - 1)^4 + 3");
  const auto f = [&](cplx z) { return e.eval(at_z(z)); };
  for (cplx z : {cplx(0.3, -0.2), cplx(-0.7, 0.4), cplx(0.0, 0.9)}) {
    const auto [dz, dzb] = oracle::wirtinger(f, z);
    CHECK(std::abs(e.derivative(Var::z).eval(at_z(z)) - dz) < 1e-7);
    CHECK(std::abs(e.derivative(Var::zb).eval(at_z(z)) - dzb) < 1e-7);
  }
}

TEST_CASE("literals and precedence") {
  const Bindings b{};
  CHECK(std::abs(Expression::parse("2i").eval(b) - 2.0 * I) == 0.0);
  CHECK(std::abs(Expression::parse("i").eval(b) - I) == 0.0);
  CHECK(std::abs(Expression::parse("1 + 2*3").eval(b) - 7.0) == 0.0);
  CHECK(std::abs(Expression::parse("-2^2").eval(b) + 4.0) == 0.0);
  CHECK(std::abs(Expression::parse("(1+i)^2").eval(b) - 2.0 * I) < 1e-15);
  CHECK(std::abs(Expression::parse("1.5e1").eval(b) - 15.0) == 0.0);
  CHECK(std::abs(Expression::parse("z^0").eval(at_z(3.0)) - 1.0) == 0.0);
}

TEST_CASE("all parameter variables") {
  Bindings b{};
  for (int k = 0; k < kVarCount; ++k) b[k] = double(k + 1);
  const Expression e = Expression::parse("z + 10*zb + 100*w + 1000*wb + 10000*s + 100000*t");
  CHECK(std::abs(e.eval(b) - 654321.0) == 0.0);
}

TEST_CASE("round trip through to_string") {
  const Expression e = Expression::parse("(1+2i)*z*zb - w^2 + 0.5");
  const Expression f = Expression::parse(e.to_string());
  Bindings b{};
  b[int(Var::z)] = cplx(0.2, 0.1);
  b[int(Var::zb)] = cplx(0.2, -0.1);
  b[int(Var::w)] = cplx(-1.0, 0.3);
  CHECK(std::abs(e.eval(b) - f.eval(b)) < 1e-15);
}

TEST_CASE("parse errors carry a column") {
  auto column_of = [](const char* text) -> std::size_t {
    try {
      Expression::parse(text);
    } catch (const ParseError& e) {
      return e.column;
    }
    return 0;
  };
  CHECK(column_of("z + ") == 5);
  CHECK(column_of("z ^ 1.5") == 5);
  CHECK(column_of("q + 1") == 1);
  CHECK(column_of("(z + 1") == 7);
  CHECK(column_of("z / 2") == 3);
  CHECK(column_of("z ^ -1") == 5);
  CHECK_THROWS_AS(Expression::parse(""), ParseError);
}
