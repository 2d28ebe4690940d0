#pragma once

#include <array>
#include <memory>
#include <string>
#include <string_view>

#include "spinc/quaternion.hpp"

namespace spinc::expr {

// Parameter variables. On a torus z = e^{i theta}, w = e^{i phi} and the
// barred names are their conjugates; on a disk only z and zb are bound.
enum class Var { z, zb, w, wb, s, t };
constexpr int kVarCount = 6;
const char* var_name(Var v);

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Node {
  enum class Kind { Const, Variable, Add, Sub, Mul, Neg, Pow };
  Kind kind;
  cplx value{};
  Var var = Var::z;
  NodePtr lhs;
  NodePtr rhs;
  int exponent = 0;
};

using Bindings = std::array<cplx, kVarCount>;

// Polynomial expression in the parameter variables. Grammar:
//   expr   := term (('+' | '-') term)*
//   term   := unary ('*' unary)*
//   unary  := '-' unary | power
//   power  := atom ('^' integer)?
//   atom   := number | number 'i' | 'i' | variable | '(' expr ')'
class Expression {
public:
  // Throws ParseError with the 1-based column of the offending character.
  static Expression parse(std::string_view text);
  static Expression constant(cplx c);

  cplx eval(const Bindings& b) const;
  // Symbolic partial derivative, treating every variable as independent.
  Expression derivative(Var v) const;
  bool uses(Var v) const;
  std::string to_string() const;
  const NodePtr& root() const { return root_; }

private:
  explicit Expression(NodePtr r) : root_(std::move(r)) {}
  NodePtr root_;
};

} // namespace spinc::expr
