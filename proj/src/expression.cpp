#include "spinc/expression.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <sstream>

#include "spinc/errors.hpp"

namespace spinc::expr {

namespace {

using Kind = Node::Kind;

NodePtr make_const(cplx c) { return std::make_shared<Node>(Node{Kind::Const, c, Var::z, nullptr, nullptr}); }
NodePtr make_var(Var v) { return std::make_shared<Node>(Node{Kind::Variable, {}, v, nullptr, nullptr}); }

bool is_const(const NodePtr& n, cplx c) { return n->kind == Kind::Const && n->value == c; }

// Constructors with light constant folding, so that derivatives stay small.
NodePtr add(NodePtr a, NodePtr b) {
  if (is_const(a, 0.0)) return b;
  if (is_const(b, 0.0)) return a;
  if (a->kind == Kind::Const && b->kind == Kind::Const) return make_const(a->value + b->value);
  return std::make_shared<Node>(Node{Kind::Add, {}, Var::z, std::move(a), std::move(b)});
}

NodePtr sub(NodePtr a, NodePtr b) {
  if (is_const(b, 0.0)) return a;
  if (a->kind == Kind::Const && b->kind == Kind::Const) return make_const(a->value - b->value);
  return std::make_shared<Node>(Node{Kind::Sub, {}, Var::z, std::move(a), std::move(b)});
}

NodePtr mul(NodePtr a, NodePtr b) {
  if (is_const(a, 0.0) || is_const(b, 0.0)) return make_const(0.0);
  if (is_const(a, 1.0)) return b;
  if (is_const(b, 1.0)) return a;
  if (a->kind == Kind::Const && b->kind == Kind::Const) return make_const(a->value * b->value);
  return std::make_shared<Node>(Node{Kind::Mul, {}, Var::z, std::move(a), std::move(b)});
}

NodePtr neg(NodePtr a) {
  if (a->kind == Kind::Const) return make_const(-a->value);
  return std::make_shared<Node>(Node{Kind::Neg, {}, Var::z, std::move(a), nullptr});
}

NodePtr power(NodePtr a, int n) {
  if (n == 0) return make_const(1.0);
  if (n == 1) return a;
  if (a->kind == Kind::Const) return make_const(std::pow(a->value, n));
  return std::make_shared<Node>(Node{Kind::Pow, {}, Var::z, std::move(a), nullptr, n});
}

cplx ipow(cplx x, int n) {
  cplx r = 1.0;
  for (; n > 0; n >>= 1, x *= x)
    if (n & 1) r *= x;
  return r;
}

cplx eval_node(const Node& n, const Bindings& b) {
  switch (n.kind) {
  case Kind::Const: return n.value;
  case Kind::Variable: return b[int(n.var)];
  case Kind::Add: return eval_node(*n.lhs, b) + eval_node(*n.rhs, b);
  case Kind::Sub: return eval_node(*n.lhs, b) - eval_node(*n.rhs, b);
  case Kind::Mul: return eval_node(*n.lhs, b) * eval_node(*n.rhs, b);
  case Kind::Neg: return -eval_node(*n.lhs, b);
  case Kind::Pow: return ipow(eval_node(*n.lhs, b), n.exponent);
  }
  return 0.0;
}

NodePtr diff(const NodePtr& n, Var v) {
  switch (n->kind) {
  case Kind::Const: return make_const(0.0);
  case Kind::Variable: return make_const(n->var == v ? 1.0 : 0.0);
  case Kind::Add: return add(diff(n->lhs, v), diff(n->rhs, v));
  case Kind::Sub: return sub(diff(n->lhs, v), diff(n->rhs, v));
  case Kind::Mul: return add(mul(diff(n->lhs, v), n->rhs), mul(n->lhs, diff(n->rhs, v)));
  case Kind::Neg: return neg(diff(n->lhs, v));
  case Kind::Pow:
    return mul(mul(make_const(double(n->exponent)), power(n->lhs, n->exponent - 1)), diff(n->lhs, v));
  }
  return make_const(0.0);
}

bool uses_node(const Node& n, Var v) {
  switch (n.kind) {
  case Kind::Const: return false;
  case Kind::Variable: return n.var == v;
  case Kind::Neg:
  case Kind::Pow: return uses_node(*n.lhs, v);
  default: return uses_node(*n.lhs, v) || uses_node(*n.rhs, v);
  }
}

void print(const Node& n, std::ostream& os) {
  switch (n.kind) {
  case Kind::Const:
    if (n.value.imag() == 0.0)
      os << n.value.real();
    else
      os << "(" << n.value.real() << (n.value.imag() < 0 ? "-" : "+") << std::abs(n.value.imag()) << "i)";
    return;
  case Kind::Variable: os << var_name(n.var); return;
  case Kind::Neg: os << "-("; print(*n.lhs, os); os << ")"; return;
  case Kind::Pow: os << "("; print(*n.lhs, os); os << ")^" << n.exponent; return;
  default: break;
  }
  const char op = n.kind == Kind::Add ? '+' : n.kind == Kind::Sub ? '-' : '*';
  os << "(";
  print(*n.lhs, os);
  os << op;
  print(*n.rhs, os);
  os << ")";
}

class Parser {
public:
  explicit Parser(std::string_view s) : s_(s) {}

  NodePtr parse() {
    NodePtr e = expr();
    skip();
    if (pos_ < s_.size()) fail("unexpected character '" + std::string(1, s_[pos_]) + "'");
    return e;
  }

private:
  [[noreturn]] void fail(const std::string& msg, std::size_t at) const { throw ParseError(msg, 1, at + 1); }
  [[noreturn]] void fail(const std::string& msg) const { fail(msg, pos_); }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  NodePtr expr() {
    NodePtr lhs = term();
    for (;;) {
      if (accept('+'))
        lhs = std::make_shared<Node>(Node{Kind::Add, {}, Var::z, lhs, term()});
      else if (accept('-'))
        lhs = std::make_shared<Node>(Node{Kind::Sub, {}, Var::z, lhs, term()});
      else
        return lhs;
    }
  }

  NodePtr term() {
    NodePtr lhs = unary();
    while (accept('*')) lhs = std::make_shared<Node>(Node{Kind::Mul, {}, Var::z, lhs, unary()});
    return lhs;
  }

  NodePtr unary() {
    if (accept('-')) return std::make_shared<Node>(Node{Kind::Neg, {}, Var::z, unary(), nullptr});
    return pow_expr();
  }

  NodePtr pow_expr() {
    NodePtr base = atom();
    if (!accept('^')) return base;
    skip();
    const std::size_t start = pos_;
    if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+'))
      fail("exponent must be a non-negative integer", start);
    std::size_t end = pos_;
    while (end < s_.size() && std::isdigit(static_cast<unsigned char>(s_[end]))) ++end;
    if (end == start) fail("expected integer exponent", start);
    if (end < s_.size() && (s_[end] == '.' || s_[end] == 'e' || s_[end] == 'E' || s_[end] == 'i'))
      fail("non-integer exponent", start);
    if (end - start > 4) fail("exponent too large", start);
    pos_ = end;
    const int n = std::stoi(std::string(s_.substr(start, end - start)));
    return std::make_shared<Node>(Node{Kind::Pow, {}, Var::z, base, nullptr, n});
  }

  NodePtr atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of expression");
    const char c = s_[pos_];
    if (c == '(') {
      const std::size_t open = pos_;
      ++pos_;
      NodePtr e = expr();
      if (!accept(')')) fail("missing ')' for '(' at column " + std::to_string(open + 1));
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
    fail("unexpected character '" + std::string(1, c) + "'");
  }

  NodePtr number() {
    const std::size_t start = pos_;
    std::size_t end = pos_;
    auto digits = [&] {
      while (end < s_.size() && std::isdigit(static_cast<unsigned char>(s_[end]))) ++end;
    };
    digits();
    if (end < s_.size() && s_[end] == '.') {
      ++end;
      digits();
    }
    if (end < s_.size() && (s_[end] == 'e' || s_[end] == 'E')) {
      std::size_t k = end + 1;
      if (k < s_.size() && (s_[k] == '+' || s_[k] == '-')) ++k;
      if (k < s_.size() && std::isdigit(static_cast<unsigned char>(s_[k]))) {
        end = k;
        digits();
      }
    }
    const std::string text(s_.substr(start, end - start));
    if (text == ".") fail("malformed number", start);
    const double v = std::strtod(text.c_str(), nullptr);
    pos_ = end;
    if (pos_ < s_.size() && s_[pos_] == 'i' &&
        !(pos_ + 1 < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_ + 1])) || s_[pos_ + 1] == '_'))) {
      ++pos_;
      return make_const(cplx(0.0, v));
    }
    return make_const(v);
  }

  NodePtr identifier() {
    const std::size_t start = pos_;
    std::size_t end = pos_;
    while (end < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[end])) || s_[end] == '_')) ++end;
    const std::string_view id = s_.substr(start, end - start);
    pos_ = end;
    if (id == "i") return make_const(cplx(0.0, 1.0));
    for (int k = 0; k < kVarCount; ++k)
      if (id == var_name(Var(k))) return make_var(Var(k));
    fail("unknown identifier '" + std::string(id) + "'", start);
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

} // namespace

const char* var_name(Var v) {
  switch (v) {
  case Var::z: return "z";
  case Var::zb: return "zb";
  case Var::w: return "w";
  case Var::wb: return "wb";
  case Var::s: return "s";
  case Var::t: return "t";
  }
  return "?";
}

Expression Expression::parse(std::string_view text) { return Expression(Parser(text).parse()); }
Expression Expression::constant(cplx c) { return Expression(make_const(c)); }
cplx Expression::eval(const Bindings& b) const { return eval_node(*root_, b); }
Expression Expression::derivative(Var v) const { return Expression(diff(root_, v)); }
bool Expression::uses(Var v) const { return uses_node(*root_, v); }

std::string Expression::to_string() const {
  std::ostringstream os;
  os.precision(17);
  print(*root_, os);
  return os.str();
}

} // namespace spinc::expr
