#include "spinc/immersion.hpp"

#include <cmath>
#include <json.hpp>

#include "spinc/errors.hpp"

namespace spinc {

namespace {

using json = nlohmann::json;
using expr::Var;
constexpr cplx I(0.0, 1.0);

struct TangentJet {
  cplx v, dx, dy;
};

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t k = 0; k < byte && k < text.size(); ++k) {
    if (text[k] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

const json& require(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(where + ": missing key '" + key + "'");
  return j.at(key);
}

double as_number(const json& j, const std::string& where) {
  if (!j.is_number()) throw ParseError(where + ": expected a number");
  return j.get<double>();
}

cplx as_complex(const json& j, const std::string& where) {
  if (j.is_number()) return j.get<double>();
  if (!j.is_array() || j.size() != 2) throw ParseError(where + ": expected [re, im]");
  return {as_number(j[0], where), as_number(j[1], where)};
}

Quaternion as_quaternion(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 4) throw ParseError(where + ": expected 4 reals");
  return {as_number(j[0], where), as_number(j[1], where), as_number(j[2], where), as_number(j[3], where)};
}

void bind_derivatives(ImmersionSpec& s) {
  for (int c = 0; c < 2; ++c)
    for (int v = 0; v < expr::kVarCount; ++v) s.derivatives[c][v] = (*s.components)[c].derivative(Var(v));
}

void check_variables(const ImmersionSpec& s) {
  const bool torus = s.domain.type == DomainType::Torus;
  for (int c = 0; c < 2; ++c)
    for (int v = 0; v < expr::kVarCount; ++v) {
      const Var var = Var(v);
      const bool allowed = var == Var::z || var == Var::zb || (torus && (var == Var::w || var == Var::wb));
      if (!allowed && (*s.components)[c].uses(var))
        throw ParseError("map.components[" + std::to_string(c) + "]: variable '" + expr::var_name(var) +
                         "' is not bound on a " + to_string(s.domain.type) + " domain");
    }
}

void check_combination(const ImmersionSpec& s) {
  if (s.domain.type == DomainType::Sphere) {
    if (!s.curve) throw ParseError("map: a sphere domain needs map.curve");
    if (s.target.type == TargetType::C2) throw ParseError("target: a rational curve needs target S4 or CP2");
  } else {
    if (!s.components) throw ParseError("map: disk and torus domains need map.components");
  }
  if (s.domain.type == DomainType::Disk && !(s.domain.radius > 0.0))
    throw ParseError("domain.radius: must be positive");
}

cplx eval_component(const ImmersionSpec& s, int c, const expr::Bindings& b) { return (*s.components)[c].eval(b); }
cplx eval_partial(const ImmersionSpec& s, int c, Var v, const expr::Bindings& b) {
  return s.derivatives[c][int(v)]->eval(b);
}

std::array<TangentJet, 2> component_jets(const ImmersionSpec& s, const ParamPoint& p) {
  expr::Bindings b{};
  std::array<TangentJet, 2> out{};
  if (s.domain.type == DomainType::Disk) {
    const cplx z(p.x, p.y);
    b[int(Var::z)] = z;
    b[int(Var::zb)] = std::conj(z);
    for (int c = 0; c < 2; ++c) {
      const cplx fz = eval_partial(s, c, Var::z, b);
      const cplx fzb = eval_partial(s, c, Var::zb, b);
      out[c] = {eval_component(s, c, b), fz + fzb, I * (fz - fzb)};
    }
  } else {
    const cplx z = std::polar(1.0, p.x);
    const cplx w = std::polar(1.0, p.y);
    b[int(Var::z)] = z;
    b[int(Var::zb)] = std::conj(z);
    b[int(Var::w)] = w;
    b[int(Var::wb)] = std::conj(w);
    for (int c = 0; c < 2; ++c) {
      const cplx dt = I * z * eval_partial(s, c, Var::z, b) - I * std::conj(z) * eval_partial(s, c, Var::zb, b);
      const cplx dp = I * w * eval_partial(s, c, Var::w, b) - I * std::conj(w) * eval_partial(s, c, Var::wb, b);
      out[c] = {eval_component(s, c, b), dt, dp};
    }
  }
  return out;
}

std::array<CJet, 3> homogeneous_jets(const RationalCurve& c, const ParamPoint& p) {
  const CurveJet j = curve_jet(c, cplx(p.x, p.y), p.chart);
  return {CJet{j.value[0], j.derivative[0], 0.0}, CJet{j.value[1], j.derivative[1], 0.0},
          CJet{j.value[2], j.derivative[2], 0.0}};
}

} // namespace

const char* to_string(DomainType d) {
  switch (d) {
  case DomainType::Disk: return "disk";
  case DomainType::Torus: return "torus";
  case DomainType::Sphere: return "sphere";
  }
  return "?";
}

const char* to_string(TargetType t) {
  switch (t) {
  case TargetType::C2: return "C2";
  case TargetType::S4: return "S4";
  case TargetType::CP2: return "CP2";
  }
  return "?";
}

const char* to_string(TargetChart c) {
  switch (c) {
  case TargetChart::Affine: return "affine";
  case TargetChart::Theta: return "theta";
  case TargetChart::Phi: return "phi";
  }
  return "?";
}

ImmersionSpec parse_spec(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    const auto [line, col] = line_column(text, e.byte == 0 ? 0 : e.byte - 1);
    std::string msg = e.what();
    if (auto k = msg.find("syntax error"); k != std::string::npos) msg = msg.substr(k);
    throw ParseError("invalid JSON: " + msg, line, col);
  }
  if (!doc.is_object()) throw ParseError("spec: expected a JSON object");

  ImmersionSpec s;
  const json& d = require(doc, "domain", "spec");
  const json& dt = require(d, "type", "domain");
  if (!dt.is_string()) throw ParseError("domain.type: expected a string");
  const std::string dtype = dt.get<std::string>();
  if (dtype == "disk")
    s.domain.type = DomainType::Disk;
  else if (dtype == "torus")
    s.domain.type = DomainType::Torus;
  else if (dtype == "sphere")
    s.domain.type = DomainType::Sphere;
  else
    throw ParseError("domain.type: expected disk, torus or sphere, got '" + dtype + "'");
  if (d.contains("radius")) s.domain.radius = as_number(d.at("radius"), "domain.radius");
  if (d.contains("orientation")) {
    const double o = as_number(d.at("orientation"), "domain.orientation");
    if (o != 1.0 && o != -1.0) throw ParseError("domain.orientation: expected 1 or -1");
    s.domain.orientation = int(o);
  }

  const json& t = require(doc, "target", "spec");
  const json& tt = require(t, "type", "target");
  if (!tt.is_string()) throw ParseError("target.type: expected a string");
  const std::string ttype = tt.get<std::string>();
  if (ttype == "C2")
    s.target.type = TargetType::C2;
  else if (ttype == "S4")
    s.target.type = TargetType::S4;
  else if (ttype == "CP2")
    s.target.type = TargetType::CP2;
  else
    throw ParseError("target.type: expected C2, S4 or CP2, got '" + ttype + "'");
  if (t.contains("u")) {
    const json& u = t.at("u");
    if (!u.is_array() || u.size() != 2) throw ParseError("target.u: expected two quaternions");
    s.target.higgs.u = {as_quaternion(u[0], "target.u[0]"), as_quaternion(u[1], "target.u[1]")};
    if (!(hnorm2(s.target.higgs.u) > 0.0)) throw ParseError("target.u: must be nonzero");
  }

  const json& m = require(doc, "map", "spec");
  if (m.contains("components")) {
    const json& c = m.at("components");
    if (!c.is_array() || c.size() != 2) throw ParseError("map.components: expected two expression strings");
    std::array<std::optional<expr::Expression>, 2> parsed;
    for (int k = 0; k < 2; ++k) {
      const std::string where = "map.components[" + std::to_string(k) + "]";
      if (!c[k].is_string()) throw ParseError(where + ": expected a string");
      try {
        parsed[k] = expr::Expression::parse(c[k].get<std::string>());
      } catch (const ParseError& e) {
        throw e.with_context(where);
      }
    }
    s.components = std::array<expr::Expression, 2>{*parsed[0], *parsed[1]};
  } else if (m.contains("curve")) {
    const json& c = m.at("curve");
    RationalCurve curve;
    curve.degree = int(as_number(require(c, "degree", "map.curve"), "map.curve.degree"));
    const char* names[3] = {"p", "q", "r"};
    for (int k = 0; k < 3; ++k) {
      const std::string where = std::string("map.curve.") + names[k];
      const json& list = require(c, names[k], "map.curve");
      if (!list.is_array()) throw ParseError(where + ": expected a coefficient list");
      for (std::size_t i = 0; i < list.size(); ++i)
        curve.coeffs[k].push_back(as_complex(list[i], where + "[" + std::to_string(i) + "]"));
    }
    try {
      validate_curve(curve);
    } catch (const InvalidCurveError& e) {
      throw ParseError(std::string("map.curve: ") + e.what());
    }
    s.curve = curve;
  } else {
    throw ParseError("map: expected 'components' or 'curve'");
  }

  check_combination(s);
  if (s.components) {
    check_variables(s);
    bind_derivatives(s);
  }
  return s;
}

ImmersionSpec make_component_spec(const Domain& d, const Target& t, const std::string& f1, const std::string& f2) {
  ImmersionSpec s;
  s.domain = d;
  s.target = t;
  s.components = std::array<expr::Expression, 2>{expr::Expression::parse(f1), expr::Expression::parse(f2)};
  check_combination(s);
  check_variables(s);
  bind_derivatives(s);
  return s;
}

ImmersionSpec make_curve_spec(const Target& t, const RationalCurve& c) {
  validate_curve(c);
  ImmersionSpec s;
  s.domain.type = DomainType::Sphere;
  s.target = t;
  s.curve = c;
  check_combination(s);
  return s;
}

S4Point map_point(const ImmersionSpec& spec, const ParamPoint& p) {
  if (spec.curve) {
    const auto h = curve_jet(*spec.curve, cplx(p.x, p.y), p.chart).value;
    return pr(CP2Point::from_homogeneous({h[0], h[1]}, h[2]));
  }
  const auto j = component_jets(spec, p);
  return S4Point::finite({j[0].v, j[1].v});
}

GaussSample gauss_map(const ImmersionSpec& spec, const ParamPoint& p, const HiggsScale& scale) {
  GaussSample g;
  g.param = p;
  Vec2c dx, dy;

  if (spec.components) {
    const auto j = component_jets(spec, p);
    g.position = {j[0].v, j[1].v};
    dx = {j[0].dx, j[1].dx};
    dy = {j[0].dy, j[1].dy};
    g.chart = spec.target.type == TargetType::S4 ? TargetChart::Theta : TargetChart::Affine;
  } else {
    const auto h = homogeneous_jets(*spec.curve, p);
    if (spec.target.type == TargetType::CP2) {
      // Affine chart of the dominant homogeneous coordinate; all transitions are holomorphic.
      int k = 0;
      for (int m = 1; m < 3; ++m)
        if (std::abs(h[m].v) > std::abs(h[k].v)) k = m;
      const int a = k == 0 ? 1 : 0;
      const int b = k == 2 ? 1 : 2;
      const CJet ya = h[a] / h[k], yb = h[b] / h[k];
      g.position = {ya.v, yb.v};
      dx = {ya.dx(), yb.dx()};
      dy = {ya.dy(), yb.dy()};
      g.chart = TargetChart::Affine;
    } else if (std::norm(h[0].v) + std::norm(h[1].v) <= std::norm(h[2].v)) {
      const auto y = pr_jet(h);
      g.position = {y[0].v, y[1].v};
      dx = {y[0].dx(), y[1].dx()};
      dy = {y[0].dy(), y[1].dy()};
      g.chart = TargetChart::Theta;
    } else {
      // Inversion chart: Phi(p/r, q/r) = (p, q) conj(r) / (|p|^2 + |q|^2), smooth across r = 0.
      const CJet n = h[0] * conj(h[0]) + h[1] * conj(h[1]);
      const CJet y0 = (h[0] * conj(h[2])) / n, y1 = (h[1] * conj(h[2])) / n;
      const Vec2c yp{y0.v, y1.v};
      const Vec2c dxp{y0.dx(), y1.dx()}, dyp{y0.dy(), y1.dy()};
      g.chart = TargetChart::Phi;
      const double hn = std::sqrt(n.v.real() + std::norm(h[2].v));
      if (std::abs(h[2].v) <= 1e-12 * hn) {
        g.at_infinity = true;
        g.position = yp;
        dx = dxp;
        dy = dyp;
      } else {
        // Carry the tangent plane back to the Theta chart, where psi lives.
        g.position = inversion_phi(S4Point::finite(yp)).y();
        dx = dphi(yp, dxp);
        dy = dphi(yp, dyp);
      }
    }
  }

  if (spec.domain.orientation < 0) std::swap(dx, dy);
  g.dx = dx;
  g.dy = dy;
  const Quaternion qa = Quaternion::from_pair(dx[0], dx[1]);
  const Quaternion qb = Quaternion::from_pair(dy[0], dy[1]);
  const double na = qa.norm(), nb = qb.norm();
  if (!(na > 0.0) || !(nb > 0.0) || !std::isfinite(na) || !std::isfinite(nb))
    throw NotImmersionError("differential vanishes at a parameter point");
  g.area_ratio = (qb - (dot(qb, qa) / (na * na)) * qa).norm() / nb;
  if (!(g.area_ratio > 1e-10)) throw NotImmersionError("differential has rank below 2");
  g.plane = OrientedPlane::from_spanning(qa, qb);

  double amplitude = 1.0;
  if (spec.target.type == TargetType::S4)
    amplitude = g.at_infinity ? 0.0 : higgs_norm(spec.target.higgs, S4Point::finite(g.position));
  if (scale) amplitude *= scale(p);
  g.psi = Spinor{amplitude, 0.0, Chirality::plus};
  return g;
}

} // namespace spinc
