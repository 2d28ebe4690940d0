#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

#include "spinc/expression.hpp"
#include "spinc/higgs_field.hpp"

namespace spinc {

enum class DomainType { Disk, Torus, Sphere };
enum class TargetType { C2, S4, CP2 };
const char* to_string(DomainType d);
const char* to_string(TargetType t);

struct Domain {
  DomainType type = DomainType::Disk;
  double radius = 1.0;  // disk only
  int orientation = 1;  // -1 reverses the parameter orientation
};

struct Target {
  TargetType type = TargetType::C2;
  StandardHiggsField higgs; // S4 only
};

struct ImmersionSpec {
  Domain domain;
  Target target;
  // Disk and torus maps: two component expressions into V = C^2 (for CP2,
  // the affine chart with last homogeneous coordinate 1).
  std::optional<std::array<expr::Expression, 2>> components;
  // derivatives[c][v]: symbolic partial of component c in variable v.
  std::array<std::array<std::optional<expr::Expression>, expr::kVarCount>, 2> derivatives;
  // Sphere maps: a rational curve, composed with pr for S4 targets.
  std::optional<RationalCurve> curve;
};

// Parses the JSON spec document; throws ParseError (JSON syntax errors carry
// line and column; expression errors carry the column inside the string).
ImmersionSpec parse_spec(std::string_view json_text);
ImmersionSpec make_component_spec(const Domain& d, const Target& t, const std::string& f1, const std::string& f2);
ImmersionSpec make_curve_spec(const Target& t, const RationalCurve& c);

// Parameter point: (x, y) = z on a disk, (theta, phi) on a torus, and the
// chart coordinate w = x + i y on the sphere (chart 0: [w : 1], chart 1: [1 : w]).
struct ParamPoint {
  int chart = 0;
  double x = 0.0;
  double y = 0.0;
};

enum class TargetChart { Affine, Theta, Phi };
const char* to_string(TargetChart c);

struct GaussSample {
  ParamPoint param;
  TargetChart chart = TargetChart::Affine;
  bool at_infinity = false;
  Vec2c position{};   // target coordinates in the chart
  Vec2c dx{}, dy{};   // positively ordered tangent vectors, in the tangent model
  OrientedPlane plane = OrientedPlane::from_spanning(Quaternion::one(), Quaternion::unit_i());
  Spinor psi{1.0, 0.0};
  double area_ratio = 1.0; // |dx ^ dy| / (|dx| |dy|)
};

// Positive multiplier applied to the Higgs field, for scale-invariance checks.
using HiggsScale = std::function<double(const ParamPoint&)>;

// Tangent plane of the immersion at a parameter point in the model V = H
// (tangent vector (v1, v2) of C^2 is the quaternion v1 + j v2), together with
// the Higgs spinor in the matching model of S+.
GaussSample gauss_map(const ImmersionSpec& spec, const ParamPoint& p, const HiggsScale& scale = {});

// Raw map value in the target (for S4 sphere maps: the point of S).
S4Point map_point(const ImmersionSpec& spec, const ParamPoint& p);

} // namespace spinc
