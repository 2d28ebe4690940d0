#pragma once

#include <array>
#include <optional>
#include <vector>

#include "spinc/jet.hpp"
#include "spinc/quaternion.hpp"

namespace spinc {

// V = C^2 with the standard Hermitian structure.
double norm2(const Vec2c& y);
double norm(const Vec2c& y);
cplx hermitian(const Vec2c& x, const Vec2c& y); // conjugate-linear in x
Vec2c operator+(const Vec2c& x, const Vec2c& y);
Vec2c operator-(const Vec2c& x, const Vec2c& y);
Vec2c operator*(cplx c, const Vec2c& y);
// Real coordinates (Re y1, Im y1, Re y2, Im y2).
std::array<double, 4> real_coords(const Vec2c& y);

// Point [y : z] of CP^2 = P(V + C), normalized with a canonical phase
// (z real positive when |z| > 1e-8, else the first such entry of y).
class CP2Point {
public:
  static CP2Point from_homogeneous(const Vec2c& y, cplx z);
  const Vec2c& y() const { return y_; }
  cplx z() const { return z_; }

private:
  CP2Point(const Vec2c& y, cplx z) : y_(y), z_(z) {}
  Vec2c y_;
  cplx z_;
};

// Point of S = V + {infinity}.
class S4Point {
public:
  static S4Point finite(const Vec2c& y) { return S4Point(false, y); }
  static S4Point infinity() { return S4Point(true, {}); }
  bool is_infinity() const { return inf_; }
  // Throws DomainError at infinity.
  const Vec2c& y() const;

private:
  S4Point(bool inf, const Vec2c& y) : inf_(inf), y_(y) {}
  bool inf_;
  Vec2c y_;
};

// Inverse stereographic embedding of S into the unit sphere of R^5.
std::array<double, 5> s4_embed(const S4Point& p);
double s4_chordal_distance(const S4Point& p, const S4Point& q);

// [y : z] |-> y / z, with the line at infinity z = 0 collapsed to one point.
S4Point pr(const CP2Point& p);
// y |-> y / |y|^2, exchanging 0 and infinity.
S4Point inversion_phi(const S4Point& p);

// Jets through pr and the inversion, for analytic tangent planes.
std::array<CJet, 2> pr_jet(const std::array<CJet, 3>& homogeneous);
std::array<CJet, 2> phi_jet(const std::array<CJet, 2>& y);
// Differential of the inversion at y applied to v.
Vec2c dphi(const Vec2c& y, const Vec2c& v);

// Finite-difference check of the inversion differential at y: complex linear
// with factor |y|^-2 on the orthogonal complement of y, antilinear on C y.
// All residuals are relative to |y|^-2; the difference step is h |y|.
struct DphiResidual {
  double perp_linearity = 0.0;
  double radial_antilinearity = 0.0;
  double perp_scale = 0.0;
  double radial_scale = 0.0;
  double max() const;
};
DphiResidual dphi_linearity_check(const Vec2c& y, double h = 1e-4);

// Finite-difference Jacobian of (inversion o pr) at [y : 0] in an affine chart
// of CP^2; its image should be the real 2-plane underlying C y.
struct ImlResult {
  int rank = 0;
  double angle = 0.0;
  std::array<double, 4> singular_values{};
};
ImlResult iml_rank_check(const Vec2c& line_direction, double h = 1e-4);

// Quaternionic model of S^4: lines H w in W = H^2 (scalars on the left).
using HVec2 = std::array<Quaternion, 2>;
Quaternion hinner(const HVec2& x, const HVec2& y); // x1 conj(y1) + x2 conj(y2)
double hnorm2(const HVec2& x);
HVec2 operator+(const HVec2& x, const HVec2& y);
HVec2 operator-(const HVec2& x, const HVec2& y);
HVec2 operator*(const Quaternion& h, const HVec2& x);

class QuatLine {
public:
  static QuatLine from_vector(const HVec2& w);
  const HVec2& rep() const { return rep_; }
  // Orthogonal projection of x onto the line.
  HVec2 project(const HVec2& x) const;

private:
  explicit QuatLine(const HVec2& w) : rep_(w) {}
  HVec2 rep_;
};
double quatline_distance(const QuatLine& a, const QuatLine& b);

// The chart y |-> H (y + u) of P(W) with y in V = u-perp; V is identified
// with C^2 by (y1, y2) |-> (y1 + y2 j) e for a fixed unit e in u-perp.
class ThetaChart {
public:
  explicit ThetaChart(const HVec2& u);
  const HVec2& u() const { return u_; }
  HVec2 embed(const Vec2c& y) const;
  Vec2c project(const HVec2& v) const;
  QuatLine theta(const S4Point& y) const;
  S4Point theta_inverse(const QuatLine& L) const;

private:
  HVec2 u_;
  HVec2 e_;
};

// Homogeneous curve [p : q : r] of degree d on CP^1 = {[s : t]}; coefficient k
// of each polynomial multiplies s^k t^(d-k).
struct RationalCurve {
  int degree = 1;
  std::array<std::vector<cplx>, 3> coeffs;
};

// Throws InvalidCurveError for malformed coefficient lists, identically zero
// curves and common zeros of p, q, r.
void validate_curve(const RationalCurve& c);
std::array<cplx, 3> evaluate_homogeneous(const RationalCurve& c, cplx s, cplx t);
CP2Point evaluate_curve(const RationalCurve& c, cplx s, cplx t);

// Affine charts of the parameter sphere: chart 0 is [w : 1], chart 1 is [1 : w].
struct CurveJet {
  std::array<cplx, 3> value;
  std::array<cplx, 3> derivative;
};
CurveJet curve_jet(const RationalCurve& c, cplx w, int chart);

struct HCrossing {
  int chart = 0;   // chart holding the crossing parameter
  cplx w;          // its chart coordinate
  int multiplicity = 1;
  double derivative = 0.0; // |dr/dw| there
  bool transverse = false;
};
// Zeros of r on the parameter sphere, i.e. where the curve meets the line at
// infinity, with a transversality verdict for each.
std::vector<HCrossing> h_transversality_check(const RationalCurve& c);

// Arithmetic genus with delta nodes; nullopt when negative or ill-posed.
std::optional<int> plucker_genus(int degree, int delta);

// Advisory: parameter pairs far apart whose images nearly coincide.
struct NodeCandidate {
  cplx w1;
  cplx w2;
  double image_distance;
};
std::vector<NodeCandidate> candidate_nodes(const RationalCurve& c, int grid = 48, double tol = 1e-3);

// Roots of sum c_k x^k (ascending coefficients) via the companion matrix.
std::vector<cplx> polynomial_roots(const std::vector<cplx>& ascending);

} // namespace spinc
