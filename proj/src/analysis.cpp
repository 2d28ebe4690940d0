#include "spinc/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numbers>
#include <random>
#include <sstream>
#include <thread>

#include "spinc/errors.hpp"
#include "spinc/simd/kernels.hpp"

namespace spinc {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr cplx I(0.0, 1.0);
// Split point for bisection; off-center so that zeros sitting on a cell
// center (a common symmetric case) never land on a sub-cell edge.
constexpr double kSplit = 0.4618033988749895;
constexpr int kEdgeSubdivisions = 8;
constexpr double kDipThreshold = 1e-3;
constexpr double kDipAccept = 1e-6;
constexpr double kBothThreshold = 1e-10;

unsigned thread_count(const AnalysisOptions& o) {
  if (o.threads > 0) return o.threads;
  return std::max(1u, std::thread::hardware_concurrency());
}

// Static partition; every index writes its own slot so results do not depend
// on the thread count.
template <class F>
void parallel_for(std::size_t n, unsigned threads, F&& f) {
  if (threads <= 1 || n < 256) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  const std::size_t chunk = (n + threads - 1) / threads;
  std::vector<std::exception_ptr> errors(threads);
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t)
    pool.emplace_back([&, t] {
      try {
        for (std::size_t i = t * chunk; i < std::min(n, (t + 1) * chunk); ++i) f(i);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

enum class ZeroKind { chi, phi };

PlaneKind plane_kind(ZeroKind k) { return k == ZeroKind::chi ? PlaneKind::QComplex : PlaneKind::QbarComplex; }

struct Sample {
  Spinor e;   // unit representative of L
  Spinor psi;
  bool both = false;
};

Sample sample_at(const ImmersionSpec& spec, const ParamPoint& p, const AnalysisOptions& opt) {
  const GaussSample g = gauss_map(spec, p, opt.higgs_scale);
  Sample s;
  s.psi = g.psi;
  s.both = g.psi.norm() < kBothThreshold;
  s.e = psi_inverse(g.plane).first.rep();
  return s;
}

Spinor line_vector(const Sample& s, ZeroKind k) { return k == ZeroKind::chi ? perp(s.e) : s.e; }

// Coordinate of the relevant component of psi against the projection of ref
// onto the moving line; independent of the phase of the representative.
cplx coordinate(const Sample& s, ZeroKind k, const Spinor& ref) {
  const Spinor f = line_vector(s, k);
  return std::conj(inner(f, ref)) * inner(f, s.psi);
}

double ratio(const Sample& s, ZeroKind k) { return std::abs(inner(line_vector(s, k), s.psi)) / s.psi.norm(); }

struct Grid {
  int chart = 0;
  double x0 = 0.0, y0 = 0.0, hx = 0.0, hy = 0.0;
  int cx = 0, cy = 0; // cell counts
  ParamPoint node(int i, int j) const { return {chart, x0 + i * hx, y0 + j * hy}; }
  int node_index(int i, int j) const { return j * (cx + 1) + i; }
};

std::vector<Grid> grids_for(const ImmersionSpec& spec, int n) {
  if (n < 2) throw std::invalid_argument("grid size must be at least 2");
  switch (spec.domain.type) {
  case DomainType::Disk: {
    const double R = spec.domain.radius;
    const double h = 2.0 * R / (n - 1);
    return {Grid{0, -R, -R, h, h, n - 1, n - 1}};
  }
  case DomainType::Torus: {
    const double h = 2.0 * kPi / n;
    return {Grid{0, 0.0, 0.0, h, h, n, n}};
  }
  case DomainType::Sphere: {
    const double h = 2.0 / (n - 1);
    return {Grid{0, -1.0, -1.0, h, h, n - 1, n - 1}, Grid{1, -1.0, -1.0, h, h, n - 1, n - 1}};
  }
  }
  return {};
}

double cell_size(const ImmersionSpec& spec, int n) {
  const Grid g = grids_for(spec, n).front();
  return std::min(g.hx, g.hy);
}

bool accepted(const ImmersionSpec& spec, const ParamPoint& p) {
  const double r = std::hypot(p.x, p.y);
  switch (spec.domain.type) {
  case DomainType::Disk: return r <= spec.domain.radius;
  case DomainType::Torus: return true;
  case DomainType::Sphere: return p.chart == 0 ? r <= 1.0 : r < 1.0;
  }
  return false;
}

ParamPoint wrap(const ImmersionSpec& spec, ParamPoint p) {
  if (spec.domain.type == DomainType::Torus) {
    p.x = std::fmod(p.x, 2.0 * kPi);
    p.y = std::fmod(p.y, 2.0 * kPi);
    if (p.x < 0) p.x += 2.0 * kPi;
    if (p.y < 0) p.y += 2.0 * kPi;
  }
  return p;
}

struct Rect {
  int chart;
  double x0, y0, x1, y1;
  ParamPoint center() const { return {chart, 0.5 * (x0 + x1), 0.5 * (y0 + y1)}; }
  // Counterclockwise perimeter, t in [0, 1).
  ParamPoint perimeter(double t) const {
    const double s = 4.0 * (t - std::floor(t));
    if (s < 1.0) return {chart, x0 + s * (x1 - x0), y0};
    if (s < 2.0) return {chart, x1, y0 + (s - 1.0) * (y1 - y0)};
    if (s < 3.0) return {chart, x1 - (s - 2.0) * (x1 - x0), y1};
    return {chart, x0, y1 - (s - 3.0) * (y1 - y0)};
  }
};

Winding rect_winding(const ImmersionSpec& spec, const Rect& r, ZeroKind k, const Spinor& ref,
                     const AnalysisOptions& opt, int n = 32) {
  bool hit_both = false;
  auto f = [&](double t) {
    const Sample s = sample_at(spec, r.perimeter(t), opt);
    if (s.both) hit_both = true;
    return coordinate(s, k, ref);
  };
  Winding w = loop_winding(f, n, 4096);
  if (hit_both) w.ok = false;
  return w;
}

// Winding from precomputed edge samples; ok = false asks for direct evaluation.
Winding winding_from_samples(const std::vector<const Sample*>& loop, ZeroKind k, const Spinor& ref) {
  Winding w;
  w.points = int(loop.size());
  double total = 0.0;
  w.min_modulus = INFINITY;
  cplx prev = coordinate(*loop.back(), k, ref);
  for (const Sample* s : loop) {
    if (s->both) return w;
    const cplx c = coordinate(*s, k, ref);
    w.min_modulus = std::min(w.min_modulus, std::abs(c));
    if (!(std::abs(c) > 0.0) || !(std::abs(prev) > 0.0)) return w;
    const double step = std::arg(c / prev);
    if (std::abs(step) > 0.5 * kPi) return w;
    total += step;
    prev = c;
  }
  w.winding = int(std::lround(total / (2.0 * kPi)));
  w.ok = true;
  return w;
}

std::vector<Rect> bisect_zero(const ImmersionSpec& spec, const Rect& cell, ZeroKind k, const Spinor& ref,
                              const AnalysisOptions& opt) {
  std::vector<Rect> leaves;
  std::vector<std::pair<Rect, int>> stack{{cell, 0}};
  while (!stack.empty()) {
    auto [r, level] = stack.back();
    stack.pop_back();
    if (level >= opt.refine_depth) {
      leaves.push_back(r);
      continue;
    }
    const double xs = r.x0 + kSplit * (r.x1 - r.x0);
    const double ys = r.y0 + kSplit * (r.y1 - r.y0);
    const Rect sub[4] = {{r.chart, r.x0, r.y0, xs, ys},
                         {r.chart, xs, r.y0, r.x1, ys},
                         {r.chart, r.x0, ys, xs, r.y1},
                         {r.chart, xs, ys, r.x1, r.y1}};
    bool any = false;
    for (int q = 3; q >= 0; --q) {
      const Winding w = rect_winding(spec, sub[q], k, ref, opt);
      if (w.ok && w.winding != 0) {
        stack.push_back({sub[q], level + 1});
        any = true;
      }
    }
    if (!any) leaves.push_back(r); // zero sits on an internal edge: stop here
  }
  return leaves;
}

// Pattern search on |component| / |psi| starting from a grid node.
ParamPoint descend(const ImmersionSpec& spec, ParamPoint p, double step, ZeroKind k, const AnalysisOptions& opt,
                   double* best_out) {
  double best = ratio(sample_at(spec, p, opt), k);
  const double stop = step * std::ldexp(1.0, -opt.refine_depth);
  while (step > stop) {
    bool moved = false;
    for (auto [dx, dy] : {std::pair{1, 0}, {-1, 0}, {0, 1}, {0, -1}}) {
      const ParamPoint q{p.chart, p.x + dx * step, p.y + dy * step};
      const Sample s = sample_at(spec, q, opt);
      if (s.both) continue;
      const double v = ratio(s, k);
      if (v < best) {
        best = v;
        p = q;
        moved = true;
      }
    }
    if (!moved) step *= 0.5;
  }
  *best_out = best;
  return p;
}

double coord_distance(const ImmersionSpec& spec, const ParamPoint& a, const ParamPoint& b) {
  if (a.chart != b.chart) return INFINITY;
  double dx = std::abs(a.x - b.x), dy = std::abs(a.y - b.y);
  if (spec.domain.type == DomainType::Torus) {
    dx = std::min(dx, 2.0 * kPi - dx);
    dy = std::min(dy, 2.0 * kPi - dy);
  }
  return std::hypot(dx, dy);
}

} // namespace

Winding loop_winding(const std::function<cplx(double)>& f, int n, int max_points) {
  Winding w;
  for (n = std::max(n, 4); n <= max_points; n *= 2) {
    w.points = n;
    w.min_modulus = INFINITY;
    std::vector<cplx> v(n);
    bool zero = false;
    for (int i = 0; i < n; ++i) {
      v[i] = f(double(i) / n);
      w.min_modulus = std::min(w.min_modulus, std::abs(v[i]));
      if (!(std::abs(v[i]) > 0.0) || !std::isfinite(std::abs(v[i]))) zero = true;
    }
    if (zero) {
      w.ok = false;
      return w;
    }
    double total = 0.0;
    bool fine = true;
    for (int i = 0; i < n; ++i) {
      const double step = std::arg(v[(i + 1) % n] / v[i]);
      if (std::abs(step) > 0.5 * kPi) {
        fine = false;
        break;
      }
      total += step;
    }
    if (fine) {
      w.winding = int(std::lround(total / (2.0 * kPi)));
      w.ok = true;
      return w;
    }
  }
  w.ok = false;
  return w;
}

std::vector<ComplexPointRecord> scan_complex_points(const ImmersionSpec& spec, const AnalysisOptions& opt,
                                                    ScanSummary* summary_out) {
  const unsigned threads = thread_count(opt);
  ScanSummary summary;
  std::vector<ComplexPointRecord> records;
  const std::vector<Grid> grids = grids_for(spec, opt.grid_n);

  struct GridData {
    std::vector<Sample> nodes;
    std::vector<double> phi_ratio, chi_ratio;
  };
  std::vector<GridData> data(grids.size());

  for (std::size_t gi = 0; gi < grids.size(); ++gi) {
    const Grid& g = grids[gi];
    GridData& d = data[gi];
    const std::size_t count = std::size_t(g.cx + 1) * (g.cy + 1);
    d.nodes.resize(count);
    parallel_for(count, threads, [&](std::size_t idx) {
      const int i = int(idx % (g.cx + 1)), j = int(idx / (g.cx + 1));
      d.nodes[idx] = sample_at(spec, g.node(i, j), opt);
    });
    // Component moduli of the whole grid in one batched kernel call.
    simd::QuatArrays e(count), psi(count);
    for (std::size_t idx = 0; idx < count; ++idx) {
      e.set(idx, d.nodes[idx].e.quaternion());
      psi.set(idx, d.nodes[idx].psi.quaternion());
    }
    std::vector<double> phi, chi;
    simd::split_norms(e, psi, phi, chi);
    d.phi_ratio.resize(count);
    d.chi_ratio.resize(count);
    for (std::size_t idx = 0; idx < count; ++idx) {
      const double n = d.nodes[idx].psi.norm();
      d.phi_ratio[idx] = d.nodes[idx].both ? 0.0 : phi[idx] / n;
      d.chi_ratio[idx] = d.nodes[idx].both ? 0.0 : chi[idx] / n;
      const int i = int(idx % (g.cx + 1)), j = int(idx / (g.cx + 1));
      if (spec.domain.type == DomainType::Torus && (i == g.cx || j == g.cy)) continue; // periodic copies
      if (!accepted(spec, g.node(i, j))) continue;
      ++summary.nodes;
      if (d.nodes[idx].both) {
        ++summary.both_nodes;
        records.push_back({wrap(spec, g.node(i, j)), PlaneKind::Both, std::nullopt, 0.0, 0.0});
        continue;
      }
      summary.min_phi_ratio = std::min(summary.min_phi_ratio, d.phi_ratio[idx]);
      summary.min_chi_ratio = std::min(summary.min_chi_ratio, d.chi_ratio[idx]);
      summary.max_chi_ratio = std::max(summary.max_chi_ratio, d.chi_ratio[idx]);
      if (d.chi_ratio[idx] < opt.tol) ++summary.chi_below_tol;
      if (d.phi_ratio[idx] < opt.tol) ++summary.phi_below_tol;
    }
  }
  summary.chi_non_isolated = summary.chi_below_tol >= 3;
  summary.phi_non_isolated = summary.phi_below_tol >= 3;

  const double cell = cell_size(spec, opt.grid_n);
  for (ZeroKind kind : {ZeroKind::chi, ZeroKind::phi}) {
    if (kind == ZeroKind::chi ? summary.chi_non_isolated : summary.phi_non_isolated) continue;
    std::vector<ComplexPointRecord> found;

    for (std::size_t gi = 0; gi < grids.size(); ++gi) {
      const Grid& g = grids[gi];
      const GridData& d = data[gi];
      const int m = kEdgeSubdivisions;
      // Edge samples shared by neighbouring cells; endpoints are grid nodes.
      const std::size_t nh = std::size_t(g.cx) * (g.cy + 1), nv = std::size_t(g.cx + 1) * g.cy;
      std::vector<Sample> hs(nh * (m - 1)), vs(nv * (m - 1));
      parallel_for(nh * (m - 1), threads, [&](std::size_t idx) {
        const std::size_t e = idx / (m - 1);
        const int k = int(idx % (m - 1)) + 1;
        const int i = int(e % g.cx), j = int(e / g.cx);
        const ParamPoint p = g.node(i, j);
        hs[idx] = sample_at(spec, {g.chart, p.x + g.hx * k / m, p.y}, opt);
      });
      parallel_for(nv * (m - 1), threads, [&](std::size_t idx) {
        const std::size_t e = idx / (m - 1);
        const int k = int(idx % (m - 1)) + 1;
        const int i = int(e % (g.cx + 1)), j = int(e / (g.cx + 1));
        const ParamPoint p = g.node(i, j);
        vs[idx] = sample_at(spec, {g.chart, p.x, p.y + g.hy * k / m}, opt);
      });
      auto hsample = [&](int i, int j, int k) -> const Sample* {
        if (k == 0) return &d.nodes[g.node_index(i, j)];
        if (k == m) return &d.nodes[g.node_index(i + 1, j)];
        return &hs[(std::size_t(j) * g.cx + i) * (m - 1) + (k - 1)];
      };
      auto vsample = [&](int i, int j, int k) -> const Sample* {
        if (k == 0) return &d.nodes[g.node_index(i, j)];
        if (k == m) return &d.nodes[g.node_index(i, j + 1)];
        return &vs[(std::size_t(j) * (g.cx + 1) + i) * (m - 1) + (k - 1)];
      };

      const std::size_t cells = std::size_t(g.cx) * g.cy;
      std::vector<int> cell_winding(cells, 0);
      parallel_for(cells, threads, [&](std::size_t c) {
        const int i = int(c % g.cx), j = int(c / g.cx);
        const Sample& corner = d.nodes[g.node_index(i, j)];
        if (corner.both) return;
        const Spinor ref = line_vector(corner, kind);
        std::vector<const Sample*> loop;
        for (int k = 0; k < m; ++k) loop.push_back(hsample(i, j, k));
        for (int k = 0; k < m; ++k) loop.push_back(vsample(i + 1, j, k));
        for (int k = m; k > 0; --k) loop.push_back(hsample(i, j + 1, k));
        for (int k = m; k > 0; --k) loop.push_back(vsample(i, j, k));
        Winding w = winding_from_samples(loop, kind, ref);
        if (!w.ok) {
          const ParamPoint p = g.node(i, j);
          w = rect_winding(spec, {g.chart, p.x, p.y, p.x + g.hx, p.y + g.hy}, kind, ref, opt, 64);
        }
        cell_winding[c] = w.ok ? w.winding : 0;
      });

      for (std::size_t c = 0; c < cells; ++c) {
        if (cell_winding[c] == 0) continue;
        const int i = int(c % g.cx), j = int(c / g.cx);
        const ParamPoint p = g.node(i, j);
        const Spinor ref = line_vector(d.nodes[g.node_index(i, j)], kind);
        for (const Rect& leaf : bisect_zero(spec, {g.chart, p.x, p.y, p.x + g.hx, p.y + g.hy}, kind, ref, opt)) {
          const ParamPoint loc = wrap(spec, leaf.center());
          if (!accepted(spec, loc)) continue;
          const Sample s = sample_at(spec, loc, opt);
          found.push_back({loc, plane_kind(kind), std::nullopt, 0.0, s.both ? 0.0 : ratio(s, kind)});
        }
      }

      // Zeros whose winding cancels inside a cell (index 0 or pairs) show up as dips.
      const auto& r = kind == ZeroKind::chi ? d.chi_ratio : d.phi_ratio;
      for (int j = 0; j <= g.cy; ++j)
        for (int i = 0; i <= g.cx; ++i) {
          const int idx = g.node_index(i, j);
          if (d.nodes[idx].both || r[idx] >= kDipThreshold) continue;
          if (!accepted(spec, g.node(i, j))) continue;
          bool local_min = true;
          for (int dj = -1; dj <= 1 && local_min; ++dj)
            for (int di = -1; di <= 1; ++di) {
              const int a = i + di, b = j + dj;
              if ((di || dj) && a >= 0 && b >= 0 && a <= g.cx && b <= g.cy && r[g.node_index(a, b)] < r[idx])
                local_min = false;
            }
          if (!local_min) continue;
          double best = 1.0;
          const ParamPoint loc = wrap(spec, descend(spec, g.node(i, j), 0.5 * cell, kind, opt, &best));
          if (best < kDipAccept && accepted(spec, loc)) found.push_back({loc, plane_kind(kind), std::nullopt, 0.0, best});
        }
    }

    // Merge duplicates (the same zero found from neighbouring cells or by both paths).
    std::vector<ComplexPointRecord> merged;
    for (const auto& rec : found) {
      bool dup = false;
      for (auto& m : merged)
        if (coord_distance(spec, m.location, rec.location) < 2.0 * cell) {
          if (rec.residual < m.residual) m = rec;
          dup = true;
          break;
        }
      if (!dup) merged.push_back(rec);
    }
    records.insert(records.end(), merged.begin(), merged.end());
  }

  std::stable_sort(records.begin(), records.end(), [](const auto& a, const auto& b) {
    if (a.kind != b.kind) return int(a.kind) < int(b.kind);
    if (a.location.chart != b.location.chart) return a.location.chart < b.location.chart;
    if (a.location.x != b.location.x) return a.location.x < b.location.x;
    return a.location.y < b.location.y;
  });
  if (summary_out) *summary_out = summary;
  return records;
}

int index_of_zero(const ImmersionSpec& spec, const ComplexPointRecord& rec, double r, const AnalysisOptions& opt) {
  if (rec.kind != PlaneKind::QComplex && rec.kind != PlaneKind::QbarComplex)
    throw std::invalid_argument("index_of_zero needs a QComplex or QbarComplex record");
  const ZeroKind kind = rec.kind == PlaneKind::QComplex ? ZeroKind::chi : ZeroKind::phi;
  const Spinor ref = line_vector(sample_at(spec, rec.location, opt), kind);
  const ParamPoint c = rec.location;
  auto f = [&](double t) {
    const ParamPoint p{c.chart, c.x + r * std::cos(2.0 * kPi * t), c.y + r * std::sin(2.0 * kPi * t)};
    const Sample s = sample_at(spec, p, opt);
    if (s.both) return cplx(0.0);
    return coordinate(s, kind, ref);
  };
  const Winding w = loop_winding(f, opt.loop_points);
  if (!w.ok) throw Error("index loop meets a complex point; use a smaller loop radius");
  return spec.domain.orientation * w.winding;
}

double param_distance(const ImmersionSpec& spec, const ParamPoint& a, const ParamPoint& b) {
  if (spec.domain.type != DomainType::Sphere) return coord_distance(spec, a, b);
  auto st = [](const ParamPoint& p) {
    const cplx w(p.x, p.y);
    std::array<cplx, 2> v = p.chart == 0 ? std::array<cplx, 2>{w, 1.0} : std::array<cplx, 2>{1.0, w};
    const double n = std::sqrt(std::norm(v[0]) + std::norm(v[1]));
    return std::array<cplx, 2>{v[0] / n, v[1] / n};
  };
  const auto u = st(a), v = st(b);
  return std::abs(u[0] * v[1] - u[1] * v[0]);
}

AnalysisReport analyze(const ImmersionSpec& spec, const AnalysisOptions& opt) {
  AnalysisReport rep;
  rep.domain = spec.domain.type;
  rep.target = spec.target.type;
  rep.options = opt;
  rep.records = scan_complex_points(spec, opt, &rep.scan);

  if (spec.curve && spec.target.type == TargetType::S4) {
    rep.h_crossings = h_transversality_check(*spec.curve);
    for (const HCrossing& x : rep.h_crossings) {
      const ParamPoint p{x.chart, x.w.real(), x.w.imag()};
      const GaussSample g = gauss_map(spec, p, opt.higgs_scale);
      if (g.psi.norm() >= kBothThreshold) continue;
      bool dup = false;
      for (const auto& r : rep.records)
        if (r.kind == PlaneKind::Both && param_distance(spec, r.location, p) < 1e-6) dup = true;
      if (!dup) rep.records.push_back({p, PlaneKind::Both, std::nullopt, 0.0, 0.0});
    }
  }

  const double cell = cell_size(spec, opt.grid_n);
  for (auto& rec : rep.records) {
    if (rec.kind == PlaneKind::Both) continue;
    double r = opt.loop_radius.value_or(cell);
    if (!opt.loop_radius) {
      for (const auto& other : rep.records)
        if (&other != &rec) r = std::min(r, 0.4 * coord_distance(spec, rec.location, other.location));
      if (spec.domain.type == DomainType::Disk) {
        const double margin = spec.domain.radius - std::hypot(rec.location.x, rec.location.y);
        if (margin > 0.0) r = std::min(r, 0.5 * margin);
      }
    }
    rec.loop_radius = r;
    rec.index = index_of_zero(spec, rec, r, opt);
    rep.net_count += *rec.index;
    (rec.kind == PlaneKind::QComplex ? rep.q_count : rep.qbar_count) += *rec.index;
  }

  rep.pseudoholomorphic = rep.scan.nodes > rep.scan.both_nodes && rep.scan.max_chi_ratio < opt.tol;
  rep.totally_real = rep.records.empty() && std::min(rep.scan.min_chi_ratio, rep.scan.min_phi_ratio) > opt.tol;
  rep.boundary_incomplete = spec.domain.type == DomainType::Disk;
  return rep;
}

ParamPoint ParamLoop::at(double t) const {
  const double a2 = 2.0 * kPi * t;
  switch (kind) {
  case Kind::Theta: return {0, a2, a};
  case Kind::Phi: return {0, a, a2};
  case Kind::Circle: return {chart, a + r * std::cos(a2), b + r * std::sin(a2)};
  }
  return {};
}

std::string ParamLoop::describe() const {
  std::ostringstream os;
  os.precision(17);
  switch (kind) {
  case Kind::Theta: os << "theta:" << a; break;
  case Kind::Phi: os << "phi:" << a; break;
  case Kind::Circle: os << "circle:" << a << "," << b << "," << r; break;
  }
  return os.str();
}

ParamLoop parse_loop(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw ParseError("loop '" + text + "': expected kind:values");
  const std::string kind = text.substr(0, colon);
  std::vector<double> vals;
  std::stringstream ss(text.substr(colon + 1));
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) throw ParseError("loop '" + text + "': bad number '" + item + "'");
    vals.push_back(v);
  }
  ParamLoop l;
  if (kind == "theta" && vals.size() == 1) {
    l.kind = ParamLoop::Kind::Theta;
    l.a = vals[0];
  } else if (kind == "phi" && vals.size() == 1) {
    l.kind = ParamLoop::Kind::Phi;
    l.a = vals[0];
  } else if (kind == "circle" && vals.size() == 3 && vals[2] > 0.0) {
    l.kind = ParamLoop::Kind::Circle;
    l.a = vals[0];
    l.b = vals[1];
    l.r = vals[2];
  } else {
    throw ParseError("loop '" + text + "': expected theta:<phi>, phi:<theta> or circle:<x>,<y>,<r>");
  }
  return l;
}

std::vector<MaslovResult> maslov_windings(const ImmersionSpec& spec, const std::vector<ParamLoop>& loops,
                                          const AnalysisOptions& opt) {
  if (spec.target.type != TargetType::C2) throw PreconditionError("Maslov windings need target C2");
  std::vector<MaslovResult> out;
  for (const ParamLoop& loop : loops) {
    if (spec.domain.type != DomainType::Torus && loop.kind != ParamLoop::Kind::Circle)
      throw PreconditionError("theta/phi loops need a torus domain");
    struct Values {
      cplx rho, vw;
    };
    auto values = [&](double t) {
      const GaussSample g = gauss_map(spec, loop.at(t), opt.higgs_scale);
      const Spinor psi = normalized(g.psi);
      const SpinorSplit s = split_at(psi, g.plane);
      if (std::min(s.phi_norm, s.chi_norm) < opt.tol)
        throw PreconditionError("loop passes through a complex point; Maslov winding undefined");
      return Values{wedge(s.phi, s.chi), wedge(clifford_mul(g.plane.a(), psi), clifford_mul(g.plane.b(), psi))};
    };
    MaslovResult r;
    r.loop = loop;
    const Winding a = loop_winding([&](double t) { return values(t).rho; }, opt.loop_points);
    const Winding b = loop_winding([&](double t) { return values(t).vw; }, opt.loop_points);
    if (!a.ok || !b.ok) throw PreconditionError("Maslov winding could not be resolved");
    r.winding = spec.domain.orientation * a.winding;
    r.wedge_winding = spec.domain.orientation * b.winding;
    for (int i = 0; i < opt.loop_points; ++i) {
      const Values v = values(double(i) / opt.loop_points);
      r.cross_check = std::max(r.cross_check, std::abs(v.vw + 2.0 * I * v.rho));
    }
    out.push_back(r);
  }
  return out;
}

BundleCheck totally_real_bundle_check(const ImmersionSpec& spec, const AnalysisOptions& opt) {
  struct Local {
    double iso = 0.0, det = -1.0, normal = 0.0;
    bool counted = false;
  };
  std::vector<ParamPoint> pts;
  for (const Grid& g : grids_for(spec, opt.grid_n))
    for (int j = 0; j <= g.cy; ++j)
      for (int i = 0; i <= g.cx; ++i) {
        if (spec.domain.type == DomainType::Torus && (i == g.cx || j == g.cy)) continue;
        if (accepted(spec, g.node(i, j))) pts.push_back(g.node(i, j));
      }
  std::vector<Local> res(pts.size());
  parallel_for(pts.size(), thread_count(opt), [&](std::size_t k) {
    const GaussSample g = gauss_map(spec, pts[k], opt.higgs_scale);
    if (g.psi.norm() < kBothThreshold) throw PreconditionError("Higgs field vanishes on the surface");
    const SpinorSplit s = split_at(g.psi, g.plane);
    const double n = g.psi.norm();
    if (std::min(s.phi_norm, s.chi_norm) < opt.tol * n) throw PreconditionError("surface has a complex point");
    const Quaternion phi = normalized(s.phi.quaternion());
    const Quaternion chi_inv = quat_conj(normalized(s.chi.quaternion()));
    const Quaternion& A = g.plane.first();
    const Quaternion& B = g.plane.second();
    // N chi = A phi with N in Hom(L-perp, L'), i.e. N = (A phi) chi^-1.
    const Quaternion na = A * phi * chi_inv;
    const Quaternion nb = B * phi * chi_inv;
    const OrientedPlane rev = plane_complement(g.plane);
    const Quaternion C = rev.first(), D = -rev.second(); // direct-sum orientation of the normal plane
    const double m00 = dot(na, C), m01 = dot(na, D), m10 = dot(nb, C), m11 = dot(nb, D);
    Local l;
    l.counted = true;
    l.det = m00 * m11 - m01 * m10;
    l.iso = std::max({std::abs(m00 * m00 + m01 * m01 - 1.0), std::abs(m10 * m10 + m11 * m11 - 1.0),
                      std::abs(m00 * m10 + m01 * m11)});
    l.normal = std::max((na - rev.project(na)).norm(), (nb - rev.project(nb)).norm());
    res[k] = l;
  });
  BundleCheck out;
  out.max_det = -INFINITY;
  for (const Local& l : res) {
    ++out.points;
    out.max_isometry_defect = std::max(out.max_isometry_defect, l.iso);
    out.max_det = std::max(out.max_det, l.det);
    out.max_normal_residual = std::max(out.max_normal_residual, l.normal);
  }
  out.pass = out.points > 0 && out.max_det < 0.0 && out.max_isometry_defect < 1e-8 && out.max_normal_residual < 1e-8;
  return out;
}

CurveClassification classify_curve(const RationalCurve& c, TargetType target, int delta, int samples,
                                   const AnalysisOptions& opt) {
  if (target == TargetType::C2) throw PreconditionError("curve classification needs target S4 or CP2");
  validate_curve(c);
  CurveClassification out;
  out.degree = c.degree;
  out.delta = delta;
  out.genus = plucker_genus(c.degree, delta);
  out.crossings = h_transversality_check(c);
  for (const HCrossing& x : out.crossings) out.transverse = out.transverse && x.transverse;
  if (target == TargetType::S4 && !out.transverse) {
    std::ostringstream os;
    os.precision(6);
    for (const HCrossing& x : out.crossings)
      if (!x.transverse)
        os << "non-transverse crossing with the line at infinity at chart " << x.chart << " w = " << x.w.real()
           << (x.w.imag() < 0 ? "-" : "+") << std::abs(x.w.imag()) << "i (multiplicity " << x.multiplicity << ")";
    out.refusal = os.str();
    return out;
  }

  Target t;
  t.type = target;
  const ImmersionSpec spec = make_curve_spec(t, c);

  // Samples: rings around each crossing (these land in the inversion chart),
  // then points uniform on the parameter sphere.
  std::vector<ParamPoint> pts;
  const int ring = out.crossings.empty() ? 0 : std::min(samples / 4, 64 * int(out.crossings.size()));
  for (int k = 0; k < ring; ++k) {
    const HCrossing& x = out.crossings[k % out.crossings.size()];
    const double r = std::pow(10.0, -1.0 - 4.0 * (k / int(out.crossings.size())) / 64.0);
    const double a = 2.0 * kPi * 0.6180339887498949 * k;
    pts.push_back({x.chart, x.w.real() + r * std::cos(a), x.w.imag() + r * std::sin(a)});
  }
  std::mt19937_64 rng(opt.seed);
  std::normal_distribution<double> gauss;
  while (int(pts.size()) < samples) {
    const cplx s(gauss(rng), gauss(rng)), u(gauss(rng), gauss(rng));
    const cplx w = std::abs(u) >= std::abs(s) ? s / u : u / s;
    pts.push_back({std::abs(u) >= std::abs(s) ? 0 : 1, w.real(), w.imag()});
  }

  struct Local {
    double chi = 0.0, both_psi = 0.0;
    bool phi_chart = false, both = false;
  };
  std::vector<Local> res(pts.size());
  parallel_for(pts.size(), thread_count(opt), [&](std::size_t k) {
    const GaussSample g = gauss_map(spec, pts[k], opt.higgs_scale);
    Local l;
    l.phi_chart = g.chart == TargetChart::Phi;
    if (g.at_infinity || g.psi.norm() < kBothThreshold) {
      l.both = true;
      l.both_psi = g.psi.norm();
    } else {
      const SpinorSplit sp = split_at(g.psi, g.plane);
      l.chi = sp.chi_norm / g.psi.norm();
    }
    res[k] = l;
  });
  for (const Local& l : res) {
    ++out.samples;
    out.phi_chart_samples += l.phi_chart;
    out.both_samples += l.both;
    out.max_chi_ratio = std::max(out.max_chi_ratio, l.chi);
    out.max_both_psi = std::max(out.max_both_psi, l.both_psi);
  }
  out.pseudoholomorphic = out.max_chi_ratio < opt.tol;

  // Injectivity on the same sample: parameters more than 1e-3 apart must
  // have distinct images.
  const std::size_t dim = target == TargetType::S4 ? 5 : 18;
  std::vector<double> img(pts.size() * dim);
  parallel_for(pts.size(), thread_count(opt), [&](std::size_t k) {
    double* e = &img[k * dim];
    if (target == TargetType::S4) {
      const auto a = s4_embed(map_point(spec, pts[k]));
      std::copy(a.begin(), a.end(), e);
      return;
    }
    const cplx w(pts[k].x, pts[k].y);
    const auto h = pts[k].chart == 0 ? evaluate_homogeneous(c, w, 1.0) : evaluate_homogeneous(c, 1.0, w);
    const double nn = std::norm(h[0]) + std::norm(h[1]) + std::norm(h[2]);
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) {
        const cplx m = h[a] * std::conj(h[b]) / nn; // projector onto the image line
        *e++ = m.real();
        *e++ = m.imag();
      }
  });
  std::vector<double> row_min(pts.size(), INFINITY);
  parallel_for(pts.size(), thread_count(opt), [&](std::size_t i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      double d2 = 0.0;
      for (std::size_t k = 0; k < dim; ++k) d2 += (img[i * dim + k] - img[j * dim + k]) * (img[i * dim + k] - img[j * dim + k]);
      if (d2 < row_min[i] * row_min[i] && param_distance(spec, pts[i], pts[j]) > 1e-3) row_min[i] = std::sqrt(d2);
    }
  });
  out.min_image_distance = *std::min_element(row_min.begin(), row_min.end());
  out.injective = out.min_image_distance > 1e-12;
  // pr collapses every crossing to one point, so only lines stay embedded in S4.
  out.embedded_sphere = out.pseudoholomorphic && out.injective && (target == TargetType::CP2 || c.degree == 1);
  return out;
}

} // namespace spinc
