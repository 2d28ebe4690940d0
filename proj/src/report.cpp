#include "spinc/report.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace spinc {

namespace {

Json num(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

Json point_json(const ParamPoint& p) { return Json{{"chart", p.chart}, {"x", p.x}, {"y", p.y}}; }

Json header(const char* kind, std::uint64_t seed) {
  return Json{{"schema_version", kSchemaVersion}, {"report", kind}, {"seed", seed}};
}

std::string fmt(double v) {
  if (!std::isfinite(v)) return v > 0 ? "inf" : (v < 0 ? "-inf" : "nan");
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

std::string short_fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(6) << v;
  return os.str();
}

const char* yes_no(bool b) { return b ? "yes" : "no"; }

} // namespace

Format parse_format(const std::string& s) {
  if (s == "json") return Format::json;
  if (s == "csv") return Format::csv;
  if (s == "text") return Format::text;
  throw std::invalid_argument("unknown format '" + s + "' (json, csv or text)");
}

Json to_json(const AnalysisReport& r, std::uint64_t seed) {
  Json j = header("analysis", seed);
  j["index_convention"] = kIndexConvention;
  j["domain"] = to_string(r.domain);
  j["target"] = to_string(r.target);
  j["options"] = {{"grid", r.options.grid_n},
                  {"refine_depth", r.options.refine_depth},
                  {"tol", r.options.tol},
                  {"loop_points", r.options.loop_points}};
  if (r.options.loop_radius) j["options"]["loop_radius"] = *r.options.loop_radius;
  Json recs = Json::array();
  for (const auto& rec : r.records) {
    Json x{{"kind", to_string(rec.kind)}, {"location", point_json(rec.location)}};
    x["index"] = rec.index ? Json(*rec.index) : Json(nullptr);
    x["loop_radius"] = rec.loop_radius;
    x["residual"] = num(rec.residual);
    recs.push_back(x);
  }
  j["records"] = recs;
  j["net_count"] = r.net_count;
  j["q_count"] = r.q_count;
  j["qbar_count"] = r.qbar_count;
  j["both_count"] = std::count_if(r.records.begin(), r.records.end(),
                                  [](const auto& x) { return x.kind == PlaneKind::Both; });
  j["totally_real"] = r.totally_real;
  j["pseudoholomorphic"] = r.pseudoholomorphic;
  j["boundary_incomplete"] = r.boundary_incomplete;
  j["scan"] = {{"nodes", r.scan.nodes},
               {"both_nodes", r.scan.both_nodes},
               {"min_chi_ratio", num(r.scan.min_chi_ratio)},
               {"max_chi_ratio", num(r.scan.max_chi_ratio)},
               {"min_phi_ratio", num(r.scan.min_phi_ratio)},
               {"chi_non_isolated", r.scan.chi_non_isolated},
               {"phi_non_isolated", r.scan.phi_non_isolated}};
  Json hx = Json::array();
  for (const auto& c : r.h_crossings)
    hx.push_back({{"chart", c.chart},
                  {"w", {c.w.real(), c.w.imag()}},
                  {"multiplicity", c.multiplicity},
                  {"derivative", c.derivative},
                  {"transverse", c.transverse}});
  j["h_crossings"] = hx;
  return j;
}

Json to_json(const VerifyReport& r) {
  Json j = header("verify", r.seed);
  j["samples"] = r.samples;
  Json s = Json::array();
  for (const auto& x : r.suites)
    s.push_back({{"name", x.name},
                 {"pass", x.pass},
                 {"max_residual", num(x.max_residual)},
                 {"threshold", x.threshold},
                 {"samples", x.samples},
                 {"detail", x.detail}});
  j["suites"] = s;
  j["pass"] = r.all_pass();
  return j;
}

Json to_json(const CurveClassification& c, std::uint64_t seed) {
  Json j = header("curve", seed);
  j["degree"] = c.degree;
  j["delta"] = c.delta;
  j["genus"] = c.genus ? Json(*c.genus) : Json(nullptr);
  Json hx = Json::array();
  for (const auto& x : c.crossings)
    hx.push_back({{"chart", x.chart},
                  {"w", {x.w.real(), x.w.imag()}},
                  {"multiplicity", x.multiplicity},
                  {"derivative", x.derivative},
                  {"transverse", x.transverse}});
  j["h_crossings"] = hx;
  j["transverse"] = c.transverse;
  if (!c.refusal.empty()) {
    j["refused"] = c.refusal;
    return j;
  }
  j["samples"] = c.samples;
  j["inversion_chart_samples"] = c.phi_chart_samples;
  j["both_samples"] = c.both_samples;
  j["max_chi_ratio"] = c.max_chi_ratio;
  j["pseudoholomorphic"] = c.pseudoholomorphic;
  j["min_image_distance"] = num(c.min_image_distance);
  j["injective"] = c.injective;
  j["embedded_sphere"] = c.embedded_sphere;
  return j;
}

Json to_json(const std::vector<MaslovResult>& m, std::uint64_t seed) {
  Json j = header("maslov", seed);
  Json loops = Json::array();
  for (const auto& x : m)
    loops.push_back({{"loop", x.loop.describe()},
                     {"winding", x.winding},
                     {"wedge_winding", x.wedge_winding},
                     {"cross_check", x.cross_check}});
  j["loops"] = loops;
  return j;
}

std::string render(const AnalysisReport& r, Format f, std::uint64_t seed) {
  if (f == Format::json) return to_json(r, seed).dump(2) + "\n";
  std::ostringstream os;
  if (f == Format::csv) {
    os << "seed,kind,chart,x,y,index,loop_radius,residual\n";
    for (const auto& rec : r.records)
      os << seed << "," << to_string(rec.kind) << "," << rec.location.chart << "," << fmt(rec.location.x) << ","
         << fmt(rec.location.y) << "," << (rec.index ? std::to_string(*rec.index) : "") << ","
         << fmt(rec.loop_radius) << "," << fmt(rec.residual) << "\n";
    return os.str();
  }
  os << "domain " << to_string(r.domain) << ", target " << to_string(r.target) << ", seed " << seed << "\n";
  os << "grid " << r.options.grid_n << ", refine depth " << r.options.refine_depth << ", tol "
     << short_fmt(r.options.tol) << ", loop points " << r.options.loop_points << "\n";
  os << "complex points: " << r.records.size() << "\n";
  for (const auto& rec : r.records) {
    os << "  " << to_string(rec.kind) << " at chart " << rec.location.chart << " (" << short_fmt(rec.location.x)
       << ", " << short_fmt(rec.location.y) << ")";
    if (rec.index) os << "  index " << *rec.index << "  loop radius " << short_fmt(rec.loop_radius);
    os << "\n";
  }
  os << "net count " << r.net_count << " (Q " << r.q_count << ", Qbar " << r.qbar_count << ")";
  if (r.boundary_incomplete) os << "  [disk: boundary contribution not included]";
  os << "\n";
  os << "totally real: " << yes_no(r.totally_real) << "\n";
  os << "pseudoholomorphic: " << yes_no(r.pseudoholomorphic) << "\n";
  for (const auto& c : r.h_crossings)
    os << "crossing with the line at infinity at chart " << c.chart << " w = (" << short_fmt(c.w.real()) << ", "
       << short_fmt(c.w.imag()) << "), " << (c.transverse ? "transverse" : "NOT transverse") << "\n";
  return os.str();
}

std::string render(const VerifyReport& r, Format f) {
  if (f == Format::json) return to_json(r).dump(2) + "\n";
  std::ostringstream os;
  if (f == Format::csv) {
    os << "seed,suite,pass,max_residual,threshold,samples\n";
    for (const auto& s : r.suites)
      os << r.seed << "," << s.name << "," << (s.pass ? "pass" : "fail") << "," << fmt(s.max_residual) << ","
         << fmt(s.threshold) << "," << s.samples << "\n";
    return os.str();
  }
  os << "seed " << r.seed << ", samples " << r.samples << "\n";
  for (const auto& s : r.suites) {
    os << (s.pass ? "PASS " : "FAIL ") << std::left << std::setw(24) << s.name << " max residual "
       << std::setw(12) << short_fmt(s.max_residual) << " threshold " << short_fmt(s.threshold) << "\n";
    if (!s.detail.empty()) os << "     " << s.detail << "\n";
  }
  os << (r.all_pass() ? "all suites pass" : "FAILURES") << "\n";
  return os.str();
}

std::string render(const CurveClassification& c, Format f, std::uint64_t seed) {
  if (f == Format::json) return to_json(c, seed).dump(2) + "\n";
  std::ostringstream os;
  if (f == Format::csv) {
    os << "seed,chart,w_re,w_im,multiplicity,derivative,transverse\n";
    for (const auto& x : c.crossings)
      os << seed << "," << x.chart << "," << fmt(x.w.real()) << "," << fmt(x.w.imag()) << "," << x.multiplicity
         << "," << fmt(x.derivative) << "," << (x.transverse ? "yes" : "no") << "\n";
    return os.str();
  }
  os << "degree " << c.degree << ", nodes " << c.delta << ", Pluecker genus "
     << (c.genus ? std::to_string(*c.genus) : "undefined") << ", seed " << seed << "\n";
  for (const auto& x : c.crossings)
    os << "crossing at chart " << x.chart << " w = (" << short_fmt(x.w.real()) << ", " << short_fmt(x.w.imag())
       << "), multiplicity " << x.multiplicity << ", " << (x.transverse ? "transverse" : "NOT transverse") << "\n";
  if (!c.refusal.empty()) {
    os << "classification refused: " << c.refusal << "\n";
    return os.str();
  }
  os << "samples " << c.samples << " (" << c.phi_chart_samples << " in the inversion chart), max |chi|/|psi| "
     << short_fmt(c.max_chi_ratio) << "\n";
  os << "pseudoholomorphic: " << yes_no(c.pseudoholomorphic) << "\n";
  os << "injective on the sample: " << yes_no(c.injective) << "\n";
  os << "embedded pseudoholomorphic sphere: " << yes_no(c.embedded_sphere) << "\n";
  return os.str();
}

std::string render(const std::vector<MaslovResult>& m, Format f, std::uint64_t seed) {
  if (f == Format::json) return to_json(m, seed).dump(2) + "\n";
  std::ostringstream os;
  if (f == Format::csv) os << "seed,loop,winding,wedge_winding,cross_check\n";
  else os << "seed " << seed << "\n";
  for (const auto& x : m) {
    if (f == Format::csv)
      os << seed << ",\"" << x.loop.describe() << "\"," << x.winding << "," << x.wedge_winding << ","
         << fmt(x.cross_check) << "\n";
    else
      os << "loop " << x.loop.describe() << ": winding " << x.winding << " (tangent wedge " << x.wedge_winding
         << ", cross-check " << short_fmt(x.cross_check) << ")\n";
  }
  return os.str();
}

} // namespace spinc
