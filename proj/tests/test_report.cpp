#include <doctest.h>

#include <sstream>

#include "spinc/report.hpp"

using namespace spinc;

namespace {
AnalysisReport sample_report() {
  AnalysisReport r;
  r.domain = DomainType::Torus;
  ComplexPointRecord a;
  a.location = {0, 1.0, 2.0};
  a.kind = PlaneKind::QComplex;
  a.index = -1;
  a.loop_radius = 0.05;
  ComplexPointRecord b = a;
  b.kind = PlaneKind::QbarComplex;
  b.index = 1;
  ComplexPointRecord c;
  c.kind = PlaneKind::Both;
  r.records = {a, b, c};
  r.q_count = 1;
  r.qbar_count = 1;
  return r;
}
} // namespace

TEST_CASE("format names") {
  CHECK(parse_format("json") == Format::json);
  CHECK(parse_format("csv") == Format::csv);
  CHECK(parse_format("text") == Format::text);
  CHECK_THROWS_AS(parse_format("xml"), std::invalid_argument);
}

TEST_CASE("analysis JSON") {
  const Json j = Json::parse(render(sample_report(), Format::json, 42));
  CHECK(j["schema_version"] == kSchemaVersion);
  CHECK(j["seed"] == 42);
  CHECK(j["index_convention"] == kIndexConvention);
  CHECK(j["domain"] == "torus");
  REQUIRE(j["records"].size() == 3);
  CHECK(j["records"][0]["kind"] == "QComplex");
  CHECK(j["records"][0]["index"] == -1);
  CHECK(j["records"][2]["index"].is_null());
  CHECK(j["both_count"] == 1);
}

TEST_CASE("analysis CSV has one row per record and the seed") {
  const std::string csv = render(sample_report(), Format::csv, 42);
  std::istringstream in(csv);
  std::string line;
  int rows = 0;
  std::getline(in, line);
  CHECK(line.rfind("seed,kind", 0) == 0);
  while (std::getline(in, line)) {
    CHECK(line.rfind("42,", 0) == 0);
    ++rows;
  }
  CHECK(rows == 3);
  CHECK(csv.find("Both,0,0,0,,") != std::string::npos);
}

TEST_CASE("verify report") {
  VerifyReport r;
  r.seed = 3;
  r.samples = 10;
  r.suites = {{"alpha", 10, 1e-16, 1e-12, true, ""}, {"beta", 10, 1.0, 1e-12, false, "too big"}};
  CHECK_FALSE(r.all_pass());
  const std::string text = render(r, Format::text);
  CHECK(text.find("PASS alpha") != std::string::npos);
  CHECK(text.find("FAIL beta") != std::string::npos);
  CHECK(text.find("FAILURES") != std::string::npos);
  const Json j = to_json(r);
  CHECK(j["pass"] == false);
  CHECK(j["suites"][1]["detail"] == "too big");
}

TEST_CASE("non-finite values become null") {
  VerifyReport r;
  r.suites = {{"nan", 1, std::nan(""), 1.0, false, ""}};
  CHECK(to_json(r)["suites"][0]["max_residual"].is_null());
}

TEST_CASE("curve refusal") {
  CurveClassification c;
  c.degree = 2;
  c.refusal = "tangent to the line at infinity";
  const Json j = to_json(c, 1);
  CHECK(j["refused"] == c.refusal);
  CHECK_FALSE(j.contains("pseudoholomorphic"));
  CHECK(render(c, Format::text, 1).find("classification refused") != std::string::npos);
}
