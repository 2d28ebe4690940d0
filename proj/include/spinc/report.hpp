#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "spinc/analysis.hpp"
#include "spinc/verify.hpp"

namespace spinc {

inline constexpr int kSchemaVersion = 1;
// Index sign convention: at the standard Higgs zero the phi representative
// winds -1 and the chi representative +1; indices are windings around
// positively oriented parameter loops.
inline constexpr const char* kIndexConvention = "local-model:phi=-1,chi=+1";

enum class Format { json, csv, text };
// Throws std::invalid_argument.
Format parse_format(const std::string& s);

using Json = nlohmann::ordered_json;

Json to_json(const AnalysisReport& r, std::uint64_t seed);
Json to_json(const VerifyReport& r);
Json to_json(const CurveClassification& c, std::uint64_t seed);
Json to_json(const std::vector<MaslovResult>& m, std::uint64_t seed);

// CSV carries the row data only (records, suites, crossings, loops) with the
// seed as a column; JSON carries everything.
std::string render(const AnalysisReport& r, Format f, std::uint64_t seed);
std::string render(const VerifyReport& r, Format f);
std::string render(const CurveClassification& c, Format f, std::uint64_t seed);
std::string render(const std::vector<MaslovResult>& m, Format f, std::uint64_t seed);

} // namespace spinc
