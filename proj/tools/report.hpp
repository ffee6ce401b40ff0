#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include <maxac/baselines.hpp>
#include <maxac/datagen.hpp>
#include <maxac/rank_selection.hpp>

namespace maxac::cli {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kToolName = "maxac";
inline constexpr const char* kToolVersion = "0.1.0";

/// Report header shared by every kind.
Json report_header(const std::string& kind);

Json sweep_config_json(const SweepConfig& config);
Json mixture_spec_json(const MixtureSpec& spec);
Json entry_json(const CurveEntry& entry);
Json curve_json(const CapacityCurve& curve);
Json rank_scores_json(const std::string& method, const RankScores& scores);

/// Two-space indented, trailing newline. Parsing the output and dumping it
/// again gives the same bytes.
std::string dump(const Json& report);
Json parse(const std::string& text);

void write_report(const std::filesystem::path& path, const Json& report);

}  // namespace maxac::cli
