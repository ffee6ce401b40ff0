#include "report.hpp"

#include <maxac/error.hpp>

#include "csv.hpp"

namespace maxac::cli {

Json report_header(const std::string& kind) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = kind;
  j["tool"] = {{"name", kToolName}, {"version", kToolVersion}};
  return j;
}

Json sweep_config_json(const SweepConfig& c) {
  return Json{
      {"method", to_string(c.method)},
      {"k_min", c.k_min},
      {"k_max", c.k_max},
      {"sigma", c.sigma},
      {"m_base", c.m_base},
      {"m_growth", c.m_growth},
      {"m_cap", c.m_cap},
      {"grid_points", c.grid_points},
      {"beta_points", c.beta_points},
      {"beta_lo", c.beta_lo},
      {"beta_hi", c.beta_hi},
      {"newton_tol", c.newton_tol},
      {"max_iter", c.max_iter},
      {"seed", c.seed},
      {"weight_sums", to_string(c.weight_sums)},
      {"joint_cost", to_string(c.joint_cost)},
      {"delta_rank", c.delta_rank},
      {"swap_datasets", c.swap_datasets},
  };
}

Json mixture_spec_json(const MixtureSpec& s) {
  return Json{
      {"components", s.components},
      {"dims", s.dims},
      {"effective_dims", s.effective_dims()},
      {"rows", s.rows},
      {"separation", s.separation},
      {"noise_sigma", s.noise_sigma},
      {"center_mean", s.center_mean},
      {"seed", s.seed},
  };
}

Json entry_json(const CurveEntry& e) {
  return Json{
      {"rank", e.point.rank},
      {"beta_star", e.point.beta_star},
      {"capacity", e.point.capacity},
      {"delta", e.delta},
      {"sigma", e.sigma},
      {"sigma_abs", e.sigma_abs},
      {"members", e.members},
      {"no_interior_maximum", e.point.no_interior_maximum},
      {"converged", e.point.converged},
      {"iterations", e.point.iterations},
      {"grid", {{"beta", e.point.grid_beta}, {"capacity", e.point.grid_capacity}}},
  };
}

Json curve_json(const CapacityCurve& curve) {
  Json points = Json::array();
  for (const auto& e : curve.entries) points.push_back(entry_json(e));
  return Json{
      {"selected_rank", curve.selected_rank},
      {"all_ranks_degenerate", curve.all_ranks_degenerate},
      {"points", std::move(points)},
  };
}

Json rank_scores_json(const std::string& method, const RankScores& s) {
  return Json{
      {"method", method},
      {"selected_rank", s.selected_rank},
      {"k_min", s.k_min},
      {"objective", s.higher_is_better ? "max" : "min"},
      {"scores", s.scores},
  };
}

std::string dump(const Json& report) {
  return report.dump(2) + "\n";
}

Json parse(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::parse_error, std::string("invalid JSON: ") + e.what());
  }
}

void write_report(const std::filesystem::path& path, const Json& report) {
  write_text_atomic(path, dump(report));
}

}  // namespace maxac::cli
