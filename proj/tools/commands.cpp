#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <maxac/baselines.hpp>

#include "csv.hpp"

namespace maxac::cli {

namespace {

Json inputs_json(const DataPaths& paths, const LoadedData& data) {
  Json j{{"x1", paths.x1.string()}, {"x2", paths.x2.string()}};
  if (!paths.clean.empty()) j["clean"] = paths.clean.string();
  j["rows"] = data.x1.rows();
  j["cols"] = data.x1.cols();
  return j;
}

void resolve_k_max(SweepConfig& config, Index limit) {
  if (config.k_max == 0) config.k_max = std::min<Index>(8, limit);
}

void check_rank(Index rank, const LoadedData& data) {
  const Index limit = std::min(data.x1.rows(), data.x1.cols());
  if (rank < 1 || rank > limit) {
    throw Error(ErrorCode::rank_out_of_range,
                "rank " + std::to_string(rank) + " outside [1, " + std::to_string(limit) + "]");
  }
}

}  // namespace

LoadedData load_data(const DataPaths& paths) {
  DataMatrix x1(read_matrix_csv(paths.x1));
  DataMatrix x2(read_matrix_csv(paths.x2));
  auto same = [](const DataMatrix& a, const DataMatrix& b) {
    return a.rows() == b.rows() && a.cols() == b.cols();
  };
  auto shape = [](const DataMatrix& m) {
    return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
  };
  if (!same(x1, x2)) {
    throw Error(ErrorCode::shape_error, "X1 is " + shape(x1) + " but X2 is " + shape(x2));
  }
  std::optional<DataMatrix> clean;
  if (!paths.clean.empty()) {
    clean.emplace(read_matrix_csv(paths.clean));
    if (!same(*clean, x1)) {
      throw Error(ErrorCode::shape_error,
                  "clean matrix is " + shape(*clean) + " but X1 is " + shape(x1));
    }
  }
  return LoadedData{std::move(x1), std::move(x2), std::move(clean)};
}

Json generate_files(const MixtureSpec& spec, const std::filesystem::path& dir) {
  const MixtureData data = generate_pair(spec);
  Json meta = report_header("generate");
  meta["spec"] = mixture_spec_json(spec);
  meta["shape"] = {{"rows", data.clean.rows()}, {"cols", data.clean.cols()}};
  meta["files"] = {"X_clean.csv", "X1.csv", "X2.csv", "labels.csv"};

  const std::vector<std::pair<std::string, std::string>> files = {
      {"X_clean.csv", format_matrix_csv(data.clean.values())},
      {"X1.csv", format_matrix_csv(data.first.values())},
      {"X2.csv", format_matrix_csv(data.second.values())},
      {"labels.csv", format_labels_csv(data.labels)},
      {"meta.json", dump(meta)},
  };

  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (!std::filesystem::is_directory(dir)) {
    throw Error(ErrorCode::io_error, "cannot create output directory " + dir.string());
  }
  std::vector<std::filesystem::path> staged;
  auto discard = [&] {
    for (const auto& p : staged) std::filesystem::remove(p, ec);
  };
  for (const auto& [name, text] : files) {
    const std::filesystem::path tmp = dir / (name + ".tmp");
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      discard();
      throw Error(ErrorCode::io_error, "cannot write " + tmp.string());
    }
    staged.push_back(tmp);
    out << text;
    out.flush();
    if (!out) {
      discard();
      throw Error(ErrorCode::io_error, "write failed for " + tmp.string());
    }
  }
  for (std::size_t i = 0; i < files.size(); ++i) {
    std::filesystem::rename(staged[i], dir / files[i].first, ec);
    if (ec) {
      discard();
      for (std::size_t j = 0; j < i; ++j) std::filesystem::remove(dir / files[j].first, ec);
      throw Error(ErrorCode::io_error, "cannot rename into " + dir.string());
    }
  }
  return meta;
}

Json select_report(const DataPaths& paths, SweepConfig config) {
  const LoadedData data = load_data(paths);
  resolve_k_max(config, std::min(data.x1.rows(), data.x1.cols()));
  const CapacityCurve curve = select_rank(data.x1, data.x2, config);
  Json j = report_header("select");
  j["config"] = sweep_config_json(config);
  j["inputs"] = inputs_json(paths, data);
  j["delta"] = curve.entries.front().delta;
  j["selected_rank"] = curve.selected_rank;
  j["all_ranks_degenerate"] = curve.all_ranks_degenerate;
  j["curve"] = Json::array();
  for (const auto& e : curve.entries) j["curve"].push_back(entry_json(e));
  return j;
}

Json sweep_sigma_report(const DataPaths& paths, SweepConfig config, Index rank,
                        const std::vector<double>& sigmas) {
  const LoadedData data = load_data(paths);
  check_rank(rank, data);
  resolve_k_max(config, std::min(data.x1.rows(), data.x1.cols()));
  const std::vector<CurveEntry> entries = range_sweep(data.x1, data.x2, rank, sigmas, config);
  Json j = report_header("sweep-sigma");
  j["config"] = sweep_config_json(config);
  j["inputs"] = inputs_json(paths, data);
  j["rank"] = rank;
  j["sigmas"] = sigmas;
  j["points"] = Json::array();
  for (const auto& e : entries) j["points"].push_back(entry_json(e));
  return j;
}

Json sweep_m_report(const DataPaths& paths, SweepConfig config, Index rank,
                    const std::vector<std::size_t>& m_values, std::size_t seeds) {
  if (m_values.empty()) throw Error(ErrorCode::invalid_config, "member list is empty");
  if (seeds < 1) throw Error(ErrorCode::invalid_config, "need at least one seed");
  const LoadedData data = load_data(paths);
  check_rank(rank, data);
  resolve_k_max(config, std::min(data.x1.rows(), data.x1.cols()));
  Json j = report_header("sweep-m");
  j["config"] = sweep_config_json(config);
  j["inputs"] = inputs_json(paths, data);
  j["rank"] = rank;
  j["m_values"] = m_values;
  j["seed_count"] = seeds;
  j["points"] = Json::array();
  for (std::size_t m : m_values) {
    std::vector<double> capacities;
    for (std::size_t s = 0; s < seeds; ++s) {
      SweepConfig cfg = config;
      cfg.m_base = m;
      cfg.m_growth = 1.0;
      cfg.m_cap = std::max(m, cfg.m_cap);
      cfg.seed = config.seed + s;
      capacities.push_back(RankEvaluator(data.x1, data.x2, cfg).evaluate(rank).point.capacity);
    }
    double mean = 0.0;
    for (double c : capacities) mean += c;
    mean /= static_cast<double>(capacities.size());
    double var = 0.0;
    for (double c : capacities) var += (c - mean) * (c - mean);
    var = capacities.size() > 1 ? var / static_cast<double>(capacities.size() - 1) : 0.0;
    j["points"].push_back(
        Json{{"members", m}, {"capacities", capacities}, {"mean", mean}, {"variance", var}});
  }
  return j;
}

Json compare_report(const DataPaths& paths, SweepConfig config) {
  const LoadedData data = load_data(paths);
  const Index limit = std::min(data.x1.rows(), data.x1.cols()) - 1;
  if (limit < 1) throw Error(ErrorCode::rank_out_of_range, "data too small for evidence methods");
  resolve_k_max(config, limit);
  if (config.k_max > limit) {
    throw Error(ErrorCode::rank_out_of_range,
                "k-max " + std::to_string(config.k_max) + " exceeds min(N, D) - 1 = " +
                    std::to_string(limit));
  }
  const CapacityCurve curve = select_rank(data.x1, data.x2, config);
  RankScores maxac;
  maxac.selected_rank = curve.selected_rank;
  maxac.k_min = config.k_min;
  for (const auto& e : curve.entries) maxac.scores.push_back(e.point.capacity);

  Json j = report_header("compare");
  j["config"] = sweep_config_json(config);
  j["inputs"] = inputs_json(paths, data);
  j["methods"] = Json::array();
  Json maxac_json = rank_scores_json("maxac", maxac);
  maxac_json["all_ranks_degenerate"] = curve.all_ranks_degenerate;
  j["methods"].push_back(std::move(maxac_json));
  j["methods"].push_back(rank_scores_json("bic", bic_rank(data.x1, config.k_min, config.k_max)));
  j["methods"].push_back(
      rank_scores_json("laplace", laplace_evidence_rank(data.x1, config.k_min, config.k_max)));
  j["methods"].push_back(
      rank_scores_json("mtc", mtc_rank(data.x1, data.x2, config.k_min, config.k_max)));
  if (data.clean) {
    j["methods"].push_back(rank_scores_json(
        "best-denoising", best_denoising_rank(*data.clean, data.x1, config.k_min, config.k_max)));
  }
  return j;
}

int exit_code(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::io_error:
    case ErrorCode::invalid_config:
    case ErrorCode::invalid_spec:
    case ErrorCode::invalid_scale:
    case ErrorCode::rank_out_of_range:
      return 2;
    case ErrorCode::invalid_input:
    case ErrorCode::shape_error:
    case ErrorCode::singular_basis:
    case ErrorCode::infinite_temperature:
    case ErrorCode::parse_error:
      return 3;
  }
  return 2;
}

}  // namespace maxac::cli
