#pragma once

#include <filesystem>
#include <optional>
#include <vector>

#include <maxac/datagen.hpp>
#include <maxac/error.hpp>
#include <maxac/rank_selection.hpp>

#include "report.hpp"

namespace maxac::cli {

struct DataPaths {
  std::filesystem::path x1;
  std::filesystem::path x2;
  std::filesystem::path clean;  // optional, empty when absent
};

struct LoadedData {
  DataMatrix x1;
  DataMatrix x2;
  std::optional<DataMatrix> clean;
};

LoadedData load_data(const DataPaths& paths);

/// Writes X_clean.csv, X1.csv, X2.csv, labels.csv and meta.json into dir.
/// Either all five files appear or none does. Returns the meta document.
Json generate_files(const MixtureSpec& spec, const std::filesystem::path& dir);

/// k_max == 0 in the config means min(8, limit).
Json select_report(const DataPaths& paths, SweepConfig config);
Json sweep_sigma_report(const DataPaths& paths, SweepConfig config, Index rank,
                        const std::vector<double>& sigmas);
Json sweep_m_report(const DataPaths& paths, SweepConfig config, Index rank,
                    const std::vector<std::size_t>& m_values, std::size_t seeds);
Json compare_report(const DataPaths& paths, SweepConfig config);

/// 2 for IO and configuration problems, 3 for data contract violations.
int exit_code(ErrorCode code) noexcept;

}  // namespace maxac::cli
