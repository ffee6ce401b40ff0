#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "maxac/capacity_numeric.hpp"
#include "maxac/linalg.hpp"

namespace maxac {

enum class Method { numeric_gaussian, numeric_grid, analytic_unconstrained, analytic_bounded };

const char* to_string(Method method) noexcept;
std::optional<Method> parse_method(const std::string& name);

struct SweepConfig {
  Index k_min = 1;
  Index k_max = 8;
  Method method = Method::numeric_gaussian;
  /// Width of the transformation set in units of the delta scale.
  double sigma = 0.1;
  /// Members at rank 1; multiplied by m_growth per unit rank, capped at m_cap.
  std::size_t m_base = 1024;
  double m_growth = 2.0;
  std::size_t m_cap = std::size_t{1} << 16;
  /// Grid sets: points per axis; the hypercube edge is 2 * sigma_abs.
  std::size_t grid_points = 5;
  /// Beta scan: 0 plus beta_points log-spaced values in [beta_lo, beta_hi]
  /// times the closed-form temperature of each rank.
  std::size_t beta_points = 64;
  double beta_lo = 1e-6;
  double beta_hi = 1e3;
  double newton_tol = 1e-10;
  int max_iter = 50;
  std::uint64_t seed = 0;
  WeightSumMode weight_sums = WeightSumMode::per_object;
  JointCost joint_cost = JointCost::sum;
  /// Rank of the basis that defines the delta scale; 0 means full rank.
  Index delta_rank = 0;
  /// Exchange the roles of X1 and X2.
  bool swap_datasets = false;

  void validate(Index rows, Index cols) const;
  std::size_t members_at(Index k) const;
};

struct CurveEntry {
  CapacityPoint point;
  double delta = 0.0;
  /// Width in delta units and in coefficient units (a variance for the
  /// bounded analytic method).
  double sigma = 0.0;
  double sigma_abs = 0.0;
  std::size_t members = 0;
};

struct CapacityCurve {
  std::vector<CurveEntry> entries;
  Index selected_rank = 0;
  bool all_ranks_degenerate = false;
};

/// Precomputes decompositions and the delta scale for one pair of datasets.
class RankEvaluator {
 public:
  RankEvaluator(const DataMatrix& x1, const DataMatrix& x2, const SweepConfig& config);

  double delta() const noexcept { return delta_; }
  CurveEntry evaluate(Index k) const;
  CurveEntry evaluate(Index k, double sigma) const;

 private:
  SweepConfig config_;
  DataMatrix x1_;
  DataMatrix x2_;
  Decomposition full1_;
  Decomposition full2_;
  double delta_ = 0.0;
};

CapacityCurve select_rank(const DataMatrix& x1, const DataMatrix& x2, const SweepConfig& config);

/// Capacity at a fixed rank for each width in sigmas (delta units).
std::vector<CurveEntry> range_sweep(const DataMatrix& x1, const DataMatrix& x2, Index k,
                                    std::span<const double> sigmas, const SweepConfig& config);

/// argmax over unflagged entries, smaller rank on ties.
Index select_from(const std::vector<CurveEntry>& entries, bool* degenerate = nullptr);

}  // namespace maxac
