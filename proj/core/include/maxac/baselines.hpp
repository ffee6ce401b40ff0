#pragma once

#include <vector>

#include "maxac/linalg.hpp"

namespace maxac {

struct RankScores {
  Index selected_rank = 0;
  Index k_min = 1;
  /// scores[i] belongs to rank k_min + i.
  std::vector<double> scores;
  /// True when the selected rank maximizes the score, false when it minimizes.
  bool higher_is_better = true;
};

/// PPCA evidence under the BIC approximation. Data are centered internally;
/// k_max must not exceed min(N, D) - 1.
RankScores bic_rank(const DataMatrix& x, Index k_min, Index k_max);

/// PPCA evidence under the Laplace approximation (Minka 2000).
RankScores laplace_evidence_rank(const DataMatrix& x, Index k_min, Index k_max);

/// Minimum transfer cost: fit on x1, map each row to its nearest row of x2,
/// score the reconstruction against the mapped row. Argmin over k.
RankScores mtc_rank(const DataMatrix& x1, const DataMatrix& x2, Index k_min, Index k_max);

/// argmin_k |clean - SVD_k(noisy)|^2, smallest k on ties.
RankScores best_denoising_rank(const DataMatrix& clean, const DataMatrix& noisy, Index k_min,
                               Index k_max);

/// Index of each row of `from` nearest to a row of `to`, ties to the smaller index.
std::vector<Index> nearest_rows(const Matrix& from, const Matrix& to);

}  // namespace maxac
