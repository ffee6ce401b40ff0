#include "maxac/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "maxac/error.hpp"

namespace maxac {

namespace {

void check_range(Index k_min, Index k_max, Index limit) {
  if (k_min < 1 || k_max < k_min || k_max > limit) {
    throw Error(ErrorCode::rank_out_of_range, "rank range [" + std::to_string(k_min) + ", " +
                                                  std::to_string(k_max) + "] outside [1, " +
                                                  std::to_string(limit) + "]");
  }
}

void check_same_shape(const DataMatrix& a, const DataMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorCode::shape_error, "datasets differ in shape");
  }
}

// Smallest rank whose score is within `tie` of the best one.
RankScores pick(std::vector<double> scores, Index k_min, bool higher_is_better,
                double tie = 0.0) {
  RankScores out;
  out.k_min = k_min;
  out.higher_is_better = higher_is_better;
  double best = scores.front();
  for (double s : scores) best = higher_is_better ? std::max(best, s) : std::min(best, s);
  std::size_t arg = 0;
  while (std::abs(scores[arg] - best) > tie) ++arg;
  out.selected_rank = k_min + static_cast<Index>(arg);
  out.scores = std::move(scores);
  return out;
}

// Sample covariance eigenvalues of centered data, descending, length D.
Vector covariance_spectrum(const DataMatrix& x) {
  const Matrix c = centered(x.values());
  Eigen::BDCSVD<Matrix> svd(c);
  Vector spectrum = Vector::Zero(x.cols());
  const Vector& s = svd.singularValues();
  spectrum.head(s.size()) = s.array().square() / static_cast<double>(x.rows());
  return spectrum;
}

struct EvidenceTerms {
  double log_likelihood;  // pl + pv
  double prior;           // pu
  double param_volume;    // pp
  double hessian;         // pa
  double params;          // m + k
};

EvidenceTerms evidence_terms(const Vector& spectrum, Index n_rows, Index k) {
  const double n = static_cast<double>(n_rows);
  const Index d = spectrum.size();
  const double dd = static_cast<double>(d);
  const double kk = static_cast<double>(k);
  constexpr double tiny = std::numeric_limits<double>::min();

  double pu = -kk * std::numbers::ln2;
  for (Index i = 1; i <= k; ++i) {
    const double h = (dd - static_cast<double>(i) + 1.0) / 2.0;
    pu += std::lgamma(h) - std::log(std::numbers::pi) * h;
  }

  double pl = 0.0;
  for (Index j = 0; j < k; ++j) pl += std::log(std::max(spectrum(j), tiny));
  pl *= -n / 2.0;

  const double v = std::max(spectrum.tail(d - k).sum() / (dd - kk), tiny);
  const double pv = -n * (dd - kk) / 2.0 * std::log(v);

  const double m = dd * kk - kk * (kk + 1.0) / 2.0;
  const double pp = std::log(2.0 * std::numbers::pi) * (m + kk) / 2.0;

  Vector hat = spectrum;
  hat.tail(d - k).setConstant(v);
  double pa = 0.0;
  for (Index i = 0; i < k; ++i) {
    for (Index j = i + 1; j < d; ++j) {
      const double gap = std::max(spectrum(i) - spectrum(j), tiny);
      const double inv = std::max(1.0 / std::max(hat(j), tiny) - 1.0 / std::max(hat(i), tiny), tiny);
      pa += std::log(gap) + std::log(inv) + std::log(n);
    }
  }
  return {pl + pv, pu, pp, pa, m + kk};
}

}  // namespace

RankScores bic_rank(const DataMatrix& x, Index k_min, Index k_max) {
  check_range(k_min, k_max, std::min(x.rows(), x.cols()) - 1);
  const Vector spectrum = covariance_spectrum(x);
  const double log_n = std::log(static_cast<double>(x.rows()));
  std::vector<double> scores;
  for (Index k = k_min; k <= k_max; ++k) {
    const EvidenceTerms t = evidence_terms(spectrum, x.rows(), k);
    scores.push_back(t.log_likelihood - t.params / 2.0 * log_n);
  }
  return pick(std::move(scores), k_min, true);
}

RankScores laplace_evidence_rank(const DataMatrix& x, Index k_min, Index k_max) {
  check_range(k_min, k_max, std::min(x.rows(), x.cols()) - 1);
  const Vector spectrum = covariance_spectrum(x);
  const double log_n = std::log(static_cast<double>(x.rows()));
  std::vector<double> scores;
  for (Index k = k_min; k <= k_max; ++k) {
    const EvidenceTerms t = evidence_terms(spectrum, x.rows(), k);
    scores.push_back(t.prior + t.log_likelihood + t.param_volume - t.hessian / 2.0 -
                     static_cast<double>(k) / 2.0 * log_n);
  }
  return pick(std::move(scores), k_min, true);
}

std::vector<Index> nearest_rows(const Matrix& from, const Matrix& to) {
  if (from.cols() != to.cols() || to.rows() < 1) {
    throw Error(ErrorCode::shape_error, "row sets differ in dimension");
  }
  std::vector<Index> psi(static_cast<std::size_t>(from.rows()));
  for (Index i = 0; i < from.rows(); ++i) {
    Index best = 0;
    double best_dist = std::numeric_limits<double>::infinity();
    for (Index r = 0; r < to.rows(); ++r) {
      const double dist = (to.row(r) - from.row(i)).squaredNorm();
      if (dist < best_dist) {
        best_dist = dist;
        best = r;
      }
    }
    psi[static_cast<std::size_t>(i)] = best;
  }
  return psi;
}

RankScores mtc_rank(const DataMatrix& x1, const DataMatrix& x2, Index k_min, Index k_max) {
  check_same_shape(x1, x2);
  check_range(k_min, k_max, std::min(x1.rows(), x1.cols()));
  const std::vector<Index> psi = nearest_rows(x1.values(), x2.values());
  Matrix mapped(x2.rows(), x2.cols());
  for (Index i = 0; i < x1.rows(); ++i) mapped.row(i) = x2.values().row(psi[static_cast<std::size_t>(i)]);
  const Decomposition full = full_svd(x1);
  std::vector<double> scores;
  for (Index k = k_min; k <= k_max; ++k) {
    const Decomposition d = truncate(full, k);
    scores.push_back((mapped - d.reconstruction()).squaredNorm());
  }
  return pick(std::move(scores), k_min, false);
}

RankScores best_denoising_rank(const DataMatrix& clean, const DataMatrix& noisy, Index k_min,
                               Index k_max) {
  check_same_shape(clean, noisy);
  check_range(k_min, k_max, std::min(noisy.rows(), noisy.cols()));
  const Decomposition full = full_svd(noisy);
  std::vector<double> scores;
  for (Index k = k_min; k <= k_max; ++k) {
    scores.push_back((clean.values() - truncate(full, k).reconstruction()).squaredNorm());
  }
  // Rounding noise must not split an exact tie at zero distance.
  const double tie = 64.0 * std::numeric_limits<double>::epsilon() *
                     std::max(clean.values().squaredNorm(), noisy.values().squaredNorm());
  return pick(std::move(scores), k_min, false, tie);
}

}  // namespace maxac
