#pragma once

#include <vector>

#include "maxac/linalg.hpp"

namespace maxac {

/// Rank-k decompositions of both datasets and the Gram quantities the
/// closed-form capacities need.
class AnalyticContext {
 public:
  AnalyticContext(const DataMatrix& x1, const DataMatrix& x2, Index rank);
  /// Reuses full decompositions of x1 and x2.
  AnalyticContext(const DataMatrix& x1, const DataMatrix& x2, const Decomposition& full1,
                  const Decomposition& full2, Index rank);

  Index objects() const noexcept { return x1_.rows(); }
  Index dims() const noexcept { return x1_.cols(); }
  Index rank() const noexcept { return svd1_.rank(); }

  const Matrix& x1() const noexcept { return x1_; }
  const Matrix& x2() const noexcept { return x2_; }
  const Decomposition& svd1() const noexcept { return svd1_; }
  const Decomposition& svd2() const noexcept { return svd2_; }
  const Basis& basis1() const noexcept { return basis1_; }
  const Basis& basis2() const noexcept { return basis2_; }
  /// Column Gram scalars g_j = sum_t w_tj^2.
  const Vector& column_gram1() const noexcept { return g1_; }
  const Vector& column_gram2() const noexcept { return g2_; }
  /// Sum_ij (x1_ij - x2_ij)^2.
  double squared_distance() const noexcept { return sqdist_; }

 private:
  Matrix x1_;
  Matrix x2_;
  Decomposition svd1_;
  Decomposition svd2_;
  Basis basis1_;
  Basis basis2_;
  Vector g1_;
  Vector g2_;
  double sqdist_ = 0.0;
};

/// (Dk/2) log(beta/pi) + 1/2 sum_j log g2_j - beta/(4N) sum_ij (dx_ij)^2.
double unconstrained_I(const AnalyticContext& ctx, double beta);

/// 2NDk / sum_ij (dx_ij)^2. Throws infinite_temperature when X1 = X2.
double unconstrained_beta_star(const AnalyticContext& ctx);

/// Gaussian-weighted hypothesis space around U1; sigma is the variance of
/// the weight exp(-|U - U1|^2 / (2 sigma)).
class BoundedContext {
 public:
  BoundedContext(const AnalyticContext& ctx, double sigma);

  const AnalyticContext& context() const noexcept { return *ctx_; }
  double sigma() const noexcept { return sigma_; }
  /// (Nk/2) log(2 pi sigma).
  double log_codewords() const noexcept;

  /// a_j = w_j w_j^T + I / (2 sigma beta D) for basis 1 or 2.
  Matrix regularized_column(int which, Index j, double beta) const;
  /// F_j = w_j^T a_j^{-1} w_j for every column.
  Vector projections(int which, double beta) const;

 private:
  const AnalyticContext* ctx_;
  double sigma_;
};

double bounded_I(const BoundedContext& bctx, double beta);

enum class WeightSumKind { first, second, joint };

/// Exact log of the integral of exp(-beta R) over U, done row by row with
/// the full k x k quadratic form. first/second use each dataset with its own
/// basis; joint integrates (R1 + R2)/2 in basis 1.
double rowwise_corrected_logZ(const AnalyticContext& ctx, double beta, WeightSumKind which);

}  // namespace maxac
