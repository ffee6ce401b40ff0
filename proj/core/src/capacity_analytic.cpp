#include "maxac/capacity_analytic.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "maxac/error.hpp"

namespace maxac {

namespace {

void check_positive_beta(double beta) {
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw Error(ErrorCode::invalid_input, "beta must be finite and positive, got " +
                                              std::to_string(beta));
  }
}

const DataMatrix& same_shape(const DataMatrix& x1, const DataMatrix& x2) {
  if (x1.rows() != x2.rows() || x1.cols() != x2.cols()) {
    throw Error(ErrorCode::shape_error, "datasets differ in shape");
  }
  return x1;
}

Vector column_gram(const Basis& b) {
  Vector g = b.w().colwise().squaredNorm().transpose();
  for (Index j = 0; j < g.size(); ++j) {
    if (!(g(j) > 0.0)) {
      throw Error(ErrorCode::singular_basis,
                  "basis column " + std::to_string(j + 1) + " is zero");
    }
  }
  return g;
}

// Residual energy of x outside the row space of the basis.
double residual_energy(const Matrix& x, const Basis& b) {
  const Matrix u = b.solve(x);
  return (x - u * b.w()).squaredNorm();
}

double log_det_spd(const Matrix& a) {
  Eigen::LLT<Matrix> llt(a);
  if (llt.info() != Eigen::Success) {
    throw Error(ErrorCode::singular_basis, "matrix is not positive definite");
  }
  return 2.0 * llt.matrixLLT().diagonal().array().log().sum();
}

}  // namespace

AnalyticContext::AnalyticContext(const DataMatrix& x1, const DataMatrix& x2, Index rank)
    : AnalyticContext(same_shape(x1, x2), x2, full_svd(x1), full_svd(x2), rank) {}

AnalyticContext::AnalyticContext(const DataMatrix& x1, const DataMatrix& x2,
                                 const Decomposition& full1, const Decomposition& full2,
                                 Index rank)
    : x1_(same_shape(x1, x2).values()),
      x2_(x2.values()),
      svd1_(truncate(full1, rank)),
      svd2_(truncate(full2, rank)),
      basis1_(Basis::from(svd1_)),
      basis2_(Basis::from(svd2_)),
      g1_(column_gram(basis1_)),
      g2_(column_gram(basis2_)),
      sqdist_((x1_ - x2_).squaredNorm()) {}

double unconstrained_I(const AnalyticContext& ctx, double beta) {
  check_positive_beta(beta);
  const double n = static_cast<double>(ctx.objects());
  const double dk = static_cast<double>(ctx.dims() * ctx.rank());
  return 0.5 * dk * std::log(beta / std::numbers::pi) +
         0.5 * ctx.column_gram2().array().log().sum() -
         beta / (4.0 * n) * ctx.squared_distance();
}

double unconstrained_beta_star(const AnalyticContext& ctx) {
  if (!(ctx.squared_distance() > 0.0)) {
    throw Error(ErrorCode::infinite_temperature,
                "identical datasets: the capacity grows without bound in beta");
  }
  const double n = static_cast<double>(ctx.objects());
  const double dk = static_cast<double>(ctx.dims() * ctx.rank());
  return 2.0 * n * dk / ctx.squared_distance();
}

BoundedContext::BoundedContext(const AnalyticContext& ctx, double sigma)
    : ctx_(&ctx), sigma_(sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw Error(ErrorCode::invalid_scale, "gaussian width must be positive, got " +
                                              std::to_string(sigma));
  }
}

double BoundedContext::log_codewords() const noexcept {
  const double nk = static_cast<double>(ctx_->objects() * ctx_->rank());
  return 0.5 * nk * std::log(2.0 * std::numbers::pi * sigma_);
}

Matrix BoundedContext::regularized_column(int which, Index j, double beta) const {
  check_positive_beta(beta);
  const Matrix& w = which == 1 ? ctx_->basis1().w() : ctx_->basis2().w();
  const double ridge = 1.0 / (2.0 * sigma_ * beta * static_cast<double>(ctx_->dims()));
  Matrix a = w.col(j) * w.col(j).transpose();
  a.diagonal().array() += ridge;
  return a;
}

Vector BoundedContext::projections(int which, double beta) const {
  const Matrix& w = which == 1 ? ctx_->basis1().w() : ctx_->basis2().w();
  Vector f(w.cols());
  for (Index j = 0; j < w.cols(); ++j) {
    const Eigen::LLT<Matrix> llt(regularized_column(which, j, beta));
    f(j) = w.col(j).dot(llt.solve(w.col(j)));
  }
  return f;
}

double bounded_I(const BoundedContext& bctx, double beta) {
  check_positive_beta(beta);
  const AnalyticContext& ctx = bctx.context();
  const double n = static_cast<double>(ctx.objects());
  const double d = static_cast<double>(ctx.dims());
  const double k = static_cast<double>(ctx.rank());
  const double sigma = bctx.sigma();
  const Matrix& u1 = ctx.svd1().u;
  const Matrix& x1 = ctx.x1();
  const Matrix& x2 = ctx.x2();
  const Vector f1 = bctx.projections(1, beta);
  const Vector f2 = bctx.projections(2, beta);

  double log_det = 0.0;
  double anchor = 0.0;
  for (Index j = 0; j < ctx.dims(); ++j) {
    const Matrix a2 = bctx.regularized_column(2, j, beta);
    log_det += log_det_spd(a2);
    const Eigen::LLT<Matrix> llt(a2);
    // sum_i u_i a2_j^{-1} u_i^T
    anchor += (u1.transpose().array() * llt.solve(u1.transpose()).array()).sum();
  }

  double bracket = 0.0;
  for (Index j = 0; j < ctx.dims(); ++j) {
    const auto a = x1.col(j).array();
    const auto b = x2.col(j).array();
    bracket += (a.square() * (1.0 - 1.5 * f1(j)) +
                b.square() * (1.0 - 2.0 * f2(j) + 0.5 * f1(j)) + a * b * f1(j))
                   .sum();
  }

  return 0.5 * k * std::log(2.0 * std::numbers::pi * sigma) +
         0.5 * k * d * std::log(beta / std::numbers::pi) + 0.5 * log_det +
         u1.squaredNorm() / (2.0 * sigma * n) +
         anchor / (4.0 * beta * sigma * sigma * d * d * n) + beta / (2.0 * n) * bracket;
}

double rowwise_corrected_logZ(const AnalyticContext& ctx, double beta, WeightSumKind which) {
  check_positive_beta(beta);
  const double n = static_cast<double>(ctx.objects());
  const double k = static_cast<double>(ctx.rank());
  const Basis& basis = which == WeightSumKind::second ? ctx.basis2() : ctx.basis1();
  const double base = 0.5 * n * k * std::log(std::numbers::pi / beta) -
                      0.5 * n * log_det_spd(basis.gram());
  switch (which) {
    case WeightSumKind::first:
      return base - beta * residual_energy(ctx.x1(), basis);
    case WeightSumKind::second:
      return base - beta * residual_energy(ctx.x2(), basis);
    case WeightSumKind::joint: {
      // (|x1 - uW|^2 + |x2 - uW|^2) / 2 = |xbar - uW|^2 + |x1 - x2|^2 / 4
      const Matrix mean = 0.5 * (ctx.x1() + ctx.x2());
      return base - beta * residual_energy(mean, basis) - 0.25 * beta * ctx.squared_distance();
    }
  }
  return base;
}

}  // namespace maxac
