#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include <maxac/capacity_analytic.hpp>
#include <maxac/error.hpp>

#include "support.hpp"

namespace maxac {
namespace {

constexpr double kPi = std::numbers::pi;

struct Pair {
  DataMatrix x1;
  DataMatrix x2;
};

Pair seeded_pair(std::uint64_t seed, Index n = 10, Index d = 4) {
  const MixtureData m = test::small_mixture(seed, n, d, 3, 0.7);
  return {m.first, m.second};
}

TEST(UnconstrainedI, IdenticalDatasetsReduceToLogTerms) {
  const Pair p = seeded_pair(1);
  const AnalyticContext ctx(p.x1, p.x1, 2);
  const double dk = 4.0 * 2.0;
  const double logdet = ctx.column_gram2().array().log().sum();
  double prev = -INFINITY;
  for (double beta : {0.01, 0.1, 1.0, 10.0, 100.0}) {
    const double v = unconstrained_I(ctx, beta);
    EXPECT_NEAR(v, 0.5 * dk * std::log(beta / kPi) + 0.5 * logdet, 1e-12 * (1 + std::abs(v)));
    EXPECT_GT(v, prev);
    prev = v;
    EXPECT_NEAR(unconstrained_I(ctx, 2 * beta) - v, 0.5 * dk * std::log(2.0), 1e-12);
  }
}

TEST(UnconstrainedI, ColumnGramIsSquaredColumnNorm) {
  const Pair p = seeded_pair(2);
  const AnalyticContext ctx(p.x1, p.x2, 3);
  const Matrix& w = ctx.basis2().w();
  for (Index j = 0; j < w.cols(); ++j) {
    double g = 0.0;
    for (Index t = 0; t < w.rows(); ++t) g += w(t, j) * w(t, j);
    EXPECT_NEAR(ctx.column_gram2()(j), g, 1e-13);
  }
}

TEST(UnconstrainedBetaStar, DirectArithmetic) {
  const DataMatrix x1((Matrix(2, 2) << 2.0, 1.0, 1.0, 1.0).finished());
  const DataMatrix x2((Matrix(2, 2) << 4.0, 1.0, 1.0, 3.0).finished());
  const AnalyticContext ctx(x1, x2, 1);
  EXPECT_DOUBLE_EQ(ctx.squared_distance(), 8.0);
  EXPECT_DOUBLE_EQ(unconstrained_beta_star(ctx), 1.0);
}

TEST(UnconstrainedBetaStar, QuadrupledDistanceQuartersTemperature) {
  const Pair p = seeded_pair(3);
  const Matrix moved = p.x1.values() + 2.0 * (p.x2.values() - p.x1.values());
  const AnalyticContext a(p.x1, p.x2, 2);
  const AnalyticContext b(p.x1, DataMatrix(moved), 2);
  EXPECT_NEAR(b.squared_distance() / a.squared_distance(), 4.0, 1e-12);
  EXPECT_NEAR(unconstrained_beta_star(b) * 4.0 / unconstrained_beta_star(a), 1.0, 1e-12);
}

TEST(UnconstrainedBetaStar, StationaryConcaveAndDenseGridMaximum) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Pair p = seeded_pair(10 + seed);
    const AnalyticContext ctx(p.x1, p.x2, 2);
    const double bs = unconstrained_beta_star(ctx);
    const double h = 1e-5 * bs;
    const double slope = (unconstrained_I(ctx, bs + h) - unconstrained_I(ctx, bs - h)) / (2 * h);
    const double local = 0.5 * 4 * 2 / bs;  // Dk / (2 beta)
    EXPECT_LT(std::abs(slope), 1e-8 * local) << "slope " << slope;
    const double second = unconstrained_I(ctx, bs + h) - 2 * unconstrained_I(ctx, bs) +
                          unconstrained_I(ctx, bs - h);
    EXPECT_LT(second, 0.0);
    double best = -INFINITY, arg = 0.0;
    for (int q = 0; q < 10000; ++q) {
      const double beta = bs * std::pow(10.0, -2.0 + 4.0 * q / 9999.0);
      const double v = unconstrained_I(ctx, beta);
      if (v > best) {
        best = v;
        arg = beta;
      }
    }
    EXPECT_NEAR(arg / bs, 1.0, 1e-3);
    EXPECT_GE(unconstrained_I(ctx, bs), best);
  }
}

TEST(UnconstrainedBetaStar, IdenticalDatasetsSignal) {
  const Pair p = seeded_pair(4);
  const AnalyticContext ctx(p.x1, p.x1, 2);
  try {
    unconstrained_beta_star(ctx);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::infinite_temperature);
  }
}

TEST(AnalyticContext, Errors) {
  const Pair p = seeded_pair(5);
  EXPECT_THROW(AnalyticContext(p.x1, DataMatrix(test::random_matrix(9, 4, 1)), 2), Error);
  const AnalyticContext ctx(p.x1, p.x2, 2);
  EXPECT_THROW(unconstrained_I(ctx, 0.0), Error);
  EXPECT_THROW(BoundedContext(ctx, 0.0), Error);
  // A zero column of the data gives a zero basis column.
  Matrix z = p.x1.values();
  z.col(1).setZero();
  try {
    AnalyticContext bad{DataMatrix{z}, DataMatrix{z}, 2};
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::singular_basis);
  }
}

TEST(BoundedContext, ProjectionsInUnitInterval) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Pair p = seeded_pair(100 + seed, 8, 4);
    const CounterStream rng(seed, 9, 0);
    const Index k = 1 + static_cast<Index>(seed % 3);
    const AnalyticContext ctx(p.x1, p.x2, k);
    const double sigma = std::pow(10.0, -3.0 + 6.0 * rng.uniform(0));
    const double beta = std::pow(10.0, -3.0 + 6.0 * rng.uniform(1));
    const BoundedContext b(ctx, sigma);
    for (int which : {1, 2}) {
      const Vector f = b.projections(which, beta);
      EXPECT_GE(f.minCoeff(), 0.0);
      EXPECT_LT(f.maxCoeff(), 1.0);
    }
  }
}

TEST(BoundedContext, RegularizedColumnAndCodewords) {
  const Pair p = seeded_pair(6);
  const AnalyticContext ctx(p.x1, p.x2, 2);
  const BoundedContext b(ctx, 0.5);
  const Matrix a = b.regularized_column(1, 0, 2.0);
  const Vector w = ctx.basis1().w().col(0);
  const double ridge = 1.0 / (2 * 0.5 * 2.0 * 4);
  EXPECT_NEAR(a(0, 0), w(0) * w(0) + ridge, 1e-14);
  EXPECT_NEAR(a(0, 1), w(0) * w(1), 1e-14);
  EXPECT_NEAR(b.log_codewords(), 0.5 * 10 * 2 * std::log(2 * kPi * 0.5), 1e-12);
}

TEST(BoundedI, LargeWidthArgmaxApproachesUnconstrained) {
  // Rank 1: the ridge log-determinant adds no extra log(beta) terms.
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const Pair p = seeded_pair(20 + seed);
    const AnalyticContext ctx(p.x1, p.x2, 1);
    const BoundedContext b(ctx, 1e8);
    const double bs = unconstrained_beta_star(ctx);
    double best = -INFINITY, arg = 0.0;
    for (int q = 0; q < 4000; ++q) {
      const double beta = bs * std::pow(10.0, -1.0 + 2.0 * q / 3999.0);
      const double v = bounded_I(b, beta);
      if (v > best) {
        best = v;
        arg = beta;
      }
    }
    EXPECT_NEAR(arg / bs, 1.0, 2e-3);
  }
}

TEST(BoundedI, SignConventionInvariance) {
  const Pair p = seeded_pair(7);
  Decomposition f1 = full_svd(p.x1);
  Decomposition f2 = full_svd(p.x2);
  const AnalyticContext a(p.x1, p.x2, f1, f2, 2);
  const double before = bounded_I(BoundedContext(a, 0.3), 1.7);
  for (Decomposition* f : {&f1, &f2}) {
    f->u.col(1) *= -1.0;
    f->v.col(1) *= -1.0;
  }
  const AnalyticContext b(p.x1, p.x2, f1, f2, 2);
  EXPECT_NEAR(bounded_I(BoundedContext(b, 0.3), 1.7), before, 1e-10 * (1 + std::abs(before)));
}

TEST(RowwiseLogZ, SquareScalarCaseMatchesPerColumnForm) {
  // D = k = 1: the per-column and row-wise expressions coincide.
  const DataMatrix x1((Matrix(4, 1) << 1.0, -2.0, 0.5, 3.0).finished());
  const DataMatrix x2((Matrix(4, 1) << 1.5, -1.0, 0.0, 2.0).finished());
  const AnalyticContext ctx(x1, x2, 1);
  const double beta = 0.6;
  const double w2 = ctx.basis1().w()(0, 0) * ctx.basis1().w()(0, 0);
  const double per_column = 0.5 * 4 * std::log(kPi / beta) - 0.5 * 4 * std::log(w2);
  EXPECT_NEAR(rowwise_corrected_logZ(ctx, beta, WeightSumKind::first), per_column, 1e-12);
  const double w2b = ctx.basis2().w()(0, 0) * ctx.basis2().w()(0, 0);
  EXPECT_NEAR(rowwise_corrected_logZ(ctx, beta, WeightSumKind::second),
              0.5 * 4 * std::log(kPi / beta) - 0.5 * 4 * std::log(w2b), 1e-12);
}

TEST(RowwiseLogZ, InSpanDataHasNoResidual) {
  const Matrix w = test::random_matrix(2, 5, 8);
  const Matrix u0 = test::random_matrix(7, 2, 9);
  const DataMatrix x(u0 * w);
  const DataMatrix x2(test::random_matrix(7, 5, 10));
  const AnalyticContext ctx(x, x2, 2);
  const double beta = 1.3;
  const double expected = 0.5 * 7 * 2 * std::log(kPi / beta) -
                          0.5 * 7 * std::log(ctx.basis1().gram().determinant());
  EXPECT_NEAR(rowwise_corrected_logZ(ctx, beta, WeightSumKind::first), expected, 1e-9);
}

TEST(RowwiseLogZ, MonteCarloOfDefiningIntegral) {
  const Pair p = seeded_pair(11, 3, 2);
  const AnalyticContext ctx(p.x1, p.x2, 1);
  const double beta = 0.8;
  for (WeightSumKind which : {WeightSumKind::first, WeightSumKind::second, WeightSumKind::joint}) {
    const Matrix& w = which == WeightSumKind::second ? ctx.basis2().w() : ctx.basis1().w();
    const Matrix& x = which == WeightSumKind::second ? ctx.x2() : ctx.x1();
    const Vector center = (which == WeightSumKind::second ? ctx.basis2() : ctx.basis1())
                              .solve(which == WeightSumKind::joint ? Matrix(0.5 * (ctx.x1() + ctx.x2())) : x)
                              .col(0);
    auto cost = [&](const Vector& u) {
      const Matrix fit = u * w;
      if (which == WeightSumKind::joint) {
        return 0.5 * ((ctx.x1() - fit).squaredNorm() + (ctx.x2() - fit).squaredNorm());
      }
      return (x - fit).squaredNorm();
    };
    // Gaussian proposal, twice the width of the integrand.
    const double sd = 2.0 / std::sqrt(2.0 * beta * w.squaredNorm());
    const CounterStream rng(3, 17, static_cast<std::uint64_t>(which));
    const std::size_t samples = 1000000;
    double acc = 0.0;
    Vector u(3), z(3);
    for (std::size_t s = 0; s < samples; ++s) {
      rng.normals(3 * s, std::span<double>(z.data(), 3));
      u = center + sd * z;
      const double log_q = -0.5 * z.squaredNorm() - 3 * std::log(sd) - 1.5 * std::log(2 * kPi);
      acc += std::exp(-beta * cost(u) - log_q);
    }
    const double mc = std::log(acc / samples);
    const double exact = rowwise_corrected_logZ(ctx, beta, which);
    EXPECT_NEAR(mc, exact, 0.01 * std::max(1.0, std::abs(exact)));
  }
}

TEST(RowwiseLogZ, NonincreasingInTemperature) {
  const Pair p = seeded_pair(12);
  const AnalyticContext ctx(p.x1, p.x2, 2);
  for (WeightSumKind which : {WeightSumKind::first, WeightSumKind::second, WeightSumKind::joint}) {
    double prev = INFINITY;
    for (int q = 0; q < 200; ++q) {
      const double beta = std::pow(10.0, -4.0 + 8.0 * q / 199.0);
      const double v = rowwise_corrected_logZ(ctx, beta, which);
      EXPECT_LE(v, prev);
      prev = v;
    }
  }
}

}  // namespace
}  // namespace maxac
