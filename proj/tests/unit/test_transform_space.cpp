#include <gtest/gtest.h>

#include <cmath>
#include <set>
#include <utility>

#include <maxac/error.hpp>
#include <maxac/transform_space.hpp>

#include "support.hpp"

namespace maxac {
namespace {

TEST(GaussianSet, SingleMemberIsTheCenter) {
  const Matrix c = test::random_matrix(4, 2, 1);
  const auto set = sample_gaussian(c, 0.3, 1, 7);
  ASSERT_EQ(set.size(), 1u);
  EXPECT_EQ(set.member(0), c);
}

TEST(GaussianSet, MemberZeroIsExactlyTheCenter) {
  const Matrix c = test::random_matrix(4, 2, 2);
  const auto set = sample_gaussian(c, 0.3, 50, 7);
  EXPECT_EQ(set.member(0), c);
  Matrix off;
  set.offset(0, off);
  EXPECT_TRUE(off.isZero(0.0));
}

TEST(GaussianSet, SameSeedSameBits) {
  const Matrix c = test::random_matrix(3, 3, 3);
  const auto a = sample_gaussian(c, 1.5, 64, 11);
  const auto b = sample_gaussian(c, 1.5, 64, 11);
  const auto other = sample_gaussian(c, 1.5, 64, 12);
  for (std::size_t m = 0; m < 64; ++m) EXPECT_EQ(a.member(m), b.member(m));
  EXPECT_NE(a.member(5), other.member(5));
}

TEST(GaussianSet, SampleStandardDeviationWithinTwoPercent) {
  const Matrix c = Matrix::Zero(3, 2);
  const double sigma = 0.7;
  const auto set = sample_gaussian(c, sigma, 10000, 99);
  double sum = 0.0, sq = 0.0;
  std::size_t n = 0;
  Matrix off;
  for (std::size_t m = 1; m < set.size(); ++m) {
    set.offset(m, off);
    sum += off.sum();
    sq += off.squaredNorm();
    n += static_cast<std::size_t>(off.size());
  }
  const double mean = sum / static_cast<double>(n);
  const double sd = std::sqrt((sq - static_cast<double>(n) * mean * mean) / static_cast<double>(n - 1));
  EXPECT_NEAR(sd / sigma, 1.0, 0.02);
}

TEST(GaussianSet, InvalidArguments) {
  const Matrix c = Matrix::Zero(2, 2);
  try {
    sample_gaussian(c, 0.0, 4, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::invalid_scale);
  }
  EXPECT_THROW(sample_gaussian(c, -1.0, 4, 0), Error);
  EXPECT_THROW(sample_gaussian(c, 1.0, 0, 0), Error);
}

TEST(GridSet, TinyGridIsExhaustiveAndCentered) {
  const Matrix c = (Matrix(2, 1) << 1.0, -2.0).finished();
  const double extent = 2.0;
  const auto set = sample_grid(c, extent, 3, 20, 0);
  ASSERT_EQ(set.size(), 9u);
  EXPECT_EQ(set.member(0), c);
  std::set<std::pair<double, double>> nodes;
  Matrix off;
  for (std::size_t m = 0; m < set.size(); ++m) {
    set.offset(m, off);
    nodes.emplace(off(0, 0), off(1, 0));
  }
  std::set<std::pair<double, double>> expected;
  for (double a : {-1.0, 0.0, 1.0})
    for (double b : {-1.0, 0.0, 1.0}) expected.emplace(a, b);
  EXPECT_EQ(nodes, expected);
}

TEST(GridSet, SubsampledNodesStayInHypercubeOnLattice) {
  const Matrix c = test::random_matrix(6, 3, 4);
  const double extent = 0.8;
  const std::size_t points = 5;
  const auto set = sample_grid(c, extent, points, 500, 21);
  ASSERT_EQ(set.size(), 500u);
  EXPECT_EQ(set.member(0), c);
  const double step = extent / static_cast<double>(points - 1);
  std::set<std::vector<long>> seen;
  Matrix off;
  for (std::size_t m = 0; m < set.size(); ++m) {
    set.offset(m, off);
    std::vector<long> key;
    for (Index i = 0; i < off.size(); ++i) {
      const double v = off.data()[i];
      ASSERT_LE(std::abs(v), extent / 2 + 1e-15);
      const double units = v / step;
      ASSERT_NEAR(units, std::round(units), 1e-9);
      key.push_back(std::lround(units));
    }
    seen.insert(key);
  }
  // Without replacement.
  EXPECT_EQ(seen.size(), set.size());
}

TEST(GridSet, DenseSubsampleWithoutReplacement) {
  // 3^4 = 81 nodes, 60 requested: the dense path.
  const Matrix c = Matrix::Zero(2, 2);
  const auto set = sample_grid(c, 1.0, 3, 60, 5);
  ASSERT_EQ(set.size(), 60u);
  std::set<std::vector<double>> seen;
  Matrix off;
  for (std::size_t m = 0; m < set.size(); ++m) {
    set.offset(m, off);
    seen.insert(std::vector<double>(off.data(), off.data() + off.size()));
  }
  EXPECT_EQ(seen.size(), 60u);
}

TEST(GridSet, HugeLatticeStillBoundedAndDeterministic) {
  const Matrix c = Matrix::Zero(200, 4);
  const auto a = sample_grid(c, 1.0, 5, 64, 3);
  const auto b = sample_grid(c, 1.0, 5, 64, 3);
  for (std::size_t m = 0; m < 64; ++m) {
    EXPECT_EQ(a.member(m), b.member(m));
    EXPECT_LE(a.member(m).cwiseAbs().maxCoeff(), 0.5);
  }
}

TEST(GridSet, InvalidArguments) {
  const Matrix c = Matrix::Zero(2, 1);
  EXPECT_THROW(sample_grid(c, 0.0, 3, 9, 0), Error);
  try {
    sample_grid(c, 1.0, 1, 9, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::invalid_scale);
  }
}

TEST(DeltaScale, IdenticalDatasetsGiveZero) {
  const DataMatrix x(test::random_matrix(10, 5, 5));
  const Decomposition d = truncated_svd(x, 3);
  EXPECT_NEAR(delta_scale(x, d), 0.0, 1e-12);
}

TEST(DeltaScale, ConstructedDisplacementOfFixedRowNorm) {
  const DataMatrix x1(test::random_matrix(12, 6, 6));
  const Decomposition d = truncated_svd(x1, 3);
  const Basis w = Basis::from(d);
  const double c = 0.37;
  Matrix e = test::random_matrix(12, 3, 7);
  e = (e.array().colwise() / e.rowwise().norm().array()).matrix() * c;
  const DataMatrix x2((d.u + e) * w.w());
  EXPECT_NEAR(delta_scale(x2, d), c, 1e-10);
}

TEST(DeltaScale, MatchesRowByRowPseudoinverse) {
  const MixtureData data = generate_pair(MixtureSpec{});
  const Decomposition d = truncated_svd(data.first, 4);
  const Matrix wt = Basis::from(d).w().transpose();  // D x k
  const Matrix pinv = wt.completeOrthogonalDecomposition().pseudoInverse();
  double total = 0.0;
  for (Index i = 0; i < data.second.rows(); ++i) {
    const Vector ui = pinv * data.second.values().row(i).transpose();
    total += (ui - d.u.row(i).transpose()).norm();
  }
  const double oracle = total / static_cast<double>(data.second.rows());
  EXPECT_NEAR(delta_scale(data.second, d) / oracle, 1.0, 1e-10);
}

TEST(DeltaScale, ShapeMismatch) {
  const DataMatrix x1(test::random_matrix(8, 4, 8));
  const Decomposition d = truncated_svd(x1, 2);
  EXPECT_THROW(delta_scale(DataMatrix(test::random_matrix(8, 5, 9)), d), Error);
}

}  // namespace
}  // namespace maxac
