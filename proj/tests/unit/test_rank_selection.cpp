#include <gtest/gtest.h>

#include <cstdlib>
#include <vector>

#include <maxac/capacity_analytic.hpp>
#include <maxac/error.hpp>
#include <maxac/rank_selection.hpp>

#include "support.hpp"

namespace maxac {
namespace {

SweepConfig small_config() {
  SweepConfig c;
  c.k_min = 1;
  c.k_max = 4;
  c.m_base = 64;
  c.m_cap = 256;
  c.seed = 5;
  return c;
}

MixtureData small_data(std::uint64_t seed) { return test::small_mixture(seed, 30, 6, 3, 0.5); }

void expect_same_curve(const CapacityCurve& a, const CapacityCurve& b) {
  ASSERT_EQ(a.entries.size(), b.entries.size());
  EXPECT_EQ(a.selected_rank, b.selected_rank);
  EXPECT_EQ(a.all_ranks_degenerate, b.all_ranks_degenerate);
  for (std::size_t i = 0; i < a.entries.size(); ++i) {
    EXPECT_EQ(a.entries[i].point.capacity, b.entries[i].point.capacity);
    EXPECT_EQ(a.entries[i].point.beta_star, b.entries[i].point.beta_star);
    EXPECT_EQ(a.entries[i].point.grid_capacity, b.entries[i].point.grid_capacity);
    EXPECT_EQ(a.entries[i].members, b.entries[i].members);
  }
}

TEST(SelectRank, SameSeedSameCurve) {
  const MixtureData d = small_data(1);
  for (Method m : {Method::numeric_gaussian, Method::numeric_grid}) {
    SweepConfig c = small_config();
    c.method = m;
    expect_same_curve(select_rank(d.first, d.second, c), select_rank(d.first, d.second, c));
  }
}

TEST(SelectRank, ThreadCountDoesNotChangeResults) {
  const MixtureData d = small_data(2);
  const SweepConfig c = small_config();
  setenv("MAXAC_THREADS", "1", 1);
  const CapacityCurve one = select_rank(d.first, d.second, c);
  setenv("MAXAC_THREADS", "4", 1);
  const CapacityCurve four = select_rank(d.first, d.second, c);
  unsetenv("MAXAC_THREADS");
  expect_same_curve(one, four);
}

TEST(SelectRank, CommonScaleLeavesArgmaxUnchanged) {
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const MixtureData d = small_data(10 + seed);
    const SweepConfig c = small_config();
    const CapacityCurve base = select_rank(d.first, d.second, c);
    const CapacityCurve scaled = select_rank(DataMatrix(10.0 * d.first.values()),
                                             DataMatrix(10.0 * d.second.values()), c);
    EXPECT_EQ(base.selected_rank, scaled.selected_rank);
    for (std::size_t i = 0; i < base.entries.size(); ++i) {
      const CapacityPoint& p = base.entries[i].point;
      const CapacityPoint& q = scaled.entries[i].point;
      EXPECT_EQ(p.no_interior_maximum, q.no_interior_maximum);
      EXPECT_NEAR(q.capacity, p.capacity, 1e-8 * (1 + std::abs(p.capacity)));
      if (!p.no_interior_maximum) EXPECT_NEAR(q.beta_star * 100.0 / p.beta_star, 1.0, 1e-6);
    }
  }
}

TEST(SelectRank, MembersPerRankAndCap) {
  SweepConfig c;
  EXPECT_EQ(c.members_at(1), 1024u);
  EXPECT_EQ(c.members_at(2), 2048u);
  EXPECT_EQ(c.members_at(7), 65536u);
  EXPECT_EQ(c.members_at(8), 65536u);
  c.m_growth = 1.0;
  EXPECT_EQ(c.members_at(5), 1024u);
}

TEST(SelectRank, RankEntriesDoNotDependOnRangeStart) {
  const MixtureData d = small_data(3);
  SweepConfig c = small_config();
  const CapacityCurve full = select_rank(d.first, d.second, c);
  c.k_min = 3;
  const CapacityCurve tail = select_rank(d.first, d.second, c);
  ASSERT_EQ(tail.entries.size(), 2u);
  EXPECT_EQ(tail.entries[0].point.capacity, full.entries[2].point.capacity);
  EXPECT_EQ(tail.entries[1].point.capacity, full.entries[3].point.capacity);
}

TEST(SelectRank, SwapFlagMatchesSwappedArguments) {
  const MixtureData d = small_data(4);
  SweepConfig c = small_config();
  const CapacityCurve direct = select_rank(d.second, d.first, c);
  c.swap_datasets = true;
  expect_same_curve(direct, select_rank(d.first, d.second, c));
}

TEST(SelectRank, AnalyticUnconstrainedPassesClosedForm) {
  const MixtureData d = small_data(5);
  SweepConfig c = small_config();
  c.method = Method::analytic_unconstrained;
  const CapacityCurve curve = select_rank(d.first, d.second, c);
  const double sq = (d.first.values() - d.second.values()).squaredNorm();
  for (const CurveEntry& e : curve.entries) {
    const double k = static_cast<double>(e.point.rank);
    EXPECT_NEAR(e.point.beta_star / (2.0 * 30 * 6 * k / sq), 1.0, 1e-14);
    const AnalyticContext ctx(d.first, d.second, e.point.rank);
    EXPECT_DOUBLE_EQ(e.point.capacity, unconstrained_I(ctx, e.point.beta_star));
  }
}

TEST(SelectRank, AnalyticBoundedReportsVariance) {
  const MixtureData d = small_data(6);
  SweepConfig c = small_config();
  c.method = Method::analytic_bounded;
  c.sigma = 2.0;
  const CapacityCurve curve = select_rank(d.first, d.second, c);
  for (const CurveEntry& e : curve.entries) {
    EXPECT_NEAR(e.sigma_abs, (2.0 * e.delta) * (2.0 * e.delta), 1e-12);
    EXPECT_TRUE(std::isfinite(e.point.capacity));
  }
}

TEST(SelectRank, IdenticalDatasetsAllDegenerate) {
  const MixtureData d = small_data(7);
  const CapacityCurve curve = select_rank(d.first, d.first, small_config());
  EXPECT_TRUE(curve.all_ranks_degenerate);
  EXPECT_EQ(curve.selected_rank, 1);
  for (const auto& e : curve.entries) EXPECT_TRUE(e.point.no_interior_maximum);
  EXPECT_GT(curve.entries.front().delta, 0.0);
}

CurveEntry entry(Index k, double capacity, bool flagged) {
  CurveEntry e;
  e.point.rank = k;
  e.point.capacity = capacity;
  e.point.no_interior_maximum = flagged;
  return e;
}

TEST(SelectFrom, TiesGoToSmallerRankAndFlagsExcluded) {
  bool degenerate = true;
  EXPECT_EQ(select_from({entry(1, 0.1, false), entry(2, 0.3, false), entry(3, 0.3, false)},
                        &degenerate),
            2);
  EXPECT_FALSE(degenerate);
  EXPECT_EQ(select_from({entry(2, 0.1, false), entry(3, 9.0, true)}), 2);
  EXPECT_EQ(select_from({entry(2, 0.1, true), entry(3, 9.0, true)}, &degenerate), 2);
  EXPECT_TRUE(degenerate);
  EXPECT_THROW(select_from({}), Error);
}

TEST(RangeSweep, SinglePointEqualsSelectRankEntry) {
  const MixtureData d = small_data(8);
  const SweepConfig c = small_config();
  const CapacityCurve curve = select_rank(d.first, d.second, c);
  const std::vector<double> sigmas{c.sigma};
  const auto sweep = range_sweep(d.first, d.second, 3, sigmas, c);
  ASSERT_EQ(sweep.size(), 1u);
  EXPECT_EQ(sweep[0].point.capacity, curve.entries[2].point.capacity);
  EXPECT_EQ(sweep[0].point.beta_star, curve.entries[2].point.beta_star);
}

TEST(RangeSweep, SigmaLadderAndErrors) {
  const MixtureData d = small_data(9);
  const SweepConfig c = small_config();
  const std::vector<double> sigmas{0.01, 1.0, 100.0};
  const auto sweep = range_sweep(d.first, d.second, 2, sigmas, c);
  ASSERT_EQ(sweep.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_DOUBLE_EQ(sweep[i].sigma, sigmas[i]);
    EXPECT_DOUBLE_EQ(sweep[i].sigma_abs, sigmas[i] * sweep[i].delta);
  }
  EXPECT_THROW(range_sweep(d.first, d.second, 2, std::vector<double>{}, c), Error);
  EXPECT_THROW(range_sweep(d.first, d.second, 2, std::vector<double>{-1.0}, c), Error);
}

TEST(SweepConfig, ValidationErrors) {
  const MixtureData d = small_data(10);
  auto code_of = [&](SweepConfig c) {
    try {
      select_rank(d.first, d.second, c);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::io_error;  // not thrown
  };
  SweepConfig c = small_config();
  c.k_max = 7;
  EXPECT_EQ(code_of(c), ErrorCode::rank_out_of_range);
  c = small_config();
  c.k_min = 0;
  EXPECT_EQ(code_of(c), ErrorCode::rank_out_of_range);
  c = small_config();
  c.sigma = 0.0;
  EXPECT_EQ(code_of(c), ErrorCode::invalid_config);
  c = small_config();
  c.m_base = 1;
  EXPECT_EQ(code_of(c), ErrorCode::invalid_config);
  c = small_config();
  c.beta_hi = c.beta_lo;
  EXPECT_EQ(code_of(c), ErrorCode::invalid_config);
  try {
    select_rank(d.first, DataMatrix(test::random_matrix(29, 6, 1)), small_config());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::shape_error);
  }
}

TEST(Method, NamesRoundTrip) {
  for (Method m : {Method::numeric_gaussian, Method::numeric_grid, Method::analytic_unconstrained,
                   Method::analytic_bounded}) {
    EXPECT_EQ(parse_method(to_string(m)), m);
  }
  EXPECT_FALSE(parse_method("nope").has_value());
}

}  // namespace
}  // namespace maxac
