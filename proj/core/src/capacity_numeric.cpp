#include "maxac/capacity_numeric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "maxac/error.hpp"
#include "maxac/parallel.hpp"

namespace maxac {

namespace {

constexpr std::size_t kBlockChunk = 16;

void check_beta(double beta) {
  if (!(beta >= 0.0) || !std::isfinite(beta)) {
    throw Error(ErrorCode::invalid_input, "beta must be finite and nonnegative, got " +
                                              std::to_string(beta));
  }
}

void check_costs(const CostTriple& c) {
  if (c.r1.rows() < 1 || c.r1.cols() < 1 || c.r2.rows() != c.r1.rows() ||
      c.r2.cols() != c.r1.cols() || c.rd.rows() != c.r1.rows() || c.rd.cols() != c.r1.cols()) {
    throw Error(ErrorCode::shape_error, "cost arrays must be nonempty and of equal shape");
  }
}

// Per-block minima, used as the logsumexp shift.
struct Shifts {
  Eigen::ArrayXd m1, m2, md;
  explicit Shifts(const CostTriple& c)
      : m1(c.r1.colwise().minCoeff().transpose()),
        m2(c.r2.colwise().minCoeff().transpose()),
        md(c.rd.colwise().minCoeff().transpose()) {}
};

struct BlockStats {
  double log_sum = 0.0;  // log sum_m exp(-beta (R - min))
  double mean = 0.0;     // E[R - min]
  double var = 0.0;
};

BlockStats block_stats(const Eigen::Ref<const Eigen::ArrayXd>& r, double shift, double beta,
                       bool moments) {
  BlockStats out;
  const Eigen::ArrayXd centered = r - shift;
  const Eigen::ArrayXd w = (-beta * centered).exp();
  const double z = w.sum();
  out.log_sum = std::log(z);
  if (moments) {
    out.mean = (w * centered).sum() / z;
    out.var = (w * (centered - out.mean).square()).sum() / z;
  }
  return out;
}

struct Evaluation {
  Eigen::ArrayXd ls1, ls2, lsd;
  Eigen::ArrayXd mean1, mean2, meand;
  Eigen::ArrayXd var1, var2, vard;
};

Evaluation evaluate(const CostTriple& c, const Shifts& s, double beta, bool moments) {
  const std::size_t b = c.blocks();
  Evaluation e;
  e.ls1.resize(b);
  e.ls2.resize(b);
  e.lsd.resize(b);
  if (moments) {
    for (auto* a : {&e.mean1, &e.mean2, &e.meand, &e.var1, &e.var2, &e.vard}) a->resize(b);
  }
  const std::size_t chunks = (b + kBlockChunk - 1) / kBlockChunk;
  parallel_for(chunks, [&](std::size_t chunk) {
    const std::size_t end = std::min(b, (chunk + 1) * kBlockChunk);
    for (std::size_t j = chunk * kBlockChunk; j < end; ++j) {
      const Index jj = static_cast<Index>(j);
      const BlockStats s1 = block_stats(c.r1.col(jj), s.m1(jj), beta, moments);
      const BlockStats s2 = block_stats(c.r2.col(jj), s.m2(jj), beta, moments);
      const BlockStats sd = block_stats(c.rd.col(jj), s.md(jj), beta, moments);
      e.ls1(jj) = s1.log_sum;
      e.ls2(jj) = s2.log_sum;
      e.lsd(jj) = sd.log_sum;
      if (moments) {
        e.mean1(jj) = s1.mean;
        e.mean2(jj) = s2.mean;
        e.meand(jj) = sd.mean;
        e.var1(jj) = s1.var;
        e.var2(jj) = s2.var;
        e.vard(jj) = sd.var;
      }
    }
  });
  return e;
}

double capacity_from(const CostTriple& c, const Shifts& s, const Evaluation& e, double beta,
                     std::size_t objects) {
  const double log_m = std::log(static_cast<double>(c.members()));
  double total = 0.0;
  for (Index j = 0; j < static_cast<Index>(c.blocks()); ++j) {
    const double linear = s.md(j) - s.m1(j) - s.m2(j);
    total += (log_m - e.ls1(j)) + (e.lsd(j) - e.ls2(j)) - beta * linear;
  }
  return total / static_cast<double>(objects);
}

GibbsMoments moments_from(const Shifts& s, const Evaluation& e, double beta) {
  GibbsMoments g;
  g.beta = beta;
  g.r1 = {s.m1.sum() + e.mean1.sum(), e.var1.sum()};
  g.r2 = {s.m2.sum() + e.mean2.sum(), e.var2.sum()};
  g.rd = {s.md.sum() + e.meand.sum(), e.vard.sum()};
  return g;
}

CapacityDerivatives derivatives_from(const Shifts& s, const Evaluation& e, std::size_t objects) {
  const double n = static_cast<double>(objects);
  // Differences of means taken per block before summing keeps the large
  // shared offsets out of the result.
  double first = 0.0;
  double second = 0.0;
  for (Index j = 0; j < s.m1.size(); ++j) {
    first += (s.m1(j) + s.m2(j) - s.md(j)) + (e.mean1(j) + e.mean2(j) - e.meand(j));
    second += e.vard(j) - e.var1(j) - e.var2(j);
  }
  return {first / n, second / n};
}

}  // namespace

const char* to_string(WeightSumMode mode) noexcept {
  return mode == WeightSumMode::per_object ? "per-object" : "joint";
}

const char* to_string(JointCost form) noexcept {
  return form == JointCost::sum ? "sum" : "half-sum";
}

CostTriple make_cost_triple(Eigen::ArrayXd r1, Eigen::ArrayXd r2, JointCost joint) {
  if (r1.size() < 1 || r1.size() != r2.size()) {
    throw Error(ErrorCode::shape_error, "cost vectors must be nonempty and of equal length");
  }
  CostTriple c;
  c.mode = WeightSumMode::joint;
  c.joint = joint;
  c.r1 = r1;
  c.r2 = r2;
  c.rd = joint == JointCost::sum ? (c.r1 + c.r2).eval() : (0.5 * (c.r1 + c.r2)).eval();
  return c;
}

CostTriple cost_triple(const TransformationSet& set, const DataMatrix& x1, const DataMatrix& x2,
                       const Decomposition& svd1, WeightSumMode mode, JointCost joint) {
  const Index n = x1.rows();
  const Index d = x1.cols();
  const Index k = svd1.rank();
  if (x2.rows() != n || x2.cols() != d) {
    throw Error(ErrorCode::shape_error, "datasets differ in shape");
  }
  if (svd1.u.rows() != n || svd1.v.rows() != d || set.rows() != n || set.rank() != k) {
    throw Error(ErrorCode::shape_error, "transformation set or decomposition does not match data");
  }
  const Matrix w = svd1.s.asDiagonal() * svd1.v.transpose();
  const Matrix gram = w * w.transpose();
  const Matrix res1 = x1.values() - set.center() * w;
  const Matrix res2 = x2.values() - set.center() * w;
  const Eigen::ArrayXd base1 = res1.rowwise().squaredNorm().array();
  const Eigen::ArrayXd base2 = res2.rowwise().squaredNorm().array();
  const Matrix h1 = res1 * w.transpose();
  const Matrix h2 = res2 * w.transpose();

  const std::size_t m_count = set.size();
  const Index blocks = mode == WeightSumMode::per_object ? n : 1;
  CostTriple c;
  c.mode = mode;
  c.joint = joint;
  c.r1.resize(static_cast<Index>(m_count), blocks);
  c.r2.resize(static_cast<Index>(m_count), blocks);

  // Row i of member U_c + E: |res_i|^2 - 2 e_i h_i + e_i G e_i^T.
  parallel_for(m_count, [&](std::size_t m) {
    Matrix e;
    set.offset(m, e);
    const Matrix eg = e * gram;
    const Eigen::ArrayXd quad = (e.array() * eg.array()).rowwise().sum();
    const Eigen::ArrayXd lin1 = (e.array() * h1.array()).rowwise().sum();
    const Eigen::ArrayXd lin2 = (e.array() * h2.array()).rowwise().sum();
    const Eigen::ArrayXd row1 = (base1 - 2.0 * lin1 + quad).max(0.0);
    const Eigen::ArrayXd row2 = (base2 - 2.0 * lin2 + quad).max(0.0);
    const Index mm = static_cast<Index>(m);
    if (mode == WeightSumMode::per_object) {
      c.r1.row(mm) = row1.transpose();
      c.r2.row(mm) = row2.transpose();
    } else {
      c.r1(mm, 0) = row1.sum();
      c.r2(mm, 0) = row2.sum();
    }
  });
  c.rd = joint == JointCost::sum ? (c.r1 + c.r2).eval() : (0.5 * (c.r1 + c.r2)).eval();
  return c;
}

LogWeightSums log_weight_sums(const CostTriple& costs, double beta) {
  check_beta(beta);
  check_costs(costs);
  const Shifts s(costs);
  const Evaluation e = evaluate(costs, s, beta, false);
  LogWeightSums out;
  out.beta = beta;
  out.log_z1 = (e.ls1 - beta * s.m1).sum();
  out.log_z2 = (e.ls2 - beta * s.m2).sum();
  out.log_dz = (e.lsd - beta * s.md).sum();
  out.log_codebook =
      static_cast<double>(costs.blocks()) * std::log(static_cast<double>(costs.members()));
  return out;
}

double mutual_information(const LogWeightSums& sums, std::size_t objects) {
  if (objects < 1) throw Error(ErrorCode::invalid_input, "object count must be positive");
  return (sums.log_codebook + sums.log_dz - sums.log_z1 - sums.log_z2) /
         static_cast<double>(objects);
}

double capacity_at(const CostTriple& costs, double beta, std::size_t objects) {
  check_beta(beta);
  check_costs(costs);
  if (objects < 1) throw Error(ErrorCode::invalid_input, "object count must be positive");
  const Shifts s(costs);
  return capacity_from(costs, s, evaluate(costs, s, beta, false), beta, objects);
}

GibbsMoments gibbs_moments(const CostTriple& costs, double beta) {
  check_beta(beta);
  check_costs(costs);
  const Shifts s(costs);
  return moments_from(s, evaluate(costs, s, beta, true), beta);
}

CapacityDerivatives capacity_gradient(const CostTriple& costs, double beta, std::size_t objects) {
  check_beta(beta);
  check_costs(costs);
  if (objects < 1) throw Error(ErrorCode::invalid_input, "object count must be positive");
  const Shifts s(costs);
  return derivatives_from(s, evaluate(costs, s, beta, true), objects);
}

std::vector<double> default_beta_grid(double beta0, std::size_t points, double lo, double hi) {
  if (!(beta0 > 0.0) || !std::isfinite(beta0) || points < 2 || !(lo > 0.0) || !(hi > lo)) {
    throw Error(ErrorCode::invalid_config, "invalid beta grid parameters");
  }
  std::vector<double> grid;
  grid.reserve(points + 1);
  grid.push_back(0.0);
  const double a = std::log(lo * beta0);
  const double b = std::log(hi * beta0);
  for (std::size_t i = 0; i < points; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(points - 1);
    grid.push_back(std::exp(a + t * (b - a)));
  }
  return grid;
}

CapacityPoint maximize_beta(const CostTriple& costs, std::size_t objects,
                            const BetaSearchConfig& config) {
  check_costs(costs);
  if (objects < 1) throw Error(ErrorCode::invalid_input, "object count must be positive");
  const auto& grid = config.grid;
  if (grid.empty()) throw Error(ErrorCode::invalid_config, "beta grid is empty");
  for (std::size_t j = 0; j < grid.size(); ++j) {
    if (!(grid[j] >= 0.0) || !std::isfinite(grid[j]) || (j > 0 && !(grid[j] > grid[j - 1]))) {
      throw Error(ErrorCode::invalid_config, "beta grid must be finite, nonnegative and increasing");
    }
  }
  const Shifts s(costs);
  CapacityPoint point;
  point.grid_beta = grid;
  point.grid_capacity.resize(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) {
    point.grid_capacity[j] =
        capacity_from(costs, s, evaluate(costs, s, grid[j], false), grid[j], objects);
  }
  const auto& vals = point.grid_capacity;
  const std::size_t best =
      static_cast<std::size_t>(std::max_element(vals.begin(), vals.end()) - vals.begin());
  point.beta_star = grid[best];
  point.capacity = vals[best];

  // No interior maximum when the curve ends at (or within rounding of) its
  // grid maximum, or when nothing beats beta = grid[0].
  const double slack = 1e-12 * std::max(1.0, std::abs(vals[best]));
  if (best == 0 || best + 1 == grid.size() || vals.back() >= vals[best] - slack) {
    point.no_interior_maximum = true;
    return point;
  }

  double lo = grid[best - 1];
  double hi = grid[best + 1];
  double beta = grid[best];
  for (int it = 0; it < config.max_iter; ++it) {
    point.iterations = it + 1;
    const CapacityDerivatives g =
        derivatives_from(s, evaluate(costs, s, beta, true), objects);
    if (std::abs(beta * g.first) < config.newton_tol) {
      point.converged = true;
      break;
    }
    if (g.first > 0.0) {
      lo = beta;
    } else {
      hi = beta;
    }
    double next = beta - g.first / g.second;
    if (!(g.second < 0.0) || !(next > lo && next < hi)) {
      next = lo > 0.0 ? std::sqrt(lo * hi) : 0.5 * (lo + hi);
    }
    beta = next;
    if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * hi) {
      point.converged = true;
      break;
    }
  }
  const double refined = capacity_from(costs, s, evaluate(costs, s, beta, false), beta, objects);
  if (refined >= point.capacity) {
    point.beta_star = beta;
    point.capacity = refined;
  }
  return point;
}

}  // namespace maxac
