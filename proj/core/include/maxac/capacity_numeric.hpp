#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "maxac/linalg.hpp"
#include "maxac/transform_space.hpp"

namespace maxac {

/// How weight sums are formed from member costs.
///  per_object: costs are kept per row and the sums factor over rows, so the
///              codebook is the product set of size M^N.
///  joint:      one total cost per member; codebook size M.
enum class WeightSumMode { per_object, joint };

/// Cost of a member under the joint weight sum.
///  sum:      R1 + R2, the cost of one hypothesis explaining both datasets.
///  half_sum: (R1 + R2) / 2.
enum class JointCost { sum, half_sum };

const char* to_string(WeightSumMode mode) noexcept;
const char* to_string(JointCost form) noexcept;

/// Member costs, arrays are members x blocks (blocks = N or 1).
struct CostTriple {
  Eigen::ArrayXXd r1;
  Eigen::ArrayXXd r2;
  Eigen::ArrayXXd rd;
  WeightSumMode mode = WeightSumMode::per_object;
  JointCost joint = JointCost::sum;

  std::size_t members() const noexcept { return static_cast<std::size_t>(r1.rows()); }
  std::size_t blocks() const noexcept { return static_cast<std::size_t>(r1.cols()); }
  /// Member totals summed over blocks.
  Eigen::ArrayXd total_r1() const { return r1.rowwise().sum(); }
  Eigen::ArrayXd total_r2() const { return r2.rowwise().sum(); }
  Eigen::ArrayXd total_rd() const { return rd.rowwise().sum(); }
};

/// Builds a CostTriple from explicit member costs (one block).
CostTriple make_cost_triple(Eigen::ArrayXd r1, Eigen::ArrayXd r2, JointCost joint = JointCost::sum);

/// Costs of every member against X1 and X2, both in the basis of svd1.
CostTriple cost_triple(const TransformationSet& set, const DataMatrix& x1, const DataMatrix& x2,
                       const Decomposition& svd1,
                       WeightSumMode mode = WeightSumMode::per_object,
                       JointCost joint = JointCost::sum);

struct LogWeightSums {
  double beta = 0.0;
  double log_z1 = 0.0;
  double log_z2 = 0.0;
  double log_dz = 0.0;
  /// Log of the codebook size (blocks * log M).
  double log_codebook = 0.0;
};

LogWeightSums log_weight_sums(const CostTriple& costs, double beta);

/// (log codebook + log dZ - log Z1 - log Z2) / N.
double mutual_information(const LogWeightSums& sums, std::size_t objects);

/// Same quantity evaluated directly from costs with the large linear terms
/// cancelled before summation.
double capacity_at(const CostTriple& costs, double beta, std::size_t objects);

struct CostMoments {
  double mean = 0.0;
  double variance = 0.0;
  double second() const noexcept { return variance + mean * mean; }
};

/// Gibbs moments of the total cost for each weight sum.
struct GibbsMoments {
  double beta = 0.0;
  CostMoments r1;
  CostMoments r2;
  CostMoments rd;
};

GibbsMoments gibbs_moments(const CostTriple& costs, double beta);

struct CapacityDerivatives {
  double first = 0.0;
  double second = 0.0;
};

/// dI/dbeta = (E[R1] + E[R2] - E[Rd]) / N,
/// d2I/dbeta2 = (Var[Rd] - Var[R1] - Var[R2]) / N.
CapacityDerivatives capacity_gradient(const CostTriple& costs, double beta, std::size_t objects);

struct BetaSearchConfig {
  /// Nonnegative, strictly increasing.
  std::vector<double> grid;
  /// Newton stops once |beta * dI/dbeta| < newton_tol.
  double newton_tol = 1e-10;
  int max_iter = 50;
};

struct CapacityPoint {
  Index rank = 0;
  double beta_star = 0.0;
  double capacity = 0.0;
  bool no_interior_maximum = false;
  bool converged = false;
  int iterations = 0;
  std::vector<double> grid_beta;
  std::vector<double> grid_capacity;
};

/// 0 followed by `points` log-spaced values in [lo * beta0, hi * beta0].
std::vector<double> default_beta_grid(double beta0, std::size_t points = 64, double lo = 1e-6,
                                      double hi = 1e3);

/// Grid scan followed by safeguarded Newton refinement inside the bracket
/// around the best grid point.
CapacityPoint maximize_beta(const CostTriple& costs, std::size_t objects,
                            const BetaSearchConfig& config);

}  // namespace maxac
