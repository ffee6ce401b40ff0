#include "maxac/rank_selection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "maxac/capacity_analytic.hpp"
#include "maxac/error.hpp"
#include "maxac/philox.hpp"
#include "maxac/transform_space.hpp"

namespace maxac {

namespace {

Index numeric_rank(const Decomposition& full) {
  if (full.rank() == 0 || !(full.s(0) > 0.0)) return 0;
  const double tol = std::numeric_limits<double>::epsilon() *
                     static_cast<double>(std::max(full.u.rows(), full.v.rows())) * full.s(0);
  Index r = 0;
  while (r < full.rank() && full.s(r) > tol) ++r;
  return r;
}

double closed_form_beta(Index n, Index d, Index k, double sqdist) {
  if (!(sqdist > 0.0)) return 1.0;
  return 2.0 * static_cast<double>(n) * static_cast<double>(d) * static_cast<double>(k) / sqdist;
}

// Maximizes f over a positive increasing grid, then refines by golden-section
// search in log(beta) inside the bracket around the best grid point.
template <class F>
CapacityPoint maximize_on_grid(const std::vector<double>& grid, F f) {
  CapacityPoint p;
  p.grid_beta = grid;
  p.grid_capacity.reserve(grid.size());
  for (double b : grid) p.grid_capacity.push_back(f(b));
  const auto& v = p.grid_capacity;
  const std::size_t best = static_cast<std::size_t>(std::max_element(v.begin(), v.end()) - v.begin());
  p.beta_star = grid[best];
  p.capacity = v[best];
  if (best == 0 || best + 1 == grid.size()) {
    p.no_interior_maximum = true;
    return p;
  }
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = std::log(grid[best - 1]);
  double b = std::log(grid[best + 1]);
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = f(std::exp(c));
  double fd = f(std::exp(d));
  int it = 0;
  for (; it < 200 && (b - a) > 1e-13 * std::max(1.0, std::abs(b)); ++it) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = f(std::exp(c));
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = f(std::exp(d));
    }
  }
  p.iterations = it;
  p.converged = true;
  const double beta = std::exp(0.5 * (a + b));
  const double value = f(beta);
  if (value >= p.capacity) {
    p.beta_star = beta;
    p.capacity = value;
  }
  return p;
}

}  // namespace

const char* to_string(Method method) noexcept {
  switch (method) {
    case Method::numeric_gaussian: return "numeric-gaussian";
    case Method::numeric_grid: return "numeric-grid";
    case Method::analytic_unconstrained: return "analytic-unconstrained";
    case Method::analytic_bounded: return "analytic-bounded";
  }
  return "unknown";
}

std::optional<Method> parse_method(const std::string& name) {
  for (Method m : {Method::numeric_gaussian, Method::numeric_grid, Method::analytic_unconstrained,
                   Method::analytic_bounded}) {
    if (name == to_string(m)) return m;
  }
  return std::nullopt;
}

void SweepConfig::validate(Index rows, Index cols) const {
  auto fail = [](const std::string& what) { throw Error(ErrorCode::invalid_config, what); };
  const Index limit = std::min(rows, cols);
  if (k_min < 1 || k_max < k_min || k_max > limit) {
    throw Error(ErrorCode::rank_out_of_range, "rank range [" + std::to_string(k_min) + ", " +
                                                  std::to_string(k_max) + "] outside [1, " +
                                                  std::to_string(limit) + "]");
  }
  if (!(sigma > 0.0) || !std::isfinite(sigma)) fail("sigma must be positive");
  const bool numeric = method == Method::numeric_gaussian || method == Method::numeric_grid;
  if (numeric && m_base < 2) fail("m_base must be at least 2");
  if (!(m_growth >= 1.0) || !std::isfinite(m_growth)) fail("m_growth must be >= 1");
  if (m_cap < 1) fail("m_cap must be positive");
  if (grid_points < 2) fail("grid_points must be at least 2");
  if (beta_points < 2) fail("beta_points must be at least 2");
  if (!(beta_lo > 0.0) || !(beta_hi > beta_lo) || !std::isfinite(beta_hi)) {
    fail("beta range must satisfy 0 < lo < hi");
  }
  if (!(newton_tol > 0.0)) fail("newton_tol must be positive");
  if (max_iter < 1) fail("max_iter must be positive");
  if (delta_rank < 0 || delta_rank > limit) fail("delta_rank outside [0, min(N, D)]");
}

std::size_t SweepConfig::members_at(Index k) const {
  const double m = static_cast<double>(m_base) * std::pow(m_growth, static_cast<double>(k - 1));
  if (!(m < static_cast<double>(m_cap))) return m_cap;
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(m)));
}

RankEvaluator::RankEvaluator(const DataMatrix& x1, const DataMatrix& x2,
                             const SweepConfig& config)
    : config_(config),
      x1_(config.swap_datasets ? x2 : x1),
      x2_(config.swap_datasets ? x1 : x2),
      full1_(full_svd(x1_)),
      full2_(full_svd(x2_)) {
  if (x1.rows() != x2.rows() || x1.cols() != x2.cols()) {
    throw Error(ErrorCode::shape_error, "datasets differ in shape: " + std::to_string(x1.rows()) +
                                            "x" + std::to_string(x1.cols()) + " vs " +
                                            std::to_string(x2.rows()) + "x" +
                                            std::to_string(x2.cols()));
  }
  config_.validate(x1.rows(), x1.cols());
  Index ref = config_.delta_rank > 0 ? config_.delta_rank : numeric_rank(full1_);
  if (ref < 1) throw Error(ErrorCode::singular_basis, "first dataset is zero");
  ref = std::min(ref, numeric_rank(full1_));
  const Decomposition reference = truncate(full1_, ref);
  delta_ = delta_scale(x2_, reference);
  if (!(delta_ > 0.0)) {
    // Identical coefficients: fall back to the mean row norm of U1.
    delta_ = reference.u.rowwise().norm().mean();
  }
}

CurveEntry RankEvaluator::evaluate(Index k) const {
  return evaluate(k, config_.sigma);
}

CurveEntry RankEvaluator::evaluate(Index k, double sigma) const {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw Error(ErrorCode::invalid_scale, "sigma must be positive");
  }
  const Index n = x1_.rows();
  const Index d = x1_.cols();
  if (k < 1 || k > std::min(n, d)) {
    throw Error(ErrorCode::rank_out_of_range, "rank " + std::to_string(k));
  }
  CurveEntry entry;
  entry.delta = delta_;
  entry.sigma = sigma;
  entry.sigma_abs = sigma * delta_;
  const double sqdist = (x1_.values() - x2_.values()).squaredNorm();
  const double beta0 = closed_form_beta(n, d, k, sqdist);

  switch (config_.method) {
    case Method::numeric_gaussian:
    case Method::numeric_grid: {
      const Decomposition svd1 = truncate(full1_, k);
      const std::size_t m = config_.members_at(k);
      const std::uint64_t seed = mix_seed(config_.seed, static_cast<std::uint64_t>(k));
      const TransformationSet set =
          config_.method == Method::numeric_gaussian
              ? sample_gaussian(svd1.u, entry.sigma_abs, m, seed)
              : sample_grid(svd1.u, 2.0 * entry.sigma_abs, config_.grid_points, m, seed);
      entry.members = set.size();
      const CostTriple costs =
          cost_triple(set, x1_, x2_, svd1, config_.weight_sums, config_.joint_cost);
      BetaSearchConfig search;
      search.grid = default_beta_grid(beta0, config_.beta_points, config_.beta_lo, config_.beta_hi);
      search.newton_tol = config_.newton_tol;
      search.max_iter = config_.max_iter;
      entry.point = maximize_beta(costs, static_cast<std::size_t>(n), search);
      break;
    }
    case Method::analytic_unconstrained: {
      const AnalyticContext ctx(x1_, x2_, full1_, full2_, k);
      std::vector<double> grid =
          default_beta_grid(beta0, config_.beta_points, config_.beta_lo, config_.beta_hi);
      grid.erase(grid.begin());
      CapacityPoint p;
      p.grid_beta = grid;
      for (double b : grid) p.grid_capacity.push_back(unconstrained_I(ctx, b));
      if (sqdist > 0.0) {
        p.beta_star = unconstrained_beta_star(ctx);
        p.capacity = unconstrained_I(ctx, p.beta_star);
        p.converged = true;
      } else {
        p.no_interior_maximum = true;
        p.beta_star = grid.back();
        p.capacity = p.grid_capacity.back();
      }
      entry.point = std::move(p);
      break;
    }
    case Method::analytic_bounded: {
      const AnalyticContext ctx(x1_, x2_, full1_, full2_, k);
      entry.sigma_abs = entry.sigma_abs * entry.sigma_abs;
      const BoundedContext bctx(ctx, entry.sigma_abs);
      std::vector<double> grid =
          default_beta_grid(beta0, config_.beta_points, config_.beta_lo, config_.beta_hi);
      grid.erase(grid.begin());
      entry.point = maximize_on_grid(grid, [&](double b) { return bounded_I(bctx, b); });
      break;
    }
  }
  entry.point.rank = k;
  return entry;
}

Index select_from(const std::vector<CurveEntry>& entries, bool* degenerate) {
  if (entries.empty()) throw Error(ErrorCode::invalid_input, "empty capacity curve");
  const CurveEntry* best = nullptr;
  for (const auto& e : entries) {
    if (e.point.no_interior_maximum) continue;
    if (best == nullptr || e.point.capacity > best->point.capacity) best = &e;
  }
  if (degenerate != nullptr) *degenerate = best == nullptr;
  return best == nullptr ? entries.front().point.rank : best->point.rank;
}

CapacityCurve select_rank(const DataMatrix& x1, const DataMatrix& x2, const SweepConfig& config) {
  const RankEvaluator evaluator(x1, x2, config);
  CapacityCurve curve;
  for (Index k = config.k_min; k <= config.k_max; ++k) curve.entries.push_back(evaluator.evaluate(k));
  curve.selected_rank = select_from(curve.entries, &curve.all_ranks_degenerate);
  return curve;
}

std::vector<CurveEntry> range_sweep(const DataMatrix& x1, const DataMatrix& x2, Index k,
                                    std::span<const double> sigmas, const SweepConfig& config) {
  if (sigmas.empty()) throw Error(ErrorCode::invalid_config, "sigma list is empty");
  SweepConfig cfg = config;
  cfg.k_min = 1;
  cfg.k_max = std::min(x1.rows(), x1.cols());
  const RankEvaluator evaluator(x1, x2, cfg);
  std::vector<CurveEntry> out;
  out.reserve(sigmas.size());
  for (double s : sigmas) out.push_back(evaluator.evaluate(k, s));
  return out;
}

}  // namespace maxac
