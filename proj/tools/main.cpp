#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11/CLI11.hpp>

#include "commands.hpp"

namespace {

using maxac::ErrorCode;
using maxac::SweepConfig;
using maxac::cli::DataPaths;

struct SweepArgs {
  SweepConfig config;
  std::string method = "numeric-gaussian";
  std::string weight_sums = "per-object";
  std::string joint_cost = "sum";
  std::string beta_grid;
};

void add_data_options(CLI::App* app, DataPaths& paths, bool with_clean) {
  app->add_option("--x1", paths.x1, "First dataset (CSV, no header)")->required();
  app->add_option("--x2", paths.x2, "Second dataset, same shape as X1")->required();
  if (with_clean) {
    app->add_option("--clean", paths.clean, "Noise-free matrix; enables the best-denoising column");
  }
}

void add_sweep_options(CLI::App* app, SweepArgs& a) {
  SweepConfig& c = a.config;
  c.k_max = 0;
  app->add_option("--method", a.method,
                  "numeric-gaussian | numeric-grid | analytic-unconstrained | analytic-bounded")
      ->capture_default_str();
  app->add_option("--sigma", c.sigma, "Transformation set width in units of delta")
      ->capture_default_str();
  app->add_option("--m-base", c.m_base, "Members at rank 1")->capture_default_str();
  app->add_option("--m-growth", c.m_growth, "Member multiplier per unit rank")
      ->capture_default_str();
  app->add_option("--m-cap", c.m_cap, "Upper bound on members per rank")->capture_default_str();
  app->add_option("--grid-points", c.grid_points, "Grid sets: points per axis")
      ->capture_default_str();
  app->add_option("--k-min", c.k_min, "Smallest rank")->capture_default_str();
  app->add_option("--k-max", c.k_max, "Largest rank (default min(8, limit))");
  app->add_option("--beta-grid", a.beta_grid,
                  "LO,HI,POINTS: beta scan of 0 plus POINTS log-spaced values in "
                  "[LO, HI] times each rank's closed-form temperature (default 1e-6,1e3,64)");
  app->add_option("--newton-tol", c.newton_tol, "Newton stop on |beta dI/dbeta|")
      ->capture_default_str();
  app->add_option("--max-iter", c.max_iter, "Newton iteration limit")->capture_default_str();
  app->add_option("--seed", c.seed, "Sampling seed")->capture_default_str();
  app->add_option("--weight-sums", a.weight_sums, "per-object | joint")->capture_default_str();
  app->add_option("--joint-cost", a.joint_cost, "sum | half-sum")->capture_default_str();
  app->add_option("--delta-rank", c.delta_rank, "Rank of the basis defining delta (0: full)")
      ->capture_default_str();
  app->add_flag("--swap", c.swap_datasets, "Exchange the roles of X1 and X2");
}

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  return out;
}

void finish_sweep(SweepArgs& a) {
  auto method = maxac::parse_method(a.method);
  if (!method) throw maxac::Error(ErrorCode::invalid_config, "unknown method '" + a.method + "'");
  a.config.method = *method;
  if (a.weight_sums == "per-object") {
    a.config.weight_sums = maxac::WeightSumMode::per_object;
  } else if (a.weight_sums == "joint") {
    a.config.weight_sums = maxac::WeightSumMode::joint;
  } else {
    throw maxac::Error(ErrorCode::invalid_config, "unknown weight sum mode '" + a.weight_sums + "'");
  }
  if (a.joint_cost == "sum") {
    a.config.joint_cost = maxac::JointCost::sum;
  } else if (a.joint_cost == "half-sum") {
    a.config.joint_cost = maxac::JointCost::half_sum;
  } else {
    throw maxac::Error(ErrorCode::invalid_config, "unknown joint cost '" + a.joint_cost + "'");
  }
  if (!a.beta_grid.empty()) {
    const auto parts = split(a.beta_grid);
    try {
      if (parts.size() != 3) throw std::invalid_argument("size");
      a.config.beta_lo = std::stod(parts[0]);
      a.config.beta_hi = std::stod(parts[1]);
      a.config.beta_points = static_cast<std::size_t>(std::stoul(parts[2]));
    } catch (const std::exception&) {
      throw maxac::Error(ErrorCode::invalid_config,
                         "--beta-grid expects LO,HI,POINTS, got '" + a.beta_grid + "'");
    }
  }
}

template <class T>
std::vector<T> parse_list(const std::string& text, const char* flag) {
  std::vector<T> out;
  try {
    for (const auto& p : split(text)) {
      if constexpr (std::is_same_v<T, double>) {
        out.push_back(std::stod(p));
      } else {
        out.push_back(static_cast<T>(std::stoull(p)));
      }
    }
  } catch (const std::exception&) {
    throw maxac::Error(ErrorCode::invalid_config, std::string(flag) + ": cannot parse '" + text + "'");
  }
  if (out.empty()) throw maxac::Error(ErrorCode::invalid_config, std::string(flag) + " is empty");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Truncated SVD rank selection by maximum approximation capacity.\n"
      "Environment: MAXAC_THREADS caps the number of worker threads.\n"
      "Exit codes: 0 success, 2 IO or configuration error, 3 data contract violation."};
  app.require_subcommand(1);
  app.set_version_flag("--version", maxac::cli::kToolVersion);

  maxac::MixtureSpec spec;
  std::string generate_out;
  auto* gen = app.add_subcommand("generate", "Write a seeded Gaussian-mixture pair");
  gen->add_option("--components", spec.components, "Number of centroids")->capture_default_str();
  gen->add_option("--dims", spec.dims, "Columns D")->capture_default_str();
  gen->add_option("--rows", spec.rows, "Rows N")->capture_default_str();
  gen->add_option("--separation", spec.separation, "Pairwise centroid distance")
      ->capture_default_str();
  gen->add_option("--noise", spec.noise_sigma, "Per-entry noise standard deviation")
      ->capture_default_str();
  gen->add_flag("--center", spec.center_mean, "Subtract the clean column means");
  gen->add_option("--seed", spec.seed, "Noise seed")->capture_default_str();
  gen->add_option("--out", generate_out, "Output directory")->required();

  DataPaths select_paths;
  SweepArgs select_args;
  std::string select_out;
  auto* sel = app.add_subcommand("select", "Select the rank of maximal approximation capacity");
  add_data_options(sel, select_paths, false);
  add_sweep_options(sel, select_args);
  sel->add_option("--out", select_out, "Report path (JSON)")->required();

  DataPaths sigma_paths;
  SweepArgs sigma_args;
  std::string sigma_out;
  std::string sigma_list = "0.01,0.1,1,10,100";
  maxac::Index sigma_rank = 0;
  auto* ss = app.add_subcommand("sweep-sigma", "Capacity against transformation set width");
  add_data_options(ss, sigma_paths, false);
  add_sweep_options(ss, sigma_args);
  ss->add_option("--rank", sigma_rank, "Fixed rank")->required();
  ss->add_option("--sigmas", sigma_list, "Comma-separated widths in delta units")
      ->capture_default_str();
  ss->add_option("--out", sigma_out, "Report path (JSON)")->required();

  DataPaths m_paths;
  SweepArgs m_args;
  std::string m_out;
  std::string m_list = "256,512,1024";
  std::size_t m_seeds = 10;
  maxac::Index m_rank = 0;
  auto* sm = app.add_subcommand("sweep-m", "Capacity spread across seeds against member count");
  add_data_options(sm, m_paths, false);
  add_sweep_options(sm, m_args);
  sm->add_option("--rank", m_rank, "Fixed rank")->required();
  sm->add_option("--m-list", m_list, "Comma-separated member counts")->capture_default_str();
  sm->add_option("--seeds", m_seeds, "Sampling seeds per member count")->capture_default_str();
  sm->add_option("--out", m_out, "Report path (JSON)")->required();

  DataPaths cmp_paths;
  SweepArgs cmp_args;
  std::string cmp_out;
  auto* cmp = app.add_subcommand("compare", "Compare maxAC with BIC, Laplace, MTC, best denoising");
  add_data_options(cmp, cmp_paths, true);
  add_sweep_options(cmp, cmp_args);
  cmp->add_option("--out", cmp_out, "Report path (JSON)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (gen->parsed()) {
      maxac::cli::generate_files(spec, generate_out);
    } else if (sel->parsed()) {
      finish_sweep(select_args);
      maxac::cli::write_report(select_out,
                               maxac::cli::select_report(select_paths, select_args.config));
    } else if (ss->parsed()) {
      finish_sweep(sigma_args);
      const auto sigmas = parse_list<double>(sigma_list, "--sigmas");
      maxac::cli::write_report(sigma_out, maxac::cli::sweep_sigma_report(
                                              sigma_paths, sigma_args.config, sigma_rank, sigmas));
    } else if (sm->parsed()) {
      finish_sweep(m_args);
      const auto ms = parse_list<std::size_t>(m_list, "--m-list");
      maxac::cli::write_report(
          m_out, maxac::cli::sweep_m_report(m_paths, m_args.config, m_rank, ms, m_seeds));
    } else if (cmp->parsed()) {
      finish_sweep(cmp_args);
      maxac::cli::write_report(cmp_out, maxac::cli::compare_report(cmp_paths, cmp_args.config));
    }
  } catch (const maxac::Error& e) {
    std::cerr << "maxac: " << e.what() << "\n";
    return maxac::cli::exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << "maxac: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
