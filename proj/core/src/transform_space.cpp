#include "maxac/transform_space.hpp"

#include <cmath>
#include <numeric>
#include <span>
#include <string>
#include <unordered_set>

#include "maxac/error.hpp"
#include "maxac/philox.hpp"

namespace maxac {

namespace {

constexpr std::uint32_t kGaussianStream = 0x47415553u;
constexpr std::uint32_t kGridStream = 0x47524944u;
constexpr std::uint32_t kGridSubsampleStream = 0x53554253u;

constexpr std::uint64_t kEnumerableLimit = std::uint64_t{1} << 62;

// p^d if it stays below the enumerable limit, else 0.
std::uint64_t lattice_size(std::uint64_t p, std::uint64_t d) {
  std::uint64_t size = 1;
  for (std::uint64_t c = 0; c < d; ++c) {
    if (size > kEnumerableLimit / p) return 0;
    size *= p;
  }
  return size;
}

void check_center(const Matrix& center) {
  if (center.rows() < 1 || center.cols() < 1 || !center.allFinite()) {
    throw Error(ErrorCode::invalid_input, "transformation center must be a finite nonempty matrix");
  }
}

}  // namespace

const char* to_string(TransformKind kind) noexcept {
  return kind == TransformKind::gaussian ? "gaussian" : "grid";
}

TransformationSet TransformationSet::gaussian(const Matrix& center, double sigma_abs,
                                              std::size_t members, std::uint64_t seed) {
  check_center(center);
  if (!(sigma_abs > 0.0) || !std::isfinite(sigma_abs)) {
    throw Error(ErrorCode::invalid_scale, "gaussian width must be positive, got " +
                                              std::to_string(sigma_abs));
  }
  if (members < 1) throw Error(ErrorCode::invalid_config, "member count must be at least 1");
  TransformationSet set;
  set.kind_ = TransformKind::gaussian;
  set.center_ = center;
  set.scale_ = sigma_abs;
  set.seed_ = seed;
  set.size_ = members;
  return set;
}

TransformationSet TransformationSet::grid(const Matrix& center, double extent,
                                          std::size_t points_per_axis, std::size_t max_members,
                                          std::uint64_t seed) {
  check_center(center);
  if (!(extent > 0.0) || !std::isfinite(extent)) {
    throw Error(ErrorCode::invalid_scale, "grid extent must be positive, got " +
                                              std::to_string(extent));
  }
  if (points_per_axis < 2) {
    throw Error(ErrorCode::invalid_scale, "grid needs at least 2 points per axis");
  }
  if (max_members < 1) throw Error(ErrorCode::invalid_config, "member count must be at least 1");

  TransformationSet set;
  set.kind_ = TransformKind::grid;
  set.center_ = center;
  set.scale_ = extent;
  set.seed_ = seed;
  set.points_ = points_per_axis;

  const std::uint64_t p = points_per_axis;
  const std::uint64_t d = static_cast<std::uint64_t>(center.size());
  const std::uint64_t total = lattice_size(p, d);
  if (max_members == 1) {
    set.size_ = 1;
    set.layout_ = GridLayout::enumerated;
    return set;
  }
  if (total == 0) {
    // Too many nodes to index; every member draws its own digits.
    set.layout_ = GridLayout::independent;
    set.size_ = max_members;
    return set;
  }

  std::uint64_t center_node = total;  // sentinel: no lattice node at the center
  if (p % 2 == 1) {
    center_node = 0;
    for (std::uint64_t c = 0, stride = 1; c < d; ++c, stride *= p) center_node += (p / 2) * stride;
  }
  const std::uint64_t offcenter = total - (center_node < total ? 1 : 0);
  const std::uint64_t wanted = max_members - 1;
  set.layout_ = GridLayout::enumerated;

  if (offcenter <= wanted) {
    set.nodes_.reserve(offcenter);
    for (std::uint64_t node = 0; node < total; ++node) {
      if (node != center_node) set.nodes_.push_back(node);
    }
  } else if (2 * wanted > offcenter) {
    // Dense request: partial Fisher-Yates over all off-center nodes.
    std::vector<std::uint64_t> pool;
    pool.reserve(offcenter);
    for (std::uint64_t node = 0; node < total; ++node) {
      if (node != center_node) pool.push_back(node);
    }
    UniformIndexSampler draw(CounterStream(seed, kGridSubsampleStream, 0));
    for (std::uint64_t i = 0; i < wanted; ++i) {
      const std::uint64_t j = i + draw.next(offcenter - i);
      std::swap(pool[i], pool[j]);
    }
    pool.resize(wanted);
    set.nodes_ = std::move(pool);
  } else {
    UniformIndexSampler draw(CounterStream(seed, kGridSubsampleStream, 0));
    std::unordered_set<std::uint64_t> seen;
    seen.reserve(wanted * 2);
    set.nodes_.reserve(wanted);
    while (set.nodes_.size() < wanted) {
      const std::uint64_t node = draw.next(total);
      if (node == center_node || !seen.insert(node).second) continue;
      set.nodes_.push_back(node);
    }
  }
  set.size_ = set.nodes_.size() + 1;
  return set;
}

double TransformationSet::grid_coordinate(std::uint64_t digit) const noexcept {
  const double h = scale_ / static_cast<double>(points_ - 1);
  return (static_cast<double>(digit) - 0.5 * static_cast<double>(points_ - 1)) * h;
}

void TransformationSet::offset(std::size_t m, Matrix& out) const {
  if (m >= size_) {
    throw Error(ErrorCode::invalid_input,
                "member " + std::to_string(m) + " outside set of size " + std::to_string(size_));
  }
  out.resize(center_.rows(), center_.cols());
  if (m == 0) {
    out.setZero();
    return;
  }
  const std::size_t n = static_cast<std::size_t>(out.size());
  if (kind_ == TransformKind::gaussian) {
    CounterStream(seed_, kGaussianStream, m).normals(0, std::span<double>(out.data(), n));
    out *= scale_;
    return;
  }
  if (layout_ == GridLayout::enumerated) {
    std::uint64_t node = nodes_[m - 1];
    for (std::size_t c = 0; c < n; ++c) {
      out.data()[c] = grid_coordinate(node % points_);
      node /= points_;
    }
    return;
  }
  UniformIndexSampler draw(CounterStream(seed_, kGridStream, m));
  for (std::size_t c = 0; c < n; ++c) out.data()[c] = grid_coordinate(draw.next(points_));
}

Matrix TransformationSet::member(std::size_t m) const {
  Matrix out;
  offset(m, out);
  out += center_;
  return out;
}

TransformationSet sample_gaussian(const Matrix& center, double sigma_abs, std::size_t members,
                                  std::uint64_t seed) {
  return TransformationSet::gaussian(center, sigma_abs, members, seed);
}

TransformationSet sample_grid(const Matrix& center, double extent, std::size_t points_per_axis,
                              std::size_t max_members, std::uint64_t seed) {
  return TransformationSet::grid(center, extent, points_per_axis, max_members, seed);
}

double delta_scale(const DataMatrix& x2, const Decomposition& svd1) {
  if (x2.rows() != svd1.u.rows() || x2.cols() != svd1.v.rows()) {
    throw Error(ErrorCode::shape_error, "second dataset does not match the decomposition shape");
  }
  const Basis w1 = Basis::from(svd1);
  const Matrix u12 = fit_coefficients(x2, w1);
  return (u12 - svd1.u).rowwise().norm().mean();
}

}  // namespace maxac
