#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "maxac/linalg.hpp"

namespace maxac {

enum class TransformKind { gaussian, grid };

const char* to_string(TransformKind kind) noexcept;

/// Finite set of coefficient matrices center + offset_m. Member 0 is the
/// center itself. Members are regenerated on demand from (seed, m), so the
/// set stores O(1) data per member at most.
class TransformationSet {
 public:
  static TransformationSet gaussian(const Matrix& center, double sigma_abs, std::size_t members,
                                    std::uint64_t seed);
  static TransformationSet grid(const Matrix& center, double extent, std::size_t points_per_axis,
                                std::size_t max_members, std::uint64_t seed);

  std::size_t size() const noexcept { return size_; }
  TransformKind kind() const noexcept { return kind_; }
  /// Per-entry standard deviation (gaussian) or hypercube edge length (grid).
  double scale() const noexcept { return scale_; }
  std::uint64_t seed() const noexcept { return seed_; }
  std::size_t points_per_axis() const noexcept { return points_; }
  const Matrix& center() const noexcept { return center_; }
  Index rows() const noexcept { return center_.rows(); }
  Index rank() const noexcept { return center_.cols(); }

  /// Writes member m minus the center into out (resized to N x k).
  void offset(std::size_t m, Matrix& out) const;
  Matrix member(std::size_t m) const;

 private:
  enum class GridLayout { none, enumerated, independent };

  TransformationSet() = default;
  double grid_coordinate(std::uint64_t digit) const noexcept;

  TransformKind kind_ = TransformKind::gaussian;
  Matrix center_;
  double scale_ = 0.0;
  std::uint64_t seed_ = 0;
  std::size_t size_ = 1;
  std::size_t points_ = 0;
  GridLayout layout_ = GridLayout::none;
  std::vector<std::uint64_t> nodes_;
};

TransformationSet sample_gaussian(const Matrix& center, double sigma_abs, std::size_t members,
                                  std::uint64_t seed);
TransformationSet sample_grid(const Matrix& center, double extent, std::size_t points_per_axis,
                              std::size_t max_members, std::uint64_t seed);

/// Mean row distance between fit_coefficients(x2, W1) and U1.
double delta_scale(const DataMatrix& x2, const Decomposition& svd1);

}  // namespace maxac
