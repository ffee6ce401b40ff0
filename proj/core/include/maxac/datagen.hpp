#pragma once

#include <cstdint>
#include <vector>

#include "maxac/linalg.hpp"

namespace maxac {

struct MixtureSpec {
  Index components = 4;
  Index dims = 20;
  Index rows = 200;
  /// Pairwise centroid distance.
  double separation = 10.0;
  /// Per-entry noise standard deviation.
  double noise_sigma = 1.0;
  bool center_mean = false;
  std::uint64_t seed = 0;

  void validate() const;
  /// Dimension actually used: at least components - 1.
  Index effective_dims() const noexcept;
};

struct MixtureData {
  DataMatrix clean;
  DataMatrix first;
  DataMatrix second;
  std::vector<int> labels;
};

/// Regular simplex of the given separation, components x effective_dims.
Matrix mixture_centroids(const MixtureSpec& spec);

MixtureData generate_pair(const MixtureSpec& spec);

}  // namespace maxac
