#pragma once

#include <cstdint>
#include <span>

#include <maxac/datagen.hpp>
#include <maxac/linalg.hpp>
#include <maxac/philox.hpp>

namespace maxac::test {

// Seeded standard-normal matrix, independent of the library's own streams.
inline Matrix random_matrix(Index rows, Index cols, std::uint64_t seed) {
  Matrix m(rows, cols);
  CounterStream(seed, 0x54455354u, 0).normals(0, std::span<double>(m.data(), static_cast<std::size_t>(m.size())));
  return m;
}

inline MixtureData small_mixture(std::uint64_t seed, Index n = 40, Index d = 6, Index c = 3,
                                 double noise = 0.5) {
  MixtureSpec spec;
  spec.rows = n;
  spec.dims = d;
  spec.components = c;
  spec.separation = 5.0;
  spec.noise_sigma = noise;
  spec.seed = seed;
  return generate_pair(spec);
}

}  // namespace maxac::test
