#include "maxac/philox.hpp"

#include <cmath>
#include <numbers>

namespace maxac {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
  const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(p >> 32);
  lo = static_cast<std::uint32_t>(p);
}

// (0, 1] with 53 random bits.
inline double to_unit(std::uint64_t x) {
  return static_cast<double>((x >> 11) + 1) * 0x1.0p-53;
}

}  // namespace

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr,
                                        std::array<std::uint32_t, 2> key) noexcept {
  for (int round = 0; round < 10; ++round) {
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kMul0, ctr[0], hi0, lo0);
    mulhilo(kMul1, ctr[2], hi1, lo1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    key[0] += kWeyl0;
    key[1] += kWeyl1;
  }
  return ctr;
}

CounterStream::CounterStream(std::uint64_t seed, std::uint32_t stream,
                             std::uint64_t substream) noexcept
    : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
      stream_(stream),
      substream_(substream) {}

std::array<std::uint32_t, 4> CounterStream::block(std::uint32_t b) const noexcept {
  return philox4x32({b, static_cast<std::uint32_t>(substream_),
                     static_cast<std::uint32_t>(substream_ >> 32), stream_},
                    key_);
}

std::uint64_t CounterStream::bits(std::uint64_t i) const noexcept {
  const auto r = block(static_cast<std::uint32_t>(i >> 1));
  const std::size_t o = (i & 1u) * 2;
  return (static_cast<std::uint64_t>(r[o]) << 32) | r[o + 1];
}

double CounterStream::uniform(std::uint64_t i) const noexcept {
  return to_unit(bits(i));
}

void CounterStream::normals(std::uint64_t first, std::span<double> out) const noexcept {
  // Box-Muller: block b yields normals 2b and 2b + 1.
  std::uint64_t i = first;
  std::size_t o = 0;
  while (o < out.size()) {
    const auto r = block(static_cast<std::uint32_t>(i >> 1));
    const double u1 = to_unit((static_cast<std::uint64_t>(r[0]) << 32) | r[1]);
    const double u2 = to_unit((static_cast<std::uint64_t>(r[2]) << 32) | r[3]);
    const double rad = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    if ((i & 1u) == 0) {
      out[o++] = rad * std::cos(theta);
      ++i;
      if (o == out.size()) break;
    }
    out[o++] = rad * std::sin(theta);
    ++i;
  }
}

double CounterStream::normal(std::uint64_t i) const noexcept {
  double z = 0.0;
  normals(i, std::span<double>(&z, 1));
  return z;
}

std::uint64_t UniformIndexSampler::next(std::uint64_t n) noexcept {
  if (n <= 1) return 0;
  // Rejection keeps the draw exactly uniform.
  const std::uint64_t threshold = (0 - n) % n;
  for (;;) {
    const std::uint64_t x = stream_.bits(position_++);
    if (x >= threshold) return x % n;
  }
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) noexcept {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (salt + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace maxac
