#pragma once

#include <array>
#include <cstdint>
#include <span>

namespace maxac {

/// Philox4x32-10 block function.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key) noexcept;

/// Random stream addressed by (seed, stream tag, substream). Every value is a
/// pure function of its address, so draws can be made in any order.
class CounterStream {
 public:
  CounterStream(std::uint64_t seed, std::uint32_t stream, std::uint64_t substream) noexcept;

  /// Four raw words of block b.
  std::array<std::uint32_t, 4> block(std::uint32_t b) const noexcept;

  /// 64 random bits, index i.
  std::uint64_t bits(std::uint64_t i) const noexcept;

  /// Uniform in (0, 1], index i.
  double uniform(std::uint64_t i) const noexcept;

  /// Standard normals for indices [first, first + out.size()).
  void normals(std::uint64_t first, std::span<double> out) const noexcept;

  double normal(std::uint64_t i) const noexcept;

 private:
  std::array<std::uint32_t, 2> key_;
  std::uint32_t stream_;
  std::uint64_t substream_;
};

/// Sequential uniform integers in [0, n) drawn from a CounterStream.
class UniformIndexSampler {
 public:
  UniformIndexSampler(const CounterStream& stream) noexcept : stream_(stream) {}

  std::uint64_t next(std::uint64_t n) noexcept;

 private:
  CounterStream stream_;
  std::uint64_t position_ = 0;
};

/// SplitMix64 finalizer, used to derive child seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) noexcept;

}  // namespace maxac
