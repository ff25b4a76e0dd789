// Copyright (c) 2026 relaybf developers.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <complex>
#include <cstdint>

namespace relaybf {

// Counter-based generator (Philox4x32-10). Every stream is addressed by
// (seed, stream id); draws never touch shared state, so trial workers can
// own disjoint substreams and produce identical sequences at any thread
// count. The normal transform is pinned here as well: relying on
// std::normal_distribution would make realizations differ across standard
// libraries.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed, std::uint64_t stream = 0) noexcept;

  std::uint32_t next_u32() noexcept;
  std::uint64_t next_u64() noexcept;

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() noexcept;

  /// Standard normal via Box-Muller on one uniform pair.
  double normal() noexcept;

  /// Circular complex Gaussian with unit variance (real/imag ~ N(0, 1/2)).
  std::complex<double> complex_normal() noexcept;

  /// Uniform integer in [0, n), unbiased. n must be > 0.
  std::uint64_t below(std::uint64_t n) noexcept;

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream() const noexcept { return stream_; }

  /// Raw Philox4x32-10 block function, exposed for known-answer tests.
  static std::array<std::uint32_t, 4> philox4x32(
      const std::array<std::uint32_t, 4>& counter,
      const std::array<std::uint32_t, 2>& key) noexcept;

 private:
  void refill() noexcept;

  std::uint64_t seed_ = 0;
  std::uint64_t stream_ = 0;
  std::uint64_t block_ = 0;
  std::array<std::uint32_t, 4> buffer_{};
  int buffer_pos_ = 4;  // empty
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

/// Mixes (a, b, c) into a single stream id. Distinct tuples map to distinct
/// ids up to a 64-bit hash; combined with the 64-bit block counter the
/// underlying 128-bit Philox counter never collides within a stream.
std::uint64_t derive_stream(std::uint64_t a, std::uint64_t b = 0,
                            std::uint64_t c = 0) noexcept;

/// Substream for one Monte Carlo work item: (master seed, purpose, x-point,
/// trial) fully determine the draw sequence.
RandomStream substream(std::uint64_t master_seed, std::uint64_t purpose,
                       std::uint64_t x_index, std::uint64_t trial) noexcept;

}  // namespace relaybf
