#pragma once

#include <array>
#include <cstdint>

namespace nfl {

/// Philox4x32-10 block function (Salmon et al., Random123).
std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> counter,
                                           std::array<std::uint32_t, 2> key);

/// Counter-based random stream keyed by (seed, stream index).
///
/// Draw n of a stream depends only on (seed, index, n), so per-sample
/// streams give results that do not depend on how work is scheduled across
/// threads. A single stream is not safe to share between concurrent drawers.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t index) : seed_(seed), index_(index) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t index() const { return index_; }

  /// 64 random bits.
  std::uint64_t next_u64();
  /// Uniform on the open interval (0,1) with 53-bit resolution.
  double uniform();
  /// Standard normal by inverse CDF of one uniform.
  double normal();
  /// +1 or -1 with equal probability.
  int sign();
  bool bernoulli(double p) { return uniform() < p; }

  /// Child stream for nested work (e.g. one stream per restart of an attack).
  RngStream substream(std::uint64_t k) const;

 private:
  std::uint64_t seed_;
  std::uint64_t index_;
  std::uint64_t block_ = 0;
  std::array<std::uint32_t, 4> buffer_{};
  int used_ = 4;
};

}  // namespace nfl
