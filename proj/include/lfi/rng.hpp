#pragma once

#include <cstdint>
#include <limits>

namespace lfi {

/// Reproducible random stream keyed by (seed, stream id).
///
/// Streams form a tree: `split(k)` derives a child keyed by the parent's key
/// and k, so every replicate, prior draw, or generation can own a stream
/// whose contents do not depend on evaluation order or thread count.
/// The generator is SplitMix64 started from a hashed key.
class RngStream {
 public:
  using result_type = std::uint64_t;

  explicit RngStream(std::uint64_t seed, std::uint64_t stream_id = 0) noexcept;

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream_id() const noexcept { return stream_id_; }

  /// Child stream; independent of how many values this stream has produced.
  RngStream split(std::uint64_t child) const noexcept;

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }
  result_type operator()() noexcept;

  /// Uniform on the open interval (0, 1).
  double uniform() noexcept;
  double normal() noexcept;
  double exponential() noexcept;
  /// Gamma(shape, 1) via Marsaglia-Tsang; shape < 1 uses the U^(1/shape) boost.
  double gamma(double shape);

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::uint64_t state_;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace lfi
