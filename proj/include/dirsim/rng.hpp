#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

namespace dirsim {

/// Counter-based random stream (Philox4x32-10). The 64-bit seed is the key;
/// the counter is (block index, stream id), so every (seed, stream_id) pair
/// names a reproducible, independent sequence. A stream is single-owner:
/// move it between threads, but use split() to parallelize.
class RngStream {
 public:
  static constexpr const char* kGeneratorName = "philox4x32-10";
  static constexpr const char* kNormalMethod = "marsaglia-polar";

  explicit RngStream(std::uint64_t seed, std::uint64_t stream_id = 0);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  std::uint64_t next_u64();
  /// Uniform on [0, 1) with 53 random bits.
  double next_uniform();
  /// Exact standard normal variate.
  double next_normal();

  /// Child stream with a derived id; a pure function of (seed, stream_id, index).
  RngStream substream(std::uint64_t index) const;
  /// k children with pairwise distinct ids. The parent is left untouched.
  std::vector<RngStream> split(std::size_t k) const;

  /// Raw Philox4x32-10 block function, exposed for known-answer tests.
  static std::array<std::uint32_t, 4> philox(std::array<std::uint32_t, 4> counter,
                                             std::array<std::uint32_t, 2> key);

 private:
  void refill();

  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::uint64_t block_ = 0;
  std::array<std::uint64_t, 2> buffer_{};
  int buffered_ = 0;
  std::optional<double> spare_normal_;
};

}  // namespace dirsim
