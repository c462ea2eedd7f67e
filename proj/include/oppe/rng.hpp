#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace oppe {

/// Philox4x32-10 block function (Salmon et al., SC'11): maps a 128-bit
/// counter and 64-bit key to 128 pseudo-random bits.
std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> ctr,
                                           std::array<std::uint32_t, 2> key);

/// Counter-based random stream. The key is `seed`; the counter holds the
/// block index in its low 64 bits and `stream_id` in its high 64 bits, so
/// distinct (seed, stream_id) pairs never share a block and any substream
/// can be opened without touching the others.
///
/// Satisfies UniformRandomBitGenerator with 64-bit output.
class SeededStream {
 public:
  using result_type = std::uint64_t;

  explicit SeededStream(std::uint64_t seed, std::uint64_t stream_id = 0);

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream_id() const noexcept { return stream_id_; }

  std::uint64_t operator()();

  /// Uniform on the open interval (0, 1) with 53-bit resolution.
  double uniform();

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

 private:
  void refill();

  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::uint64_t block_ = 0;
  std::array<std::uint64_t, 2> buffer_{};
  int available_ = 0;
};

}  // namespace oppe
