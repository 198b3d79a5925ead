#pragma once

#include <array>
#include <cstddef>
#include <cstdint>

namespace curtainlab {

/// Philox4x32-10 counter-based block function (Salmon et al., SC'11).
/// Pure: the same (counter, key) always yields the same block.
using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

PhiloxCounter philox4x32_10(PhiloxCounter counter, PhiloxKey key);

/// Independent stream families drawn from one master seed. A trial's
/// stream is addressed by (seed, domain, trial); draws are numbered from 0.
enum class StreamDomain : std::uint32_t {
  walk = 0,
  drift_batch = 1,
  boundary_forward = 2,
  boundary_reversed = 3,
  monitor = 4,
  audit = 5,
  tail = 6,
  probe = 7,
};

/// Sequential view of one counter-based stream. Copying a CounterRng
/// forks the stream at the current position.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t trial,
             StreamDomain domain = StreamDomain::walk);

  std::uint64_t next_u64();
  /// Uniform in [0, 1) with 53 random bits.
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform index in [0, n); n must be positive.
  std::size_t index(std::size_t n);
  /// Standard normal via Box-Muller (consumes two draws).
  double normal();

  std::uint64_t draws() const { return draw_; }

  using result_type = std::uint64_t;
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }
  result_type operator()() { return next_u64(); }

 private:
  PhiloxKey key_;
  std::uint32_t trial_lo_;
  std::uint32_t domain_;
  std::uint64_t draw_ = 0;
};

/// Maps a 64-bit draw to [0, n) by multiply-shift (bias below n * 2^-64).
inline std::size_t scale_draw(std::uint64_t draw, std::size_t n) {
  __extension__ using u128 = unsigned __int128;
  return static_cast<std::size_t>((static_cast<u128>(draw) * n) >> 64);
}

/// Stateless draw: the value of draw `index` on stream (seed, trial, domain).
std::uint64_t counter_draw(std::uint64_t seed, std::uint64_t trial,
                           StreamDomain domain, std::uint64_t index);

}  // namespace curtainlab
