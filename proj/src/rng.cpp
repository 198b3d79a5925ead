#include "curtainlab/rng.hpp"

#include <cmath>
#include <numbers>

namespace curtainlab {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi,
                    std::uint32_t& lo) {
  const std::uint64_t product = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(product >> 32);
  lo = static_cast<std::uint32_t>(product);
}

inline PhiloxCounter philox_round(const PhiloxCounter& c, const PhiloxKey& k) {
  std::uint32_t hi0, lo0, hi1, lo1;
  mulhilo(kMul0, c[0], hi0, lo0);
  mulhilo(kMul1, c[2], hi1, lo1);
  return {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
}

}  // namespace

PhiloxCounter philox4x32_10(PhiloxCounter counter, PhiloxKey key) {
  for (int round = 0; round < 10; ++round) {
    if (round > 0) {
      key[0] += kWeyl0;
      key[1] += kWeyl1;
    }
    counter = philox_round(counter, key);
  }
  return counter;
}

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t trial,
                       StreamDomain domain)
    : key_{static_cast<std::uint32_t>(seed),
           static_cast<std::uint32_t>(seed >> 32)},
      trial_lo_(static_cast<std::uint32_t>(trial)),
      domain_(static_cast<std::uint32_t>(domain) |
              (static_cast<std::uint32_t>(trial >> 32) << 8)) {}

std::uint64_t CounterRng::next_u64() {
  const PhiloxCounter block = philox4x32_10(
      {static_cast<std::uint32_t>(draw_),
       static_cast<std::uint32_t>(draw_ >> 32), trial_lo_, domain_},
      key_);
  ++draw_;
  return static_cast<std::uint64_t>(block[0]) |
         (static_cast<std::uint64_t>(block[1]) << 32);
}

double CounterRng::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::size_t CounterRng::index(std::size_t n) {
  return scale_draw(next_u64(), n);
}

double CounterRng::normal() {
  double u1 = uniform();
  const double u2 = uniform();
  if (u1 <= 0.0) u1 = 0x1.0p-53;
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

std::uint64_t counter_draw(std::uint64_t seed, std::uint64_t trial,
                           StreamDomain domain, std::uint64_t index) {
  const PhiloxCounter block = philox4x32_10(
      {static_cast<std::uint32_t>(index),
       static_cast<std::uint32_t>(index >> 32),
       static_cast<std::uint32_t>(trial),
       static_cast<std::uint32_t>(domain) |
           (static_cast<std::uint32_t>(trial >> 32) << 8)},
      {static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)});
  return static_cast<std::uint64_t>(block[0]) |
         (static_cast<std::uint64_t>(block[1]) << 32);
}

}  // namespace curtainlab
