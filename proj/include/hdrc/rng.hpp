#pragma once

// Philox4x32-10 counter-based generator (Salmon et al., SC'11). A stream is
// identified by (seed, stream id); draws within a stream advance a 64-bit
// counter, so any sub-stream can be reproduced without touching the others.

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>

namespace hdrc {

using Philox4x32Counter = std::array<std::uint32_t, 4>;
using Philox4x32Key = std::array<std::uint32_t, 2>;

inline Philox4x32Counter philox4x32_10(Philox4x32Counter ctr, Philox4x32Key key) noexcept {
  constexpr std::uint32_t kM0 = 0xD2511F53u;
  constexpr std::uint32_t kM1 = 0xCD9E8D57u;
  constexpr std::uint32_t kW0 = 0x9E3779B9u;
  constexpr std::uint32_t kW1 = 0xBB67AE85u;
  for (int round = 0; round < 10; ++round) {
    const std::uint64_t p0 = static_cast<std::uint64_t>(kM0) * ctr[0];
    const std::uint64_t p1 = static_cast<std::uint64_t>(kM1) * ctr[2];
    const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
    const auto lo0 = static_cast<std::uint32_t>(p0);
    const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
    const auto lo1 = static_cast<std::uint32_t>(p1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    key[0] += kW0;
    key[1] += kW1;
  }
  return ctr;
}

class PhiloxStream {
 public:
  PhiloxStream(std::uint64_t seed, std::uint64_t stream) noexcept
      : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
        stream_(stream) {}

  // Next raw block; advances the position by one.
  Philox4x32Counter next_block() noexcept {
    const Philox4x32Counter ctr{static_cast<std::uint32_t>(pos_),
                                static_cast<std::uint32_t>(pos_ >> 32),
                                static_cast<std::uint32_t>(stream_),
                                static_cast<std::uint32_t>(stream_ >> 32)};
    ++pos_;
    return philox4x32_10(ctr, key_);
  }

  // Two uniforms in the open interval (0,1), 53 bits each, from one block.
  std::array<double, 2> uniform_pair() noexcept {
    const auto b = next_block();
    const std::uint64_t x = (static_cast<std::uint64_t>(b[0]) << 32) | b[1];
    const std::uint64_t y = (static_cast<std::uint64_t>(b[2]) << 32) | b[3];
    return {to_open_unit(x), to_open_unit(y)};
  }

  // Circularly-symmetric CN(0,1): real and imaginary parts N(0, 1/2).
  std::complex<double> complex_normal() noexcept {
    const auto [u1, u2] = uniform_pair();
    const double radius = std::sqrt(-std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    return {radius * std::cos(angle), radius * std::sin(angle)};
  }

  std::uint64_t position() const noexcept { return pos_; }

 private:
  static double to_open_unit(std::uint64_t x) noexcept {
    return (static_cast<double>(x >> 11) + 0.5) * 0x1.0p-53;
  }

  Philox4x32Key key_;
  std::uint64_t stream_;
  std::uint64_t pos_ = 0;
};

}  // namespace hdrc
