// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace dronenet {

using Block4 = std::array<std::uint64_t, 4>;
using Key2 = std::array<std::uint64_t, 2>;

// Philox4x64 with 10 rounds.
Block4 philox4x64(Block4 counter, Key2 key);

// Counter-based generator keyed by (seed, stream). Satisfies UniformRandomBitGenerator.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()();

  // Uniform on the open interval (0, 1).
  double uniform();
  // Uniform on [lo, hi).
  double uniform(double lo, double hi);
  // Exp(1).
  double exponential();

  // Independent child stream; depends only on (seed, stream, index).
  Rng split(std::uint64_t index) const;

  std::uint64_t seed() const { return key_[0]; }
  std::uint64_t stream() const { return key_[1]; }

 private:
  Key2 key_;
  Block4 counter_{};
  Block4 buffer_{};
  int used_ = 4;
};

}  // namespace dronenet
