// Copyright 2026 The swipt-sim Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef SWIPT_PRBS_HPP
#define SWIPT_PRBS_HPP

#include <cstdint>
#include <vector>

#include "swipt/error.hpp"

namespace swipt
{

//
// 9-stage Fibonacci LFSR for x^9 + x^5 + 1. Each call emits bit 0 of the register,
// then shifts left and feeds bit8 ^ bit4 back into bit 0.
//
class Prbs9
{
public:
  static constexpr std::uint16_t kMask = 0x1FF;
  static constexpr std::size_t kPeriod = 511;

  explicit Prbs9(std::uint16_t seed = kMask) : state_(seed)
  {
    detail::Require(seed != 0 && (seed & ~kMask) == 0, "PRBS-9 seed must be a non-zero 9-bit value");
  }

  std::uint16_t State() const { return state_; }

  std::uint8_t Next()
  {
    const auto out = static_cast<std::uint8_t>(state_ & 1u);
    const unsigned fb = ((state_ >> 8) ^ (state_ >> 4)) & 1u;
    state_ = static_cast<std::uint16_t>(((state_ << 1) | fb) & kMask);
    return out;
  }

  std::vector<std::uint8_t> Take(std::size_t n)
  {
    std::vector<std::uint8_t> bits(n);
    for (auto &b : bits)
    {
      b = Next();
    }
    return bits;
  }

private:
  std::uint16_t state_;
};

}  // namespace swipt

#endif  // SWIPT_PRBS_HPP
