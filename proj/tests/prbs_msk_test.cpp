// Copyright 2026 The swipt-sim Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "swipt/msk.hpp"
#include "swipt/prbs.hpp"

namespace swipt
{
namespace
{

using msk::Complex;

TEST(Prbs9, EveryNonzeroSeedHasPeriod511AndBalance)
{
  for (std::uint16_t seed = 1; seed <= Prbs9::kMask; ++seed)
  {
    Prbs9 g(seed);
    int ones = 0;
    std::size_t period = 0;
    for (std::size_t n = 1; n <= Prbs9::kPeriod; ++n)
    {
      ones += g.Next();
      if (g.State() == seed)
      {
        period = n;
        break;
      }
    }
    ASSERT_EQ(period, Prbs9::kPeriod) << "seed " << seed;
    EXPECT_EQ(ones, 256) << "seed " << seed;
  }
}

TEST(Prbs9, OutputSatisfiesCharacteristicRecurrence)
{
  // x^9 + x^5 + 1: o[m] = o[m-9] ^ o[m-5].
  for (std::uint16_t seed : {1, 0x155, 0x1FF, 0x0A3})
  {
    Prbs9 g(seed);
    const auto o = g.Take(2000);
    for (std::size_t m = 9; m < o.size(); ++m)
    {
      ASSERT_EQ(o[m], o[m - 9] ^ o[m - 5]) << "seed " << seed << " m " << m;
    }
  }
}

TEST(Prbs9, RejectsInvalidSeeds)
{
  EXPECT_THROW(Prbs9(0), InvalidArgument);
  EXPECT_THROW(Prbs9(0x200), InvalidArgument);
}

TEST(Msk, UnitEnvelope)
{
  Prbs9 g;
  const auto x = msk::Modulate(g.Take(2000), 8);
  ASSERT_EQ(x.size(), 16000u);
  for (const auto &s : x)
  {
    EXPECT_NEAR(std::abs(s), 1.0, 1e-14);
  }
}

TEST(Msk, QuarterTurnPerBit)
{
  Prbs9 g(0x0F3);
  const auto bits = g.Take(1000);
  const int sps = 6;
  // One extra bit supplies the boundary sample after the last bit.
  auto ext = bits;
  ext.push_back(1);
  const auto x = msk::Modulate(ext, sps);
  for (std::size_t k = 0; k < bits.size(); ++k)
  {
    const double dphi = std::arg(x[(k + 1) * sps] / x[k * sps]);
    EXPECT_NEAR(dphi, bits[k] ? std::numbers::pi / 2.0 : -std::numbers::pi / 2.0, 1e-12) << k;
  }
}

TEST(Msk, AllZerosIsToneAtMinusQuarterBitRate)
{
  const int sps = 8;
  const std::vector<std::uint8_t> zeros(64, 0);
  const auto x = msk::Modulate(zeros, sps);
  // f = -Rb/4 at fs = sps Rb: phase step -pi/(2 sps) per sample.
  for (std::size_t i = 1; i < x.size(); ++i)
  {
    EXPECT_NEAR(std::arg(x[i] / x[i - 1]), -std::numbers::pi / (2.0 * sps), 1e-12);
  }
  EXPECT_NEAR(std::arg(x[0]), 0.0, 1e-15);
}

TEST(Msk, NoiselessLoopbackRecoversBits)
{
  Prbs9 g;
  const auto bits = g.Take(10000);
  for (int sps : {4, 8, 16})
  {
    EXPECT_EQ(msk::Demodulate(msk::Modulate(bits, sps), sps), bits);
    EXPECT_EQ(msk::DecodePrecoded(msk::Modulate(msk::Precode(bits), sps), sps), bits);
  }
}

TEST(Msk, RejectsTooFewSamplesPerSymbol)
{
  const std::vector<std::uint8_t> bits{1, 0};
  EXPECT_THROW(msk::Modulate(bits, 3), InvalidArgument);
}

TEST(Awgn, ZeroNoiseIsExactGain)
{
  Prbs9 g;
  const auto x = msk::Modulate(g.Take(100), 8);
  msk::ChannelParams p;
  p.gain = Complex(0.3, -0.2);
  const auto y = msk::AwgnChannel(x, p);
  for (std::size_t i = 0; i < x.size(); ++i)
  {
    EXPECT_EQ(y[i], p.gain * x[i]);
  }
}

TEST(Awgn, PureNoiseVarianceMatchesTarget)
{
  const std::vector<Complex> x(1000000, Complex(1.0, 0.0));
  msk::ChannelParams p;
  p.gain = 0.0;
  p.noise_density = 2e-15;
  p.bit_rate = 5e6;
  p.samples_per_symbol = 8;
  p.seed = 99;
  p.workers = 4;
  const auto y = msk::AwgnChannel(x, p);
  double sr = 0.0, si = 0.0, mr = 0.0, mi = 0.0;
  for (const auto &v : y)
  {
    mr += v.real();
    mi += v.imag();
  }
  mr /= y.size();
  mi /= y.size();
  for (const auto &v : y)
  {
    sr += (v.real() - mr) * (v.real() - mr);
    si += (v.imag() - mi) * (v.imag() - mi);
  }
  const double target = p.noise_density * p.bit_rate * p.samples_per_symbol / 2.0;
  EXPECT_NEAR(sr / (y.size() - 1), target, 0.01 * target);
  EXPECT_NEAR(si / (y.size() - 1), target, 0.01 * target);
}

TEST(Awgn, DeterministicAndWorkerIndependent)
{
  Prbs9 g;
  const auto x = msk::Modulate(g.Take(5000), 8);
  msk::ChannelParams p;
  p.noise_density = 1e-3;
  p.seed = 5;
  p.workers = 1;
  const auto a = msk::AwgnChannel(x, p);
  p.workers = 7;
  const auto b = msk::AwgnChannel(x, p);
  const auto c = msk::AwgnChannel(x, p);
  EXPECT_EQ(a, b);
  EXPECT_EQ(b, c);
  p.seed = 6;
  EXPECT_NE(msk::AwgnChannel(x, p), a);
}

}  // namespace
}  // namespace swipt
