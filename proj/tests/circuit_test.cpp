// Copyright 2026 The swipt-sim Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "swipt/circuit.hpp"

namespace swipt::circuit
{
namespace
{

TEST(TransientCircuit, ResistiveDividerFollowsSource)
{
  TransientCircuit c;
  const auto a = c.AddNode();
  const auto b = c.AddNode();
  const auto src = c.AddSineSource(a, TransientCircuit::kGround, 2.0, 1e3);
  c.AddResistor(a, b, 100.0);
  c.AddResistor(b, TransientCircuit::kGround, 300.0);
  c.Reset();
  const double h = 1e-6;
  for (int k = 0; k < 500; ++k)
  {
    c.Step(k * h, h);
    const double v = c.SourceVoltage(src, (k + 1) * h);
    EXPECT_NEAR(c.NodeVoltage(b), 0.75 * v, 1e-12);
    EXPECT_NEAR(c.SourceCurrent(src), v / 400.0, 1e-12);
  }
}

TEST(TransientCircuit, RcChargingMatchesExponential)
{
  // Steady-state RC low pass after 40 periods.
  const double r = 1e3, cap = 1e-9, f = 1e5;
  TransientCircuit c;
  const auto a = c.AddNode();
  const auto b = c.AddNode();
  c.AddSineSource(a, TransientCircuit::kGround, 1.0, f);
  c.AddResistor(a, b, r);
  c.AddCapacitor(b, TransientCircuit::kGround, cap);
  c.Reset();
  const int steps = 2000;
  const double h = 1.0 / (f * steps);
  double peak = 0.0;
  for (int k = 0; k < 40 * steps; ++k)
  {
    c.Step(k * h, h);
    if (k >= 39 * steps) peak = std::max(peak, c.NodeVoltage(b));
  }
  const double w = 2.0 * std::numbers::pi * f;
  EXPECT_NEAR(peak, 1.0 / std::sqrt(1.0 + std::pow(w * r * cap, 2)), 1e-4);
}

TEST(TransientCircuit, ForwardDiodeFollowsShockley)
{
  DiodeModel d;
  d.r_s = 0.0;
  d.c_j = 0.0;
  TransientCircuit c;
  const auto a = c.AddNode();
  const auto k = c.AddNode();
  // 1 kHz source: quasi-static over one small step near the crest.
  c.AddSineSource(a, TransientCircuit::kGround, 5.0, 1.0);
  c.AddResistor(a, k, 1e3);
  c.AddDiode(k, TransientCircuit::kGround, d);
  c.Reset();
  c.Step(0.0, 0.25);
  const double vd = c.NodeVoltage(k);
  const double i = (5.0 - vd) / 1e3;
  EXPECT_NEAR(i, d.i_s * std::expm1(vd / d.NVt()) + 1e-12 * vd, 1e-10);
  EXPECT_GT(vd, 0.2);
  EXPECT_LT(vd, 0.5);
}

TEST(TransientCircuit, RejectsBadElements)
{
  TransientCircuit c;
  const auto a = c.AddNode();
  EXPECT_THROW(c.AddResistor(a, TransientCircuit::kGround, 0.0), InvalidArgument);
  EXPECT_THROW(c.AddCapacitor(a, 7, 1e-9), InvalidArgument);
  DiodeModel bad;
  bad.ideality = 3.0;
  EXPECT_THROW(c.AddDiode(a, TransientCircuit::kGround, bad), InvalidArgument);
}

}  // namespace
}  // namespace swipt::circuit
