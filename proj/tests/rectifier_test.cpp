// Copyright 2026 The swipt-sim Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <numbers>

#include "swipt/rectifier.hpp"
#include "swipt/units.hpp"

namespace swipt::rectifier
{
namespace
{

using Node = TransientCircuit::NodeId;
constexpr double kF0 = 13.56e6;
const std::vector<double> kTableGrid{-20, -15, -10, -5, 0, 5, 10, 15, 20, 22, 24};

TEST(SourceAmplitude, DeliversAvailablePowerIntoConjugateMatch)
{
  const Complex zs(48.0, 3.0);
  const double v = SourceAmplitude(0.25, zs);
  // |V|^2 / (8 R) is the power into the conjugate load.
  EXPECT_NEAR(v * v / (8.0 * zs.real()), 0.25, 1e-15);
  EXPECT_THROW(SourceAmplitude(-1.0, zs), InvalidArgument);
}

TEST(Simulate, ZeroPowerGivesZeroWaveforms)
{
  const auto w = SimulateSteadyState(RectifierCircuit{}, 0.0);
  ASSERT_FALSE(w.v_out.empty());
  for (std::size_t k = 0; k < w.v_out.size(); ++k)
  {
    EXPECT_EQ(w.v_out[k], 0.0);
    EXPECT_EQ(w.v_port[k], 0.0);
    EXPECT_EQ(w.i_in[k], 0.0);
  }
  EXPECT_THROW(Analyze(RectifierCircuit{}, 0.0), InvalidArgument);
}

TEST(InputImpedance, ResistorLoad)
{
  const auto w = SimulateDrivenLoad(Complex(50.0, 0.0), kF0, 1.0,
                                    [](TransientCircuit &c, Node port)
                                    {
                                      c.AddResistor(port, TransientCircuit::kGround, 73.0);
                                      return TransientCircuit::kGround;
                                    });
  const Complex z = InputImpedance(w, kF0);
  EXPECT_LT(std::abs(z - 73.0) / 73.0, 1e-3);
}

TEST(InputImpedance, CapacitorLoad)
{
  const double c = 470e-12;
  const auto w = SimulateDrivenLoad(Complex(50.0, 3.0), kF0, 1.0,
                                    [&](TransientCircuit &ckt, Node port)
                                    {
                                      ckt.AddCapacitor(port, TransientCircuit::kGround, c);
                                      return TransientCircuit::kGround;
                                    });
  const Complex expect = 1.0 / Complex(0.0, 2.0 * std::numbers::pi * kF0 * c);
  EXPECT_LT(std::abs(InputImpedance(w, kF0) - expect) / std::abs(expect), 1e-3);
}

TEST(InputImpedance, DoublerWithLinearResistorsMatchesClosedForm)
{
  const RectifierCircuit rc;
  const double ra = 150.0, rb = 40.0;
  const auto w = SimulateDrivenLoad(rc.source_impedance, kF0, 2.0,
                                    [&](TransientCircuit &ckt, Node port)
                                    {
                                      const auto mid = ckt.AddNode();
                                      const auto out = ckt.AddNode();
                                      ckt.AddCapacitor(port, mid, rc.c1);
                                      ckt.AddResistor(mid, TransientCircuit::kGround, ra);
                                      ckt.AddResistor(mid, out, rb);
                                      ckt.AddCapacitor(out, TransientCircuit::kGround, rc.c2);
                                      ckt.AddResistor(out, TransientCircuit::kGround, rc.r_l);
                                      return out;
                                    });
  const double wv = 2.0 * std::numbers::pi * kF0;
  auto par = [](Complex a, Complex b) { return a * b / (a + b); };
  const Complex zc1 = 1.0 / Complex(0.0, wv * rc.c1);
  const Complex zc2 = 1.0 / Complex(0.0, wv * rc.c2);
  const Complex expect = zc1 + par(ra, rb + par(rc.r_l, zc2));
  EXPECT_LT(std::abs(InputImpedance(w, kF0) - expect) / std::abs(expect), 1e-3);
}

TEST(InputImpedance, UndefinedWithoutCurrent)
{
  const auto w = SimulateSteadyState(RectifierCircuit{}, 0.0);
  EXPECT_THROW(InputImpedance(w, kF0), ComputationError);
}

TEST(RfDcEfficiency, TableRows)
{
  const double p24 = DbmToWatts(24.0);
  EXPECT_NEAR(p24, 0.2512, 1e-4);
  EXPECT_NEAR(RfDcEfficiency(5.12, p24, 200.0), 0.522, 0.0005);
  EXPECT_NEAR(RfDcEfficiency(4.92, p24, 200.0), 0.482, 0.0005);
  EXPECT_EQ(RfDcEfficiency(0.0, p24, 200.0), 0.0);
}

TEST(RfDcEfficiency, RejectsImpossibleInputs)
{
  EXPECT_THROW(RfDcEfficiency(1.0, 0.0, 200.0), InvalidArgument);
  EXPECT_THROW(RfDcEfficiency(1.0, 1e-3, 0.0), InvalidArgument);
  EXPECT_THROW(RfDcEfficiency(10.0, 0.1, 200.0), ComputationError);
}

TEST(ConjugateMatch, Examples)
{
  const auto exact = ConjugateMatchResidual({48.0, 3.0}, {48.0, -3.0});
  EXPECT_EQ(exact.gamma, Complex(0.0, 0.0));
  EXPECT_EQ(exact.mismatch, 1.0);
  const auto real = ConjugateMatchResidual(75.0, 75.0);
  EXPECT_EQ(std::abs(real.gamma), 0.0);
  const auto half = ConjugateMatchResidual(50.0, 100.0);
  EXPECT_NEAR(half.gamma.real(), 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(half.mismatch, 8.0 / 9.0, 1e-15);
  EXPECT_THROW(ConjugateMatchResidual({0.0, 1.0}, 50.0), InvalidArgument);
}

TEST(Analyze, InputImpedanceNearReportedValueAt24dBm)
{
  const auto r = Analyze(RectifierCircuit{}, DbmToWatts(24.0));
  EXPECT_TRUE(r.converged);
  const Complex target(48.0, -3.0);
  EXPECT_LT(std::abs(r.z_in - target), 0.5 * std::abs(target));
  EXPECT_GT(r.v_out_dc, 0.0);
  EXPECT_LE(r.v_out_dc * r.v_out_dc / 200.0, r.delivered_power * (1.0 + 1e-6));
  EXPECT_LE(r.efficiency, 1.0);
}

TEST(Analyze, BelowDiodeKneeOutputIsNegligible)
{
  for (double dbm : {-20.0, -15.0, -10.0})
  {
    EXPECT_LT(Analyze(RectifierCircuit{}, DbmToWatts(dbm)).v_out_dc, 10e-3) << dbm;
  }
}

TEST(PowerSweep, MonotoneAndWithinDoublerBound)
{
  const RectifierCircuit rc;
  const auto rows = PowerSweep(rc, kTableGrid, {}, 4);
  ASSERT_EQ(rows.size(), kTableGrid.size());
  double prev = -1.0;
  for (const auto &row : rows)
  {
    ASSERT_TRUE(row.result.has_value()) << row.error;
    const double v = row.result->v_out_dc;
    EXPECT_GE(v, prev - 1e-6);
    EXPECT_LE(v, 2.0 * SourceAmplitude(DbmToWatts(row.p_in_dbm), rc.source_impedance));
    EXPECT_TRUE(row.result->converged);
    prev = v;
  }
}

TEST(PowerSweep, EmptyAndRepeatedInputs)
{
  EXPECT_TRUE(PowerSweep(RectifierCircuit{}, std::vector<double>{}).empty());
  const std::vector<double> twice{10.0, 10.0};
  const auto rows = PowerSweep(RectifierCircuit{}, twice, {}, 2);
  ASSERT_TRUE(rows[0].result && rows[1].result);
  EXPECT_EQ(rows[0].result->v_out_dc, rows[1].result->v_out_dc);
  EXPECT_EQ(rows[0].result->z_in, rows[1].result->z_in);
}

TEST(PowerSweep, FailuresStayOnTheirRow)
{
  const std::vector<double> grid{0.0, std::nan("")};
  const auto rows = PowerSweep(RectifierCircuit{}, grid);
  EXPECT_TRUE(rows[0].result.has_value());
  EXPECT_FALSE(rows[1].result.has_value());
  EXPECT_FALSE(rows[1].error.empty());
}

TEST(Simulate, ShootingAgreesWithPlainIntegration)
{
  SimOptions plain;
  plain.accelerate = false;
  const RectifierCircuit rc;
  const auto a = Analyze(rc, DbmToWatts(10.0));
  const auto b = Analyze(rc, DbmToWatts(10.0), plain);
  EXPECT_NEAR(a.v_out_dc, b.v_out_dc, 1e-3 * b.v_out_dc);
}

}  // namespace
}  // namespace swipt::rectifier
