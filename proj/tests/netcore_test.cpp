// Copyright 2026 The swipt-sim Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <numbers>
#include <random>

#include "support.hpp"
#include "swipt/netcore.hpp"

namespace swipt
{
namespace
{

using testing::RandomNetwork;
using testing::RandomNetworkOptions;
using testing::RelErr;

constexpr double kPi = std::numbers::pi;

CoupledResonatorNetwork TwoLoops(double l1, double l2, double m, std::optional<double> c1 = {},
                                 std::optional<double> c2 = {}, double r = 0.0)
{
  RealMatrix mm(2, 2);
  mm << 0.0, m, m, 0.0;
  return CoupledResonatorNetwork({{l1, c1, r, "a"}, {l2, c2, r, "b"}}, mm, {{0, 50.0}, {1, 50.0}});
}

// Port impedance by inverting the full loop matrix and then the port block of the admittance.
ComplexMatrix BruteForcePortZ(const ComplexMatrix &z, const std::vector<std::size_t> &ports)
{
  const ComplexMatrix y = z.fullPivLu().inverse();
  const auto n = static_cast<Eigen::Index>(ports.size());
  ComplexMatrix yp(n, n);
  for (Eigen::Index a = 0; a < n; ++a)
    for (Eigen::Index b = 0; b < n; ++b)
      yp(a, b) = y(ports[a], ports[b]);
  return yp.fullPivLu().inverse();
}

TEST(BuildZMatrix, SeriesResonanceCancels)
{
  CoupledResonatorNetwork net({{1.0, 1.0, 0.0, "x"}}, RealMatrix::Zero(1, 1), {{0, 50.0}});
  const auto z = BuildZMatrix(net, 1.0 / (2.0 * kPi));
  EXPECT_NEAR(std::abs(z(0, 0)), 0.0, 1e-12);
}

TEST(BuildZMatrix, UncoupledLoopsAreBlockDiagonal)
{
  const auto z = BuildZMatrix(TwoLoops(1e-6, 2e-6, 0.0, 1e-9, 2e-9, 1.0), 1e6);
  EXPECT_EQ(z(0, 1), Complex(0.0, 0.0));
  EXPECT_EQ(z(1, 0), Complex(0.0, 0.0));
}

TEST(BuildZMatrix, MutualTermAt1356MHz)
{
  const auto z = BuildZMatrix(TwoLoops(1e-6, 1e-6, 1e-7), 13.56e6);
  const double expect = 2.0 * kPi * 13.56e6 * 1e-7;
  EXPECT_NEAR(z(0, 1).real(), 0.0, 1e-15);
  EXPECT_NEAR(z(0, 1).imag(), expect, 1e-12 * expect);
  EXPECT_NEAR(z(0, 0).imag(), 10.0 * expect, 1e-12 * expect);
}

TEST(BuildZMatrix, RejectsNonPositiveFrequency)
{
  const auto net = TwoLoops(1e-6, 1e-6, 0.0);
  EXPECT_THROW(BuildZMatrix(net, 0.0), InvalidArgument);
  EXPECT_THROW(BuildZMatrix(net, -1.0), InvalidArgument);
}

TEST(Network, RejectsInvalidStructure)
{
  RealMatrix asym(2, 2);
  asym << 0.0, 1e-7, 2e-7, 0.0;
  EXPECT_THROW(CoupledResonatorNetwork({{1e-6, {}, 0, "a"}, {1e-6, {}, 0, "b"}}, asym, {}),
               InvalidArgument);
  EXPECT_THROW(TwoLoops(1e-6, 1e-6, 1.5e-6), InvalidArgument);
  RealMatrix ok = RealMatrix::Zero(2, 2);
  EXPECT_THROW(CoupledResonatorNetwork({{1e-6, {}, 0, "a"}, {1e-6, {}, 0, "b"}}, ok,
                                       {{0, 50.0}, {0, 50.0}}),
               InvalidArgument);
  EXPECT_THROW(CoupledResonatorNetwork({{1e-6, {}, 0, "a"}}, RealMatrix::Zero(1, 1), {{3, 50.0}}),
               InvalidArgument);
  EXPECT_THROW(CoupledResonatorNetwork({{-1e-6, {}, 0, "a"}}, RealMatrix::Zero(1, 1), {}),
               InvalidArgument);
}

TEST(ReduceInternal, EmptySetIsIdentity)
{
  std::mt19937_64 rng(1);
  const auto net = RandomNetwork(rng, {.loops = 3, .ports = 3});
  const auto z = BuildZMatrix(net, 7e6);
  const std::vector<std::size_t> none;
  EXPECT_EQ(ReduceInternal(z, none), z);
}

TEST(ReduceInternal, ThreeLoopChainMatchesFullSolve)
{
  RealMatrix m = RealMatrix::Zero(3, 3);
  m(0, 1) = m(1, 0) = 0.1e-6;
  m(1, 2) = m(2, 1) = 0.15e-6;
  CoupledResonatorNetwork net({{1e-6, 1e-10, 1.0, "a"}, {1e-6, 1.2e-10, 0.5, "m"}, {1e-6, 1e-10, 2.0, "b"}},
                              m, {{0, 50.0}, {2, 50.0}});
  const auto z = BuildZMatrix(net, 15e6);
  const std::vector<std::size_t> internal{1};
  const auto red = ReduceInternal(z, internal);
  EXPECT_LT(RelErr(red, BruteForcePortZ(z, {0, 2})), 1e-12);
}

TEST(ReduceInternal, PropertyMatchesFullSolveUpToSixLoops)
{
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 300; ++trial)
  {
    const std::size_t loops = 2 + trial % 5;
    const std::size_t ports = 1 + static_cast<std::size_t>(trial) % (loops - 1);
    const auto net = RandomNetwork(rng, {.loops = loops, .ports = ports});
    const double f = 1e6 + 59e6 * std::uniform_real_distribution<double>()(rng);
    const auto z = BuildZMatrix(net, f);
    const auto red = ReduceInternal(z, net.InternalIndices());
    EXPECT_LT(RelErr(red, BruteForcePortZ(z, net.PortIndices())), 1e-9) << "trial " << trial;
  }
}

TEST(ReduceInternal, ReductionThenSEqualsTerminatedFullNetwork)
{
  // Drive port 1 from a z0 source with ports 2 terminated in z0, solving the full loop system.
  std::mt19937_64 rng(7);
  const auto net = RandomNetwork(rng, {.loops = 5, .ports = 2});
  const double f = 20e6;
  const double z0 = 50.0;
  ComplexMatrix z = BuildZMatrix(net, f);
  const auto s = ZToS(ReduceInternal(z, net.InternalIndices()), z0);
  ComplexMatrix zt = z;
  zt(0, 0) += z0;
  zt(1, 1) += z0;
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(5);
  v(0) = 2.0 * std::sqrt(z0);  // incident wave a1 = 1
  const Eigen::VectorXcd i = zt.fullPivLu().solve(v);
  // b2 = -i2 sqrt(z0) for a loop current flowing into the port's load.
  const Complex s21 = -i(1) * std::sqrt(z0);
  const Complex s11 = (v(0) - i(0) * z0) / std::sqrt(z0) - 1.0;
  EXPECT_LT(std::abs(s21 - s(1, 0)), 1e-12);
  EXPECT_LT(std::abs(s11 - s(0, 0)), 1e-12);
}

TEST(ReduceInternal, SingularInternalBlockIsReported)
{
  // Two identical lossless inductor loops with k = 1 give a singular internal block.
  RealMatrix m = RealMatrix::Zero(3, 3);
  m(1, 2) = m(2, 1) = 1e-6;
  CoupledResonatorNetwork net({{1e-6, {}, 1.0, "p"}, {1e-6, {}, 0.0, "x"}, {1e-6, {}, 0.0, "y"}}, m,
                              {{0, 50.0}});
  EXPECT_THROW(PortZMatrix(net, 1e6), SingularMatrixError);
}

TEST(ZToS, MatchedLoadHasNoReflection)
{
  ComplexMatrix z(1, 1);
  z(0, 0) = 50.0;
  EXPECT_LT(std::abs(ZToS(z, 50.0)(0, 0)), 1e-15);
}

TEST(ZToS, OpenCircuitReflectsFully)
{
  ComplexMatrix z(1, 1);
  z(0, 0) = 1e12;
  EXPECT_NEAR(ZToS(z, 50.0)(0, 0).real(), 1.0, 1e-9);
}

TEST(ZToS, ShuntImpedanceMatchesAbcdOracle)
{
  // ABCD of a shunt admittance Y: [[1, 0], [Y, 1]]; S21 = 2 / (A + B/z0 + C z0 + D).
  const Complex zp(30.0, -12.0);
  const double z0 = 50.0;
  ComplexMatrix z(2, 2);
  z.setConstant(zp);
  const Complex expect = 2.0 / (2.0 + z0 / zp);
  const auto s = ZToS(z, z0);
  EXPECT_LT(std::abs(s(1, 0) - expect), 1e-14);
  EXPECT_LT(std::abs(s(1, 0) - 2.0 * zp / (2.0 * zp + z0)), 1e-14);
}

TEST(ZToS, RejectsNonPositiveReference)
{
  ComplexMatrix z = ComplexMatrix::Identity(1, 1);
  EXPECT_THROW(ZToS(z, 0.0), InvalidArgument);
}

TEST(SToZ, ZeroSGivesReferenceDiagonal)
{
  const auto z = SToZ(ComplexMatrix::Zero(3, 3), 50.0);
  EXPECT_LT(RelErr(z, 50.0 * ComplexMatrix::Identity(3, 3)), 1e-15);
}

TEST(SToZ, OpenOnePortHasNoFiniteImpedance)
{
  ComplexMatrix s(1, 1);
  s(0, 0) = 1.0;
  EXPECT_THROW(SToZ(s, 50.0), SingularMatrixError);
}

TEST(SToZ, RoundTripOnRandomPassiveNetworks)
{
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial)
  {
    const auto net = RandomNetwork(rng, {.loops = 4, .ports = 1 + static_cast<std::size_t>(trial % 4)});
    const auto z = PortZMatrix(net, 2e6 + 1e5 * trial);
    EXPECT_LT(RelErr(SToZ(ZToS(z, 50.0), 50.0), z), 1e-10) << trial;
  }
}

TEST(SweepProperties, ReciprocityPassivityAndLosslessUnitarity)
{
  std::mt19937_64 rng(11);
  const auto grid = MakeGrid(1e6, 60e6, 61, false);
  for (int trial = 0; trial < 40; ++trial)
  {
    const bool lossless = trial % 2 == 1;
    const auto net = RandomNetwork(rng, {.loops = 2 + static_cast<std::size_t>(trial % 5),
                                         .ports = 2, .lossless = lossless});
    const auto resp = Sweep(net, grid);
    for (const auto &s : resp.matrices)
    {
      EXPECT_LT((s - s.transpose()).cwiseAbs().maxCoeff(), 1e-9);
      Eigen::JacobiSVD<ComplexMatrix> svd(s);
      EXPECT_LE(svd.singularValues()(0), 1.0 + 1e-9);
      if (lossless)
      {
        const ComplexMatrix id = ComplexMatrix::Identity(s.rows(), s.cols());
        EXPECT_LT((s.adjoint() * s - id).cwiseAbs().maxCoeff(), 1e-8);
      }
    }
  }
}

TEST(Sweep, TwoResonatorResponseMatchesClosedForm)
{
  const double l = 10e-6;
  const double f0 = 13.56e6;
  const double c = 1.0 / (std::pow(2.0 * kPi * f0, 2) * l);
  const double k = 0.03;
  const double r = 2.0;
  const auto net = TwoLoops(l, l, k * l, c, c, r);
  const auto grid = MakeGrid(10e6, 17e6, 701, false);
  const auto resp = Sweep(net, grid);
  double best = 0.0;
  double f_best = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i)
  {
    const double w = 2.0 * kPi * grid[i];
    const Complex zs = Complex(r, w * l - 1.0 / (w * c)) + 50.0;
    const Complex zm(0.0, w * k * l);
    const Complex s21 = 2.0 * zm * 50.0 / (zs * zs - zm * zm);
    EXPECT_LT(std::abs(resp.matrices[i](1, 0) - s21), 1e-12);
    if (std::abs(s21) > best)
    {
      best = std::abs(s21);
      f_best = grid[i];
    }
  }
  // Loaded Q is about 16, so k Q < 1: under-coupled, one peak at f0.
  EXPECT_NEAR(f_best, f0, 0.02 * f0);
}

TEST(Sweep, OverCoupledPairSplits)
{
  // Loaded Q about 17 and k = 0.3, so k Q >> 1.
  const double l = 10e-6;
  const double f0 = 13.56e6;
  const double c = 1.0 / (std::pow(2.0 * kPi * f0, 2) * l);
  const auto resp = Sweep(TwoLoops(l, l, 0.3 * l, c, c, 0.5), MakeGrid(8e6, 20e6, 1201, false));
  std::size_t mid = 0;
  for (std::size_t i = 0; i < resp.grid.size(); ++i)
    if (std::abs(resp.grid[i] - f0) < std::abs(resp.grid[mid] - f0)) mid = i;
  double left = 0.0, right = 0.0;
  for (std::size_t i = 0; i < resp.grid.size(); ++i)
  {
    const double m = std::abs(resp.matrices[i](1, 0));
    (i < mid ? left : right) = std::max(i < mid ? left : right, m);
  }
  EXPECT_GT(left, 1.5 * std::abs(resp.matrices[mid](1, 0)));
  EXPECT_GT(right, 1.5 * std::abs(resp.matrices[mid](1, 0)));
}

TEST(Sweep, ZeroCouplingTransmitsNothing)
{
  const auto resp = Sweep(TwoLoops(1e-6, 1e-6, 0.0, 1e-10, 1e-10, 1.0), MakeGrid(1e6, 60e6, 50, true));
  for (const auto &s : resp.matrices)
  {
    EXPECT_EQ(std::abs(s(1, 0)), 0.0);
  }
}

TEST(Sweep, ParallelEvaluationIsBitIdentical)
{
  std::mt19937_64 rng(5);
  const auto net = RandomNetwork(rng, {.loops = 6, .ports = 4});
  const auto grid = MakeGrid(1e6, 60e6, 257, false);
  const auto a = Sweep(net, grid, 1);
  const auto b = Sweep(net, grid, 8);
  ASSERT_EQ(a.matrices.size(), b.matrices.size());
  for (std::size_t i = 0; i < a.matrices.size(); ++i)
  {
    EXPECT_EQ(a.matrices[i], b.matrices[i]);
  }
  EXPECT_EQ(a.grid, grid);
}

TEST(Sweep, FailureCarriesIndexAndFrequency)
{
  RealMatrix m = RealMatrix::Zero(3, 3);
  m(1, 2) = m(2, 1) = 1e-6;
  CoupledResonatorNetwork net({{1e-6, {}, 1.0, "p"}, {1e-6, {}, 0.0, "x"}, {1e-6, {}, 0.0, "y"}}, m,
                              {{0, 50.0}});
  const std::vector<double> grid{2e6, 3e6};
  try
  {
    Sweep(net, grid, 2);
    FAIL() << "expected a singular reduction";
  }
  catch (const SingularMatrixError &e)
  {
    ASSERT_TRUE(e.Index().has_value());
    EXPECT_EQ(*e.Index(), 0u);
    EXPECT_EQ(*e.Frequency(), 2e6);
  }
}

TEST(Sweep, RejectsUnsortedGrid)
{
  const auto net = TwoLoops(1e-6, 1e-6, 0.0);
  const std::vector<double> grid{2e6, 1e6};
  EXPECT_THROW(Sweep(net, grid), InvalidArgument);
}

TEST(DistanceCoupling, DecayLaw)
{
  DistanceCoupling dc{0.5, 10.0};
  EXPECT_DOUBLE_EQ(dc.At(0.0), 0.5);
  EXPECT_NEAR(dc.At(10.0), 0.5 * std::pow(2.0, -1.5), 1e-15);
  for (double d = 0.0; d < 50.0; d += 1.0)
  {
    EXPECT_GT(dc.At(d), dc.At(d + 1.0));
  }
}

TEST(MakeGrid, EndpointsAndSpacing)
{
  const auto lin = MakeGrid(1.0, 3.0, 3, false);
  EXPECT_EQ(lin, (std::vector<double>{1.0, 2.0, 3.0}));
  const auto lg = MakeGrid(1.0, 100.0, 3, true);
  EXPECT_NEAR(lg[1], 10.0, 1e-12);
  EXPECT_EQ(lg.back(), 100.0);
  EXPECT_EQ(ToDb(Complex(0.0, 0.0)), -300.0);
  EXPECT_NEAR(ToDb(Complex(0.1, 0.0)), -20.0, 1e-12);
}

}  // namespace
}  // namespace swipt
