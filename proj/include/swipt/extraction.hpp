// Copyright 2026 The swipt-sim Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef SWIPT_EXTRACTION_HPP
#define SWIPT_EXTRACTION_HPP

#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <utility>
#include <vector>

#include "swipt/error.hpp"

namespace swipt::extraction
{

using Complex = std::complex<double>;

inline constexpr double kSpeedOfLight = 299792458.0;

inline double FreeSpaceWavenumber(double f) { return 2.0 * std::numbers::pi * f / kSpeedOfLight; }

//
// Effective parameters of a homogeneous slab. Sign convention: fields vary as e^{-iwt},
// so a passive medium has Im(n) >= 0 and the slab transmission phase is e^{+i n k0 d}.
//
struct EffectiveParams
{
  Complex n;
  Complex z;    // normalized to the reference wave impedance
  Complex mu;   // n z
  Complex eps;  // n / z
  int branch = 0;

  static EffectiveParams From(Complex n, Complex z, int branch)
  {
    return {n, z, n * z, n / z, branch};
  }
};

struct SlabSParams
{
  Complex s11;
  Complex s21;
};

// Homogeneous slab in a matched background: Gamma = (z-1)/(z+1), P = e^{i n k0 d}.
inline SlabSParams ForwardSlabSParams(Complex n, Complex z, double k0, double d)
{
  detail::Require(std::isfinite(k0) && k0 > 0.0 && std::isfinite(d) && d > 0.0,
                  "k0 and d must be positive");
  detail::Require(std::abs(z + 1.0) > 0.0, "normalized impedance z = -1 is not allowed");
  const Complex gamma = (z - 1.0) / (z + 1.0);
  const Complex p = std::exp(Complex(0.0, 1.0) * n * k0 * d);
  const Complex den = 1.0 - gamma * gamma * p * p;
  if (std::abs(den) <= 1e-15)
  {
    throw PoleError("slab S-parameter pole: 1 - Gamma^2 P^2 = 0");
  }
  return {gamma * (1.0 - p * p) / den, p * (1.0 - gamma * gamma) / den};
}

struct BranchPolicy
{
  int branch = 0;
  // Principal phases this close to +-pi are ambiguous without a continuity anchor.
  double cut_margin = 1e-9;
};

inline constexpr double kPassivityTolerance = 1e-9;

inline Complex RefractiveIndexFromPropagator(Complex p, double k0, double d, int branch)
{
  const double phase = std::arg(p) + 2.0 * std::numbers::pi * branch;
  return Complex(phase, -std::log(std::abs(p))) / (k0 * d);
}

// Retrieves n, z (and mu = n z, eps = n / z) from reciprocal symmetric slab S-parameters.
// Sign of z: Re(z) >= 0; when Re(z) vanishes the sign giving Im(n) >= 0 is used.
inline EffectiveParams ExtractParameters(Complex s11, Complex s21, double k0, double d,
                                         const BranchPolicy &policy = {})
{
  detail::Require(std::isfinite(k0) && k0 > 0.0 && std::isfinite(d) && d > 0.0,
                  "k0 and d must be positive");
  detail::Require(std::abs(s21) > 0.0, "|S21| must be non-zero");
  const Complex num = (1.0 + s11) * (1.0 + s11) - s21 * s21;
  const Complex den = (1.0 - s11) * (1.0 - s11) - s21 * s21;
  if (std::abs(den) == 0.0)
  {
    throw PoleError("(1 - S11)^2 - S21^2 = 0: impedance undefined");
  }
  Complex z = std::sqrt(num / den);

  auto index_for = [&](Complex zc)
  {
    const Complex gamma = (zc - 1.0) / (zc + 1.0);
    const Complex p = s21 / (1.0 - s11 * gamma);
    return std::pair{p, RefractiveIndexFromPropagator(p, k0, d, policy.branch)};
  };

  if (std::abs(z.real()) <= kPassivityTolerance)
  {
    auto [p_pos, n_pos] = index_for(z);
    auto [p_neg, n_neg] = index_for(-z);
    if (n_pos.imag() < 0.0 && n_neg.imag() >= n_pos.imag())
    {
      z = -z;
    }
  }
  else if (z.real() < 0.0)
  {
    z = -z;
  }
  const auto [p, n] = index_for(z);
  if (policy.branch == 0 && std::numbers::pi - std::abs(std::arg(p)) < policy.cut_margin)
  {
    throw ComputationError("branch ambiguity: propagation phase sits on the branch cut; "
                           "use a frequency sweep with unwrapping");
  }
  return EffectiveParams::From(n, z, policy.branch);
}

//
// Frequency-continuity branch tracking. The lowest-frequency point keeps its branch;
// each later point takes the branch whose phase Re(n) k0 d is closest to its
// predecessor. A step larger than `max_step` after unwrapping means the grid is too
// coarse to resolve the dispersion.
//
inline std::vector<EffectiveParams> UnwrapBranch(std::span<const EffectiveParams> params,
                                                 std::span<const double> grid, double d,
                                                 double max_step = std::numbers::pi / 2.0)
{
  detail::Require(params.size() == grid.size(), "one parameter set per grid point required");
  detail::Require(std::isfinite(d) && d > 0.0, "thickness must be positive");
  std::vector<EffectiveParams> out(params.begin(), params.end());
  if (out.size() <= 1)
  {
    return out;
  }
  const double two_pi = 2.0 * std::numbers::pi;
  double prev_phase = out[0].n.real() * FreeSpaceWavenumber(grid[0]) * d;
  for (std::size_t i = 1; i < out.size(); ++i)
  {
    detail::Require(grid[i] > grid[i - 1], "grid must be strictly increasing");
    const double k0d = FreeSpaceWavenumber(grid[i]) * d;
    const double phase = out[i].n.real() * k0d;
    const double shift = std::round((prev_phase - phase) / two_pi);
    const double unwrapped = phase + two_pi * shift;
    if (std::abs(unwrapped - prev_phase) > max_step)
    {
      throw ComputationError("under-sampled grid: phase step " +
                                 std::to_string(unwrapped - prev_phase) + " rad",
                             i, grid[i]);
    }
    const int branch = out[i].branch + static_cast<int>(shift);
    const Complex n(unwrapped / k0d, out[i].n.imag());
    out[i] = EffectiveParams::From(n, out[i].z, branch);
    prev_phase = unwrapped;
  }
  return out;
}

}  // namespace swipt::extraction

#endif  // SWIPT_EXTRACTION_HPP
