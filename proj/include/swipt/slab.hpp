// Copyright 2026 The swipt-sim Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef SWIPT_SLAB_HPP
#define SWIPT_SLAB_HPP

#include <cmath>
#include <complex>
#include <span>
#include <utility>
#include <vector>

#include "swipt/error.hpp"

namespace swipt::slab
{

using Complex = std::complex<double>;

// H-field transmission through a magnetic slab of relative permeability mu.
struct SlabCase
{
  Complex mu{1.0, 0.0};
  Complex kx{1.0, 0.0};   // rad/m, incident medium
  Complex kpx{1.0, 0.0};  // rad/m, inside the slab
  double d = 1.0;         // m

  void Validate() const
  {
    detail::Require(std::isfinite(d) && d > 0.0, "slab thickness must be positive");
    detail::Require(kx != Complex(0.0, 0.0), "incident wave number must be non-zero");
  }
};

// Multiple-reflection denominator: 1 - r'^2 e^{2ik'd} is the geometric series of
// internal round trips; the single-power variant is kept only for comparison runs.
enum class DenominatorForm
{
  kSquaredReflection,
  kLinearReflection
};

struct SlabTransmission
{
  Complex t;
  Complex t_prime;
  Complex r_prime;
  Complex T;         // with internal multiple reflections
  Complex T_single;  // t t' e^{ik'd}, single pass
};

namespace impl
{

inline Complex InterfaceDenominator(const SlabCase &c)
{
  const Complex den = c.mu * c.kx + c.kpx;
  const double scale = std::abs(c.mu * c.kx) + std::abs(c.kpx);
  if (std::abs(den) <= 1e-15 * scale)
  {
    throw PoleError("interface resonance: mu*kx + k'x = 0 (approach the limit instead)");
  }
  return den;
}

}  // namespace impl

inline std::pair<Complex, Complex> InterfaceTransmission(const SlabCase &c)
{
  c.Validate();
  const Complex den = impl::InterfaceDenominator(c);
  return {2.0 * c.mu * c.kx / den, 2.0 * c.kx / den};
}

inline Complex InternalReflection(const SlabCase &c)
{
  c.Validate();
  const Complex den = impl::InterfaceDenominator(c);
  return (c.kpx - c.mu * c.kx) / den;
}

// Composes the entry/exit transmissions and internal reflection. T is recomputable
// bit-for-bit from the returned t, t', r' with ComposeTransmission.
inline Complex ComposeTransmission(Complex t, Complex t_prime, Complex r_prime, Complex kpx,
                                   double d,
                                   DenominatorForm form = DenominatorForm::kSquaredReflection)
{
  const Complex i(0.0, 1.0);
  const Complex phase = std::exp(i * kpx * d);
  const Complex round_trip = std::exp(2.0 * i * kpx * d);
  const Complex refl = form == DenominatorForm::kSquaredReflection ? r_prime * r_prime : r_prime;
  const Complex den = 1.0 - refl * round_trip;
  const double scale = 1.0 + std::abs(refl * round_trip);
  if (std::abs(den) <= 1e-15 * scale)
  {
    throw PoleError("Fabry-Perot pole: 1 - r'^2 e^{2ik'd} = 0");
  }
  return t * t_prime * phase / den;
}

inline SlabTransmission Transmission(const SlabCase &c,
                                     DenominatorForm form = DenominatorForm::kSquaredReflection)
{
  const auto [t, tp] = InterfaceTransmission(c);
  const Complex rp = InternalReflection(c);
  SlabTransmission out;
  out.t = t;
  out.t_prime = tp;
  out.r_prime = rp;
  out.T = ComposeTransmission(t, tp, rp, c.kpx, c.d, form);
  out.T_single = t * tp * std::exp(Complex(0.0, 1.0) * c.kpx * c.d);
  return out;
}

// |T(mu = -1 + delta, k'x = kx) - e^{-i kx d}| for each delta.
inline std::vector<double> PendryLimitError(double kx, double d, std::span<const double> deltas)
{
  detail::Require(std::isfinite(kx) && kx != 0.0 && std::isfinite(d) && d > 0.0,
                  "kx and d must be non-zero");
  for (std::size_t i = 0; i < deltas.size(); ++i)
  {
    detail::Require(deltas[i] > 0.0 && deltas[i] < 0.5, "deltas must lie in (0, 0.5)");
    detail::Require(i == 0 || deltas[i] < deltas[i - 1], "deltas must be strictly decreasing");
  }
  std::vector<double> errors;
  errors.reserve(deltas.size());
  const Complex target = std::exp(Complex(0.0, -kx * d));
  for (double delta : deltas)
  {
    SlabCase c{Complex(-1.0 + delta, 0.0), Complex(kx, 0.0), Complex(kx, 0.0), d};
    errors.push_back(std::abs(Transmission(c).T - target));
  }
  return errors;
}

}  // namespace swipt::slab

#endif  // SWIPT_SLAB_HPP
