// Copyright 2026 The swipt-sim Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef SWIPT_CRLH_HPP
#define SWIPT_CRLH_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "swipt/error.hpp"
#include "swipt/extraction.hpp"

namespace swipt::crlh
{

using Complex = std::complex<double>;

//
// Lumped composite right/left-handed unit cell: series L_R and C_L, shunt L_L and C_R.
//
struct CRLHCell
{
  double c_l = 0.0;  // F, line (series) capacitance
  double l_l = 0.0;  // H, line (shunt) inductance
  double c_r = 0.0;  // F, parasitic (shunt) capacitance
  double l_r = 0.0;  // H, mutual/parasitic (series) inductance

  void Validate() const
  {
    for (double v : {c_l, l_l, c_r, l_r})
    {
      detail::Require(std::isfinite(v) && v > 0.0, "CRLH cell values must be positive");
    }
  }

  bool operator==(const CRLHCell &) const = default;
};

inline double OmegaSe(const CRLHCell &cell)
{
  cell.Validate();
  return 1.0 / std::sqrt(cell.l_r * cell.c_l);
}

inline double OmegaSh(const CRLHCell &cell)
{
  cell.Validate();
  return 1.0 / std::sqrt(cell.l_l * cell.c_r);
}

struct CellResonances
{
  double omega_se;
  double omega_sh;
};

inline CellResonances Resonances(const CRLHCell &cell) { return {OmegaSe(cell), OmegaSh(cell)}; }

// Z_c = sqrt(L_L/C_L) * sqrt(((w/w_se)^2 - 1) / ((w/w_sh)^2 - 1)), principal root: real in
// the pass bands, purely imaginary in the stop band between the two resonances.
inline Complex CharacteristicImpedance(const CRLHCell &cell, double omega)
{
  detail::Require(std::isfinite(omega) && omega > 0.0, "omega must be positive");
  const double a = omega / OmegaSe(cell);
  const double b = omega / OmegaSh(cell);
  const double num = a * a - 1.0;
  const double den = b * b - 1.0;
  if (std::abs(den) <= 1e-12)
  {
    throw PoleError("characteristic impedance pole at the shunt resonance (open circuit)");
  }
  const double radicand = num / den;
  const double scale = std::sqrt(cell.l_l / cell.c_l);
  return radicand >= 0.0 ? Complex(scale * std::sqrt(radicand), 0.0)
                         : Complex(0.0, scale * std::sqrt(-radicand));
}

enum class Regime
{
  kNearShort,
  kNearOpen,
  kPassband
};

inline constexpr double kDefaultRegimeWindow = 0.05;

inline const char *ToString(Regime r)
{
  switch (r)
  {
    case Regime::kNearShort:
      return "near_short";
    case Regime::kNearOpen:
      return "near_open";
    case Regime::kPassband:
      return "passband";
  }
  return "unknown";
}

inline Regime ClassifyRegime(const CRLHCell &cell, double omega,
                             double rel_window = kDefaultRegimeWindow)
{
  detail::Require(rel_window > 0.0 && rel_window < 0.5, "regime window must lie in (0, 0.5)");
  const double wse = OmegaSe(cell);
  const double wsh = OmegaSh(cell);
  const double dist_open = std::abs(omega - wsh) / wsh;
  const double dist_short = std::abs(omega - wse) / wse;
  const bool open = dist_open < rel_window;
  const bool shrt = dist_short < rel_window;
  if (open && shrt)
  {
    return dist_open <= dist_short ? Regime::kNearOpen : Regime::kNearShort;
  }
  if (open)
  {
    return Regime::kNearOpen;
  }
  if (shrt)
  {
    return Regime::kNearShort;
  }
  return Regime::kPassband;
}

// Series and shunt losses of a physical cell; zero for the ideal CRLH model.
struct CellLoss
{
  double series_resistance = 0.0;  // ohm
  double shunt_conductance = 0.0;  // S
};

// Absorber description: the homogenized unit cell plus the lumped loading capacitors and
// the layout dimensions (carried as metadata only).
struct AbsorberSpec
{
  CRLHCell cell;
  CellLoss loss;
  std::vector<double> loading_caps;          // F
  std::map<std::string, double> geometry_mm;
  double cell_thickness = 0.011;             // m, effective slab thickness for extraction
  double reference_impedance = 376.730313668; // ohm, wave impedance the cell is normalized to

  void Validate() const
  {
    cell.Validate();
    detail::Require(loss.series_resistance >= 0.0 && loss.shunt_conductance >= 0.0,
                    "cell losses must be non-negative");
    for (double c : loading_caps)
    {
      detail::Require(std::isfinite(c) && c > 0.0, "loading capacitors must be positive");
    }
    detail::Require(cell_thickness > 0.0, "cell thickness must be positive");
    detail::Require(reference_impedance > 0.0, "reference impedance must be positive");
  }
};

struct TwoPortS
{
  Complex s11;
  Complex s21;
};

// Symmetric T section (Z/2 - Y - Z/2) with Z = R + j w L_R + 1/(j w C_L) and
// Y = G + j w C_R + 1/(j w L_L), referenced to z0. Circuit convention e^{+jwt}.
inline TwoPortS CellSParameters(const CRLHCell &cell, const CellLoss &loss, double f, double z0)
{
  cell.Validate();
  detail::Require(f > 0.0 && z0 > 0.0, "frequency and reference impedance must be positive");
  const double w = 2.0 * std::numbers::pi * f;
  const Complex j(0.0, 1.0);
  const Complex z = loss.series_resistance + j * w * cell.l_r + 1.0 / (j * w * cell.c_l);
  const Complex y = loss.shunt_conductance + j * w * cell.c_r + 1.0 / (j * w * cell.l_l);
  const Complex a = 1.0 + z * y / 2.0;
  const Complex b = z * (1.0 + z * y / 4.0);
  const Complex c = y;
  const Complex den = a + b / z0 + c * z0 + a;
  return {(b / z0 - c * z0) / den, 2.0 / den};
}

// Effective parameters of the cell as a slab of thickness spec.cell_thickness, reported in
// the circuit (e^{+jwt}) convention: a lossy cell has Im(mu) < 0.
inline extraction::EffectiveParams CellEffectiveParams(const AbsorberSpec &spec, const CRLHCell &cell,
                                                       double f)
{
  const auto s = CellSParameters(cell, spec.loss, f, spec.reference_impedance);
  const double k0 = extraction::FreeSpaceWavenumber(f);
  // The retrieval works in the e^{-iwt} convention; conjugation maps between the two.
  const auto p = extraction::ExtractParameters(std::conj(s.s11), std::conj(s.s21), k0,
                                               spec.cell_thickness);
  return extraction::EffectiveParams::From(std::conj(p.n), std::conj(p.z), p.branch);
}

inline Complex CellPermeability(const AbsorberSpec &spec, const CRLHCell &cell, double f)
{
  return CellEffectiveParams(spec, cell, f).mu;
}

enum class CellParameter
{
  kCL,
  kLL,
  kCR,
  kLR
};

inline double &Get(CRLHCell &cell, CellParameter p)
{
  switch (p)
  {
    case CellParameter::kCL:
      return cell.c_l;
    case CellParameter::kLL:
      return cell.l_l;
    case CellParameter::kCR:
      return cell.c_r;
    case CellParameter::kLR:
      return cell.l_r;
  }
  return cell.l_r;
}

struct ParameterBound
{
  CellParameter parameter;
  double min;
  double max;
};

struct TuneOptions
{
  double tolerance = 1e-3;     // on |mu - target|^2
  int max_iters = 500;         // coordinate sweeps
  double initial_step = 0.1;   // log-space step per parameter
  double min_step = 1e-12;
  Complex target{-1.0, 0.0};
};

struct TuneResult
{
  CRLHCell cell;
  Complex mu;
  double residual = 0.0;
  bool converged = false;
  int iterations = 0;
  std::vector<double> residual_history;  // residual after each accepted move
};

using MuEvaluator = std::function<Complex(const CRLHCell &, double f0)>;

//
// Derivative-free coordinate descent on log(parameter) with per-coordinate step halving.
// Trial points are clipped to their bounds; a trial whose evaluation throws is discarded
// and that coordinate's step halved. Deterministic for fixed inputs.
//
inline TuneResult TuneCell(const CRLHCell &initial, std::span<const ParameterBound> free_params,
                           double f0, const MuEvaluator &evaluate_mu, const TuneOptions &opt = {})
{
  initial.Validate();
  detail::Require(!free_params.empty(), "at least one free parameter is required");
  detail::Require(f0 > 0.0, "f0 must be positive");
  for (const auto &b : free_params)
  {
    detail::Require(b.min > 0.0 && b.max >= b.min, "parameter bounds must satisfy 0 < min <= max");
  }
  auto residual_of = [&](const Complex &mu) { return std::norm(mu - opt.target); };

  TuneResult res;
  res.cell = initial;
  for (const auto &b : free_params)
  {
    double &v = Get(res.cell, b.parameter);
    v = std::clamp(v, b.min, b.max);
  }
  res.mu = evaluate_mu(res.cell, f0);
  res.residual = residual_of(res.mu);
  res.residual_history.push_back(res.residual);

  std::vector<double> step(free_params.size(), opt.initial_step);
  while (res.residual >= opt.tolerance && res.iterations < opt.max_iters)
  {
    ++res.iterations;
    for (std::size_t k = 0; k < free_params.size(); ++k)
    {
      const auto &b = free_params[k];
      bool moved = false;
      for (double dir : {+1.0, -1.0})
      {
        CRLHCell trial = res.cell;
        double &v = Get(trial, b.parameter);
        v = std::clamp(v * std::exp(dir * step[k]), b.min, b.max);
        if (v == Get(res.cell, b.parameter))
        {
          continue;
        }
        Complex mu;
        try
        {
          mu = evaluate_mu(trial, f0);
        }
        catch (const std::exception &)
        {
          continue;
        }
        const double r = residual_of(mu);
        if (std::isfinite(r) && r < res.residual)
        {
          res.cell = trial;
          res.mu = mu;
          res.residual = r;
          res.residual_history.push_back(r);
          moved = true;
          break;
        }
      }
      if (!moved)
      {
        step[k] *= 0.5;
      }
    }
    if (*std::max_element(step.begin(), step.end()) < opt.min_step)
    {
      break;
    }
  }
  res.converged = res.residual < opt.tolerance;
  return res;
}

}  // namespace swipt::crlh

#endif  // SWIPT_CRLH_HPP
