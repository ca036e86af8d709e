// Copyright 2026 The swipt-sim Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef SWIPT_RECTIFIER_HPP
#define SWIPT_RECTIFIER_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "swipt/circuit.hpp"
#include "swipt/error.hpp"
#include "swipt/parallel.hpp"
#include "swipt/units.hpp"

namespace swipt::rectifier
{

using Complex = std::complex<double>;
using circuit::DiodeModel;
using circuit::TransientCircuit;

//
// Voltage doubler: C1 in series from the port, D1 clamping to ground, D2 charging C2,
// load R_L across C2. Driven by a Thevenin source of impedance source_impedance.
//
struct RectifierCircuit
{
  double c1 = 2000e-12;  // F
  double c2 = 2000e-12;  // F
  double r_l = 200.0;    // ohm
  DiodeModel diode;
  Complex source_impedance{48.0, 3.0};
  double f0 = 13.56e6;   // Hz

  void Validate() const
  {
    detail::Require(c1 > 0.0 && c2 > 0.0 && r_l > 0.0, "C1, C2 and R_L must be positive");
    detail::Require(f0 > 0.0, "operating frequency must be positive");
    detail::Require(source_impedance.real() > 0.0, "source resistance must be positive");
    diode.Validate();
  }
};

struct SimOptions
{
  int steps_per_period = 200;
  double steady_rel_tol = 1e-5;
  int max_cycles = 5000;
  int min_cycles = 3;
  // Periodic shooting (Newton on the one-period state map) after the warm-up cycles.
  bool accelerate = true;
  int warmup_cycles = 8;
  int max_shooting_iterations = 8;
  circuit::NewtonOptions newton;
};

// Samples over the final simulated period (one sample after each time step).
struct Waveforms
{
  double f0 = 0.0;
  double source_amplitude = 0.0;  // V, Thevenin EMF peak
  std::vector<double> time;
  std::vector<double> v_port;     // V across the load terminals
  std::vector<double> i_in;       // A into the load
  std::vector<double> v_out;      // V at the output node (zero when the load has none)
  int cycles_run = 0;
  bool converged = false;
};

// Thevenin EMF peak that delivers `available_power` (W) into a conjugate match.
inline double SourceAmplitude(double available_power, Complex source_impedance)
{
  detail::Require(available_power >= 0.0 && std::isfinite(available_power),
                  "available power must be non-negative");
  return 2.0 * std::sqrt(2.0 * available_power * source_impedance.real());
}

// Attaches a load between `port` and ground; returns its output node (or ground).
using LoadBuilder = std::function<TransientCircuit::NodeId(TransientCircuit &, TransientCircuit::NodeId port)>;

namespace detail
{

struct CycleStats
{
  double mean = 0.0;
  double rms = 0.0;
};

struct Drive
{
  TransientCircuit ckt;
  std::size_t source = 0;
  TransientCircuit::NodeId port = 0;
  TransientCircuit::NodeId out = 0;
  double h = 0.0;
  int steps = 0;
};

inline CycleStats RunCycle(Drive &d, const SimOptions &opt, Waveforms *record)
{
  CycleStats st;
  const TransientCircuit::NodeId monitor = d.out != TransientCircuit::kGround ? d.out : d.port;
  for (int k = 0; k < d.steps; ++k)
  {
    const double t = k * d.h;
    d.ckt.Step(t, d.h, opt.newton);
    const double v = d.ckt.NodeVoltage(monitor);
    st.mean += v;
    st.rms += v * v;
    if (record)
    {
      record->time.push_back(t + d.h);
      record->v_port.push_back(d.ckt.NodeVoltage(d.port));
      record->i_in.push_back(d.ckt.SourceCurrent(d.source));
      record->v_out.push_back(d.ckt.NodeVoltage(d.out));
    }
  }
  st.mean /= d.steps;
  st.rms = std::sqrt(st.rms / d.steps);
  return st;
}

inline double StateNorm(const Eigen::VectorXd &v)
{
  return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff();
}

// Newton on F(s) = P(s) - s, P the one-period map, with a finite-difference Jacobian.
// Returns the number of periods integrated.
inline int Shoot(Drive &d, const SimOptions &opt)
{
  int periods = 0;
  auto period_map = [&](const Eigen::VectorXd &s0)
  {
    d.ckt.SetState(s0);
    RunCycle(d, opt, nullptr);
    ++periods;
    return d.ckt.GetState();
  };
  Eigen::VectorXd s = d.ckt.GetState();
  const Eigen::Index n = s.size();
  if (n == 0)
  {
    return periods;
  }
  Eigen::VectorXd f = period_map(s) - s;
  for (int it = 0; it < opt.max_shooting_iterations; ++it)
  {
    const double fn = StateNorm(f);
    if (fn <= 1e-12 * (1.0 + StateNorm(s)))
    {
      break;
    }
    Eigen::MatrixXd jac(n, n);
    for (Eigen::Index j = 0; j < n; ++j)
    {
      Eigen::VectorXd sp = s;
      const double eps = 1e-6 * (1e-3 + std::abs(s(j)));
      sp(j) += eps;
      jac.col(j) = (period_map(sp) - sp - f) / eps;
    }
    const Eigen::VectorXd delta = jac.fullPivLu().solve(-f);
    if (!delta.allFinite())
    {
      break;
    }
    bool accepted = false;
    for (double lambda : {1.0, 0.5, 0.25})
    {
      const Eigen::VectorXd trial = s + lambda * delta;
      Eigen::VectorXd ft;
      try
      {
        ft = period_map(trial) - trial;
      }
      catch (const ComputationError &)
      {
        continue;
      }
      if (StateNorm(ft) < fn)
      {
        s = trial;
        f = ft;
        accepted = true;
        break;
      }
    }
    if (!accepted)
    {
      break;
    }
  }
  d.ckt.SetState(s);
  return periods;
}

}  // namespace detail

// Drives `attach`ed load from a sinusoidal Thevenin source until periodic steady state
// (cycle mean and RMS of the monitored node change by less than steady_rel_tol between
// consecutive cycles) or the cycle cap; returns the final period.
inline Waveforms SimulateDrivenLoad(Complex source_impedance, double f0, double amplitude,
                                    const LoadBuilder &attach, const SimOptions &opt = {})
{
  ::swipt::detail::Require(source_impedance.real() > 0.0, "source resistance must be positive");
  ::swipt::detail::Require(f0 > 0.0, "frequency must be positive");
  ::swipt::detail::Require(opt.steps_per_period >= 8, "at least 8 steps per period required");
  detail::Drive d;
  const double w0 = 2.0 * std::numbers::pi * f0;
  const auto emf = d.ckt.AddNode();
  d.source = d.ckt.AddSineSource(emf, TransientCircuit::kGround, amplitude, f0);
  const auto mid = d.ckt.AddNode();
  d.ckt.AddResistor(emf, mid, source_impedance.real());
  const double x = source_impedance.imag();
  if (x > 0.0)
  {
    d.port = d.ckt.AddNode();
    d.ckt.AddInductor(mid, d.port, x / w0);
  }
  else if (x < 0.0)
  {
    d.port = d.ckt.AddNode();
    d.ckt.AddCapacitor(mid, d.port, -1.0 / (w0 * x));
  }
  else
  {
    d.port = mid;
  }
  d.out = attach(d.ckt, d.port);
  d.ckt.Reset();
  d.steps = opt.steps_per_period;
  d.h = 1.0 / (f0 * d.steps);

  Waveforms w;
  w.f0 = f0;
  w.source_amplitude = amplitude;
  int cycles = 0;
  detail::CycleStats prev = detail::RunCycle(d, opt, nullptr);
  ++cycles;
  bool shot = !opt.accelerate;
  while (cycles < opt.max_cycles)
  {
    if (!shot && cycles >= opt.warmup_cycles)
    {
      cycles += detail::Shoot(d, opt);
      shot = true;
      prev = detail::RunCycle(d, opt, nullptr);
      ++cycles;
      continue;
    }
    const detail::CycleStats cur = detail::RunCycle(d, opt, nullptr);
    ++cycles;
    const double scale = std::max(std::abs(cur.mean), cur.rms);
    const bool steady = std::abs(cur.mean - prev.mean) <= opt.steady_rel_tol * scale &&
                        std::abs(cur.rms - prev.rms) <= opt.steady_rel_tol * cur.rms;
    prev = cur;
    if (steady && cycles >= opt.min_cycles && shot)
    {
      w.converged = true;
      break;
    }
  }
  detail::RunCycle(d, opt, &w);
  w.cycles_run = cycles + 1;
  return w;
}

// Attaches the doubler; returns the output node.
inline TransientCircuit::NodeId AttachDoubler(const RectifierCircuit &rc, TransientCircuit &ckt,
                                              TransientCircuit::NodeId port)
{
  const auto mid = ckt.AddNode();
  const auto out = ckt.AddNode();
  ckt.AddCapacitor(port, mid, rc.c1);
  ckt.AddDiode(TransientCircuit::kGround, mid, rc.diode);
  ckt.AddDiode(mid, out, rc.diode);
  ckt.AddCapacitor(out, TransientCircuit::kGround, rc.c2);
  ckt.AddResistor(out, TransientCircuit::kGround, rc.r_l);
  return out;
}

inline Waveforms SimulateSteadyState(const RectifierCircuit &rc, double available_power,
                                     const SimOptions &opt = {})
{
  rc.Validate();
  const double amp = SourceAmplitude(available_power, rc.source_impedance);
  return SimulateDrivenLoad(rc.source_impedance, rc.f0, amp,
                            [&](TransientCircuit &ckt, TransientCircuit::NodeId port)
                            { return AttachDoubler(rc, ckt, port); },
                            opt);
}

// Fundamental phasor of a signal sampled uniformly over exactly one period.
inline Complex FundamentalPhasor(std::span<const double> samples)
{
  const auto n = samples.size();
  Complex acc(0.0, 0.0);
  for (std::size_t k = 0; k < n; ++k)
  {
    const double ph = 2.0 * std::numbers::pi * static_cast<double>(k + 1) / static_cast<double>(n);
    acc += samples[k] * Complex(std::cos(ph), -std::sin(ph));
  }
  return 2.0 * acc / static_cast<double>(n);
}

// Z_in = V1 / I1 from the final-period port voltage and input current.
inline Complex InputImpedance(const Waveforms &w, double f0)
{
  ::swipt::detail::Require(std::abs(f0 - w.f0) <= 1e-9 * f0, "waveforms were sampled at a different f0");
  ::swipt::detail::Require(!w.v_port.empty() && w.v_port.size() == w.i_in.size(),
                           "waveforms must hold one full period");
  const Complex v1 = FundamentalPhasor(w.v_port);
  const Complex i1 = FundamentalPhasor(w.i_in);
  if (std::abs(i1) < 1e-12)
  {
    throw ComputationError("input impedance undefined: fundamental current below 1e-12 A");
  }
  return v1 / i1;
}

inline double MeanOf(std::span<const double> v)
{
  double s = 0.0;
  for (double x : v)
  {
    s += x;
  }
  return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

// Average power flowing into the load over the recorded period.
inline double DeliveredPower(const Waveforms &w)
{
  double s = 0.0;
  for (std::size_t k = 0; k < w.v_port.size(); ++k)
  {
    s += w.v_port[k] * w.i_in[k];
  }
  return w.v_port.empty() ? 0.0 : s / static_cast<double>(w.v_port.size());
}

// V_out^2 / (P_in R_L).
inline double RfDcEfficiency(double v_out, double p_in, double r_l)
{
  ::swipt::detail::Require(p_in > 0.0 && r_l > 0.0, "efficiency needs P_in > 0 and R_L > 0");
  const double eff = v_out * v_out / (p_in * r_l);
  if (eff > 1.0 + 1e-12)
  {
    throw ComputationError("RF-to-DC efficiency above 1 (" + std::to_string(eff) +
                           "): inconsistent V_out, P_in or R_L");
  }
  return eff;
}

struct MatchResidual
{
  Complex gamma;
  double mismatch;  // 1 - |Gamma|^2
};

// Reflection between a source of impedance z_out and a load z_in; zero at z_in = conj(z_out).
inline MatchResidual ConjugateMatchResidual(Complex z_out, Complex z_in)
{
  ::swipt::detail::Require(z_out.real() > 0.0 && z_in.real() > 0.0,
                           "impedances must have positive real parts");
  const Complex gamma = (z_in - std::conj(z_out)) / (z_in + z_out);
  return {gamma, 1.0 - std::norm(gamma)};
}

struct RectifierResult
{
  double available_power = 0.0;  // W
  double v_out_dc = 0.0;         // V
  Complex z_in;                  // ohm at f0
  double efficiency = 0.0;       // V_out^2 / (P_avail R_L)
  double delivered_power = 0.0;  // W into the rectifier port
  bool converged = false;
  int cycles_run = 0;
};

inline RectifierResult Analyze(const RectifierCircuit &rc, double available_power,
                               const SimOptions &opt = {})
{
  ::swipt::detail::Require(available_power > 0.0, "available power must be positive");
  const Waveforms w = SimulateSteadyState(rc, available_power, opt);
  RectifierResult r;
  r.available_power = available_power;
  r.v_out_dc = MeanOf(w.v_out);
  r.z_in = InputImpedance(w, rc.f0);
  r.delivered_power = DeliveredPower(w);
  r.converged = w.converged;
  r.cycles_run = w.cycles_run;
  const double p_dc = r.v_out_dc * r.v_out_dc / rc.r_l;
  if (p_dc > r.delivered_power * (1.0 + 1e-6) + 1e-15)
  {
    throw ComputationError("energy check failed: DC output power exceeds delivered RF power");
  }
  if (r.v_out_dc > 2.0 * w.source_amplitude * (1.0 + 1e-9))
  {
    throw ComputationError("doubler bound violated: V_out above twice the source peak");
  }
  r.efficiency = RfDcEfficiency(r.v_out_dc, available_power, rc.r_l);
  return r;
}

struct SweepRow
{
  double p_in_dbm = 0.0;
  std::optional<RectifierResult> result;
  std::string error;
};

// One row per input power (available power in dBm); failures are attached to their row.
inline std::vector<SweepRow> PowerSweep(const RectifierCircuit &rc, std::span<const double> p_in_dbm,
                                        const SimOptions &opt = {}, unsigned workers = 1)
{
  std::vector<SweepRow> rows(p_in_dbm.size());
  ::swipt::detail::ParallelFor(rows.size(), workers,
                               [&](std::size_t i)
                               {
                                 rows[i].p_in_dbm = p_in_dbm[i];
                                 try
                                 {
                                   ::swipt::detail::Require(std::isfinite(p_in_dbm[i]),
                                                            "input power must be finite");
                                   rows[i].result = Analyze(rc, DbmToWatts(p_in_dbm[i]), opt);
                                 }
                                 catch (const std::exception &e)
                                 {
                                   rows[i].error = e.what();
                                 }
                               });
  return rows;
}

}  // namespace swipt::rectifier

#endif  // SWIPT_RECTIFIER_HPP
