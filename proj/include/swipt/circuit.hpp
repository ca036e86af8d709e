// Copyright 2026 The swipt-sim Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef SWIPT_CIRCUIT_HPP
#define SWIPT_CIRCUIT_HPP

#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "swipt/error.hpp"

namespace swipt::circuit
{

//
// Junction diode: i = Is (exp(v / (n Vt)) - 1) in series with r_s, with a fixed
// junction capacitance c_j across the junction.
//
struct DiodeModel
{
  double i_s = 5e-8;       // A
  double ideality = 1.08;
  double r_s = 6.0;        // ohm
  double c_j = 0.18e-12;   // F
  double v_t = 0.025852;   // V

  void Validate() const
  {
    detail::Require(std::isfinite(i_s) && i_s > 0.0, "diode saturation current must be positive");
    detail::Require(ideality >= 1.0 && ideality <= 2.5, "diode ideality must lie in [1, 2.5]");
    detail::Require(std::isfinite(r_s) && r_s >= 0.0, "diode series resistance must be non-negative");
    detail::Require(std::isfinite(c_j) && c_j >= 0.0, "diode junction capacitance must be non-negative");
    detail::Require(std::isfinite(v_t) && v_t > 0.0, "thermal voltage must be positive");
  }

  double NVt() const { return ideality * v_t; }
};

struct NewtonOptions
{
  int max_iterations = 50;
  double abs_tolerance = 1e-12;  // A, diode current linearization residual
  double gmin = 1e-12;           // S, across each junction
};

//
// Small modified-nodal-analysis transient engine: trapezoidal companion models for
// capacitors and inductors, ideal sinusoidal voltage sources, and junction diodes
// solved by damped Newton iteration (SPICE-style junction voltage limiting).
//
class TransientCircuit
{
public:
  using NodeId = int;
  static constexpr NodeId kGround = 0;

  NodeId AddNode() { return ++num_nodes_; }

  void AddResistor(NodeId a, NodeId b, double r)
  {
    CheckNodes(a, b);
    detail::Require(std::isfinite(r) && r > 0.0, "resistance must be positive");
    resistors_.push_back({a, b, 1.0 / r});
  }

  void AddCapacitor(NodeId a, NodeId b, double c)
  {
    CheckNodes(a, b);
    detail::Require(std::isfinite(c) && c > 0.0, "capacitance must be positive");
    capacitors_.push_back({a, b, c, 0.0, 0.0});
  }

  void AddInductor(NodeId a, NodeId b, double l)
  {
    CheckNodes(a, b);
    detail::Require(std::isfinite(l) && l > 0.0, "inductance must be positive");
    inductors_.push_back({a, b, l, 0.0, 0.0});
  }

  // v(pos) - v(neg) = amplitude * sin(2 pi f t + phase). Returns the source index.
  std::size_t AddSineSource(NodeId pos, NodeId neg, double amplitude, double f, double phase = 0.0)
  {
    CheckNodes(pos, neg);
    detail::Require(std::isfinite(amplitude) && std::isfinite(f) && f > 0.0,
                    "source amplitude must be finite and frequency positive");
    sources_.push_back({pos, neg, amplitude, f, phase});
    return sources_.size() - 1;
  }

  // Junction from anode to cathode; r_s adds an internal node, c_j a parallel capacitor.
  void AddDiode(NodeId anode, NodeId cathode, const DiodeModel &model)
  {
    CheckNodes(anode, cathode);
    model.Validate();
    NodeId junction = anode;
    if (model.r_s > 0.0)
    {
      junction = AddNode();
      AddResistor(anode, junction, model.r_s);
    }
    if (model.c_j > 0.0)
    {
      AddCapacitor(junction, cathode, model.c_j);
    }
    const double nvt = model.NVt();
    diodes_.push_back({junction, cathode, model.i_s, nvt,
                       nvt * std::log(nvt / (std::numbers::sqrt2 * model.i_s)), 0.0});
  }

  std::size_t NumNodes() const { return static_cast<std::size_t>(num_nodes_); }

  double NodeVoltage(NodeId n) const { return n == kGround ? 0.0 : x_(n - 1); }

  // Current delivered by source `i` out of its positive terminal into the circuit.
  double SourceCurrent(std::size_t i) const { return -x_(num_nodes_ + i); }

  double SourceVoltage(std::size_t i, double t) const
  {
    const auto &s = sources_[i];
    return s.amplitude * std::sin(2.0 * std::numbers::pi * s.f * t + s.phase);
  }

  // Reactive-element history: the state the trapezoidal recursion carries between steps.
  Eigen::VectorXd GetState() const
  {
    Eigen::VectorXd s(2 * (capacitors_.size() + inductors_.size()));
    Eigen::Index k = 0;
    for (const auto &c : capacitors_)
    {
      s(k++) = c.v;
      s(k++) = c.i;
    }
    for (const auto &l : inductors_)
    {
      s(k++) = l.i;
      s(k++) = l.v;
    }
    return s;
  }

  void SetState(const Eigen::VectorXd &s)
  {
    detail::Require(s.size() == static_cast<Eigen::Index>(2 * (capacitors_.size() + inductors_.size())),
                    "state size mismatch");
    Eigen::Index k = 0;
    for (auto &c : capacitors_)
    {
      c.v = s(k++);
      c.i = s(k++);
    }
    for (auto &l : inductors_)
    {
      l.i = s(k++);
      l.v = s(k++);
    }
  }

  // Resets every voltage, current and history to zero.
  void Reset()
  {
    Prepare();
    x_.setZero();
    for (auto &c : capacitors_)
    {
      c.v = c.i = 0.0;
    }
    for (auto &l : inductors_)
    {
      l.i = l.v = 0.0;
    }
    for (auto &d : diodes_)
    {
      d.v_lin = 0.0;
    }
  }

  // Advances from t to t + h. A Newton failure retries once as two half steps.
  void Step(double t, double h, const NewtonOptions &opt = {})
  {
    Prepare();
    const Snapshot snap = Save();
    if (TryStep(t, h, opt))
    {
      return;
    }
    Restore(snap);
    if (TryStep(t, 0.5 * h, opt) && TryStep(t + 0.5 * h, 0.5 * h, opt))
    {
      return;
    }
    Restore(snap);
    throw ComputationError("Newton iteration failed to converge at t = " + std::to_string(t) +
                           " s (step " + std::to_string(h) + " s, also after halving)");
  }

private:
  struct Resistor
  {
    NodeId a, b;
    double g;
  };
  struct Capacitor
  {
    NodeId a, b;
    double c;
    double v, i;  // history at the last accepted time point
  };
  struct Inductor
  {
    NodeId a, b;
    double l;
    double i, v;
  };
  struct Source
  {
    NodeId pos, neg;
    double amplitude, f, phase;
  };
  struct Diode
  {
    NodeId a, k;
    double i_s, nvt, vcrit;
    double v_lin;  // junction voltage of the last linearization
  };
  struct Snapshot
  {
    Eigen::VectorXd x;
    Eigen::VectorXd state;
    std::vector<double> v_lin;
  };

  void CheckNodes(NodeId a, NodeId b) const
  {
    detail::Require(a >= 0 && a <= num_nodes_ && b >= 0 && b <= num_nodes_, "node out of range");
  }

  Eigen::Index Dim() const { return num_nodes_ + static_cast<Eigen::Index>(sources_.size() + inductors_.size()); }

  void Prepare()
  {
    if (x_.size() != Dim())
    {
      Eigen::VectorXd nx = Eigen::VectorXd::Zero(Dim());
      nx.head(std::min(nx.size(), x_.size())) = x_.head(std::min(nx.size(), x_.size()));
      x_ = nx;
    }
  }

  Snapshot Save() const
  {
    Snapshot s{x_, GetState(), {}};
    for (const auto &d : diodes_)
    {
      s.v_lin.push_back(d.v_lin);
    }
    return s;
  }

  void Restore(const Snapshot &s)
  {
    x_ = s.x;
    SetState(s.state);
    for (std::size_t i = 0; i < diodes_.size(); ++i)
    {
      diodes_[i].v_lin = s.v_lin[i];
    }
  }

  static void StampConductance(Eigen::MatrixXd &a, NodeId p, NodeId q, double g)
  {
    if (p > 0)
    {
      a(p - 1, p - 1) += g;
    }
    if (q > 0)
    {
      a(q - 1, q - 1) += g;
    }
    if (p > 0 && q > 0)
    {
      a(p - 1, q - 1) -= g;
      a(q - 1, p - 1) -= g;
    }
  }

  // Current `i` flowing from p to q through an element.
  static void StampCurrent(Eigen::VectorXd &b, NodeId p, NodeId q, double i)
  {
    if (p > 0)
    {
      b(p - 1) -= i;
    }
    if (q > 0)
    {
      b(q - 1) += i;
    }
  }

  double Across(const Eigen::VectorXd &x, NodeId p, NodeId q) const
  {
    return (p > 0 ? x(p - 1) : 0.0) - (q > 0 ? x(q - 1) : 0.0);
  }

  static double Limit(double vnew, double vold, double nvt, double vcrit)
  {
    if (vnew > vcrit && std::abs(vnew - vold) > 2.0 * nvt)
    {
      if (vold > 0.0)
      {
        const double arg = 1.0 + (vnew - vold) / nvt;
        return arg > 0.0 ? vold + nvt * std::log(arg) : vcrit;
      }
      return nvt * std::log(vnew / nvt);
    }
    return vnew;
  }

  bool TryStep(double t, double h, const NewtonOptions &opt)
  {
    const Eigen::Index n = Dim();
    const Eigen::Index nn = num_nodes_;
    const double tn = t + h;

    Eigen::MatrixXd a_lin = Eigen::MatrixXd::Zero(n, n);
    Eigen::VectorXd b_lin = Eigen::VectorXd::Zero(n);
    for (const auto &r : resistors_)
    {
      StampConductance(a_lin, r.a, r.b, r.g);
    }
    for (const auto &c : capacitors_)
    {
      // i_{n+1} = G (v_{n+1} - v_n) - i_n
      const double g = 2.0 * c.c / h;
      StampConductance(a_lin, c.a, c.b, g);
      StampCurrent(b_lin, c.a, c.b, -(g * c.v + c.i));
    }
    for (std::size_t s = 0; s < sources_.size(); ++s)
    {
      const auto &src = sources_[s];
      const Eigen::Index row = nn + static_cast<Eigen::Index>(s);
      if (src.pos > 0)
      {
        a_lin(src.pos - 1, row) += 1.0;
        a_lin(row, src.pos - 1) += 1.0;
      }
      if (src.neg > 0)
      {
        a_lin(src.neg - 1, row) -= 1.0;
        a_lin(row, src.neg - 1) -= 1.0;
      }
      b_lin(row) = SourceVoltage(s, tn);
    }
    for (std::size_t k = 0; k < inductors_.size(); ++k)
    {
      // v_{n+1} - (2L/h) i_{n+1} = -v_n - (2L/h) i_n
      const auto &l = inductors_[k];
      const Eigen::Index row = nn + static_cast<Eigen::Index>(sources_.size() + k);
      const double r = 2.0 * l.l / h;
      if (l.a > 0)
      {
        a_lin(l.a - 1, row) += 1.0;
        a_lin(row, l.a - 1) += 1.0;
      }
      if (l.b > 0)
      {
        a_lin(l.b - 1, row) -= 1.0;
        a_lin(row, l.b - 1) -= 1.0;
      }
      a_lin(row, row) -= r;
      b_lin(row) = -l.v - r * l.i;
    }
    for (const auto &d : diodes_)
    {
      StampConductance(a_lin, d.a, d.k, opt.gmin);
    }

    Eigen::VectorXd x = x_;
    bool converged = diodes_.empty();
    for (int it = 0; it < opt.max_iterations; ++it)
    {
      Eigen::MatrixXd a = a_lin;
      Eigen::VectorXd b = b_lin;
      for (const auto &d : diodes_)
      {
        const double e = std::exp(d.v_lin / d.nvt);
        const double g = d.i_s * e / d.nvt;
        const double i0 = d.i_s * (e - 1.0);
        StampConductance(a, d.a, d.k, g);
        StampCurrent(b, d.a, d.k, i0 - g * d.v_lin);
      }
      Eigen::PartialPivLU<Eigen::MatrixXd> lu(a);
      x = lu.solve(b);
      if (!x.allFinite())
      {
        return false;
      }
      if (diodes_.empty())
      {
        converged = true;
        break;
      }
      bool ok = true;
      for (auto &d : diodes_)
      {
        const double v = Across(x, d.a, d.k);
        const double e_lin = std::exp(d.v_lin / d.nvt);
        const double i_model = d.i_s * (e_lin - 1.0) + d.i_s * e_lin / d.nvt * (v - d.v_lin);
        const double i_true = d.i_s * (std::exp(v / d.nvt) - 1.0);
        if (!(std::abs(i_true - i_model) < opt.abs_tolerance))
        {
          ok = false;
        }
        const double limited = Limit(v, d.v_lin, d.nvt, d.vcrit);
        if (limited != v)
        {
          ok = false;
        }
        d.v_lin = limited;
      }
      if (ok)
      {
        converged = true;
        break;
      }
    }
    if (!converged)
    {
      return false;
    }
    x_ = x;
    for (auto &c : capacitors_)
    {
      const double v = Across(x_, c.a, c.b);
      c.i = 2.0 * c.c / h * (v - c.v) - c.i;
      c.v = v;
    }
    for (std::size_t k = 0; k < inductors_.size(); ++k)
    {
      auto &l = inductors_[k];
      l.i = x_(nn + static_cast<Eigen::Index>(sources_.size() + k));
      l.v = Across(x_, l.a, l.b);
    }
    return true;
  }

  int num_nodes_ = 0;
  std::vector<Resistor> resistors_;
  std::vector<Capacitor> capacitors_;
  std::vector<Inductor> inductors_;
  std::vector<Source> sources_;
  std::vector<Diode> diodes_;
  Eigen::VectorXd x_;
};

}  // namespace swipt::circuit

#endif  // SWIPT_CIRCUIT_HPP
