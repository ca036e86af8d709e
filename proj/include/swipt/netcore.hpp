// Copyright 2026 The swipt-sim Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef SWIPT_NETCORE_HPP
#define SWIPT_NETCORE_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "swipt/error.hpp"
#include "swipt/parallel.hpp"

namespace swipt
{

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;

inline constexpr double kDefaultReferenceImpedance = 50.0;

// Solves with partial pivoting are rejected when the reciprocal condition estimate
// drops below this (condition number above 1e12).
inline constexpr double kMinReciprocalCondition = 1e-12;

inline double AngularFrequency(double f) { return 2.0 * std::numbers::pi * f; }

//
// A single magnetically coupled loop: series R, L and (optionally) C.
//
struct Resonator
{
  double inductance = 0.0;                // H, > 0
  std::optional<double> capacitance;      // F, > 0 when present; absent for a pure inductor loop
  double series_resistance = 0.0;         // ohm, >= 0
  std::string label;

  void Validate() const
  {
    detail::Require(std::isfinite(inductance) && inductance > 0.0,
                    "resonator '" + label + "': inductance must be positive");
    detail::Require(std::isfinite(series_resistance) && series_resistance >= 0.0,
                    "resonator '" + label + "': series resistance must be non-negative");
    if (capacitance)
    {
      detail::Require(std::isfinite(*capacitance) && *capacitance > 0.0,
                      "resonator '" + label + "': capacitance must be positive");
    }
  }

  Complex SelfImpedance(double omega) const
  {
    Complex z(series_resistance, omega * inductance);
    if (capacitance)
    {
      z += 1.0 / Complex(0.0, omega * *capacitance);
    }
    return z;
  }

  // Series resonance in Hz; nullopt for a pure inductor loop.
  std::optional<double> ResonantFrequency() const
  {
    if (!capacitance)
    {
      return std::nullopt;
    }
    return 1.0 / (2.0 * std::numbers::pi * std::sqrt(inductance * *capacitance));
  }
};

struct Port
{
  std::size_t resonator = 0;
  double z0 = kDefaultReferenceImpedance;
};

//
// Lumped loops plus a symmetric mutual-inductance matrix. Resonators that are not
// ports are internal and get eliminated before S-parameters are formed.
//
class CoupledResonatorNetwork
{
public:
  CoupledResonatorNetwork() = default;

  CoupledResonatorNetwork(std::vector<Resonator> resonators, RealMatrix mutual,
                          std::vector<Port> ports)
    : resonators_(std::move(resonators)), mutual_(std::move(mutual)), ports_(std::move(ports))
  {
    Validate();
  }

  std::size_t Size() const { return resonators_.size(); }
  const std::vector<Resonator> &Resonators() const { return resonators_; }
  const RealMatrix &Mutual() const { return mutual_; }
  const std::vector<Port> &Ports() const { return ports_; }

  // Resonator indices of the ports, in port order.
  std::vector<std::size_t> PortIndices() const
  {
    std::vector<std::size_t> idx;
    idx.reserve(ports_.size());
    for (const auto &p : ports_)
    {
      idx.push_back(p.resonator);
    }
    return idx;
  }

  // Resonator indices that carry no port, ascending.
  std::vector<std::size_t> InternalIndices() const
  {
    std::vector<bool> is_port(Size(), false);
    for (const auto &p : ports_)
    {
      is_port[p.resonator] = true;
    }
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < Size(); ++i)
    {
      if (!is_port[i])
      {
        idx.push_back(i);
      }
    }
    return idx;
  }

  double CouplingCoefficient(std::size_t i, std::size_t j) const
  {
    return mutual_(i, j) /
           std::sqrt(resonators_[i].inductance * resonators_[j].inductance);
  }

  // Common reference impedance of all ports.
  double ReferenceImpedance() const
  {
    return ports_.empty() ? kDefaultReferenceImpedance : ports_.front().z0;
  }

private:
  void Validate() const
  {
    const auto n = resonators_.size();
    detail::Require(n > 0, "network has no resonators");
    for (const auto &r : resonators_)
    {
      r.Validate();
    }
    detail::Require(mutual_.rows() == static_cast<Eigen::Index>(n) &&
                        mutual_.cols() == static_cast<Eigen::Index>(n),
                    "mutual inductance matrix must be N x N");
    for (std::size_t i = 0; i < n; ++i)
    {
      detail::Require(mutual_(i, i) == 0.0, "mutual inductance matrix must have a zero diagonal");
      for (std::size_t j = i + 1; j < n; ++j)
      {
        detail::Require(std::isfinite(mutual_(i, j)) && mutual_(i, j) == mutual_(j, i),
                        "mutual inductance matrix must be symmetric");
        const double k = std::abs(CouplingCoefficient(i, j));
        detail::Require(k <= 1.0 + 1e-12, "coupling coefficient between resonators " +
                                              std::to_string(i) + " and " + std::to_string(j) +
                                              " exceeds 1");
      }
    }
    std::vector<bool> seen(n, false);
    for (const auto &p : ports_)
    {
      detail::Require(p.resonator < n, "port refers to a resonator out of range");
      detail::Require(!seen[p.resonator], "two ports share one resonator");
      seen[p.resonator] = true;
      detail::Require(std::isfinite(p.z0) && p.z0 > 0.0, "port reference impedance must be positive");
      detail::Require(p.z0 == ports_.front().z0, "all ports must share one reference impedance");
    }
  }

  std::vector<Resonator> resonators_;
  RealMatrix mutual_;
  std::vector<Port> ports_;
};

// Coaxial-loop style decay of the coupling coefficient with separation:
// k(d) = k0 * (1 + (d/d0)^2)^(-3/2).
struct DistanceCoupling
{
  double k0 = 0.0;
  double d0_mm = 1.0;

  double At(double distance_mm) const
  {
    const double r = distance_mm / d0_mm;
    return k0 * std::pow(1.0 + r * r, -1.5);
  }
};

enum class ParameterForm
{
  kZ,
  kS
};

struct FrequencyResponse
{
  std::vector<double> grid;            // Hz, strictly increasing
  std::vector<ComplexMatrix> matrices; // one N x N matrix per grid point
  ParameterForm form = ParameterForm::kS;
  double z0 = kDefaultReferenceImpedance;

  std::size_t Ports() const { return matrices.empty() ? 0 : matrices.front().rows(); }

  void Validate() const
  {
    detail::Require(grid.size() == matrices.size(), "one matrix per grid point required");
    for (std::size_t i = 0; i < grid.size(); ++i)
    {
      detail::Require(std::isfinite(grid[i]) && grid[i] > 0.0, "frequencies must be positive");
      detail::Require(i == 0 || grid[i] > grid[i - 1], "frequency grid must be strictly increasing");
      detail::Require(matrices[i].rows() == matrices[i].cols() &&
                          matrices[i].rows() == matrices.front().rows(),
                      "all matrices must be square with one dimension");
    }
    detail::Require(form == ParameterForm::kZ || (std::isfinite(z0) && z0 > 0.0),
                    "S-form response needs a positive reference impedance");
  }
};

namespace detail
{

inline Eigen::PartialPivLU<ComplexMatrix> CheckedLu(const ComplexMatrix &a, const char *what)
{
  Eigen::PartialPivLU<ComplexMatrix> lu(a);
  const double rc = a.size() == 0 ? 1.0 : lu.rcond();
  if (!(rc >= kMinReciprocalCondition))
  {
    throw SingularMatrixError(std::string(what) + ": matrix is singular or ill-conditioned (rcond " +
                              std::to_string(rc) + ")");
  }
  return lu;
}

inline void RequireFinite(const ComplexMatrix &m, const char *what)
{
  if (!m.allFinite())
  {
    throw ComputationError(std::string(what) + ": non-finite entries (degenerate element values)");
  }
}

}  // namespace detail

// Loop impedance matrix over all resonators at frequency f (Hz).
inline ComplexMatrix BuildZMatrix(const CoupledResonatorNetwork &net, double f)
{
  detail::Require(std::isfinite(f) && f > 0.0, "frequency must be positive");
  const double w = AngularFrequency(f);
  const auto n = static_cast<Eigen::Index>(net.Size());
  ComplexMatrix z(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
  {
    for (Eigen::Index j = 0; j < n; ++j)
    {
      z(i, j) = i == j ? net.Resonators()[i].SelfImpedance(w)
                       : Complex(0.0, w * net.Mutual()(i, j));
    }
  }
  detail::RequireFinite(z, "impedance matrix");
  return z;
}

// Eliminates every index not listed in `keep` (open-circuit current constraint on the
// eliminated loops' sources): Z' = Z_kk - Z_ke Z_ee^-1 Z_ek. Rows/columns of the result
// follow the order of `keep`.
inline ComplexMatrix ReduceToKept(const ComplexMatrix &z, std::span<const std::size_t> keep)
{
  const auto n = static_cast<std::size_t>(z.rows());
  std::vector<bool> kept(n, false);
  for (auto k : keep)
  {
    detail::Require(k < n && !kept[k], "kept indices must be distinct and in range");
    kept[k] = true;
  }
  std::vector<std::size_t> elim;
  for (std::size_t i = 0; i < n; ++i)
  {
    if (!kept[i])
    {
      elim.push_back(i);
    }
  }
  const auto nk = static_cast<Eigen::Index>(keep.size());
  const auto ne = static_cast<Eigen::Index>(elim.size());
  ComplexMatrix zkk(nk, nk), zke(nk, ne), zek(ne, nk), zee(ne, ne);
  for (Eigen::Index a = 0; a < nk; ++a)
  {
    for (Eigen::Index b = 0; b < nk; ++b)
    {
      zkk(a, b) = z(keep[a], keep[b]);
    }
    for (Eigen::Index b = 0; b < ne; ++b)
    {
      zke(a, b) = z(keep[a], elim[b]);
      zek(b, a) = z(elim[b], keep[a]);
    }
  }
  for (Eigen::Index a = 0; a < ne; ++a)
  {
    for (Eigen::Index b = 0; b < ne; ++b)
    {
      zee(a, b) = z(elim[a], elim[b]);
    }
  }
  if (ne == 0)
  {
    return zkk;
  }
  const auto lu = detail::CheckedLu(zee, "internal loop reduction");
  ComplexMatrix out = zkk - zke * lu.solve(zek);
  detail::RequireFinite(out, "internal loop reduction");
  return out;
}

// Eliminates the listed internal indices; remaining indices keep ascending order.
inline ComplexMatrix ReduceInternal(const ComplexMatrix &z, std::span<const std::size_t> internal)
{
  const auto n = static_cast<std::size_t>(z.rows());
  std::vector<bool> drop(n, false);
  for (auto i : internal)
  {
    detail::Require(i < n, "internal index out of range");
    drop[i] = true;
  }
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < n; ++i)
  {
    if (!drop[i])
    {
      keep.push_back(i);
    }
  }
  return ReduceToKept(z, keep);
}

// S = (Z/z0 - I)(Z/z0 + I)^-1 for a uniform real reference impedance.
inline ComplexMatrix ZToS(const ComplexMatrix &z, double z0)
{
  detail::Require(std::isfinite(z0) && z0 > 0.0, "reference impedance must be positive");
  const auto n = z.rows();
  const ComplexMatrix zn = z / z0;
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  // S B = A  <=>  B^T S^T = A^T
  const ComplexMatrix bt = (zn + id).transpose();
  const auto lu = detail::CheckedLu(bt, "Z to S conversion");
  ComplexMatrix s = lu.solve((zn - id).transpose()).transpose();
  detail::RequireFinite(s, "Z to S conversion");
  return s;
}

// Z = z0 (I - S)^-1 (I + S).
inline ComplexMatrix SToZ(const ComplexMatrix &s, double z0)
{
  detail::Require(std::isfinite(z0) && z0 > 0.0, "reference impedance must be positive");
  const auto n = s.rows();
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  const auto lu = detail::CheckedLu(id - s, "S to Z conversion");
  ComplexMatrix z = z0 * lu.solve(id + s);
  detail::RequireFinite(z, "S to Z conversion");
  return z;
}

// Port-level impedance matrix (port order) at one frequency.
inline ComplexMatrix PortZMatrix(const CoupledResonatorNetwork &net, double f)
{
  const auto ports = net.PortIndices();
  return ReduceToKept(BuildZMatrix(net, f), ports);
}

// Per frequency: loop matrix -> internal reduction -> S at the port reference impedance.
// Points are independent; `workers` > 1 evaluates them concurrently with identical results.
inline FrequencyResponse Sweep(const CoupledResonatorNetwork &net, std::span<const double> grid,
                               unsigned workers = 1)
{
  detail::Require(!net.Ports().empty(), "network has no ports");
  FrequencyResponse resp;
  resp.grid.assign(grid.begin(), grid.end());
  resp.form = ParameterForm::kS;
  resp.z0 = net.ReferenceImpedance();
  for (std::size_t i = 0; i < resp.grid.size(); ++i)
  {
    detail::Require(std::isfinite(resp.grid[i]) && resp.grid[i] > 0.0,
                    "frequencies must be positive");
    detail::Require(i == 0 || resp.grid[i] > resp.grid[i - 1],
                    "frequency grid must be strictly increasing");
  }
  resp.matrices.resize(resp.grid.size());
  detail::ParallelFor(resp.grid.size(), workers,
                      [&](std::size_t i)
                      {
                        try
                        {
                          resp.matrices[i] = ZToS(PortZMatrix(net, resp.grid[i]), resp.z0);
                        }
                        catch (const SingularMatrixError &e)
                        {
                          throw SingularMatrixError(e.what(), i, resp.grid[i]);
                        }
                        catch (const ComputationError &e)
                        {
                          throw ComputationError(e.what(), i, resp.grid[i]);
                        }
                      });
  return resp;
}

// Evenly spaced grid, linear or logarithmic, endpoints included.
inline std::vector<double> MakeGrid(double start, double stop, std::size_t points, bool log_spacing)
{
  detail::Require(points >= 1, "grid needs at least one point");
  detail::Require(start > 0.0 && stop >= start, "grid needs 0 < start <= stop");
  detail::Require(points == 1 || stop > start, "multi-point grid needs stop > start");
  std::vector<double> g(points);
  for (std::size_t i = 0; i < points; ++i)
  {
    const double t = points == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(points - 1);
    g[i] = log_spacing ? start * std::pow(stop / start, t) : start + (stop - start) * t;
  }
  if (points > 1)
  {
    g.back() = stop;
  }
  return g;
}

inline double ToDb(Complex s, double floor_db = -300.0)
{
  const double m = std::abs(s);
  return m > 0.0 ? std::max(20.0 * std::log10(m), floor_db) : floor_db;
}

}  // namespace swipt

#endif  // SWIPT_NETCORE_HPP
