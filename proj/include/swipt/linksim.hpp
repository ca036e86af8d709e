// Copyright 2026 The swipt-sim Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef SWIPT_LINKSIM_HPP
#define SWIPT_LINKSIM_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <boost/math/special_functions/beta.hpp>

#include "swipt/crlh.hpp"
#include "swipt/error.hpp"
#include "swipt/msk.hpp"
#include "swipt/netcore.hpp"
#include "swipt/parallel.hpp"
#include "swipt/prbs.hpp"
#include "swipt/rectifier.hpp"
#include "swipt/units.hpp"

namespace swipt::linksim
{

// Port numbering of the four-port link: power 1 -> 3, signal 2 -> 4.
enum class Role
{
  kTxPower = 0,
  kTxSignal = 1,
  kRxPower = 2,
  kRxSignal = 3
};

inline constexpr std::array<const char *, 4> kRoleNames = {"tx_power", "tx_signal", "rx_power",
                                                           "rx_signal"};

inline constexpr Eigen::Index PortOf(Role r) { return static_cast<Eigen::Index>(r); }

struct FixedCoupling
{
  double k = 0.0;
};

struct FixedMutual
{
  double m = 0.0;  // H
};

using CouplingLaw = std::variant<FixedCoupling, FixedMutual, DistanceCoupling>;

// Coupling between resonators a and b, indices into the realized network.
struct CouplingEntry
{
  std::size_t a = 0;
  std::size_t b = 0;
  CouplingLaw law;

  double MutualAt(double distance_mm, double la, double lb) const
  {
    const double scale = std::sqrt(la * lb);
    if (const auto *f = std::get_if<FixedCoupling>(&law))
    {
      return f->k * scale;
    }
    if (const auto *m = std::get_if<FixedMutual>(&law))
    {
      return m->m;
    }
    return std::get<DistanceCoupling>(law).At(distance_mm) * scale;
  }

  bool DependsOnDistance() const { return std::holds_alternative<DistanceCoupling>(law); }
};

// Absorber realized as internal loops appended after the link resonators.
struct Absorber
{
  crlh::AbsorberSpec spec;
  std::vector<Resonator> loops;
  std::vector<CouplingEntry> couplings;  // indices refer to the combined resonator list
};

//
// Four-port SWIPT link: link resonators, the resonator carrying each role's port, the
// coupling laws and an optional absorber that can be switched off without editing it.
//
struct Scenario
{
  std::vector<Resonator> resonators;
  std::array<std::size_t, 4> role_resonator{0, 1, 2, 3};
  std::vector<CouplingEntry> couplings;
  std::optional<Absorber> absorber;
  bool absorber_enabled = true;
  double distance_mm = 9.0;
  double z0 = kDefaultReferenceImpedance;

  bool HasActiveAbsorber() const { return absorber.has_value() && absorber_enabled; }

  bool IsParametric() const
  {
    auto any = [](const std::vector<CouplingEntry> &v)
    { return std::any_of(v.begin(), v.end(), [](const auto &c) { return c.DependsOnDistance(); }); };
    return any(couplings) || (HasActiveAbsorber() && any(absorber->couplings));
  }

  CoupledResonatorNetwork Realize() const { return RealizeAt(distance_mm); }

  CoupledResonatorNetwork RealizeAt(double d_mm) const
  {
    detail::Require(std::isfinite(d_mm) && d_mm >= 0.0, "distance must be non-negative");
    std::vector<Resonator> all = resonators;
    if (HasActiveAbsorber())
    {
      all.insert(all.end(), absorber->loops.begin(), absorber->loops.end());
    }
    const auto n = static_cast<Eigen::Index>(all.size());
    RealMatrix m = RealMatrix::Zero(n, n);
    auto apply = [&](const std::vector<CouplingEntry> &entries)
    {
      for (const auto &c : entries)
      {
        detail::Require(c.a < all.size() && c.b < all.size() && c.a != c.b,
                        "coupling refers to an invalid resonator pair");
        const double v = c.MutualAt(d_mm, all[c.a].inductance, all[c.b].inductance);
        m(c.a, c.b) += v;
        m(c.b, c.a) += v;
      }
    };
    apply(couplings);
    if (HasActiveAbsorber())
    {
      apply(absorber->couplings);
    }
    std::vector<Port> ports;
    for (auto r : role_resonator)
    {
      detail::Require(r < resonators.size(), "port role refers to a resonator out of range");
      ports.push_back({r, z0});
    }
    return CoupledResonatorNetwork(std::move(all), std::move(m), std::move(ports));
  }
};

inline Complex Element(const ComplexMatrix &s, Role to, Role from)
{
  return s(PortOf(to), PortOf(from));
}

inline void RequireFourPortS(const FrequencyResponse &resp)
{
  resp.Validate();
  detail::Require(resp.form == ParameterForm::kS, "an S-form response is required");
  detail::Require(resp.Ports() == 4, "a four-port response is required");
}

// 20 log10 |S14| per grid point, floored at -300 dB.
inline std::vector<double> IsolationCurve(const FrequencyResponse &resp)
{
  RequireFourPortS(resp);
  std::vector<double> out;
  out.reserve(resp.grid.size());
  for (const auto &s : resp.matrices)
  {
    out.push_back(ToDb(Element(s, Role::kTxPower, Role::kRxSignal)));
  }
  return out;
}

// |S24|^2 per grid point.
inline std::vector<double> SignalPte(const FrequencyResponse &resp)
{
  RequireFourPortS(resp);
  std::vector<double> out;
  out.reserve(resp.grid.size());
  for (const auto &s : resp.matrices)
  {
    out.push_back(std::norm(Element(s, Role::kTxSignal, Role::kRxSignal)));
  }
  return out;
}

// Impedance seen looking into `port` with every other port terminated in z0.
inline Complex TheveninImpedance(const ComplexMatrix &z, Eigen::Index port, double z0)
{
  const Eigen::Index n = z.rows();
  detail::Require(port >= 0 && port < n, "port out of range");
  if (n == 1)
  {
    return z(0, 0);
  }
  ComplexMatrix zt = z;
  std::vector<Eigen::Index> others;
  for (Eigen::Index i = 0; i < n; ++i)
  {
    if (i != port)
    {
      zt(i, i) += z0;
      others.push_back(static_cast<Eigen::Index>(i));
    }
  }
  const auto m = static_cast<Eigen::Index>(others.size());
  ComplexMatrix zoo(m, m);
  ComplexMatrix zop(m, 1);
  ComplexMatrix zpo(1, m);
  for (Eigen::Index a = 0; a < m; ++a)
  {
    zop(a, 0) = zt(others[a], port);
    zpo(0, a) = zt(port, others[a]);
    for (Eigen::Index b = 0; b < m; ++b)
    {
      zoo(a, b) = zt(others[a], others[b]);
    }
  }
  const auto lu = detail::CheckedLu(zoo, "terminated network");
  return zt(port, port) - (zpo * lu.solve(zop))(0, 0);
}

// Power-link figures at one frequency for a 50-ohm driven Tx power port.
struct PowerLink
{
  double s31_sq = 0.0;     // |S31|^2, delivered into a matched rx_power load
  Complex z_out;           // Thevenin impedance at rx_power
  double available_gain = 0.0;  // |S31|^2 / (1 - |Gamma_out|^2)
};

inline PowerLink PowerLinkAt(const CoupledResonatorNetwork &net, double f)
{
  const ComplexMatrix z = PortZMatrix(net, f);
  const double z0 = net.ReferenceImpedance();
  const ComplexMatrix s = ZToS(z, z0);
  PowerLink p;
  p.s31_sq = std::norm(Element(s, Role::kRxPower, Role::kTxPower));
  p.z_out = TheveninImpedance(z, PortOf(Role::kRxPower), z0);
  const double g_out = std::norm((p.z_out - z0) / (p.z_out + z0));
  p.available_gain = p.s31_sq / (1.0 - g_out);
  return p;
}

struct DistanceRow
{
  double distance_mm = 0.0;
  double pte = 0.0;               // |S31|^2 at the power carrier
  double efficiency = 0.0;        // V_out^2 / (P_in R_L), end to end
  double available_power = 0.0;   // W at the rectifier port
  double v_out = 0.0;             // V
  Complex z_out;                  // rectifier source impedance
  std::string error;              // non-empty when the point failed
};

//
// Per distance: realize k(d), evaluate the power link at the rectifier frequency, drive the
// rectifier from the rx_power Thevenin equivalent and report V_out^2 / (P_in R_L).
//
inline std::vector<DistanceRow> DistanceSweep(const Scenario &sc, std::span<const double> distances_mm,
                                              const rectifier::RectifierCircuit &rc, double p_in_w,
                                              const rectifier::SimOptions &opt = {},
                                              unsigned workers = 1)
{
  detail::Require(sc.IsParametric(), "distance sweep needs a distance-dependent coupling model");
  detail::Require(std::isfinite(p_in_w) && p_in_w > 0.0, "input power must be positive");
  std::vector<DistanceRow> rows(distances_mm.size());
  detail::ParallelFor(rows.size(), workers,
                      [&](std::size_t i)
                      {
                        auto &row = rows[i];
                        row.distance_mm = distances_mm[i];
                        try
                        {
                          const auto net = sc.RealizeAt(distances_mm[i]);
                          const auto link = PowerLinkAt(net, rc.f0);
                          row.pte = link.s31_sq;
                          row.z_out = link.z_out;
                          row.available_power = p_in_w * link.available_gain;
                          rectifier::RectifierCircuit local = rc;
                          local.source_impedance = link.z_out;
                          const auto r = rectifier::Analyze(local, row.available_power, opt);
                          row.v_out = r.v_out_dc;
                          row.efficiency = rectifier::RfDcEfficiency(r.v_out_dc, p_in_w, rc.r_l);
                        }
                        catch (const std::exception &e)
                        {
                          row.error = e.what();
                        }
                      });
  return rows;
}

// Upper BER bound -ln(1 - confidence) / n when no errors were observed.
inline double ZeroErrorBerBound(double n_bits, double confidence)
{
  detail::Require(std::isfinite(n_bits) && n_bits >= 1.0, "bit count must be at least 1");
  detail::Require(confidence > 0.0 && confidence < 1.0, "confidence must lie in (0, 1)");
  return -std::log1p(-confidence) / n_bits;
}

struct BerTrial
{
  double bit_rate = 10e6;         // bit/s
  double carrier = 40e6;          // Hz
  int samples_per_symbol = 8;
  Complex channel_gain{1.0, 0.0}; // amplitude transfer Tx signal -> Rx signal at the carrier
  double noise_density = 0.0;     // W/Hz at the receiver
  double signal_power_dbm = 0.0;  // at the Tx signal port
  std::size_t n_bits = 100000;
  std::uint64_t seed = 1;
  std::uint16_t prbs_seed = Prbs9::kMask;
  double confidence = 0.99;
  unsigned workers = 1;

  void Validate() const
  {
    detail::Require(std::isfinite(bit_rate) && bit_rate > 0.0, "bit rate must be positive");
    detail::Require(carrier > 0.0, "carrier must be positive");
    detail::Require(samples_per_symbol >= 4, "samples per symbol must be at least 4");
    detail::Require(n_bits >= 1000, "a BER trial needs at least 1000 bits");
    detail::Require(std::isfinite(noise_density) && noise_density >= 0.0,
                    "noise density must be non-negative");
    detail::Require(std::isfinite(signal_power_dbm), "signal power must be finite");
    detail::Require(confidence > 0.0 && confidence < 1.0, "confidence must lie in (0, 1)");
  }

  // Received energy per bit in joules.
  double EnergyPerBit() const
  {
    return DbmToWatts(signal_power_dbm) * std::norm(channel_gain) / bit_rate;
  }
};

struct BerResult
{
  std::size_t bits_sent = 0;
  std::size_t bit_errors = 0;
  double ber_estimate = 0.0;
  double ber_upper_bound = 0.0;
  double confidence = 0.99;
  double eb_n0_db = 0.0;  // +inf without noise
};

// One-sided upper confidence bound: zero-error rule, exact binomial bound otherwise.
inline double BerUpperBound(std::size_t errors, std::size_t n, double confidence)
{
  if (errors == 0)
  {
    return ZeroErrorBerBound(static_cast<double>(n), confidence);
  }
  if (errors >= n)
  {
    return 1.0;
  }
  return boost::math::ibeta_inv(static_cast<double>(errors + 1), static_cast<double>(n - errors),
                                confidence);
}

//
// PRBS-9 data, differentially precoded MSK, scaled by sqrt(P) times the channel gain,
// AWGN at the configured density, coherent detection with known gain.
//
inline BerResult BerExperiment(const BerTrial &t)
{
  t.Validate();
  Prbs9 gen(t.prbs_seed);
  const auto data = gen.Take(t.n_bits);
  const auto tx = msk::Modulate(msk::Precode(data), t.samples_per_symbol);
  const Complex gain = std::sqrt(DbmToWatts(t.signal_power_dbm)) * t.channel_gain;
  msk::ChannelParams ch{gain, t.noise_density, t.bit_rate, t.samples_per_symbol, t.seed, t.workers};
  auto rx = msk::AwgnChannel(tx, ch);
  if (std::abs(gain) > 0.0)
  {
    const Complex derotate = std::conj(gain) / std::abs(gain);
    for (auto &v : rx)
    {
      v *= derotate;
    }
  }
  const auto decided = msk::DecodePrecoded(rx, t.samples_per_symbol);
  BerResult r;
  r.bits_sent = data.size();
  for (std::size_t k = 0; k < data.size(); ++k)
  {
    r.bit_errors += decided[k] != data[k];
  }
  r.ber_estimate = static_cast<double>(r.bit_errors) / static_cast<double>(r.bits_sent);
  r.ber_upper_bound = std::max(r.ber_estimate, BerUpperBound(r.bit_errors, r.bits_sent, t.confidence));
  r.confidence = t.confidence;
  r.eb_n0_db = t.noise_density > 0.0 ? LinearToDb(t.EnergyPerBit() / t.noise_density)
                                     : std::numeric_limits<double>::infinity();
  return r;
}

// Receiver noise and power-band interference at the signal receiver.
struct NoiseBudget
{
  double noise_figure_db = 6.0;
  double power_tx_dbm = 24.0;               // drive at the Tx power port
  double power_tx_leakage_dbc_hz = -200.0;  // power amplifier noise floor at the signal carrier

  double ThermalDensity() const { return DbmToWatts(-174.0 + noise_figure_db); }

  // N0 = kTF + P_power * L * |S41(carrier)|^2.
  double Density(Complex s41) const
  {
    return ThermalDensity() +
           DbmToWatts(power_tx_dbm) * DbToLinear(power_tx_leakage_dbc_hz) * std::norm(s41);
  }
};

// Channel gain S42 and the noise density seen by the signal receiver at the carrier.
struct SignalLink
{
  Complex s42;
  Complex s41;
  double noise_density = 0.0;
};

inline SignalLink SignalLinkAt(const CoupledResonatorNetwork &net, double carrier, const NoiseBudget &nb)
{
  const ComplexMatrix s = ZToS(PortZMatrix(net, carrier), net.ReferenceImpedance());
  SignalLink l;
  l.s42 = Element(s, Role::kRxSignal, Role::kTxSignal);
  l.s41 = Element(s, Role::kRxSignal, Role::kTxPower);
  l.noise_density = nb.Density(l.s41);
  return l;
}

// Trial template for a scenario: gain and noise taken from the realized network.
inline BerTrial TrialFor(const Scenario &sc, const NoiseBudget &nb, BerTrial base)
{
  const auto link = SignalLinkAt(sc.Realize(), base.carrier, nb);
  base.channel_gain = link.s42;
  base.noise_density = link.noise_density;
  return base;
}

struct PowerPoint
{
  double signal_power_dbm = 0.0;
  BerResult result;
};

//
// Lowest power on an ascending grid whose BER meets the target. All trials share one seed,
// so the noise is common across points and the BER is monotone in power; bisection suffices.
//
inline std::optional<PowerPoint> MinPowerForBer(const BerTrial &base, std::span<const double> powers_dbm,
                                                double target_ber)
{
  detail::Require(target_ber > 0.0 && target_ber < 1.0, "target BER must lie in (0, 1)");
  for (std::size_t i = 1; i < powers_dbm.size(); ++i)
  {
    detail::Require(powers_dbm[i] > powers_dbm[i - 1], "power grid must be ascending");
  }
  auto run = [&](std::size_t i)
  {
    BerTrial t = base;
    t.signal_power_dbm = powers_dbm[i];
    return BerExperiment(t);
  };
  if (powers_dbm.empty())
  {
    return std::nullopt;
  }
  std::size_t lo = 0;
  std::size_t hi = powers_dbm.size() - 1;
  auto top = run(hi);
  if (top.ber_estimate > target_ber)
  {
    return std::nullopt;
  }
  PowerPoint best{powers_dbm[hi], top};
  while (lo < hi)
  {
    const std::size_t mid = lo + (hi - lo) / 2;
    const auto r = run(mid);
    if (r.ber_estimate <= target_ber)
    {
      hi = mid;
      best = {powers_dbm[mid], r};
    }
    else
    {
      lo = mid + 1;
    }
  }
  return best;
}

struct RatePoint
{
  double bit_rate = 0.0;
  BerResult result;
};

inline std::vector<RatePoint> BitRateSweep(const BerTrial &base, std::span<const double> bit_rates)
{
  std::vector<RatePoint> out;
  out.reserve(bit_rates.size());
  for (double rb : bit_rates)
  {
    BerTrial t = base;
    t.bit_rate = rb;
    out.push_back({rb, BerExperiment(t)});
  }
  return out;
}

// Highest bit rate in the list whose BER meets the target.
inline std::optional<double> MaxBitRate(std::span<const RatePoint> sweep, double target_ber)
{
  std::optional<double> best;
  for (const auto &p : sweep)
  {
    if (p.result.ber_estimate <= target_ber && (!best || p.bit_rate > *best))
    {
      best = p.bit_rate;
    }
  }
  return best;
}

}  // namespace swipt::linksim

#endif  // SWIPT_LINKSIM_HPP
