// Copyright 2026 The swipt-sim Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef SWIPT_CLI_HPP
#define SWIPT_CLI_HPP

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "swipt/crlh.hpp"
#include "swipt/error.hpp"
#include "swipt/io/config.hpp"
#include "swipt/io/csv.hpp"
#include "swipt/io/touchstone.hpp"
#include "swipt/linksim.hpp"
#include "swipt/netcore.hpp"
#include "swipt/rectifier.hpp"
#include "swipt/slab.hpp"
#include "swipt/units.hpp"

namespace swipt::cli
{

enum ExitCode : int
{
  kOk = 0,
  kComputationFailure = 1,
  kConfigError = 2
};

// Directory used for outputs when --out is not given; stdout when unset.
inline constexpr const char *kOutputDirEnv = "SWIPT_OUTPUT_DIR";

struct Options
{
  std::string config;
  std::string out;
  std::string format;
  std::optional<std::uint64_t> seed;
  bool with_absorber = false;
  bool without_absorber = false;
  unsigned workers = 0;
};

// Output produced by a subcommand before anything is written.
struct Artifact
{
  std::string default_name;
  std::string content;
  bool failed = false;  // some rows failed; written anyway, exit 1
};

namespace impl
{

inline unsigned Workers(const Options &o)
{
  if (o.workers > 0)
  {
    return o.workers;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

inline io::ScenarioConfig Load(const Options &o)
{
  if (o.config.empty())
  {
    throw ConfigError("--config is required");
  }
  auto cfg = io::LoadConfig(o.config);
  if (o.with_absorber || o.without_absorber)
  {
    if (!cfg.has_link)
    {
      throw ConfigError("--with-absorber/--without-absorber need a link scenario in the config");
    }
    if (o.with_absorber && !cfg.scenario.absorber)
    {
      throw ConfigError("--with-absorber given but the config has no absorber section");
    }
    cfg.scenario.absorber_enabled = o.with_absorber;
  }
  return cfg;
}

inline void RequireLink(const io::ScenarioConfig &cfg, const char *what)
{
  if (!cfg.has_link)
  {
    throw ConfigError(std::string(what) + " needs resonators, ports and couplings in the config");
  }
}

inline std::string Format(const Options &o, const char *fallback, bool touchstone_ok)
{
  const std::string f = o.format.empty() ? fallback : o.format;
  if (f == "touchstone" && !touchstone_ok)
  {
    throw ConfigError("this subcommand writes CSV only");
  }
  return f;
}

inline std::string PortName(Eigen::Index i, Eigen::Index j)
{
  return "s" + std::to_string(i + 1) + std::to_string(j + 1);
}

inline std::vector<std::string> ScenarioComments(const io::ScenarioConfig &cfg)
{
  std::vector<std::string> c{"swipt-sim S-parameters"};
  if (!cfg.name.empty())
  {
    c.push_back("scenario: " + cfg.name);
  }
  c.push_back(std::string("absorber: ") + (cfg.scenario.HasActiveAbsorber() ? "on" : "off"));
  c.push_back("distance_mm: " + io::Num(cfg.scenario.distance_mm));
  c.push_back("ports: 1 tx_power, 2 tx_signal, 3 rx_power, 4 rx_signal");
  return c;
}

inline Artifact SParams(const Options &o)
{
  const auto cfg = Load(o);
  RequireLink(cfg, "sparams");
  const std::string fmt = Format(o, "touchstone", true);
  const auto grid = cfg.sweep.Grid();
  const auto resp = Sweep(cfg.scenario.Realize(), grid, Workers(o));
  if (fmt == "touchstone")
  {
    return {"sparams.s4p", io::FormatTouchstone(resp, ScenarioComments(cfg))};
  }
  io::Table t;
  t.header.push_back("frequency_hz");
  const auto n = static_cast<Eigen::Index>(resp.Ports());
  for (Eigen::Index i = 0; i < n; ++i)
  {
    for (Eigen::Index j = 0; j < n; ++j)
    {
      t.header.push_back(PortName(i, j) + "_re");
      t.header.push_back(PortName(i, j) + "_im");
    }
  }
  t.header.push_back("isolation_s14_db");
  t.header.push_back("signal_pte_s24");
  const auto iso = linksim::IsolationCurve(resp);
  const auto pte = linksim::SignalPte(resp);
  for (std::size_t k = 0; k < grid.size(); ++k)
  {
    std::vector<std::string> row{io::Num(grid[k])};
    for (Eigen::Index i = 0; i < n; ++i)
    {
      for (Eigen::Index j = 0; j < n; ++j)
      {
        row.push_back(io::Num(resp.matrices[k](i, j).real()));
        row.push_back(io::Num(resp.matrices[k](i, j).imag()));
      }
    }
    row.push_back(io::Num(iso[k]));
    row.push_back(io::Num(pte[k]));
    t.Add(std::move(row));
  }
  return {"sparams.csv", io::FormatCsv(t)};
}

inline Artifact Extract(const Options &o)
{
  const auto cfg = Load(o);
  Format(o, "csv", false);
  if (!cfg.scenario.absorber)
  {
    throw ConfigError("extract needs an absorber section with a cell");
  }
  const auto &spec = cfg.scenario.absorber->spec;
  const io::GridSpec g = cfg.extract.value_or(io::GridSpec{30e6, 50e6, 201, false});
  io::Table t;
  t.header = {"frequency_hz", "mu_re", "mu_im", "eps_re", "eps_im", "n_re", "n_im",
              "z_re",         "z_im",  "branch", "regime", "error"};
  Artifact a{"extract.csv", "", false};
  for (double f : g.Grid())
  {
    const char *regime = crlh::ToString(crlh::ClassifyRegime(spec.cell, AngularFrequency(f)));
    try
    {
      const auto p = crlh::CellEffectiveParams(spec, spec.cell, f);
      t.Add({io::Num(f), io::Num(p.mu.real()), io::Num(p.mu.imag()), io::Num(p.eps.real()),
             io::Num(p.eps.imag()), io::Num(p.n.real()), io::Num(p.n.imag()), io::Num(p.z.real()),
             io::Num(p.z.imag()), std::to_string(p.branch), regime, ""});
    }
    catch (const ComputationError &e)
    {
      const std::string nan = io::Num(std::nan(""));
      t.Add({io::Num(f), nan, nan, nan, nan, nan, nan, nan, nan, "", regime, e.what()});
      a.failed = true;
    }
  }
  a.content = io::FormatCsv(t);
  return a;
}

inline Artifact Slab(const Options &o)
{
  io::SlabConfig sc;
  if (!o.config.empty())
  {
    const auto cfg = Load(o);
    if (!cfg.slab)
    {
      throw ConfigError("slab needs a 'slab' section in the config");
    }
    sc = *cfg.slab;
  }
  else
  {
    sc.slab_case = {Complex(-1.0 + 1e-6, 0.0), Complex(100.0, 0.0), Complex(100.0, 0.0), 0.01};
  }
  Format(o, "csv", false);
  const double kx = sc.slab_case.kx.real();
  const double d = sc.slab_case.d;
  const Complex lens = std::exp(Complex(0.0, -kx * d));
  io::Table t;
  t.header = {"kind", "mu_re", "mu_im", "t_re", "t_im", "tp_re", "tp_im", "rp_re", "rp_im",
              "T_re", "T_im", "lens_error"};
  auto add = [&](const char *kind, const slab::SlabCase &c)
  {
    const auto r = slab::Transmission(c, sc.form);
    t.Add({kind, io::Num(c.mu.real()), io::Num(c.mu.imag()), io::Num(r.t.real()), io::Num(r.t.imag()),
           io::Num(r.t_prime.real()), io::Num(r.t_prime.imag()), io::Num(r.r_prime.real()),
           io::Num(r.r_prime.imag()), io::Num(r.T.real()), io::Num(r.T.imag()),
           io::Num(std::abs(r.T - lens))});
  };
  add("case", sc.slab_case);
  // Validates the delta sequence before the limit rows are produced.
  slab::PendryLimitError(kx, d, sc.deltas);
  for (double delta : sc.deltas)
  {
    slab::SlabCase c{Complex(-1.0 + delta, 0.0), Complex(kx, 0.0), Complex(kx, 0.0), d};
    add("limit", c);
  }
  return {"slab.csv", io::FormatCsv(t)};
}

inline Artifact CellTune(const Options &o)
{
  const auto cfg = Load(o);
  Format(o, "csv", false);
  if (!cfg.scenario.absorber || !cfg.cell_tune)
  {
    throw ConfigError("cell-tune needs 'absorber' and 'cell_tune' sections in the config");
  }
  const auto spec = cfg.scenario.absorber->spec;
  const auto &tc = *cfg.cell_tune;
  const auto res = crlh::TuneCell(
      spec.cell, tc.free, tc.f0_hz,
      [&](const crlh::CRLHCell &c, double f) { return crlh::CellPermeability(spec, c, f); }, tc.options);
  io::Table t;
  t.header = {"c_l_f", "l_l_h", "c_r_f", "l_r_h", "mu_re", "mu_im", "residual", "converged", "iterations"};
  t.Add({io::Num(res.cell.c_l), io::Num(res.cell.l_l), io::Num(res.cell.c_r), io::Num(res.cell.l_r),
         io::Num(res.mu.real()), io::Num(res.mu.imag()), io::Num(res.residual),
         res.converged ? "true" : "false", std::to_string(res.iterations)});
  return {"cell_tune.csv", io::FormatCsv(t), !res.converged};
}

inline Artifact Rectifier(const Options &o)
{
  const auto cfg = Load(o);
  Format(o, "csv", false);
  if (!cfg.rectifier)
  {
    throw ConfigError("rectifier needs a 'rectifier' section in the config");
  }
  const auto &rc = *cfg.rectifier;
  std::vector<double> powers = rc.p_in_dbm;
  if (powers.empty())
  {
    powers = {-20, -15, -10, -5, 0, 5, 10, 15, 20, 22, 24};
  }
  rectifier::RectifierCircuit circuit = rc.circuit;
  double gain = 1.0;
  // With a link in the config the input power is set at the Tx power port, as on the bench.
  if (cfg.has_link)
  {
    const auto link = linksim::PowerLinkAt(cfg.scenario.Realize(), circuit.f0);
    circuit.source_impedance = link.z_out;
    gain = link.available_gain;
  }
  std::vector<double> avail_dbm;
  for (double p : powers)
  {
    avail_dbm.push_back(p + LinearToDb(gain));
  }
  const auto rows = rectifier::PowerSweep(circuit, avail_dbm, rc.sim, Workers(o));
  io::Table t;
  t.header = {"p_in_dbm", "available_power_dbm", "v_out_v", "z_in_re", "z_in_im", "efficiency",
              "rectifier_efficiency", "error"};
  Artifact a{"rectifier.csv", "", false};
  const std::string nan = io::Num(std::nan(""));
  for (std::size_t i = 0; i < rows.size(); ++i)
  {
    const auto &r = rows[i];
    if (!r.result)
    {
      t.Add({io::Num(powers[i]), io::Num(avail_dbm[i]), nan, nan, nan, nan, nan, r.error});
      a.failed = true;
      continue;
    }
    const double eff = rectifier::RfDcEfficiency(r.result->v_out_dc, DbmToWatts(powers[i]), circuit.r_l);
    t.Add({io::Num(powers[i]), io::Num(avail_dbm[i]), io::Num(r.result->v_out_dc),
           io::Num(r.result->z_in.real()), io::Num(r.result->z_in.imag()), io::Num(eff),
           io::Num(r.result->efficiency), ""});
  }
  a.content = io::FormatCsv(t);
  return a;
}

inline Artifact DistanceSweep(const Options &o, std::ostream &err)
{
  const auto cfg = Load(o);
  RequireLink(cfg, "distance-sweep");
  Format(o, "csv", false);
  if (!cfg.distance_sweep)
  {
    throw ConfigError("distance-sweep needs a 'distance_sweep' section in the config");
  }
  if (!cfg.scenario.IsParametric())
  {
    throw ConfigError("distance-sweep needs k0/d0_mm couplings");
  }
  const io::RectifierConfig rc = cfg.rectifier.value_or(io::RectifierConfig{});
  const auto rows = linksim::DistanceSweep(cfg.scenario, cfg.distance_sweep->distances_mm, rc.circuit,
                                           DbmToWatts(cfg.distance_sweep->p_in_dbm), rc.sim, Workers(o));
  io::Table t;
  t.header = {"distance_mm", "pte", "efficiency"};
  Artifact a{"distance_sweep.csv", "", false};
  for (const auto &r : rows)
  {
    if (!r.error.empty())
    {
      err << "distance " << r.distance_mm << " mm failed: " << r.error << '\n';
      t.Add({io::Num(r.distance_mm), io::Num(r.pte), io::Num(std::nan(""))});
      a.failed = true;
      continue;
    }
    t.Add({io::Num(r.distance_mm), io::Num(r.pte), io::Num(r.efficiency)});
  }
  a.content = io::FormatCsv(t);
  return a;
}

inline Artifact LinkBer(const Options &o, std::ostream &err)
{
  const auto cfg = Load(o);
  RequireLink(cfg, "link-ber");
  Format(o, "csv", false);
  if (!cfg.ber)
  {
    throw ConfigError("link-ber needs a 'ber' section in the config");
  }
  io::BerConfig b = *cfg.ber;
  if (o.seed)
  {
    b.trial.seed = *o.seed;
  }
  b.trial.workers = Workers(o);
  const auto base = linksim::TrialFor(cfg.scenario, b.noise, b.trial);
  io::Table t;
  t.header = {"kind", "bit_rate_bps", "signal_power_dbm", "eb_n0_db", "bits_sent", "bit_errors",
              "ber_estimate", "ber_upper_bound"};
  auto add = [&](const char *kind, double rate, double power, const linksim::BerResult &r)
  {
    t.Add({kind, io::Num(rate), io::Num(power), io::Num(r.eb_n0_db), std::to_string(r.bits_sent),
           std::to_string(r.bit_errors), io::Num(r.ber_estimate), io::Num(r.ber_upper_bound)});
  };
  add("operating_point", base.bit_rate, base.signal_power_dbm, linksim::BerExperiment(base));
  for (const auto &p : linksim::BitRateSweep(base, b.bit_rates))
  {
    add("bit_rate_sweep", p.bit_rate, base.signal_power_dbm, p.result);
  }
  const auto grid = b.search.Grid();
  const auto min_power = linksim::MinPowerForBer(base, grid, b.target_ber);
  if (min_power)
  {
    add("min_power_for_target", base.bit_rate, min_power->signal_power_dbm, min_power->result);
  }
  else
  {
    err << "target BER " << b.target_ber << " not reached within the power search range\n";
  }
  return {"link_ber.csv", io::FormatCsv(t)};
}

inline void Emit(const Options &o, const Artifact &a, std::ostream &out)
{
  if (!o.out.empty())
  {
    io::WriteFileAtomic(o.out, a.content);
    return;
  }
  if (const char *dir = std::getenv(kOutputDirEnv); dir != nullptr && *dir != '\0')
  {
    io::WriteFileAtomic(std::filesystem::path(dir) / a.default_name, a.content);
    return;
  }
  out << a.content;
  out.flush();
}

inline void AddCommon(CLI::App *sub, Options &o, bool config_required)
{
  auto *cfg = sub->add_option("--config", o.config, "scenario configuration (JSON, schema 1)");
  if (config_required)
  {
    cfg->required();
  }
  sub->add_option("--out", o.out,
                  std::string("output file; default is $") + kOutputDirEnv + "/<name> or stdout");
  sub->add_option("--format", o.format, "output format")->check(CLI::IsMember({"touchstone", "csv"}));
  sub->add_option("--seed", o.seed, "random seed for Monte-Carlo runs");
  auto *with = sub->add_flag("--with-absorber", o.with_absorber, "enable the absorber loops");
  auto *without = sub->add_flag("--without-absorber", o.without_absorber, "disable the absorber loops");
  with->excludes(without);
  sub->add_option("--workers", o.workers, "worker threads (0 = hardware concurrency)");
}

}  // namespace impl

//
// Entry point. Exit 0 on success, 1 on computation failure, 2 on usage or configuration
// errors. Data goes to the output file (or stdout); diagnostics go to `err`.
//
inline int Run(int argc, const char *const *argv, std::ostream &out = std::cout,
               std::ostream &err = std::cerr)
{
  CLI::App app{"swipt: dual-band SWIPT link simulator"};
  app.name("swipt");
  app.require_subcommand(1, 1);
  Options o;
  struct Cmd
  {
    const char *name;
    const char *help;
    bool config_required;
  };
  const std::vector<Cmd> cmds = {
      {"sparams", "4-port S-parameters of the link over the sweep grid", true},
      {"extract", "effective mu/eps of the absorber cell over the extract grid", true},
      {"slab", "slab transmission and the mu -> -1 lens limit", false},
      {"cell-tune", "tune the absorber cell towards the target permeability", true},
      {"rectifier", "voltage-doubler power sweep (through the link when one is configured)", true},
      {"link-ber", "PRBS-9/MSK bit-error-rate experiment on the signal link", true},
      {"distance-sweep", "power-link PTE and end-to-end efficiency versus distance", true},
  };
  for (const auto &c : cmds)
  {
    impl::AddCommon(app.add_subcommand(c.name, c.help), o, c.config_required);
  }
  try
  {
    app.parse(argc, argv);
  }
  catch (const CLI::ParseError &e)
  {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kConfigError;
  }
  const std::string cmd = app.get_subcommands().front()->get_name();
  try
  {
    Artifact a;
    if (cmd == "sparams") a = impl::SParams(o);
    else if (cmd == "extract") a = impl::Extract(o);
    else if (cmd == "slab") a = impl::Slab(o);
    else if (cmd == "cell-tune") a = impl::CellTune(o);
    else if (cmd == "rectifier") a = impl::Rectifier(o);
    else if (cmd == "link-ber") a = impl::LinkBer(o, err);
    else a = impl::DistanceSweep(o, err);
    impl::Emit(o, a, out);
    if (a.failed)
    {
      err << "swipt " << cmd << ": some points failed (see the error column or messages above)\n";
      return kComputationFailure;
    }
    return kOk;
  }
  catch (const ConfigError &e)
  {
    err << "swipt " << cmd << ": configuration error: " << e.what() << '\n';
    return kConfigError;
  }
  catch (const InvalidArgument &e)
  {
    err << "swipt " << cmd << ": invalid input: " << e.what() << '\n';
    return kConfigError;
  }
  catch (const std::exception &e)
  {
    err << "swipt " << cmd << ": " << e.what() << '\n';
    return kComputationFailure;
  }
}

}  // namespace swipt::cli

#endif  // SWIPT_CLI_HPP
