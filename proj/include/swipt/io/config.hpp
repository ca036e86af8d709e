// Copyright 2026 The swipt-sim Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef SWIPT_IO_CONFIG_HPP
#define SWIPT_IO_CONFIG_HPP

#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "swipt/crlh.hpp"
#include "swipt/error.hpp"
#include "swipt/io/file.hpp"
#include "swipt/linksim.hpp"
#include "swipt/rectifier.hpp"
#include "swipt/slab.hpp"

namespace swipt::io
{

using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

//
// Strict view of one JSON object: every key must be consumed, and Finish() rejects any
// key that was never read. Errors carry the JSON path.
//
class Obj
{
public:
  Obj(const Json &j, std::string path) : j_(j), path_(std::move(path))
  {
    if (!j_.is_object())
    {
      throw ConfigError(path_ + ": expected an object");
    }
  }

  const std::string &Path() const { return path_; }

  bool Has(const std::string &key) const { return j_.contains(key); }

  const Json &Raw(const std::string &key)
  {
    if (!j_.contains(key))
    {
      throw ConfigError(path_ + ": missing required key '" + key + "'");
    }
    used_.insert(key);
    return j_.at(key);
  }

  double Number(const std::string &key)
  {
    const Json &v = Raw(key);
    if (!v.is_number())
    {
      throw ConfigError(Sub(key) + ": expected a number");
    }
    const double d = v.get<double>();
    if (!std::isfinite(d))
    {
      throw ConfigError(Sub(key) + ": must be finite");
    }
    return d;
  }

  double Number(const std::string &key, double fallback) { return Has(key) ? Number(key) : fallback; }

  double Positive(const std::string &key)
  {
    const double d = Number(key);
    if (!(d > 0.0))
    {
      throw ConfigError(Sub(key) + ": must be positive");
    }
    return d;
  }

  double Positive(const std::string &key, double fallback) { return Has(key) ? Positive(key) : fallback; }

  long long Integer(const std::string &key)
  {
    const Json &v = Raw(key);
    if (!v.is_number_integer())
    {
      throw ConfigError(Sub(key) + ": expected an integer");
    }
    return v.get<long long>();
  }

  long long Integer(const std::string &key, long long fallback) { return Has(key) ? Integer(key) : fallback; }

  bool Bool(const std::string &key, bool fallback)
  {
    if (!Has(key))
    {
      return fallback;
    }
    const Json &v = Raw(key);
    if (!v.is_boolean())
    {
      throw ConfigError(Sub(key) + ": expected true or false");
    }
    return v.get<bool>();
  }

  std::string String(const std::string &key)
  {
    const Json &v = Raw(key);
    if (!v.is_string())
    {
      throw ConfigError(Sub(key) + ": expected a string");
    }
    return v.get<std::string>();
  }

  std::string String(const std::string &key, const std::string &fallback)
  {
    return Has(key) ? String(key) : fallback;
  }

  std::vector<double> Numbers(const std::string &key)
  {
    const Json &v = Raw(key);
    if (!v.is_array())
    {
      throw ConfigError(Sub(key) + ": expected an array of numbers");
    }
    std::vector<double> out;
    for (const auto &e : v)
    {
      if (!e.is_number() || !std::isfinite(e.get<double>()))
      {
        throw ConfigError(Sub(key) + ": expected an array of finite numbers");
      }
      out.push_back(e.get<double>());
    }
    return out;
  }

  // [re, im] pair.
  Complex ComplexValue(const std::string &key)
  {
    const auto v = Numbers(key);
    if (v.size() != 2)
    {
      throw ConfigError(Sub(key) + ": expected [real, imag]");
    }
    return {v[0], v[1]};
  }

  Obj Object(const std::string &key) { return Obj(Raw(key), Sub(key)); }

  std::vector<Obj> Objects(const std::string &key)
  {
    const Json &v = Raw(key);
    if (!v.is_array())
    {
      throw ConfigError(Sub(key) + ": expected an array of objects");
    }
    std::vector<Obj> out;
    for (std::size_t i = 0; i < v.size(); ++i)
    {
      out.emplace_back(v[i], Sub(key) + "[" + std::to_string(i) + "]");
    }
    return out;
  }

  void Finish() const
  {
    for (auto it = j_.begin(); it != j_.end(); ++it)
    {
      if (!used_.count(it.key()))
      {
        throw ConfigError(path_ + ": unknown key '" + it.key() + "'");
      }
    }
  }

private:
  std::string Sub(const std::string &key) const { return path_ + "." + key; }

  const Json &j_;
  std::string path_;
  std::set<std::string> used_;
};

struct GridSpec
{
  double start_hz = 1e6;
  double stop_hz = 60e6;
  std::size_t points = 1181;
  bool log = false;

  std::vector<double> Grid() const { return MakeGrid(start_hz, stop_hz, points, log); }
};

struct RectifierConfig
{
  rectifier::RectifierCircuit circuit;
  rectifier::SimOptions sim;
  std::vector<double> p_in_dbm;
};

struct DistanceConfig
{
  std::vector<double> distances_mm;
  double p_in_dbm = 24.0;
};

struct PowerSearch
{
  double start = -60.0;
  double stop = 0.0;
  double step = 0.5;

  std::vector<double> Grid() const
  {
    std::vector<double> g;
    const auto n = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
    for (std::size_t i = 0; i < n; ++i)
    {
      g.push_back(start + step * static_cast<double>(i));
    }
    return g;
  }
};

struct BerConfig
{
  linksim::BerTrial trial;  // gain and noise are filled in from the scenario
  linksim::NoiseBudget noise;
  double target_ber = 1e-3;
  PowerSearch search;
  std::vector<double> bit_rates;
};

struct SlabConfig
{
  slab::SlabCase slab_case;
  slab::DenominatorForm form = slab::DenominatorForm::kSquaredReflection;
  std::vector<double> deltas{1e-2, 1e-4, 1e-6};
};

struct CellTuneConfig
{
  double f0_hz = 40e6;
  std::vector<crlh::ParameterBound> free;
  crlh::TuneOptions options;
};

struct ScenarioConfig
{
  std::string name;
  bool has_link = false;
  linksim::Scenario scenario;
  GridSpec sweep;
  std::optional<GridSpec> extract;  // absorber cell retrieval grid
  std::optional<RectifierConfig> rectifier;
  std::optional<DistanceConfig> distance_sweep;
  std::optional<BerConfig> ber;
  std::optional<SlabConfig> slab;
  std::optional<CellTuneConfig> cell_tune;
};

namespace cfg
{

inline Resonator ParseResonator(Obj o)
{
  Resonator r;
  r.label = o.String("label");
  r.inductance = o.Positive("inductance_h");
  if (o.Has("capacitance_f"))
  {
    r.capacitance = o.Positive("capacitance_f");
  }
  r.series_resistance = o.Number("resistance_ohm", 0.0);
  if (r.series_resistance < 0.0)
  {
    throw ConfigError(o.Path() + ".resistance_ohm: must be non-negative");
  }
  o.Finish();
  return r;
}

inline std::size_t Lookup(const std::map<std::string, std::size_t> &labels, const std::string &name,
                          const std::string &path)
{
  const auto it = labels.find(name);
  if (it == labels.end())
  {
    throw ConfigError(path + ": unknown resonator '" + name + "'");
  }
  return it->second;
}

// One of {"k"}, {"m_h"} or {"k0", "d0_mm"}.
inline linksim::CouplingEntry ParseCoupling(Obj o, const std::map<std::string, std::size_t> &labels)
{
  linksim::CouplingEntry c;
  c.a = Lookup(labels, o.String("a"), o.Path() + ".a");
  c.b = Lookup(labels, o.String("b"), o.Path() + ".b");
  if (c.a == c.b)
  {
    throw ConfigError(o.Path() + ": a resonator cannot couple to itself");
  }
  const int forms = o.Has("k") + o.Has("m_h") + (o.Has("k0") || o.Has("d0_mm"));
  if (forms != 1)
  {
    throw ConfigError(o.Path() + ": give exactly one of k, m_h or (k0, d0_mm)");
  }
  if (o.Has("k"))
  {
    c.law = linksim::FixedCoupling{o.Number("k")};
  }
  else if (o.Has("m_h"))
  {
    c.law = linksim::FixedMutual{o.Number("m_h")};
  }
  else
  {
    c.law = DistanceCoupling{o.Number("k0"), o.Positive("d0_mm")};
  }
  o.Finish();
  return c;
}

inline void RejectDuplicatePairs(const std::vector<linksim::CouplingEntry> &entries, const std::string &path)
{
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const auto &e : entries)
  {
    if (!seen.insert({std::min(e.a, e.b), std::max(e.a, e.b)}).second)
    {
      throw ConfigError(path + ": resonator pair listed twice");
    }
  }
}

inline crlh::CRLHCell ParseCell(Obj o)
{
  crlh::CRLHCell c;
  c.c_l = o.Positive("c_l_f");
  c.l_l = o.Positive("l_l_h");
  c.c_r = o.Positive("c_r_f");
  c.l_r = o.Positive("l_r_h");
  o.Finish();
  return c;
}

inline crlh::CellParameter ParseCellParameter(const std::string &s, const std::string &path)
{
  if (s == "c_l") return crlh::CellParameter::kCL;
  if (s == "l_l") return crlh::CellParameter::kLL;
  if (s == "c_r") return crlh::CellParameter::kCR;
  if (s == "l_r") return crlh::CellParameter::kLR;
  throw ConfigError(path + ": unknown cell parameter '" + s + "' (use c_l, l_l, c_r or l_r)");
}

inline void ParseLink(Obj &root, ScenarioConfig &out)
{
  auto &sc = out.scenario;
  sc.z0 = root.Positive("reference_impedance_ohm", kDefaultReferenceImpedance);
  std::map<std::string, std::size_t> labels;
  for (auto &r : root.Objects("resonators"))
  {
    sc.resonators.push_back(ParseResonator(r));
    if (!labels.emplace(sc.resonators.back().label, sc.resonators.size() - 1).second)
    {
      throw ConfigError(r.Path() + ": duplicate resonator label '" + sc.resonators.back().label + "'");
    }
  }
  auto ports = root.Objects("ports");
  if (ports.size() != 4)
  {
    throw ConfigError(root.Path() + ".ports: exactly four ports are required");
  }
  std::set<std::string> roles_seen;
  for (auto &p : ports)
  {
    const std::string role = p.String("role");
    const std::size_t res = Lookup(labels, p.String("resonator"), p.Path() + ".resonator");
    std::size_t slot = 4;
    for (std::size_t i = 0; i < 4; ++i)
    {
      if (role == linksim::kRoleNames[i])
      {
        slot = i;
      }
    }
    if (slot == 4)
    {
      throw ConfigError(p.Path() + ".role: unknown role '" + role + "'");
    }
    if (!roles_seen.insert(role).second)
    {
      throw ConfigError(p.Path() + ".role: role '" + role + "' assigned twice");
    }
    sc.role_resonator[slot] = res;
    p.Finish();
  }

  auto cp = root.Object("couplings");
  const std::string model = cp.String("model");
  if (model != "parametric" && model != "explicit")
  {
    throw ConfigError(cp.Path() + ".model: expected 'parametric' or 'explicit'");
  }
  sc.distance_mm = cp.Number("distance_mm", 0.0);
  for (auto &e : cp.Objects("entries"))
  {
    sc.couplings.push_back(ParseCoupling(e, labels));
    if (model == "explicit" && sc.couplings.back().DependsOnDistance())
    {
      throw ConfigError(e.Path() + ": explicit model takes k or m_h only");
    }
  }
  RejectDuplicatePairs(sc.couplings, cp.Path() + ".entries");
  cp.Finish();

  if (root.Has("absorber"))
  {
    auto ab = root.Object("absorber");
    linksim::Absorber a;
    sc.absorber_enabled = ab.Bool("enabled", true);
    a.spec.cell = ParseCell(ab.Object("cell"));
    if (ab.Has("loss"))
    {
      auto l = ab.Object("loss");
      a.spec.loss.series_resistance = l.Number("series_resistance_ohm", 0.0);
      a.spec.loss.shunt_conductance = l.Number("shunt_conductance_s", 0.0);
      l.Finish();
    }
    a.spec.cell_thickness = ab.Positive("cell_thickness_m", a.spec.cell_thickness);
    a.spec.reference_impedance = ab.Positive("reference_impedance_ohm", a.spec.reference_impedance);
    if (ab.Has("loading_caps_f"))
    {
      a.spec.loading_caps = ab.Numbers("loading_caps_f");
    }
    if (ab.Has("geometry_mm"))
    {
      auto g = ab.Object("geometry_mm");
      for (const auto &key : {"d1", "W1", "W2", "L1", "g"})
      {
        if (g.Has(key))
        {
          a.spec.geometry_mm[key] = g.Number(key);
        }
      }
      g.Finish();
    }
    auto all = labels;
    std::size_t index = sc.resonators.size();
    if (ab.Has("loops"))
    {
      for (auto &r : ab.Objects("loops"))
      {
        a.loops.push_back(ParseResonator(r));
        if (!all.emplace(a.loops.back().label, index++).second)
        {
          throw ConfigError(r.Path() + ": duplicate resonator label '" + a.loops.back().label + "'");
        }
      }
    }
    if (ab.Has("couplings"))
    {
      for (auto &e : ab.Objects("couplings"))
      {
        a.couplings.push_back(ParseCoupling(e, all));
      }
    }
    auto combined = sc.couplings;
    combined.insert(combined.end(), a.couplings.begin(), a.couplings.end());
    RejectDuplicatePairs(combined, ab.Path() + ".couplings");
    ab.Finish();
    try
    {
      a.spec.Validate();
    }
    catch (const InvalidArgument &e)
    {
      throw ConfigError(ab.Path() + ": " + e.what());
    }
    sc.absorber = std::move(a);
  }
}

inline RectifierConfig ParseRectifier(Obj o)
{
  RectifierConfig rc;
  auto &c = rc.circuit;
  c.c1 = o.Positive("c1_f", c.c1);
  c.c2 = o.Positive("c2_f", c.c2);
  c.r_l = o.Positive("load_ohm", c.r_l);
  c.f0 = o.Positive("f0_hz", c.f0);
  if (o.Has("source_impedance_ohm"))
  {
    c.source_impedance = o.ComplexValue("source_impedance_ohm");
  }
  if (o.Has("diode"))
  {
    auto d = o.Object("diode");
    c.diode.i_s = d.Positive("i_s_a", c.diode.i_s);
    c.diode.ideality = d.Positive("ideality", c.diode.ideality);
    c.diode.r_s = d.Number("r_s_ohm", c.diode.r_s);
    c.diode.c_j = d.Number("c_j_f", c.diode.c_j);
    c.diode.v_t = d.Positive("thermal_voltage_v", c.diode.v_t);
    d.Finish();
  }
  rc.sim.steps_per_period = static_cast<int>(o.Integer("steps_per_period", rc.sim.steps_per_period));
  if (rc.sim.steps_per_period < 20)
  {
    throw ConfigError(o.Path() + ".steps_per_period: must be at least 20");
  }
  if (o.Has("p_in_dbm"))
  {
    rc.p_in_dbm = o.Numbers("p_in_dbm");
  }
  o.Finish();
  try
  {
    c.Validate();
  }
  catch (const InvalidArgument &e)
  {
    throw ConfigError(o.Path() + ": " + e.what());
  }
  return rc;
}

inline BerConfig ParseBer(Obj o)
{
  BerConfig b;
  auto &t = b.trial;
  t.carrier = o.Positive("carrier_hz", t.carrier);
  t.bit_rate = o.Positive("bit_rate_bps", t.bit_rate);
  t.samples_per_symbol = static_cast<int>(o.Integer("samples_per_symbol", t.samples_per_symbol));
  const long long n = o.Integer("n_bits", static_cast<long long>(t.n_bits));
  if (n < 1000)
  {
    throw ConfigError(o.Path() + ".n_bits: at least 1000 bits are required");
  }
  t.n_bits = static_cast<std::size_t>(n);
  const long long seed = o.Integer("seed", 1);
  t.seed = static_cast<std::uint64_t>(seed);
  if (o.Has("prbs_seed"))
  {
    const long long ps = o.Integer("prbs_seed");
    if (ps <= 0 || ps > Prbs9::kMask)
    {
      throw ConfigError(o.Path() + ".prbs_seed: must be a non-zero 9-bit value");
    }
    t.prbs_seed = static_cast<std::uint16_t>(ps);
  }
  t.signal_power_dbm = o.Number("signal_power_dbm", t.signal_power_dbm);
  t.confidence = o.Number("confidence", t.confidence);
  b.noise.noise_figure_db = o.Number("noise_figure_db", b.noise.noise_figure_db);
  b.noise.power_tx_dbm = o.Number("power_tx_dbm", b.noise.power_tx_dbm);
  b.noise.power_tx_leakage_dbc_hz = o.Number("power_tx_leakage_dbc_hz", b.noise.power_tx_leakage_dbc_hz);
  b.target_ber = o.Number("target_ber", b.target_ber);
  if (!(b.target_ber > 0.0 && b.target_ber < 1.0))
  {
    throw ConfigError(o.Path() + ".target_ber: must lie in (0, 1)");
  }
  if (o.Has("power_search_dbm"))
  {
    auto s = o.Object("power_search_dbm");
    b.search.start = s.Number("start");
    b.search.stop = s.Number("stop");
    b.search.step = s.Positive("step");
    s.Finish();
    if (!(b.search.stop > b.search.start))
    {
      throw ConfigError(s.Path() + ": stop must exceed start");
    }
  }
  if (o.Has("bit_rates_bps"))
  {
    b.bit_rates = o.Numbers("bit_rates_bps");
    for (double r : b.bit_rates)
    {
      if (!(r > 0.0))
      {
        throw ConfigError(o.Path() + ".bit_rates_bps: rates must be positive");
      }
    }
  }
  o.Finish();
  try
  {
    t.Validate();
  }
  catch (const InvalidArgument &e)
  {
    throw ConfigError(o.Path() + ": " + e.what());
  }
  return b;
}

inline SlabConfig ParseSlab(Obj o)
{
  SlabConfig s;
  s.slab_case.mu = o.ComplexValue("mu");
  s.slab_case.kx = o.Has("kx") ? Complex(o.Number("kx"), 0.0) : Complex(100.0, 0.0);
  s.slab_case.kpx = o.Has("kpx") ? Complex(o.Number("kpx"), 0.0) : s.slab_case.kx;
  s.slab_case.d = o.Positive("d_m", 0.01);
  const std::string form = o.String("denominator", "squared");
  if (form == "squared")
  {
    s.form = slab::DenominatorForm::kSquaredReflection;
  }
  else if (form == "linear")
  {
    s.form = slab::DenominatorForm::kLinearReflection;
  }
  else
  {
    throw ConfigError(o.Path() + ".denominator: expected 'squared' or 'linear'");
  }
  if (o.Has("deltas"))
  {
    s.deltas = o.Numbers("deltas");
  }
  o.Finish();
  return s;
}

inline CellTuneConfig ParseCellTune(Obj o)
{
  CellTuneConfig c;
  c.f0_hz = o.Positive("f0_hz", c.f0_hz);
  for (auto &p : o.Objects("free"))
  {
    crlh::ParameterBound b{ParseCellParameter(p.String("parameter"), p.Path() + ".parameter"),
                           p.Positive("min"), p.Positive("max")};
    if (b.max < b.min)
    {
      throw ConfigError(p.Path() + ": max must not be below min");
    }
    c.free.push_back(b);
    p.Finish();
  }
  if (c.free.empty())
  {
    throw ConfigError(o.Path() + ".free: at least one free parameter is required");
  }
  c.options.tolerance = o.Positive("tolerance", c.options.tolerance);
  c.options.max_iters = static_cast<int>(o.Integer("max_iters", c.options.max_iters));
  if (o.Has("target_mu"))
  {
    c.options.target = o.ComplexValue("target_mu");
  }
  o.Finish();
  return c;
}

inline GridSpec ParseGrid(Obj s)
{
  GridSpec g;
  g.start_hz = s.Positive("start_hz");
  g.stop_hz = s.Positive("stop_hz");
  const long long pts = s.Integer("points");
  if (pts < 1)
  {
    throw ConfigError(s.Path() + ".points: must be at least 1");
  }
  g.points = static_cast<std::size_t>(pts);
  g.log = s.Bool("log", false);
  s.Finish();
  if (g.points > 1 && !(g.stop_hz > g.start_hz))
  {
    throw ConfigError(s.Path() + ": stop_hz must exceed start_hz");
  }
  return g;
}

}  // namespace cfg

inline ScenarioConfig ParseConfig(const Json &j)
{
  Obj root(j, "$");
  if (!root.Has("schema"))
  {
    throw ConfigError("$: missing required key 'schema'");
  }
  if (root.Integer("schema") != kSchemaVersion)
  {
    throw ConfigError("$.schema: unsupported version (expected 1)");
  }
  ScenarioConfig out;
  out.name = root.String("name", "");
  out.has_link = root.Has("resonators") || root.Has("ports") || root.Has("couplings");
  if (out.has_link)
  {
    cfg::ParseLink(root, out);
    try
    {
      out.scenario.Realize();
    }
    catch (const InvalidArgument &e)
    {
      throw ConfigError(std::string("$: invalid network: ") + e.what());
    }
  }
  if (root.Has("sweep"))
  {
    out.sweep = cfg::ParseGrid(root.Object("sweep"));
  }
  if (root.Has("extract"))
  {
    out.extract = cfg::ParseGrid(root.Object("extract"));
  }
  if (root.Has("rectifier"))
  {
    out.rectifier = cfg::ParseRectifier(root.Object("rectifier"));
  }
  if (root.Has("distance_sweep"))
  {
    auto d = root.Object("distance_sweep");
    DistanceConfig dc;
    dc.distances_mm = d.Numbers("distances_mm");
    dc.p_in_dbm = d.Number("p_in_dbm", dc.p_in_dbm);
    d.Finish();
    out.distance_sweep = dc;
  }
  if (root.Has("ber"))
  {
    out.ber = cfg::ParseBer(root.Object("ber"));
  }
  if (root.Has("slab"))
  {
    out.slab = cfg::ParseSlab(root.Object("slab"));
  }
  if (root.Has("cell_tune"))
  {
    out.cell_tune = cfg::ParseCellTune(root.Object("cell_tune"));
  }
  root.Finish();
  return out;
}

inline ScenarioConfig ParseConfigText(const std::string &text)
{
  Json j;
  try
  {
    j = Json::parse(text);
  }
  catch (const Json::parse_error &e)
  {
    throw ConfigError(std::string("malformed JSON: ") + e.what());
  }
  return ParseConfig(j);
}

inline ScenarioConfig LoadConfig(const std::filesystem::path &path)
{
  std::string text;
  try
  {
    text = ReadFile(path);
  }
  catch (const IoError &e)
  {
    throw ConfigError(e.what());
  }
  return ParseConfigText(text);
}

}  // namespace swipt::io

#endif  // SWIPT_IO_CONFIG_HPP
