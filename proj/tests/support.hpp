// Copyright 2026 The swipt-sim Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef SWIPT_TESTS_SUPPORT_HPP
#define SWIPT_TESTS_SUPPORT_HPP

#include <random>
#include <string>
#include <vector>

#include "swipt/netcore.hpp"

namespace swipt::testing
{

inline std::string SourcePath(const std::string &rel) { return std::string(SWIPT_SOURCE_DIR) + "/" + rel; }

struct RandomNetworkOptions
{
  std::size_t loops = 4;
  std::size_t ports = 2;
  bool lossless = false;
  bool allow_pure_inductor = true;
};

// Random coupled network with |k| < 0.9 and ports on the first `ports` loops. Each row of
// the coupling matrix is scaled so the inductance matrix stays positive definite.
inline CoupledResonatorNetwork RandomNetwork(std::mt19937_64 &rng, const RandomNetworkOptions &opt)
{
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Resonator> res(opt.loops);
  for (std::size_t i = 0; i < opt.loops; ++i)
  {
    res[i].inductance = 1e-7 * std::pow(10.0, 2.0 * u(rng));
    if (!opt.allow_pure_inductor || u(rng) < 0.8)
    {
      const double f0 = 5e6 + 50e6 * u(rng);
      res[i].capacitance = 1.0 / (std::pow(2.0 * std::numbers::pi * f0, 2) * res[i].inductance);
    }
    res[i].series_resistance = opt.lossless ? 0.0 : 0.1 + 20.0 * u(rng);
    res[i].label = "r" + std::to_string(i);
  }
  const auto n = static_cast<Eigen::Index>(opt.loops);
  RealMatrix m = RealMatrix::Zero(n, n);
  const double kmax = 0.9 / static_cast<double>(std::max<std::size_t>(1, opt.loops - 1));
  for (Eigen::Index i = 0; i < n; ++i)
  {
    for (Eigen::Index j = i + 1; j < n; ++j)
    {
      const double k = kmax * (2.0 * u(rng) - 1.0);
      m(i, j) = m(j, i) = k * std::sqrt(res[i].inductance * res[j].inductance);
    }
  }
  std::vector<Port> ports;
  for (std::size_t p = 0; p < opt.ports; ++p)
  {
    ports.push_back({p, 50.0});
  }
  return CoupledResonatorNetwork(std::move(res), std::move(m), std::move(ports));
}

inline double RelErr(const ComplexMatrix &a, const ComplexMatrix &b)
{
  return (a - b).norm() / std::max(1e-300, b.norm());
}

}  // namespace swipt::testing

#endif  // SWIPT_TESTS_SUPPORT_HPP
