// Copyright 2026 The swipt-sim Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef SWIPT_MSK_HPP
#define SWIPT_MSK_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <span>
#include <vector>

#include "swipt/error.hpp"
#include "swipt/parallel.hpp"

namespace swipt::msk
{

using Complex = std::complex<double>;

inline void RequireSps(int samples_per_symbol)
{
  detail::Require(samples_per_symbol >= 4, "samples per symbol must be at least 4");
}

//
// Continuous-phase FSK with h = 1/2: bit 1 advances the phase by +pi/2 over its interval,
// bit 0 by -pi/2, linearly. The phase starts at 0. Returns bits.size() * sps samples.
// The sample rate is bit_rate * sps, so the bit rate only fixes the time axis.
//
inline std::vector<Complex> Modulate(std::span<const std::uint8_t> bits, int samples_per_symbol)
{
  RequireSps(samples_per_symbol);
  const int sps = samples_per_symbol;
  std::vector<Complex> out;
  out.reserve(bits.size() * sps);
  // The accumulated phase is an integer multiple of pi/2; tracking the quarter count keeps it exact.
  long quarter = 0;
  for (auto b : bits)
  {
    const double dir = b ? 1.0 : -1.0;
    const double base = (quarter & 3) * (std::numbers::pi / 2.0);
    for (int m = 0; m < sps; ++m)
    {
      out.push_back(std::polar(1.0, base + dir * (std::numbers::pi / 2.0) * m / sps));
    }
    quarter += b ? 1 : -1;
  }
  return out;
}

// Returns c_k = x(kT) / j^k for k = 0..n, i.e. the +-1 value the complex envelope takes at
// each bit boundary (real at even k, imaginary at odd k).
inline std::vector<int> BoundarySymbols(std::span<const std::uint8_t> bits)
{
  std::vector<int> c(bits.size() + 1);
  c[0] = 1;
  for (std::size_t k = 0; k < bits.size(); ++k)
  {
    const int a = bits[k] ? 1 : -1;
    c[k + 1] = (k % 2 == 0 ? 1 : -1) * c[k] * a;
  }
  return c;
}

//
// Soft statistics for c_k, k = 0..n, from half-sine matched filters over [(k-1)T, (k+1)T)
// on the in-phase (even k) or quadrature (odd k) rail. Windows are truncated at the ends.
//
inline std::vector<double> BoundaryStatistics(std::span<const Complex> samples, int samples_per_symbol)
{
  RequireSps(samples_per_symbol);
  const long sps = samples_per_symbol;
  detail::Require(samples.size() % sps == 0, "sample count must be a multiple of samples per symbol");
  const long total = static_cast<long>(samples.size());
  const long nbits = total / sps;
  std::vector<double> pulse(2 * sps);
  for (long m = -sps; m < sps; ++m)
  {
    pulse[m + sps] = std::cos(std::numbers::pi * m / (2.0 * sps));
  }
  std::vector<double> stat(nbits + 1);
  for (long k = 0; k <= nbits; ++k)
  {
    double acc = 0.0;
    const long lo = std::max(0L, (k - 1) * sps);
    const long hi = std::min(total, (k + 1) * sps);
    for (long n = lo; n < hi; ++n)
    {
      const double rail = (k % 2 == 0) ? samples[n].real() : samples[n].imag();
      acc += rail * pulse[n - k * sps + sps];
    }
    stat[k] = acc;
  }
  return stat;
}

//
// Coherent MSK receiver: hard decisions on c_k, then a_k = (-1)^k c_k c_{k+1}. c_0 is the
// known initial phase. Recovers the modulated bits exactly in the absence of noise.
//
inline std::vector<std::uint8_t> Demodulate(std::span<const Complex> samples, int samples_per_symbol)
{
  const auto stat = BoundaryStatistics(samples, samples_per_symbol);
  const std::size_t nbits = stat.size() - 1;
  std::vector<int> c(stat.size());
  c[0] = 1;
  for (std::size_t k = 1; k < c.size(); ++k)
  {
    c[k] = stat[k] >= 0.0 ? 1 : -1;
  }
  std::vector<std::uint8_t> bits(nbits);
  for (std::size_t k = 0; k < nbits; ++k)
  {
    const int a = (k % 2 == 0 ? 1 : -1) * c[k] * c[k + 1];
    bits[k] = a > 0 ? 1 : 0;
  }
  return bits;
}

//
// Differential precoding: chooses the modulated bits so that c_{k+1} = 2 d_k - 1. One pad
// bit is appended so the last data symbol gets a full matched-filter window. A receiver
// then decides every data bit from one boundary statistic, giving Q(sqrt(2 Eb/N0)).
//
inline std::vector<std::uint8_t> Precode(std::span<const std::uint8_t> data)
{
  std::vector<std::uint8_t> out(data.size() + 1);
  int c = 1;
  for (std::size_t k = 0; k <= data.size(); ++k)
  {
    const int next = k < data.size() ? (data[k] ? 1 : -1) : 1;
    const int a = (k % 2 == 0 ? 1 : -1) * c * next;
    out[k] = a > 0 ? 1 : 0;
    c = next;
  }
  return out;
}

// Data decisions for a precoded stream (the inverse of Precode followed by Modulate).
inline std::vector<std::uint8_t> DecodePrecoded(std::span<const Complex> samples, int samples_per_symbol)
{
  const auto stat = BoundaryStatistics(samples, samples_per_symbol);
  detail::Require(stat.size() >= 2, "precoded stream needs at least the pad bit");
  std::vector<std::uint8_t> data(stat.size() - 2);
  for (std::size_t k = 0; k < data.size(); ++k)
  {
    data[k] = stat[k + 1] >= 0.0 ? 1 : 0;
  }
  return data;
}

inline constexpr std::size_t kNoiseBlock = 4096;

// Standard normal pairs for samples [block*kNoiseBlock, ...), keyed by (seed, block) so the
// stream does not depend on how blocks are spread over threads.
inline void FillNoiseBlock(std::uint64_t seed, std::size_t block, std::span<Complex> out)
{
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(block), static_cast<std::uint32_t>(block >> 32)};
  std::mt19937_64 gen(seq);
  std::normal_distribution<double> norm(0.0, 1.0);
  for (auto &z : out)
  {
    const double re = norm(gen);
    const double im = norm(gen);
    z = Complex(re, im);
  }
}

struct ChannelParams
{
  Complex gain{1.0, 0.0};
  double noise_density = 0.0;  // W/Hz, one-sided
  double bit_rate = 1e6;       // bit/s
  int samples_per_symbol = 8;
  std::uint64_t seed = 1;
  unsigned workers = 1;
};

// Per-quadrature noise variance N0 * fs / 2 for sample rate fs = bit_rate * sps.
inline double NoiseVariancePerQuadrature(double noise_density, double bit_rate, int samples_per_symbol)
{
  return noise_density * bit_rate * samples_per_symbol / 2.0;
}

//
// y = gain * x + circular complex Gaussian noise. Deterministic for a fixed seed and
// independent of the worker count.
//
inline std::vector<Complex> AwgnChannel(std::span<const Complex> samples, const ChannelParams &p)
{
  RequireSps(p.samples_per_symbol);
  detail::Require(std::isfinite(p.noise_density) && p.noise_density >= 0.0,
                  "noise density must be non-negative");
  detail::Require(p.bit_rate > 0.0, "bit rate must be positive");
  std::vector<Complex> out(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i)
  {
    out[i] = p.gain * samples[i];
  }
  if (p.noise_density == 0.0)
  {
    return out;
  }
  const double sigma =
      std::sqrt(NoiseVariancePerQuadrature(p.noise_density, p.bit_rate, p.samples_per_symbol));
  const std::size_t blocks = (samples.size() + kNoiseBlock - 1) / kNoiseBlock;
  detail::ParallelFor(blocks, p.workers,
                      [&](std::size_t b)
                      {
                        const std::size_t lo = b * kNoiseBlock;
                        const std::size_t len = std::min(kNoiseBlock, samples.size() - lo);
                        std::vector<Complex> w(len);
                        FillNoiseBlock(p.seed, b, w);
                        for (std::size_t i = 0; i < len; ++i)
                        {
                          out[lo + i] += sigma * w[i];
                        }
                      });
  return out;
}

}  // namespace swipt::msk

#endif  // SWIPT_MSK_HPP
