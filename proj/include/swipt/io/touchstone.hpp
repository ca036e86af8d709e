// Copyright 2026 The swipt-sim Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef SWIPT_IO_TOUCHSTONE_HPP
#define SWIPT_IO_TOUCHSTONE_HPP

#include <cctype>
#include <charconv>
#include <numbers>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "swipt/error.hpp"
#include "swipt/io/file.hpp"
#include "swipt/netcore.hpp"

namespace swipt::io
{

namespace text
{

// std::to_chars is locale independent.
inline std::string Fixed(double v, int precision)
{
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v == 0.0 ? 0.0 : v,
                                 std::chars_format::fixed, precision);
  if (ec != std::errc())
  {
    throw IoError("number formatting failed");
  }
  return std::string(buf, end);
}

inline std::string Scientific(double v, int precision)
{
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v == 0.0 ? 0.0 : v,
                                 std::chars_format::scientific, precision);
  if (ec != std::errc())
  {
    throw IoError("number formatting failed");
  }
  return std::string(buf, end);
}

// Fixed notation with 9 decimals when that keeps 9 significant digits, scientific otherwise.
inline std::string Value(double v)
{
  if (v == 0.0 || (std::abs(v) >= 0.1 && std::abs(v) < 1e6))
  {
    return Fixed(v, 9);
  }
  return Scientific(v, 9);
}

inline std::string Frequency(double f)
{
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), f, std::chars_format::general, 17);
  if (ec != std::errc())
  {
    throw IoError("number formatting failed");
  }
  return std::string(buf, end);
}

inline double ParseDouble(std::string_view tok, const std::string &ctx)
{
  double v = 0.0;
  const char *first = tok.data();
  if (!tok.empty() && tok.front() == '+')
  {
    ++first;
  }
  auto [ptr, ec] = std::from_chars(first, tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
  {
    throw IoError("malformed number '" + std::string(tok) + "' in " + ctx);
  }
  return v;
}

}  // namespace text

//
// Touchstone v1, RI format, frequencies in Hz. N-port data is written S row-major; for
// N >= 3 each matrix row goes on its own line (4 entries per line at most, so a 4-port
// record is 4 lines). Two-port files use the v1 order S11 S21 S12 S22.
//
inline std::string FormatTouchstone(const FrequencyResponse &resp,
                                    const std::vector<std::string> &comments = {})
{
  resp.Validate();
  if (resp.form != ParameterForm::kS)
  {
    throw InvalidArgument("Touchstone output requires an S-form response");
  }
  const auto n = static_cast<Eigen::Index>(resp.Ports());
  std::ostringstream out;
  for (const auto &c : comments)
  {
    out << "! " << c << '\n';
  }
  out << "# HZ S RI R " << text::Frequency(resp.z0) << '\n';
  for (std::size_t k = 0; k < resp.grid.size(); ++k)
  {
    const auto &s = resp.matrices[k];
    auto pair = [&](Eigen::Index i, Eigen::Index j)
    { return ' ' + text::Value(s(i, j).real()) + ' ' + text::Value(s(i, j).imag()); };
    const std::string f = text::Frequency(resp.grid[k]);
    if (n == 1)
    {
      out << f << pair(0, 0) << '\n';
    }
    else if (n == 2)
    {
      out << f << pair(0, 0) << pair(1, 0) << pair(0, 1) << pair(1, 1) << '\n';
    }
    else
    {
      for (Eigen::Index i = 0; i < n; ++i)
      {
        out << (i == 0 ? f : std::string());
        for (Eigen::Index j = 0; j < n; ++j)
        {
          if (j > 0 && j % 4 == 0)
          {
            out << '\n';
          }
          out << pair(i, j);
        }
        out << '\n';
      }
    }
  }
  return out.str();
}

inline void WriteTouchstone(const FrequencyResponse &resp, const std::filesystem::path &path,
                            const std::vector<std::string> &comments = {})
{
  WriteFileAtomic(path, FormatTouchstone(resp, comments));
}

// Reads a v1 RI/MA/DB file in S form with the port count given by the caller.
inline FrequencyResponse ParseTouchstone(std::string_view content, std::size_t ports)
{
  ::swipt::detail::Require(ports >= 1, "port count must be positive");
  double freq_scale = 1e9;
  enum class Fmt
  {
    kRi,
    kMa,
    kDb
  } fmt = Fmt::kMa;
  double z0 = 50.0;
  bool option_seen = false;
  std::vector<double> values;
  std::istringstream in{std::string(content)};
  std::string line;
  while (std::getline(in, line))
  {
    const auto bang = line.find('!');
    if (bang != std::string::npos)
    {
      line.erase(bang);
    }
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok))
    {
      continue;
    }
    if (tok[0] == '#')
    {
      if (option_seen)
      {
        continue;  // later option lines are ignored, as in v1
      }
      option_seen = true;
      std::vector<std::string> opts;
      if (tok.size() > 1)
      {
        opts.push_back(tok.substr(1));
      }
      while (ls >> tok)
      {
        opts.push_back(tok);
      }
      for (std::size_t i = 0; i < opts.size(); ++i)
      {
        std::string u;
        for (char c : opts[i])
        {
          u += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
        }
        if (u == "HZ") freq_scale = 1.0;
        else if (u == "KHZ") freq_scale = 1e3;
        else if (u == "MHZ") freq_scale = 1e6;
        else if (u == "GHZ") freq_scale = 1e9;
        else if (u == "RI") fmt = Fmt::kRi;
        else if (u == "MA") fmt = Fmt::kMa;
        else if (u == "DB") fmt = Fmt::kDb;
        else if (u == "S") {}
        else if (u == "R" && i + 1 < opts.size())
        {
          z0 = text::ParseDouble(opts[++i], "option line");
        }
        else
        {
          throw IoError("unsupported Touchstone option '" + opts[i] + "'");
        }
      }
      continue;
    }
    do
    {
      values.push_back(text::ParseDouble(tok, "data line"));
    } while (ls >> tok);
  }
  const std::size_t per_point = 1 + 2 * ports * ports;
  if (values.size() % per_point != 0)
  {
    throw IoError("Touchstone data does not match the port count");
  }
  FrequencyResponse resp;
  resp.form = ParameterForm::kS;
  resp.z0 = z0;
  for (std::size_t p = 0; p < values.size(); p += per_point)
  {
    resp.grid.push_back(values[p] * freq_scale);
    ComplexMatrix s(ports, ports);
    for (std::size_t e = 0; e < ports * ports; ++e)
    {
      const double a = values[p + 1 + 2 * e];
      const double b = values[p + 2 + 2 * e];
      Complex v;
      switch (fmt)
      {
        case Fmt::kRi:
          v = Complex(a, b);
          break;
        case Fmt::kMa:
          v = std::polar(a, b * std::numbers::pi / 180.0);
          break;
        case Fmt::kDb:
          v = std::polar(std::pow(10.0, a / 20.0), b * std::numbers::pi / 180.0);
          break;
      }
      std::size_t i = e / ports;
      std::size_t j = e % ports;
      if (ports == 2)
      {
        std::swap(i, j);  // S11 S21 S12 S22
      }
      s(i, j) = v;
    }
    resp.matrices.push_back(std::move(s));
  }
  resp.Validate();
  return resp;
}

inline FrequencyResponse ReadTouchstone(const std::filesystem::path &path, std::size_t ports)
{
  return ParseTouchstone(ReadFile(path), ports);
}

}  // namespace swipt::io

#endif  // SWIPT_IO_TOUCHSTONE_HPP
