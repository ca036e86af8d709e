// Copyright 2026 The swipt-sim Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef SWIPT_IO_CSV_HPP
#define SWIPT_IO_CSV_HPP

#include <charconv>
#include <cmath>
#include <string>
#include <string_view>
#include <vector>

#include "swipt/error.hpp"
#include "swipt/io/file.hpp"

namespace swipt::io
{

// Header plus string records; numeric cells are formatted with Num().
struct Table
{
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void Add(std::vector<std::string> row)
  {
    ::swipt::detail::Require(row.size() == header.size(), "row width must match the header");
    rows.push_back(std::move(row));
  }

  std::size_t Column(std::string_view name) const
  {
    for (std::size_t i = 0; i < header.size(); ++i)
    {
      if (header[i] == name)
      {
        return i;
      }
    }
    throw InvalidArgument("no column named '" + std::string(name) + "'");
  }
};

// Shortest representation that reads back to the same double, independent of the locale.
inline std::string Num(double v)
{
  if (std::isnan(v))
  {
    return "nan";
  }
  if (std::isinf(v))
  {
    return v > 0 ? "inf" : "-inf";
  }
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc())
  {
    throw IoError("number formatting failed");
  }
  return std::string(buf, end);
}

inline double ParseNum(std::string_view s)
{
  if (s == "nan")
  {
    return std::nan("");
  }
  if (s == "inf" || s == "-inf")
  {
    return s[0] == '-' ? -INFINITY : INFINITY;
  }
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
  {
    throw IoError("malformed number '" + std::string(s) + "'");
  }
  return v;
}

namespace csvtext
{

inline std::string Quote(const std::string &cell)
{
  if (cell.find_first_of(",\"\r\n") == std::string::npos)
  {
    return cell;
  }
  std::string out = "\"";
  for (char c : cell)
  {
    if (c == '"')
    {
      out += '"';
    }
    out += c;
  }
  return out + '"';
}

}  // namespace csvtext

inline std::string FormatCsv(const Table &t)
{
  std::string out;
  auto line = [&](const std::vector<std::string> &cells)
  {
    for (std::size_t i = 0; i < cells.size(); ++i)
    {
      out += (i ? "," : "") + csvtext::Quote(cells[i]);
    }
    out += '\n';
  };
  line(t.header);
  for (const auto &r : t.rows)
  {
    line(r);
  }
  return out;
}

inline void WriteCsv(const Table &t, const std::filesystem::path &path)
{
  WriteFileAtomic(path, FormatCsv(t));
}

// RFC 4180 reader: quoted fields, doubled quotes, LF or CRLF line ends.
inline Table ParseCsv(std::string_view text)
{
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> rec;
  std::string cell;
  bool quoted = false;
  bool any = false;
  for (std::size_t i = 0; i < text.size(); ++i)
  {
    const char c = text[i];
    if (quoted)
    {
      if (c == '"')
      {
        if (i + 1 < text.size() && text[i + 1] == '"')
        {
          cell += '"';
          ++i;
        }
        else
        {
          quoted = false;
        }
      }
      else
      {
        cell += c;
      }
      continue;
    }
    if (c == '"')
    {
      quoted = true;
      any = true;
    }
    else if (c == ',')
    {
      rec.push_back(std::move(cell));
      cell.clear();
      any = true;
    }
    else if (c == '\n' || c == '\r')
    {
      if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n')
      {
        ++i;
      }
      rec.push_back(std::move(cell));
      cell.clear();
      records.push_back(std::move(rec));
      rec.clear();
      any = false;
    }
    else
    {
      cell += c;
      any = true;
    }
  }
  if (quoted)
  {
    throw IoError("unterminated quoted CSV field");
  }
  if (any || !cell.empty())
  {
    rec.push_back(std::move(cell));
    records.push_back(std::move(rec));
  }
  Table t;
  if (records.empty())
  {
    return t;
  }
  t.header = std::move(records.front());
  for (std::size_t r = 1; r < records.size(); ++r)
  {
    if (records[r].size() != t.header.size())
    {
      throw IoError("CSV record " + std::to_string(r) + " has the wrong number of fields");
    }
    t.rows.push_back(std::move(records[r]));
  }
  return t;
}

inline Table ReadCsv(const std::filesystem::path &path) { return ParseCsv(ReadFile(path)); }

}  // namespace swipt::io

#endif  // SWIPT_IO_CSV_HPP
