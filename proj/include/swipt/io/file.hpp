// Copyright 2026 The swipt-sim Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef SWIPT_IO_FILE_HPP
#define SWIPT_IO_FILE_HPP

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <system_error>

#include "swipt/error.hpp"

namespace swipt::io
{

class IoError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

// Writes `content` to a sibling temporary file and renames it over `path`, so readers never
// observe a partial file and a failed write leaves nothing behind.
inline void WriteFileAtomic(const std::filesystem::path &path, const std::string &content)
{
  namespace fs = std::filesystem;
  if (path.has_parent_path() && !fs::exists(path.parent_path()))
  {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
    if (ec)
    {
      throw IoError("cannot create directory " + path.parent_path().string() + ": " + ec.message());
    }
  }
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out)
    {
      throw IoError("cannot open " + tmp.string() + " for writing");
    }
    out << content;
    out.flush();
    if (!out)
    {
      out.close();
      fs::remove(tmp);
      throw IoError("write failed for " + tmp.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec)
  {
    fs::remove(tmp);
    throw IoError("cannot rename " + tmp.string() + " to " + path.string() + ": " + ec.message());
  }
}

inline std::string ReadFile(const std::filesystem::path &path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in)
  {
    throw IoError("cannot open " + path.string());
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace swipt::io

#endif  // SWIPT_IO_FILE_HPP
