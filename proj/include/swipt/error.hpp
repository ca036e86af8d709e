// Copyright 2026 The swipt-sim Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef SWIPT_ERROR_HPP
#define SWIPT_ERROR_HPP

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace swipt
{

// Invalid input values or violated preconditions.
class InvalidArgument : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

// Numerical failure during a computation (singular systems, poles, non-convergence).
class ComputationError : public std::runtime_error
{
public:
  explicit ComputationError(const std::string &what,
                            std::optional<std::size_t> index = std::nullopt,
                            std::optional<double> frequency = std::nullopt)
    : std::runtime_error(Decorate(what, index, frequency)), index_(index), frequency_(frequency)
  {
  }

  // Grid index of the failing point, when the failure happened inside a sweep.
  std::optional<std::size_t> Index() const { return index_; }
  std::optional<double> Frequency() const { return frequency_; }

private:
  static std::string Decorate(const std::string &what, std::optional<std::size_t> index,
                              std::optional<double> frequency)
  {
    std::string s = what;
    if (index)
    {
      s += " [index " + std::to_string(*index) + "]";
    }
    if (frequency)
    {
      s += " [f = " + std::to_string(*frequency) + " Hz]";
    }
    return s;
  }

  std::optional<std::size_t> index_;
  std::optional<double> frequency_;
};

// Matrix too close to singular for a trustworthy solve.
class SingularMatrixError : public ComputationError
{
public:
  using ComputationError::ComputationError;
};

// Evaluation at (or numerically on top of) a pole of a closed-form expression.
class PoleError : public ComputationError
{
public:
  using ComputationError::ComputationError;
};

// Scenario configuration rejected before any computation.
class ConfigError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

namespace detail
{

inline void Require(bool condition, const std::string &message)
{
  if (!condition)
  {
    throw InvalidArgument(message);
  }
}

}  // namespace detail

}  // namespace swipt

#endif  // SWIPT_ERROR_HPP
