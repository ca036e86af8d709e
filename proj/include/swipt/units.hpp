// Copyright 2026 The swipt-sim Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef SWIPT_UNITS_HPP
#define SWIPT_UNITS_HPP

#include <cmath>

namespace swipt
{

inline double DbmToWatts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

inline double WattsToDbm(double w) { return 10.0 * std::log10(w) + 30.0; }

inline double DbToLinear(double db) { return std::pow(10.0, db / 10.0); }

inline double LinearToDb(double x) { return 10.0 * std::log10(x); }

}  // namespace swipt

#endif  // SWIPT_UNITS_HPP
