// Copyright 2026 The swipt-sim Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef SWIPT_PARALLEL_HPP
#define SWIPT_PARALLEL_HPP

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace swipt::detail
{

// Runs fn(i) for i in [0, n) on up to `workers` threads. Each index is handled by
// exactly one call, so results written to slot i are independent of the worker count.
// The exception from the lowest failing index is rethrown.
template <typename Fn>
void ParallelFor(std::size_t n, unsigned workers, Fn &&fn)
{
  if (workers <= 1 || n <= 1)
  {
    for (std::size_t i = 0; i < n; ++i)
    {
      fn(i);
    }
    return;
  }
  const std::size_t nthreads = std::min<std::size_t>(workers, n);
  std::vector<std::exception_ptr> errors(n);
  std::vector<std::thread> pool;
  pool.reserve(nthreads);
  for (std::size_t t = 0; t < nthreads; ++t)
  {
    pool.emplace_back(
        [&, t]
        {
          for (std::size_t i = t; i < n; i += nthreads)
          {
            try
            {
              fn(i);
            }
            catch (...)
            {
              errors[i] = std::current_exception();
            }
          }
        });
  }
  for (auto &th : pool)
  {
    th.join();
  }
  for (auto &e : errors)
  {
    if (e)
    {
      std::rethrow_exception(e);
    }
  }
}

}  // namespace swipt::detail

#endif  // SWIPT_PARALLEL_HPP
