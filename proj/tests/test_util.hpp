// Copyright 2026 The seqpack Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SEQPACK_TESTS_TEST_UTIL_HPP
#define SEQPACK_TESTS_TEST_UTIL_HPP

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "seqpack/histogram.hpp"
#include "seqpack/solution.hpp"

namespace seqpack::test {

inline SequenceLengthHistogram hist_from_counts(
    int max_len, const std::map<int, std::uint64_t>& counts) {
  std::vector<std::uint64_t> v(static_cast<std::size_t>(max_len), 0);
  for (const auto& [length, count] : counts) {
    v[static_cast<std::size_t>(length - 1)] = count;
  }
  return SequenceLengthHistogram(max_len, std::move(v));
}

// Mixture as a strategy -> repeat map for order-insensitive comparisons.
inline std::map<Strategy, std::uint64_t> mixture_map(
    const PackingSolution& solution) {
  std::map<Strategy, std::uint64_t> m;
  for (const auto& entry : solution.mixture) {
    m[entry.strategy] += entry.repeat;
  }
  return m;
}

// Skewed random histogram in the shape the packers are built for: a spike at
// max_len plus a log-normal bulk.
inline SequenceLengthHistogram random_skewed_histogram(int max_len,
                                                       std::uint64_t sequences,
                                                       std::mt19937_64& rng) {
  const double peak = 0.15 + 0.15 * ((rng() >> 11) * 0x1.0p-53);
  const double median = (0.25 + 0.15 * ((rng() >> 11) * 0x1.0p-53)) * max_len;
  const double sigma = 0.5 + 0.2 * ((rng() >> 11) * 0x1.0p-53);

  std::vector<double> cdf(static_cast<std::size_t>(max_len - 1));
  double acc = 0.0;
  for (int len = 1; len < max_len; ++len) {
    const double z = (std::log(double(len)) - std::log(median)) / sigma;
    acc += std::exp(-0.5 * z * z) / double(len);
    cdf[len - 1] = acc;
  }
  for (double& v : cdf) v /= acc;

  std::vector<std::uint64_t> counts(static_cast<std::size_t>(max_len), 0);
  const auto at_peak = static_cast<std::uint64_t>(peak * double(sequences));
  counts[max_len - 1] = at_peak;
  for (std::uint64_t i = at_peak; i < sequences; ++i) {
    const double u = ((rng() >> 11) + 0.5) * 0x1.0p-53;
    const auto it = std::lower_bound(cdf.begin(), cdf.end(), u);
    counts[static_cast<std::size_t>(it - cdf.begin())] += 1;
  }
  return SequenceLengthHistogram(max_len, std::move(counts));
}

// Uniformly random small histogram (for oracle comparisons).
inline SequenceLengthHistogram random_small_histogram(int max_len,
                                                      int max_sequences,
                                                      std::mt19937_64& rng) {
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(max_len), 0);
  const auto n = rng() % static_cast<std::uint64_t>(max_sequences + 1);
  for (std::uint64_t i = 0; i < n; ++i) {
    counts[rng() % static_cast<std::uint64_t>(max_len)] += 1;
  }
  return SequenceLengthHistogram(max_len, std::move(counts));
}

}  // namespace seqpack::test

#endif  // SEQPACK_TESTS_TEST_UTIL_HPP
