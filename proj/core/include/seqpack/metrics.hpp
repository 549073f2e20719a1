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

#ifndef SEQPACK_METRICS_HPP
#define SEQPACK_METRICS_HPP

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "seqpack/histogram.hpp"
#include "seqpack/solution.hpp"

namespace seqpack {

struct PackingStats {
  std::uint64_t num_packs = 0;
  std::uint64_t total_tokens = 0;    // num_packs * max_len
  std::uint64_t real_tokens = 0;     // histogram tokens
  std::uint64_t padding_tokens = 0;  // total - real
  double efficiency = 1.0;           // real / total
  double packing_factor = 1.0;       // sequences / packs
  std::uint64_t strategies_used = 0;
  int max_depth_observed = 0;
};

// Exact integer token accounting. The solution must satisfy the coverage
// contract for the histogram; a violation is an error naming the first
// mismatching length, not a warning.
PackingStats evaluate(const SequenceLengthHistogram& hist,
                      const PackingSolution& solution);

// packing_factor / (1 + overhead_fraction).
double realized_speedup(double packing_factor, double overhead_fraction);

struct ReportRow {
  int packing_depth = 0;  // max depth observed in the solution
  std::string algorithm;
  PackingStats stats;
  double overhead_fraction = 0.0;
};

ReportRow make_report_row(const SequenceLengthHistogram& hist,
                          const PackingSolution& solution,
                          double overhead_fraction = 0.0);

// CSV header:
// packing_depth,algorithm,num_packs,efficiency_pct,packing_factor,overhead_pct,realized_speedup
// Rows are sorted by (depth, algorithm); duplicate keys are an error.
void write_report_csv(std::span<const ReportRow> rows, std::ostream& out);

}  // namespace seqpack

#endif  // SEQPACK_METRICS_HPP
