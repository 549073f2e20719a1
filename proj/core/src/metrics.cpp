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

#include "seqpack/metrics.hpp"

#include <algorithm>
#include <ostream>
#include <set>

#include "seqpack/error.hpp"

namespace seqpack {

PackingStats evaluate(const SequenceLengthHistogram& hist,
                      const PackingSolution& solution) {
  const int max_len = hist.max_len();
  if (solution.max_len != max_len) {
    throw Error("evaluate: solution max_len " +
                std::to_string(solution.max_len) +
                " does not match histogram max_len " + std::to_string(max_len));
  }

  std::vector<std::uint64_t> covered(static_cast<std::size_t>(max_len), 0);
  PackingStats stats;
  for (const MixtureEntry& e : solution.mixture) {
    if (e.repeat == 0) continue;
    if (!is_valid_strategy(e.strategy, max_len, max_len)) {
      throw Error("evaluate: invalid strategy in mixture");
    }
    ++stats.strategies_used;
    stats.num_packs += e.repeat;
    stats.max_depth_observed = std::max(
        stats.max_depth_observed, static_cast<int>(e.strategy.size()));
    for (int length : e.strategy) {
      covered[length - 1] += e.repeat;
    }
  }

  // Coverage: every real sequence packed exactly once, plus the declared
  // explicit padding sequences and nothing else.
  for (int length = 1; length <= max_len; ++length) {
    const std::uint64_t expected =
        hist.count(length) + solution.padding_sequence_count(length);
    if (covered[length - 1] != expected) {
      throw Error("evaluate: coverage violation at length " +
                  std::to_string(length) + ": mixture covers " +
                  std::to_string(covered[length - 1]) + ", expected " +
                  std::to_string(expected));
    }
  }

  stats.real_tokens = hist.total_tokens();
  stats.total_tokens = stats.num_packs * static_cast<std::uint64_t>(max_len);
  stats.padding_tokens = stats.total_tokens - stats.real_tokens;
  if (stats.num_packs > 0) {
    stats.efficiency = static_cast<double>(stats.real_tokens) /
                       static_cast<double>(stats.total_tokens);
    stats.packing_factor = static_cast<double>(hist.total_sequences()) /
                           static_cast<double>(stats.num_packs);
  }
  return stats;
}

double realized_speedup(double packing_factor, double overhead_fraction) {
  if (overhead_fraction < 0.0) {
    throw Error("realized_speedup: overhead_fraction must be >= 0");
  }
  return packing_factor / (1.0 + overhead_fraction);
}

ReportRow make_report_row(const SequenceLengthHistogram& hist,
                          const PackingSolution& solution,
                          double overhead_fraction) {
  ReportRow row;
  row.stats = evaluate(hist, solution);
  row.packing_depth = row.stats.max_depth_observed;
  row.algorithm = solution.algorithm;
  row.overhead_fraction = overhead_fraction;
  return row;
}

void write_report_csv(std::span<const ReportRow> rows, std::ostream& out) {
  std::vector<const ReportRow*> ordered;
  ordered.reserve(rows.size());
  for (const ReportRow& row : rows) ordered.push_back(&row);
  std::sort(ordered.begin(), ordered.end(),
            [](const ReportRow* a, const ReportRow* b) {
              if (a->packing_depth != b->packing_depth) {
                return a->packing_depth < b->packing_depth;
              }
              return a->algorithm < b->algorithm;
            });
  for (std::size_t i = 1; i < ordered.size(); ++i) {
    if (ordered[i]->packing_depth == ordered[i - 1]->packing_depth &&
        ordered[i]->algorithm == ordered[i - 1]->algorithm) {
      throw Error("report: duplicate (depth, algorithm) row: depth " +
                  std::to_string(ordered[i]->packing_depth) + ", " +
                  ordered[i]->algorithm);
    }
  }

  out << "packing_depth,algorithm,num_packs,efficiency_pct,packing_factor,"
         "overhead_pct,realized_speedup\n";
  char buf[128];
  for (const ReportRow* row : ordered) {
    std::snprintf(buf, sizeof(buf), "%d,%s,%llu,%.4f,%.4f,%.4f,%.4f\n",
                  row->packing_depth, row->algorithm.c_str(),
                  static_cast<unsigned long long>(row->stats.num_packs),
                  row->stats.efficiency * 100.0, row->stats.packing_factor,
                  row->overhead_fraction * 100.0,
                  realized_speedup(row->stats.packing_factor,
                                   row->overhead_fraction));
    out << buf;
  }
}

}  // namespace seqpack
