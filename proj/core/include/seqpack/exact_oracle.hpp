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

#ifndef SEQPACK_EXACT_ORACLE_HPP
#define SEQPACK_EXACT_ORACLE_HPP

#include <cstdint>
#include <vector>

#include "seqpack/histogram.hpp"

// Ground-truth solvers for tiny instances. Exact packing is strongly
// NP-complete, so limits are enforced before solving; these exist to check
// the production packers, and deliberately share no enumeration code with
// them.

namespace seqpack {

struct OracleLimit {
  std::uint64_t max_sequences = 12;
  int max_len = 16;
  double time_budget_seconds = 60.0;
};

struct OptimalPacking {
  std::uint64_t min_packs = 0;
  // One witness assignment, each pack as a sorted list of lengths.
  std::vector<std::vector<int>> packs;
};

// Exact minimal pack count by branch-and-bound over the canonical
// assignment, seeded with a first-fit-decreasing upper bound. max_depth 0
// means unlimited.
OptimalPacking optimal_pack_count(const SequenceLengthHistogram& hist,
                                  int max_depth = 0,
                                  const OracleLimit& limit = {});

// Partitions of max_len into at most `depth` parts, counted by direct
// recursion.
std::uint64_t count_exact_partitions(int max_len, int depth);

}  // namespace seqpack

#endif  // SEQPACK_EXACT_ORACLE_HPP
