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

#ifndef SEQPACK_STRATEGY_HPP
#define SEQPACK_STRATEGY_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace seqpack {

// A packing strategy is a non-decreasing list of sequence lengths assigned to
// one pack. Canonical form is sorted so [95, 184, 233] and [184, 95, 233]
// denote the same strategy.
using Strategy = std::vector<int>;

int strategy_tokens(const Strategy& s);
bool is_valid_strategy(const Strategy& s, int max_len, int max_depth);

// Canonical total order: by depth, then lexicographic.
bool strategy_less(const Strategy& a, const Strategy& b);

struct StrategySet {
  int max_len = 0;
  int max_depth = 0;
  std::vector<Strategy> strategies;  // canonical order, no duplicates

  std::size_t size() const { return strategies.size(); }
};

// The number of enumerable strategies explodes beyond depth 4 (the depth-4
// matrix at max_len 512 already needs ~940K columns), so deeper requests are
// rejected rather than attempted.
inline constexpr int kMaxEnumerableDepth = 4;

// All strategies whose lengths sum to exactly max_len using at most max_depth
// parts, in canonical order.
StrategySet enumerate_strategies(int max_len, int max_depth);

// Closed-form approximation of the number of strategies of exactly `depth`
// parts: floor(s/2) for depth 2, s^2/12 for depth 3, s(s+4)(2s+1)/288 for
// depth 4.
double closed_form_strategy_count(int max_len, int depth);

// Column-compressed sparse matrix whose column j counts, per sequence length,
// the occurrences of that length in strategy j. At most max_depth nonzeros
// per column; row indices are 1-based lengths, sorted within each column.
struct PackingMatrix {
  int max_len = 0;
  std::vector<std::int64_t> col_ptr;   // size cols + 1
  std::vector<int> lengths;            // row index as sequence length
  std::vector<std::int32_t> counts;    // occurrences of that length

  int cols() const { return static_cast<int>(col_ptr.size()) - 1; }
  Strategy column_strategy(int col) const;
};

PackingMatrix build_packing_matrix(const StrategySet& set);

// JSON format:
// {"max_len":int,"max_depth":int,"strategies":[[int,...],...]}.
std::string strategy_set_to_json(const StrategySet& set);
StrategySet strategy_set_from_json(const std::string& text);

}  // namespace seqpack

#endif  // SEQPACK_STRATEGY_HPP
