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

#include "seqpack/strategy.hpp"

#include <algorithm>
#include <numeric>

#include <nlohmann/json.hpp>

#include "seqpack/error.hpp"

namespace seqpack {

int strategy_tokens(const Strategy& s) {
  return std::accumulate(s.begin(), s.end(), 0);
}

bool is_valid_strategy(const Strategy& s, int max_len, int max_depth) {
  if (s.empty() || static_cast<int>(s.size()) > max_depth) return false;
  if (!std::is_sorted(s.begin(), s.end())) return false;
  if (s.front() < 1) return false;
  return strategy_tokens(s) <= max_len;
}

bool strategy_less(const Strategy& a, const Strategy& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

StrategySet enumerate_strategies(int max_len, int max_depth) {
  if (max_len < 1) {
    throw Error("enumerate_strategies: max_len must be >= 1, got " +
                std::to_string(max_len));
  }
  if (max_depth < 1) {
    throw Error("enumerate_strategies: max_depth must be >= 1, got " +
                std::to_string(max_depth));
  }
  if (max_depth > kMaxEnumerableDepth) {
    throw Error(
        "enumerate_strategies: depth " + std::to_string(max_depth) +
        " exceeds the cap of " + std::to_string(kMaxEnumerableDepth) +
        "; the strategy space blows up combinatorially (about 940K strategies "
        "already at depth 4 for max_len 512)");
  }

  StrategySet set;
  set.max_len = max_len;
  set.max_depth = max_depth;

  // Non-decreasing parts summing to exactly max_len, emitted grouped by
  // depth so the canonical (depth, lexicographic) order falls out directly.
  Strategy parts;
  for (int depth = 1; depth <= max_depth; ++depth) {
    parts.clear();
    auto recurse = [&](auto&& self, int remaining, int min_part,
                       int slots_left) -> void {
      if (slots_left == 1) {
        if (remaining >= min_part) {
          parts.push_back(remaining);
          set.strategies.push_back(parts);
          parts.pop_back();
        }
        return;
      }
      // Leave at least min_part per remaining slot.
      for (int part = min_part; part * slots_left <= remaining; ++part) {
        parts.push_back(part);
        self(self, remaining - part, part, slots_left - 1);
        parts.pop_back();
      }
    };
    recurse(recurse, max_len, 1, depth);
  }
  return set;
}

double closed_form_strategy_count(int max_len, int depth) {
  const double s = static_cast<double>(max_len);
  switch (depth) {
    case 2:
      return std::floor(s / 2.0);
    case 3:
      return s * s / 12.0;
    case 4:
      return s * (s + 4.0) * (2.0 * s + 1.0) / 288.0;
    default:
      throw Error("closed_form_strategy_count: depth must be in 2..4, got " +
                  std::to_string(depth));
  }
}

Strategy PackingMatrix::column_strategy(int col) const {
  Strategy s;
  for (std::int64_t k = col_ptr[col]; k < col_ptr[col + 1]; ++k) {
    for (std::int32_t rep = 0; rep < counts[k]; ++rep) {
      s.push_back(lengths[k]);
    }
  }
  return s;
}

PackingMatrix build_packing_matrix(const StrategySet& set) {
  if (set.strategies.empty()) {
    throw Error("build_packing_matrix: strategy set is empty");
  }
  PackingMatrix m;
  m.max_len = set.max_len;
  m.col_ptr.reserve(set.size() + 1);
  m.col_ptr.push_back(0);
  for (const Strategy& s : set.strategies) {
    int run_length = 0;
    std::int32_t run_count = 0;
    for (int len : s) {
      if (len == run_length) {
        ++run_count;
      } else {
        if (run_count > 0) {
          m.lengths.push_back(run_length);
          m.counts.push_back(run_count);
        }
        run_length = len;
        run_count = 1;
      }
    }
    if (run_count > 0) {
      m.lengths.push_back(run_length);
      m.counts.push_back(run_count);
    }
    m.col_ptr.push_back(static_cast<std::int64_t>(m.lengths.size()));
  }
  return m;
}

std::string strategy_set_to_json(const StrategySet& set) {
  nlohmann::json j;
  j["max_len"] = set.max_len;
  j["max_depth"] = set.max_depth;
  j["strategies"] = set.strategies;
  return j.dump();
}

StrategySet strategy_set_from_json(const std::string& text) {
  try {
    const auto j = nlohmann::json::parse(text);
    StrategySet set;
    set.max_len = j.at("max_len").get<int>();
    set.max_depth = j.at("max_depth").get<int>();
    set.strategies = j.at("strategies").get<std::vector<Strategy>>();
    return set;
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("invalid strategy set JSON: ") + e.what());
  }
}

}  // namespace seqpack
