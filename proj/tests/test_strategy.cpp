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

#include <doctest.h>

#include <cmath>
#include <map>
#include <set>

#include "seqpack/error.hpp"
#include "seqpack/exact_oracle.hpp"
#include "seqpack/strategy.hpp"

using namespace seqpack;

TEST_CASE("enumerate_strategies(8, 3) yields the ten known strategies") {
  const auto set = enumerate_strategies(8, 3);
  const std::vector<Strategy> expected = {
      {8},       {1, 7},    {2, 6},    {3, 5},    {4, 4},
      {1, 1, 6}, {1, 2, 5}, {1, 3, 4}, {2, 2, 4}, {2, 3, 3},
  };
  CHECK(set.strategies == expected);
  CHECK(set.max_len == 8);
  CHECK(set.max_depth == 3);
}

TEST_CASE("enumerate_strategies counts") {
  CHECK(enumerate_strategies(512, 3).size() == 22102);
  CHECK(enumerate_strategies(512, 1).size() == 1);
  CHECK(enumerate_strategies(512, 1).strategies[0] == Strategy{512});
  CHECK(enumerate_strategies(512, 2).size() == 257);  // [512] + 256 pairs
}

TEST_CASE("enumeration is deterministic, duplicate-free and canonical") {
  const auto a = enumerate_strategies(96, 4);
  const auto b = enumerate_strategies(96, 4);
  CHECK(a.strategies == b.strategies);

  std::set<Strategy> unique(a.strategies.begin(), a.strategies.end());
  CHECK(unique.size() == a.size());

  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(is_valid_strategy(a.strategies[i], 96, 4));
    CHECK(strategy_tokens(a.strategies[i]) == 96);
    if (i > 0) CHECK(strategy_less(a.strategies[i - 1], a.strategies[i]));
  }
}

TEST_CASE("enumeration cardinality matches the independent partition counter") {
  for (int max_len = 1; max_len <= 64; ++max_len) {
    for (int depth = 1; depth <= 4; ++depth) {
      CHECK(enumerate_strategies(max_len, depth).size() ==
            count_exact_partitions(max_len, depth));
    }
  }
}

TEST_CASE("depths above four are rejected") {
  CHECK_THROWS_WITH_AS(enumerate_strategies(512, 5), doctest::Contains("940K"),
                       Error);
  CHECK_THROWS_AS(enumerate_strategies(0, 3), Error);
  CHECK_THROWS_AS(enumerate_strategies(8, 0), Error);
}

TEST_CASE("closed-form strategy counts") {
  CHECK(closed_form_strategy_count(512, 2) == doctest::Approx(256.0));
  CHECK(closed_form_strategy_count(512, 3) ==
        doctest::Approx(512.0 * 512.0 / 12.0));
  // At 512 the depth-3 approximation is exact after rounding.
  const double approx3 = closed_form_strategy_count(512, 3);
  CHECK(std::llround(approx3) == 21845);
  CHECK(21845 + 256 + 1 == enumerate_strategies(512, 3).size());

  CHECK(closed_form_strategy_count(512, 4) ==
        doctest::Approx(512.0 * 516.0 * 1025.0 / 288.0));
  CHECK(closed_form_strategy_count(512, 4) / 1000.0 ==
        doctest::Approx(940.0).epsilon(0.001));

  CHECK_THROWS_AS(closed_form_strategy_count(512, 1), Error);
  CHECK_THROWS_AS(closed_form_strategy_count(512, 5), Error);
}

TEST_CASE("packing matrix columns encode strategy length counts") {
  const auto set = enumerate_strategies(8, 3);
  const auto matrix = build_packing_matrix(set);
  CHECK(matrix.cols() == 10);
  CHECK(matrix.max_len == 8);

  // Dense image, rows = lengths 1..8 in canonical column order. Column
  // [1,1,6] carries a 2 in row 1 and a 1 in row 6.
  std::map<Strategy, std::vector<int>> dense;
  for (int j = 0; j < matrix.cols(); ++j) {
    std::vector<int> col(8, 0);
    for (std::int64_t k = matrix.col_ptr[j]; k < matrix.col_ptr[j + 1]; ++k) {
      col[matrix.lengths[k] - 1] = matrix.counts[k];
    }
    dense[set.strategies[j]] = col;
  }
  CHECK(dense[{1, 1, 6}] == std::vector<int>{2, 0, 0, 0, 0, 1, 0, 0});
  CHECK(dense[{1, 2, 5}] == std::vector<int>{1, 1, 0, 0, 1, 0, 0, 0});
  CHECK(dense[{1, 3, 4}] == std::vector<int>{1, 0, 1, 1, 0, 0, 0, 0});
  CHECK(dense[{1, 7}] == std::vector<int>{1, 0, 0, 0, 0, 0, 1, 0});
  CHECK(dense[{2, 2, 4}] == std::vector<int>{0, 2, 0, 1, 0, 0, 0, 0});
  CHECK(dense[{2, 3, 3}] == std::vector<int>{0, 1, 2, 0, 0, 0, 0, 0});
  CHECK(dense[{2, 6}] == std::vector<int>{0, 1, 0, 0, 0, 1, 0, 0});
  CHECK(dense[{3, 5}] == std::vector<int>{0, 0, 1, 0, 1, 0, 0, 0});
  CHECK(dense[{4, 4}] == std::vector<int>{0, 0, 0, 2, 0, 0, 0, 0});
  CHECK(dense[{8}] == std::vector<int>{0, 0, 0, 0, 0, 0, 0, 1});
}

TEST_CASE("packing matrix columns round-trip their strategies") {
  const auto set = enumerate_strategies(48, 4);
  const auto matrix = build_packing_matrix(set);
  REQUIRE(matrix.cols() == static_cast<int>(set.size()));
  for (int j = 0; j < matrix.cols(); ++j) {
    CHECK(matrix.column_strategy(j) == set.strategies[j]);
    const auto nnz = matrix.col_ptr[j + 1] - matrix.col_ptr[j];
    CHECK(nnz <= 4);
  }
  CHECK_THROWS_AS(build_packing_matrix(StrategySet{}), Error);
}

TEST_CASE("single strategy [512] maps to a single unit entry") {
  StrategySet set;
  set.max_len = 512;
  set.max_depth = 1;
  set.strategies = {{512}};
  const auto matrix = build_packing_matrix(set);
  CHECK(matrix.cols() == 1);
  CHECK(matrix.lengths == std::vector<int>{512});
  CHECK(matrix.counts == std::vector<std::int32_t>{1});
}

TEST_CASE("strategy set JSON round-trip") {
  const auto set = enumerate_strategies(16, 3);
  const auto text = strategy_set_to_json(set);
  const auto back = strategy_set_from_json(text);
  CHECK(back.max_len == set.max_len);
  CHECK(back.max_depth == set.max_depth);
  CHECK(back.strategies == set.strategies);
  CHECK_THROWS_AS(strategy_set_from_json("{"), Error);
}
