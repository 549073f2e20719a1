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

#include <numeric>
#include <random>

#include "seqpack/error.hpp"
#include "seqpack/exact_oracle.hpp"
#include "test_util.hpp"

using namespace seqpack;

TEST_CASE("count_exact_partitions known values") {
  CHECK(count_exact_partitions(8, 3) == 10);
  CHECK(count_exact_partitions(512, 3) == 22102);
  CHECK(count_exact_partitions(4, 2) == 3);  // [4], [1,3], [2,2]
  CHECK(count_exact_partitions(1, 4) == 1);
  CHECK_THROWS_AS(count_exact_partitions(0, 3), Error);
  CHECK_THROWS_AS(count_exact_partitions(8, 5), Error);
  CHECK_THROWS_AS(count_exact_partitions(2048, 3), Error);
}

TEST_CASE("optimal_pack_count solves tiny instances exactly") {
  OracleLimit limit;
  limit.max_len = 512;

  SUBCASE("everything fits one pack") {
    const auto hist = test::hist_from_counts(512, {{5, 1}, {7, 1}, {500, 1}});
    const auto result = optimal_pack_count(hist, 0, limit);
    CHECK(result.min_packs == 1);
    REQUIRE(result.packs.size() == 1);
    CHECK(result.packs[0] == std::vector<int>{5, 7, 500});
  }
  SUBCASE("no pair fits") {
    const auto hist = test::hist_from_counts(512, {{300, 2}});
    CHECK(optimal_pack_count(hist, 0, limit).min_packs == 2);
  }
  SUBCASE("mixed lengths at tiny capacity") {
    const auto hist = test::hist_from_counts(4, {{4, 2}, {2, 3}});
    OracleLimit small;
    const auto result = optimal_pack_count(hist, 0, small);
    CHECK(result.min_packs == 4);
  }
  SUBCASE("depth limit changes the optimum") {
    const auto hist = test::hist_from_counts(8, {{2, 4}});
    OracleLimit small;
    CHECK(optimal_pack_count(hist, 0, small).min_packs == 1);
    CHECK(optimal_pack_count(hist, 2, small).min_packs == 2);
    CHECK(optimal_pack_count(hist, 1, small).min_packs == 4);
  }
  SUBCASE("empty histogram needs zero packs") {
    const SequenceLengthHistogram hist(8);
    CHECK(optimal_pack_count(hist).min_packs == 0);
  }
}

TEST_CASE("optimal_pack_count witness is a valid assignment") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 40; ++trial) {
    const auto hist = test::random_small_histogram(16, 10, rng);
    const auto result = optimal_pack_count(hist);
    std::vector<std::uint64_t> covered(16, 0);
    for (const auto& pack : result.packs) {
      CHECK(std::accumulate(pack.begin(), pack.end(), 0) <= 16);
      for (int length : pack) covered[length - 1] += 1;
    }
    for (int length = 1; length <= 16; ++length) {
      CHECK(covered[length - 1] == hist.count(length));
    }
    CHECK(result.packs.size() == result.min_packs);
    // Token-volume lower bound.
    const std::uint64_t volume = (hist.total_tokens() + 15) / 16;
    CHECK(result.min_packs >= volume);
  }
}

TEST_CASE("oracle refuses instances beyond its limits") {
  const auto big = test::hist_from_counts(16, {{1, 13}});
  CHECK_THROWS_WITH_AS(optimal_pack_count(big), doctest::Contains("12"), Error);
  const auto wide = test::hist_from_counts(32, {{20, 1}});
  CHECK_THROWS_WITH_AS(optimal_pack_count(wide), doctest::Contains("16"),
                       Error);
}
