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
#include <random>

#include "seqpack/error.hpp"
#include "seqpack/model_adapters.hpp"

using namespace seqpack;

namespace {

std::vector<std::uint8_t> flat(const std::vector<std::vector<int>>& rows) {
  std::vector<std::uint8_t> out;
  for (const auto& row : rows) {
    for (int v : row) out.push_back(static_cast<std::uint8_t>(v));
  }
  return out;
}

}  // namespace

TEST_CASE("attention mask for [1,1,1,2,2] is the 3+2 block diagonal") {
  const auto mask = build_attention_mask(parse_pack_composition("1,1,1,2,2"));
  CHECK(mask.size == 5);
  CHECK(mask.zero_one == flat({{1, 1, 1, 0, 0},
                               {1, 1, 1, 0, 0},
                               {1, 1, 1, 0, 0},
                               {0, 0, 0, 1, 1},
                               {0, 0, 0, 1, 1}}));
  for (int i = 0; i < 5; ++i) {
    for (int j = 0; j < 5; ++j) {
      CHECK(mask.additive_at(i, j) == (mask.at(i, j) ? 0.0 : -1000.0));
    }
  }
}

TEST_CASE("single sequence attends everywhere") {
  const auto mask = build_attention_mask(parse_pack_composition("1,1,1,1"));
  CHECK(mask.zero_one == std::vector<std::uint8_t>(16, 1));
}

TEST_CASE("padding positions are fully isolated") {
  const auto mask = build_attention_mask(parse_pack_composition("1,0"));
  CHECK(mask.zero_one == flat({{1, 0}, {0, 0}}));
  CHECK(mask.additive_at(1, 1) == -1000.0);
}

TEST_CASE("negative infinity variant") {
  const auto mask =
      build_attention_mask(parse_pack_composition("1,2"), /*neg inf*/ true);
  CHECK(std::isinf(mask.additive_at(0, 1)));
  CHECK(mask.additive_at(0, 1) < 0);
  CHECK(mask.additive_at(0, 0) == 0.0);
}

TEST_CASE("empty composition gives empty matrices") {
  const auto mask = build_attention_mask(PackComposition{});
  CHECK(mask.size == 0);
  CHECK(mask.zero_one.empty());
  CHECK(mask.additive.empty());
}

TEST_CASE("mask structure is invariant under label permutation") {
  const auto a = build_attention_mask(parse_pack_composition("1,1,2,2,2,3"));
  // Swap labels 1 <-> 2 and rename 3 -> 5: same runs, same structure.
  PackComposition relabeled;
  relabeled.seq_ids = {2, 2, 1, 1, 1, 5};
  const auto b = build_attention_mask(relabeled);
  CHECK(a.zero_one == b.zero_one);
}

TEST_CASE("mask is symmetric on random compositions") {
  std::mt19937_64 rng(321);
  for (int trial = 0; trial < 20; ++trial) {
    PackComposition comp;
    int id = 1;
    while (comp.seq_ids.size() < 24) {
      const auto run = 1 + rng() % 5;
      for (std::uint64_t k = 0; k < run; ++k) comp.seq_ids.push_back(id);
      ++id;
    }
    while (comp.seq_ids.size() < 30) comp.seq_ids.push_back(0);
    const auto mask = build_attention_mask(comp);
    for (int i = 0; i < mask.size; ++i) {
      for (int j = 0; j < i; ++j) {
        CHECK(mask.at(i, j) == mask.at(j, i));
      }
    }
  }
}

TEST_CASE("invalid compositions are rejected") {
  CHECK_THROWS_AS(parse_pack_composition("1,x,2"), Error);
  PackComposition negative;
  negative.seq_ids = {1, -1};
  CHECK_THROWS_AS(negative.validate(), Error);
  PackComposition split_run;
  split_run.seq_ids = {1, 2, 1};
  CHECK_THROWS_WITH_AS(split_run.validate(), doctest::Contains("reappears"),
                       Error);
}

TEST_CASE("per-sequence loss unpacking matches the hand-traced example") {
  const double nll[] = {1.0, 3.0, 4.0, 9.0};
  const int ids[] = {1, 1, 2, 0};
  const auto loss = unpack_per_sequence_loss(nll, ids, 2);
  REQUIRE(loss.per_sequence_mean_nll.size() == 2);
  CHECK(loss.per_sequence_mean_nll[0] == doctest::Approx(2.0));
  CHECK(loss.per_sequence_mean_nll[1] == doctest::Approx(4.0));
  CHECK(loss.sequences_in_pack == 2);
  CHECK(loss.pack_loss == doctest::Approx(3.0));
}

TEST_CASE("single-sequence pack reduces to the plain mean") {
  std::mt19937_64 rng(654);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 1 + int(rng() % 40);
    std::vector<double> nll(n);
    std::vector<int> ids(n, 1);
    double sum = 0.0;
    for (double& v : nll) {
      v = (rng() >> 11) * 0x1.0p-53 * 10.0;
      sum += v;
    }
    const auto loss = unpack_per_sequence_loss(nll, ids, 4);
    CHECK(std::abs(loss.pack_loss - sum / n) <= 1e-12 * std::max(1.0, sum));
  }
}

TEST_CASE("sequences weigh equally regardless of token counts") {
  const double nll[] = {10.0, 0.5};
  const int ids[] = {1, 2};
  const auto loss = unpack_per_sequence_loss(nll, ids, 2);
  CHECK(loss.pack_loss == doctest::Approx((10.0 + 0.5) / 2.0));
}

TEST_CASE("all-padding slots give zero loss and zero sequences") {
  const double nll[] = {1.0, 2.0};
  const int ids[] = {0, 0};
  const auto loss = unpack_per_sequence_loss(nll, ids, 3);
  CHECK(loss.sequences_in_pack == 0);
  CHECK(loss.pack_loss == 0.0);
}

TEST_CASE("loss unpacking validates its inputs") {
  const double nll[] = {1.0};
  const int ids_bad[] = {4};
  CHECK_THROWS_AS(unpack_per_sequence_loss(nll, ids_bad, 3), Error);
  const int ids[] = {1, 1};
  CHECK_THROWS_AS(unpack_per_sequence_loss(nll, ids, 3), Error);
}

TEST_CASE("lamb beta adjustment") {
  const auto [b1, b2] = adjust_lamb_betas(0.81, 0.99, 2.0);
  CHECK(b1 == doctest::Approx(0.6561).epsilon(1e-12));
  CHECK(b2 == doctest::Approx(0.9801).epsilon(1e-12));

  const auto [c1, c2] = adjust_lamb_betas(0.9, 0.999, 1.0);
  CHECK(c1 == doctest::Approx(0.9));
  CHECK(c2 == doctest::Approx(0.999));

  const auto [d1, d2] = adjust_lamb_betas(0.9, 0.999, 2.0);
  CHECK(d1 == doctest::Approx(0.81));
  CHECK(d2 == doctest::Approx(0.998001));

  CHECK_THROWS_AS(adjust_lamb_betas(0.0, 0.9, 2.0), Error);
  CHECK_THROWS_AS(adjust_lamb_betas(0.9, 1.0, 2.0), Error);
  CHECK_THROWS_AS(adjust_lamb_betas(0.9, 0.99, 0.5), Error);
}

TEST_CASE("packed update equals p sequential updates under constant gradient") {
  SUBCASE("p = 1 is the identity") {
    const double g[] = {0.3}, m0[] = {0.1}, v0[] = {0.2};
    const auto result = lamb_equivalence_check(0.9, 0.999, 1, g, m0, v0);
    CHECK(result.max_abs_diff == 0.0);
  }
  SUBCASE("hand-expanded p = 2 with zero state") {
    const double g[] = {2.0}, m0[] = {0.0}, v0[] = {0.0};
    const auto result = lamb_equivalence_check(0.81, 0.99, 2, g, m0, v0);
    CHECK(result.sequential_m[0] == doctest::Approx((1.0 - 0.6561) * 2.0));
    CHECK(result.packed_m[0] == doctest::Approx((1.0 - 0.6561) * 2.0));
    CHECK(result.max_rel_diff <= 1e-12);
  }
  SUBCASE("random state, every p in 1..16") {
    std::mt19937_64 rng(777);
    for (int p = 1; p <= 16; ++p) {
      std::vector<double> g(5), m0(5), v0(5);
      for (int i = 0; i < 5; ++i) {
        g[i] = (rng() >> 11) * 0x1.0p-53 * 4.0 - 2.0;
        m0[i] = (rng() >> 11) * 0x1.0p-53 * 2.0 - 1.0;
        v0[i] = (rng() >> 11) * 0x1.0p-53;
      }
      const double beta1 = 0.5 + 0.49 * ((rng() >> 11) * 0x1.0p-53);
      const double beta2 = 0.9 + 0.099 * ((rng() >> 11) * 0x1.0p-53);
      const auto result = lamb_equivalence_check(beta1, beta2, p, g, m0, v0);
      CHECK(result.max_rel_diff <= 1e-12);
    }
  }
}
