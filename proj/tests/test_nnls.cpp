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

#include "seqpack/nnls.hpp"
#include "nnls_oracle.hpp"

using namespace seqpack;

namespace {

CscMatrix dense_to_csc(const std::vector<std::vector<double>>& columns,
                       int rows) {
  CscMatrix a;
  a.rows = rows;
  a.col_ptr.push_back(0);
  for (const auto& col : columns) {
    for (int r = 0; r < rows; ++r) {
      if (col[r] != 0.0) {
        a.row_idx.push_back(r);
        a.values.push_back(col[r]);
      }
    }
    a.col_ptr.push_back(static_cast<std::int64_t>(a.row_idx.size()));
  }
  return a;
}

}  // namespace

TEST_CASE("identity system clamps the negative component") {
  const auto a = dense_to_csc({{1, 0}, {0, 1}}, 2);
  const double b[] = {3.0, -2.0};
  const auto x = nnls_solve(a, b);
  CHECK(x[0] == doctest::Approx(3.0));
  CHECK(x[1] == doctest::Approx(0.0));
}

TEST_CASE("single column averages the targets") {
  const auto a = dense_to_csc({{1, 1}}, 2);
  const double b[] = {1.0, 2.0};
  const auto x = nnls_solve(a, b);
  CHECK(x[0] == doctest::Approx(1.5));
}

TEST_CASE("redundant column stays inactive") {
  // Columns [1,0] and [1,1] against b = [1,1]: the second alone fits exactly.
  const auto a = dense_to_csc({{1, 0}, {1, 1}}, 2);
  const double b[] = {1.0, 1.0};
  const auto x = nnls_solve(a, b);
  CHECK(x[0] == doctest::Approx(0.0).epsilon(1e-10));
  CHECK(x[1] == doctest::Approx(1.0));
}

TEST_CASE("invalid inputs are rejected") {
  const auto a = dense_to_csc({{1, 0}, {0, 1}}, 2);
  const double b_short[] = {1.0};
  CHECK_THROWS_AS(nnls_solve(a, b_short), Error);
  CHECK_THROWS_AS(nnls_solve(CscMatrix{}, b_short), Error);
  const double b[] = {1.0, 1.0};
  NnlsOptions bad;
  bad.tolerance = 0.0;
  CHECK_THROWS_AS(nnls_solve(a, b, bad), Error);
}

TEST_CASE("iteration cap carries the best iterate") {
  std::mt19937_64 rng(4);
  const auto problem = test::random_interior_problem(rng, 12, 8);
  NnlsOptions options;
  options.max_iterations = 1;
  try {
    nnls_solve(problem.matrix, problem.rhs, options);
    FAIL("expected NnlsIterationError");
  } catch (const NnlsIterationError& e) {
    CHECK(e.best_solution.size() == 8);
    CHECK(e.residual_norm >= 0.0);
  }
}

TEST_CASE("output is non-negative on random systems") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    const int rows = 2 + int(rng() % 24);
    const int cols = 1 + int(rng() % 20);
    const auto problem = test::random_dense_problem(rng, rows, cols);
    const auto x = nnls_solve(problem.matrix, problem.rhs);
    for (double v : x) CHECK(v >= 0.0);
  }
}

TEST_CASE("interior solutions match the dense normal-equations oracle") {
  std::mt19937_64 rng(2718);
  int checked = 0;
  for (int trial = 0; trial < 120; ++trial) {
    const int cols = 1 + int(rng() % 18);
    const int rows = cols + 1 + int(rng() % 12);
    const auto problem = test::random_interior_problem(rng, rows, cols);
    // Oracle: unconstrained least squares via dense normal equations; only
    // usable when it lands in the non-negative orthant.
    const auto oracle = test::dense_least_squares(problem.matrix, problem.rhs);
    bool interior = true;
    for (double v : oracle) interior &= v >= 0.0;
    if (!interior) continue;
    ++checked;
    const auto x = nnls_solve(problem.matrix, problem.rhs);
    for (std::size_t j = 0; j < x.size(); ++j) {
      CHECK(std::abs(x[j] - oracle[j]) <= 1e-6);
    }
  }
  CHECK(checked >= 80);
}

TEST_CASE("boundary solutions satisfy the dense KKT conditions") {
  std::mt19937_64 rng(31415);
  for (int trial = 0; trial < 200; ++trial) {
    const int cols = 2 + int(rng() % 19);
    const int rows = cols + 2 + int(rng() % 10);
    const auto constructed = test::random_kkt_problem(rng, rows, cols);
    REQUIRE(test::verify_kkt(constructed.matrix, constructed.rhs,
                             constructed.solution, 1e-9));
    const auto x = nnls_solve(constructed.matrix, constructed.rhs);
    for (int j = 0; j < cols; ++j) {
      CHECK(std::abs(x[j] - constructed.solution[j]) <= 1e-6);
    }
  }
}
