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

#ifndef SEQPACK_NNLS_HPP
#define SEQPACK_NNLS_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "seqpack/error.hpp"

namespace seqpack {

// Column-compressed sparse real matrix. Row indices are 0-based and sorted
// within each column.
struct CscMatrix {
  int rows = 0;
  std::vector<std::int64_t> col_ptr;  // size cols + 1
  std::vector<int> row_idx;
  std::vector<double> values;

  int cols() const { return static_cast<int>(col_ptr.size()) - 1; }

  // y += scale * column(col)
  void add_column_to(int col, double scale, std::span<double> y) const;
  double column_dot(int col, std::span<const double> y) const;
  // Sparse dot of two columns (row indices must be sorted).
  double column_column_dot(int a, int b) const;
};

struct NnlsOptions {
  // KKT check: passive-set gradient magnitudes stay below
  // tolerance * max(1, |A^T b|_inf); an active column may enter only while
  // its dual exceeds that threshold.
  double tolerance = 1e-8;
  int max_iterations = 0;  // 0 means 3 * cols
};

struct NnlsInfo {
  int iterations = 0;
  double residual_norm = 0.0;  // |A x - b|_2 at the returned point
};

// Thrown when the active-set iteration cap is exceeded; carries the best
// iterate and its residual norm.
class NnlsIterationError : public Error {
 public:
  NnlsIterationError(const std::string& what, std::vector<double> best,
                     double residual_norm)
      : Error(what), best_solution(std::move(best)),
        residual_norm(residual_norm) {}

  std::vector<double> best_solution;
  double residual_norm;
};

// Lawson-Hanson style active-set solve of min |A x - b|_2 s.t. x >= 0.
// Nonnegativity holds exactly: passive entries are kept positive by the
// interpolation step and active entries are exactly zero, never clamped
// after the fact. Matrix-vector work is sparse; the passive-set normal
// equations are solved densely through an incrementally updated Cholesky
// factor.
std::vector<double> nnls_solve(const CscMatrix& a, std::span<const double> b,
                               const NnlsOptions& options = {},
                               NnlsInfo* info = nullptr);

}  // namespace seqpack

#endif  // SEQPACK_NNLS_HPP
