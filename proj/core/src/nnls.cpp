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

#include "seqpack/nnls.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>

namespace seqpack {

void CscMatrix::add_column_to(int col, double scale,
                              std::span<double> y) const {
  for (std::int64_t k = col_ptr[col]; k < col_ptr[col + 1]; ++k) {
    y[row_idx[k]] += scale * values[k];
  }
}

double CscMatrix::column_dot(int col, std::span<const double> y) const {
  double acc = 0.0;
  for (std::int64_t k = col_ptr[col]; k < col_ptr[col + 1]; ++k) {
    acc += values[k] * y[row_idx[k]];
  }
  return acc;
}

double CscMatrix::column_column_dot(int a, int b) const {
  std::int64_t ka = col_ptr[a];
  std::int64_t kb = col_ptr[b];
  const std::int64_t ea = col_ptr[a + 1];
  const std::int64_t eb = col_ptr[b + 1];
  double acc = 0.0;
  while (ka < ea && kb < eb) {
    const int ra = row_idx[ka];
    const int rb = row_idx[kb];
    if (ra == rb) {
      acc += values[ka] * values[kb];
      ++ka;
      ++kb;
    } else if (ra < rb) {
      ++ka;
    } else {
      ++kb;
    }
  }
  return acc;
}

namespace {

// Dense lower-triangular Cholesky factor of the passive-set Gram matrix,
// grown one column at a time. Stored row-major over the passive ordering.
class GrowingCholesky {
 public:
  void clear() {
    rows_.clear();
  }

  std::size_t size() const { return rows_.size(); }

  // Appends a variable whose Gram column (against the current passive set,
  // then itself) is `gram`. Returns false when the new column is numerically
  // dependent on the current set.
  bool append(std::span<const double> gram) {
    const std::size_t n = rows_.size();
    std::vector<double> row(n + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      double sum = gram[i];
      for (std::size_t k = 0; k < i; ++k) sum -= rows_[i][k] * row[k];
      row[i] = sum / rows_[i][i];
    }
    double diag = gram[n];
    for (std::size_t k = 0; k < n; ++k) diag -= row[k] * row[k];
    if (!(diag > 1e-12 * std::max(1.0, gram[n]))) {
      return false;
    }
    row[n] = std::sqrt(diag);
    rows_.push_back(std::move(row));
    return true;
  }

  void pop() { rows_.pop_back(); }

  // Solves L L^T z = rhs in place.
  void solve(std::span<double> rhs) const {
    const std::size_t n = rows_.size();
    for (std::size_t i = 0; i < n; ++i) {
      double sum = rhs[i];
      for (std::size_t k = 0; k < i; ++k) sum -= rows_[i][k] * rhs[k];
      rhs[i] = sum / rows_[i][i];
    }
    for (std::size_t i = n; i-- > 0;) {
      double sum = rhs[i];
      for (std::size_t k = i + 1; k < n; ++k) sum -= rows_[k][i] * rhs[k];
      rhs[i] = sum / rows_[i][i];
    }
  }

 private:
  std::vector<std::vector<double>> rows_;
};

}  // namespace

std::vector<double> nnls_solve(const CscMatrix& a, std::span<const double> b,
                               const NnlsOptions& options, NnlsInfo* info) {
  const int n = a.cols();
  const int m = a.rows;
  if (n < 1) {
    throw Error("nnls_solve: matrix must have at least one column");
  }
  if (static_cast<int>(b.size()) != m) {
    throw Error("nnls_solve: rhs size " + std::to_string(b.size()) +
                " does not match matrix rows " + std::to_string(m));
  }
  if (!(options.tolerance > 0.0)) {
    throw Error("nnls_solve: tolerance must be > 0");
  }
  const int max_iterations =
      options.max_iterations > 0 ? options.max_iterations : 3 * n;

  // Work in the column-equilibrated variable z = x / scale so the Gram
  // matrix keeps a unit diagonal; z >= 0 iff x >= 0.
  std::vector<double> scale(n, 0.0);
  for (int j = 0; j < n; ++j) {
    const double norm = std::sqrt(a.column_column_dot(j, j));
    scale[j] = norm > 0.0 ? 1.0 / norm : 0.0;  // zero columns never activate
  }
  std::vector<double> atb(n, 0.0);
  for (int j = 0; j < n; ++j) {
    atb[j] = a.column_dot(j, b) * scale[j];
  }

  std::vector<double> z(n, 0.0);        // scaled solution
  std::vector<int> passive;             // column indices in passive order
  std::vector<char> in_passive(n, 0);
  std::vector<char> rejected(n, 0);     // linearly dependent candidates
  GrowingCholesky chol;

  std::vector<double> residual(b.begin(), b.end());  // b - A x
  std::vector<double> zp;                            // candidate passive solve
  std::vector<double> gram_col;

  auto refresh_residual = [&] {
    std::copy(b.begin(), b.end(), residual.begin());
    for (std::size_t p = 0; p < passive.size(); ++p) {
      const int j = passive[p];
      a.add_column_to(j, -z[j] * scale[j], residual);
    }
  };

  auto rebuild_cholesky = [&]() -> bool {
    chol.clear();
    for (std::size_t p = 0; p < passive.size(); ++p) {
      gram_col.assign(p + 1, 0.0);
      for (std::size_t q = 0; q <= p; ++q) {
        gram_col[q] = a.column_column_dot(passive[q], passive[p]) *
                      scale[passive[q]] * scale[passive[p]];
      }
      if (!chol.append(gram_col)) return false;
    }
    return true;
  };

  auto solve_passive = [&](std::vector<double>& out) {
    out.assign(passive.size(), 0.0);
    for (std::size_t p = 0; p < passive.size(); ++p) out[p] = atb[passive[p]];
    chol.solve(out);
  };

  int iterations = 0;

  auto iteration_error = [&]() -> NnlsIterationError {
    std::vector<double> best(n, 0.0);
    for (int j = 0; j < n; ++j) best[j] = z[j] * scale[j];
    refresh_residual();
    double norm = 0.0;
    for (double r : residual) norm += r * r;
    return NnlsIterationError(
        "nnls_solve: exceeded " + std::to_string(max_iterations) +
            " iterations",
        std::move(best), std::sqrt(norm));
  };

  while (true) {
    // Columns are unit-norm, so every dual is bounded by the residual norm;
    // stopping once the best dual falls below tolerance * |residual| makes
    // the KKT check scale-free.
    double residual_norm_sq = 0.0;
    for (double r : residual) residual_norm_sq += r * r;
    const double dual_tol =
        options.tolerance * std::max(1.0, std::sqrt(residual_norm_sq));

    // Dual vector over the active set; w_j = scaled gradient of
    // -1/2 |Ax - b|^2, positive where adding j improves the fit.
    int best_j = -1;
    double best_w = dual_tol;
    for (int j = 0; j < n; ++j) {
      if (in_passive[j] || rejected[j] || scale[j] == 0.0) continue;
      const double w = a.column_dot(j, residual) * scale[j];
      if (w > best_w) {
        best_w = w;
        best_j = j;
      }
    }
    if (best_j < 0) break;  // KKT satisfied at tolerance

    if (++iterations > max_iterations) throw iteration_error();

    // Tentatively move best_j into the passive set.
    gram_col.assign(passive.size() + 1, 0.0);
    for (std::size_t q = 0; q < passive.size(); ++q) {
      gram_col[q] = a.column_column_dot(passive[q], best_j) *
                    scale[passive[q]] * scale[best_j];
    }
    gram_col[passive.size()] = 1.0;  // unit-norm columns
    if (!chol.append(gram_col)) {
      rejected[best_j] = 1;
      continue;
    }
    passive.push_back(best_j);
    in_passive[best_j] = 1;
    solve_passive(zp);
    if (zp.back() <= 0.0) {
      // Lawson-Hanson candidate test: a column whose trial coefficient is
      // not positive would be removed right away and re-selected forever.
      chol.pop();
      passive.pop_back();
      in_passive[best_j] = 0;
      rejected[best_j] = 1;
      continue;
    }
    std::fill(rejected.begin(), rejected.end(), 0);

    // Inner feasibility loop.
    while (true) {
      double alpha = 2.0;
      std::size_t blocking = 0;
      for (std::size_t p = 0; p < passive.size(); ++p) {
        if (zp[p] <= 0.0) {
          const double zj = z[passive[p]];
          const double t = zj / (zj - zp[p]);
          if (t < alpha) {
            alpha = t;
            blocking = p;
          }
        }
      }
      if (alpha == 2.0) {
        for (std::size_t p = 0; p < passive.size(); ++p) z[passive[p]] = zp[p];
        break;
      }

      if (++iterations > max_iterations) throw iteration_error();

      for (std::size_t p = 0; p < passive.size(); ++p) {
        const int j = passive[p];
        z[j] += alpha * (zp[p] - z[j]);
      }
      // Drop every variable pinned at (or numerically below) zero; at least
      // the blocking variable always leaves, guaranteeing progress.
      std::vector<int> keep;
      keep.reserve(passive.size());
      for (std::size_t p = 0; p < passive.size(); ++p) {
        const int j = passive[p];
        const bool drop = p == blocking ||
                          (zp[p] <= 0.0 && z[j] <= 1e-14);
        if (drop) {
          z[j] = 0.0;
          in_passive[j] = 0;
        } else {
          keep.push_back(j);
        }
      }
      passive = std::move(keep);
      while (!rebuild_cholesky()) {
        // Numerically degenerate after removal; shed the newest column.
        const int j = passive.back();
        passive.pop_back();
        z[j] = 0.0;
        in_passive[j] = 0;
      }
      solve_passive(zp);
    }

    refresh_residual();
  }

  std::vector<double> x(n, 0.0);
  for (int j = 0; j < n; ++j) x[j] = z[j] * scale[j];
  if (info) {
    info->iterations = iterations;
    refresh_residual();
    double norm = 0.0;
    for (double r : residual) norm += r * r;
    info->residual_norm = std::sqrt(norm);
  }
  return x;
}

}  // namespace seqpack
