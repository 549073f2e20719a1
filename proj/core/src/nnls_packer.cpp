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

#include "seqpack/nnls_packer.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include <nlohmann/json.hpp>

#include "seqpack/error.hpp"
#include "seqpack/heuristic_packers.hpp"

namespace seqpack {

namespace {

std::uint64_t round_half_even(double v) {
  if (v <= 0.0) return 0;
  const double floor_v = std::floor(v);
  const double frac = v - floor_v;
  auto lo = static_cast<std::uint64_t>(floor_v);
  if (frac > 0.5) return lo + 1;
  if (frac < 0.5) return lo;
  return (lo % 2 == 0) ? lo : lo + 1;
}

// Rows of A and b are scaled by the residual weights before the solve,
// which is identical to solving w(Ax - b) = 0 in the least-squares sense.
CscMatrix weighted_matrix(const PackingMatrix& matrix,
                          const WeightVector& weights) {
  CscMatrix a;
  a.rows = matrix.max_len;
  a.col_ptr = matrix.col_ptr;
  a.row_idx.reserve(matrix.lengths.size());
  a.values.reserve(matrix.lengths.size());
  for (std::size_t k = 0; k < matrix.lengths.size(); ++k) {
    const int length = matrix.lengths[k];
    a.row_idx.push_back(length - 1);
    a.values.push_back(matrix.counts[k] * weights.at_length(length));
  }
  return a;
}

std::vector<double> weighted_rhs(const SequenceLengthHistogram& hist,
                                 const WeightVector& weights) {
  std::vector<double> b(static_cast<std::size_t>(hist.max_len()), 0.0);
  for (int length = 1; length <= hist.max_len(); ++length) {
    b[length - 1] = static_cast<double>(hist.count(length)) *
                    weights.at_length(length);
  }
  return b;
}

// Turns a rounded mixture plus its residual into a coverage-complete
// solution: deficits (negative residual) become explicit padding sequences,
// leftovers (positive residual) become single-sequence packs or are handed
// to a depth-unlimited SPFHP pass.
PackingSolution realize_solution(const SequenceLengthHistogram& hist,
                                 const StrategySet& set,
                                 std::span<const std::uint64_t> rounded,
                                 std::span<const std::int64_t> residual,
                                 std::string algorithm,
                                 bool repack_leftovers) {
  PackingSolution solution;
  solution.max_len = hist.max_len();
  solution.algorithm = std::move(algorithm);
  for (std::size_t j = 0; j < set.strategies.size(); ++j) {
    if (rounded[j] > 0) {
      solution.mixture.push_back({set.strategies[j], rounded[j]});
    }
  }
  for (int length = 1; length <= hist.max_len(); ++length) {
    const std::int64_t r = residual[length - 1];
    if (r < 0) {
      solution.padding_sequences.push_back(
          {length, static_cast<std::uint64_t>(-r)});
    }
  }
  if (repack_leftovers) {
    std::vector<std::uint64_t> leftover(
        static_cast<std::size_t>(hist.max_len()), 0);
    for (int length = 1; length <= hist.max_len(); ++length) {
      const std::int64_t r = residual[length - 1];
      if (r > 0) leftover[length - 1] = static_cast<std::uint64_t>(r);
    }
    const PackingSolution second =
        spfhp(SequenceLengthHistogram(hist.max_len(), std::move(leftover)));
    for (const MixtureEntry& e : second.mixture) {
      solution.mixture.push_back(e);
    }
  } else {
    for (int length = 1; length <= hist.max_len(); ++length) {
      const std::int64_t r = residual[length - 1];
      if (r > 0) {
        solution.mixture.push_back(
            {Strategy{length}, static_cast<std::uint64_t>(r)});
      }
    }
  }
  solution.normalize();
  return solution;
}

NnlsReport make_report(const SequenceLengthHistogram& hist,
                       std::vector<double> raw,
                       std::vector<std::uint64_t> rounded,
                       std::vector<std::int64_t> residual, int iterations,
                       double solve_seconds) {
  NnlsReport report;
  report.raw_solution = std::move(raw);
  report.rounded_mixture = std::move(rounded);
  report.residual = std::move(residual);
  for (int length = 1; length <= hist.max_len(); ++length) {
    const std::int64_t r = report.residual[length - 1];
    if (r < 0) {
      report.padding_tokens_added += -r * static_cast<std::int64_t>(length);
    } else {
      report.unpacked_sequences += static_cast<std::uint64_t>(r);
    }
  }
  report.iterations = iterations;
  report.solve_seconds = solve_seconds;
  return report;
}

void check_nonempty(const SequenceLengthHistogram& hist, const char* who) {
  if (hist.total_sequences() == 0) {
    throw Error(std::string(who) + ": histogram is empty");
  }
}

}  // namespace

WeightVector default_weights(int max_len) {
  if (max_len < 1) {
    throw Error("default_weights: max_len must be >= 1");
  }
  WeightVector w;
  w.weights.assign(static_cast<std::size_t>(max_len), 1.0);
  for (int length = 1; length <= std::min(8, max_len); ++length) {
    w.weights[length - 1] = 0.09;
  }
  return w;
}

std::vector<std::int64_t> compute_residual(
    const PackingMatrix& matrix, std::span<const std::uint64_t> mixture,
    const SequenceLengthHistogram& hist) {
  if (matrix.max_len != hist.max_len()) {
    throw Error("compute_residual: matrix max_len " +
                std::to_string(matrix.max_len) + " does not match histogram " +
                std::to_string(hist.max_len()));
  }
  if (static_cast<int>(mixture.size()) != matrix.cols()) {
    throw Error("compute_residual: mixture size " +
                std::to_string(mixture.size()) + " does not match " +
                std::to_string(matrix.cols()) + " strategies");
  }
  std::vector<std::int64_t> r(static_cast<std::size_t>(hist.max_len()), 0);
  for (int length = 1; length <= hist.max_len(); ++length) {
    r[length - 1] = static_cast<std::int64_t>(hist.count(length));
  }
  for (int j = 0; j < matrix.cols(); ++j) {
    if (mixture[j] == 0) continue;
    const auto repeat = static_cast<std::int64_t>(mixture[j]);
    for (std::int64_t k = matrix.col_ptr[j]; k < matrix.col_ptr[j + 1]; ++k) {
      r[matrix.lengths[k] - 1] -= repeat * matrix.counts[k];
    }
  }
  return r;
}

std::pair<PackingSolution, NnlsReport> nnlshp(
    const SequenceLengthHistogram& hist, const NnlshpOptions& options) {
  check_nonempty(hist, "nnlshp");
  const StrategySet set = enumerate_strategies(hist.max_len(), options.max_depth);
  const PackingMatrix matrix = build_packing_matrix(set);
  const WeightVector weights =
      options.weights ? *options.weights : default_weights(hist.max_len());
  if (static_cast<int>(weights.weights.size()) != hist.max_len()) {
    throw Error("nnlshp: weight vector needs one entry per length");
  }
  for (double w : weights.weights) {
    if (!(w > 0.0)) throw Error("nnlshp: residual weights must be positive");
  }

  const CscMatrix a = weighted_matrix(matrix, weights);
  const std::vector<double> b = weighted_rhs(hist, weights);

  NnlsOptions solver_options;
  solver_options.tolerance = options.tolerance;
  solver_options.max_iterations = options.max_iterations;
  NnlsInfo solve_info;
  const auto start = std::chrono::steady_clock::now();
  std::vector<double> raw = nnls_solve(a, b, solver_options, &solve_info);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();

  std::vector<std::uint64_t> rounded(raw.size(), 0);
  for (std::size_t j = 0; j < raw.size(); ++j) {
    rounded[j] = round_half_even(raw[j]);
  }
  std::vector<std::int64_t> residual = compute_residual(matrix, rounded, hist);

  PackingSolution solution =
      realize_solution(hist, set, rounded, residual, "nnlshp",
                       options.repack_leftovers);
  NnlsReport report = make_report(hist, std::move(raw), std::move(rounded),
                                  std::move(residual), solve_info.iterations,
                                  seconds);
  return {std::move(solution), std::move(report)};
}

std::pair<PackingSolution, NnlsReport> ennlshp(
    const SequenceLengthHistogram& hist, const EnnlshpOptions& options) {
  check_nonempty(hist, "ennlshp");
  if (!(options.large_weight > 0.0)) {
    throw Error("ennlshp: large_weight must be positive");
  }
  const int m = hist.max_len();
  const StrategySet set = enumerate_strategies(m, options.max_depth);
  const PackingMatrix matrix = build_packing_matrix(set);
  const int n = static_cast<int>(set.size());

  // Block system [[wA, 0], [wbar A, -wbar I]] [x; rbar] = [w b; wbar b] with
  // token-proportional weights w_i = i on the plain rows. The auxiliary
  // variable rbar >= 0 forces Ax - b >= 0 before rounding.
  CscMatrix a;
  a.rows = 2 * m;
  a.col_ptr.reserve(static_cast<std::size_t>(n + m) + 1);
  a.col_ptr.push_back(0);
  for (int j = 0; j < n; ++j) {
    for (std::int64_t k = matrix.col_ptr[j]; k < matrix.col_ptr[j + 1]; ++k) {
      const int length = matrix.lengths[k];
      a.row_idx.push_back(length - 1);
      a.values.push_back(matrix.counts[k] * static_cast<double>(length));
    }
    for (std::int64_t k = matrix.col_ptr[j]; k < matrix.col_ptr[j + 1]; ++k) {
      const int length = matrix.lengths[k];
      a.row_idx.push_back(m + length - 1);
      a.values.push_back(matrix.counts[k] * options.large_weight);
    }
    a.col_ptr.push_back(static_cast<std::int64_t>(a.row_idx.size()));
  }
  for (int i = 0; i < m; ++i) {
    a.row_idx.push_back(m + i);
    a.values.push_back(-options.large_weight);
    a.col_ptr.push_back(static_cast<std::int64_t>(a.row_idx.size()));
  }
  std::vector<double> b(static_cast<std::size_t>(2 * m), 0.0);
  for (int length = 1; length <= m; ++length) {
    const auto count = static_cast<double>(hist.count(length));
    b[length - 1] = count * static_cast<double>(length);
    b[m + length - 1] = count * options.large_weight;
  }

  NnlsOptions solver_options;
  solver_options.tolerance = options.tolerance;
  // The large-weight block makes the system near-degenerate and the
  // active-set walk churns harder than on the plain problem, so the default
  // budget is wider than the solver's 3x-columns rule.
  solver_options.max_iterations = options.max_iterations > 0
                                      ? options.max_iterations
                                      : 10 * (n + m);
  NnlsInfo solve_info;
  const auto start = std::chrono::steady_clock::now();
  const std::vector<double> full =
      nnls_solve(a, b, solver_options, &solve_info);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();

  std::vector<double> raw(full.begin(), full.begin() + n);
  std::vector<std::uint64_t> rounded(raw.size(), 0);
  for (std::size_t j = 0; j < raw.size(); ++j) {
    rounded[j] = options.round_up
                     ? static_cast<std::uint64_t>(std::ceil(
                           std::max(0.0, raw[j]) - 1e-9))
                     : round_half_even(raw[j]);
  }
  std::vector<std::int64_t> residual = compute_residual(matrix, rounded, hist);

  PackingSolution solution =
      realize_solution(hist, set, rounded, residual, "ennlshp",
                       options.repack_leftovers);
  NnlsReport report = make_report(hist, std::move(raw), std::move(rounded),
                                  std::move(residual), solve_info.iterations,
                                  seconds);
  return {std::move(solution), std::move(report)};
}

std::string solution_with_report_to_json(const PackingSolution& solution,
                                         const NnlsReport& report) {
  auto j = nlohmann::json::parse(solution_to_json(solution));
  nlohmann::json r;
  r["raw_solution"] = report.raw_solution;
  r["rounded_mixture"] = report.rounded_mixture;
  r["residual"] = report.residual;
  r["padding_tokens_added"] = report.padding_tokens_added;
  r["unpacked_sequences"] = report.unpacked_sequences;
  r["iterations"] = report.iterations;
  r["solve_seconds"] = report.solve_seconds;
  j["nnls_report"] = std::move(r);
  return j.dump();
}

}  // namespace seqpack
