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

#ifndef SEQPACK_NNLS_PACKER_HPP
#define SEQPACK_NNLS_PACKER_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "seqpack/histogram.hpp"
#include "seqpack/nnls.hpp"
#include "seqpack/solution.hpp"
#include "seqpack/strategy.hpp"

namespace seqpack {

// Positive per-length residual weights, index 0 for length 1.
struct WeightVector {
  std::vector<double> weights;

  double at_length(int length) const { return weights[length - 1]; }
};

// Lengths of at most 8 tokens are acceptable padding sequences, so their
// residual weight drops to 0.09; all other lengths get weight 1.
WeightVector default_weights(int max_len);

struct NnlsReport {
  std::vector<double> raw_solution;            // x-hat per strategy
  std::vector<std::uint64_t> rounded_mixture;  // round(x-hat)
  std::vector<std::int64_t> residual;          // b - A*round(x-hat), per length
  std::int64_t padding_tokens_added = 0;       // sum of i * |r_i| over r_i < 0
  std::uint64_t unpacked_sequences = 0;        // sum of r_i over r_i > 0
  int iterations = 0;
  double solve_seconds = 0.0;
};

struct NnlshpOptions {
  int max_depth = 3;
  std::optional<WeightVector> weights;  // default: default_weights(max_len)
  double tolerance = 1e-8;
  int max_iterations = 0;  // 0 means 3 * strategy count
  // Leftover sequences (positive residual) default to one padded pack each;
  // this runs a depth-unlimited SPFHP pass over them instead.
  bool repack_leftovers = false;
};

struct EnnlshpOptions {
  int max_depth = 3;
  double large_weight = 1e6;
  double tolerance = 1e-8;
  int max_iterations = 0;
  bool repack_leftovers = false;
  // Round the strategy mixture up instead of to nearest, which avoids
  // positive residuals surviving the rounding.
  bool round_up = false;
};

// Non-negative least-squares histogram packing: enumerate strategies of at
// most max_depth summing exactly to max_len, solve the row-weighted system
// w A x = w b for x >= 0, round to the nearest integer mixture, then realize
// the residual: deficits become explicit padding sequences, leftovers become
// single-sequence packs (or a second SPFHP pass).
std::pair<PackingSolution, NnlsReport> nnlshp(
    const SequenceLengthHistogram& hist, const NnlshpOptions& options = {});

// Extended variant that drives the signed residual non-positive before
// rounding by solving the block system [[A, 0], [A, -I]] [x; rbar] = [b; b]
// with token-proportional top weights w_i = i and a large weight on the
// auxiliary rows.
std::pair<PackingSolution, NnlsReport> ennlshp(
    const SequenceLengthHistogram& hist, const EnnlshpOptions& options = {});

// r = b - A * mixture in exact integer arithmetic.
std::vector<std::int64_t> compute_residual(
    const PackingMatrix& matrix, std::span<const std::uint64_t> mixture,
    const SequenceLengthHistogram& hist);

// Report JSON is attached next to the solution payload under "nnls_report".
std::string solution_with_report_to_json(const PackingSolution& solution,
                                         const NnlsReport& report);

}  // namespace seqpack

#endif  // SEQPACK_NNLS_PACKER_HPP
