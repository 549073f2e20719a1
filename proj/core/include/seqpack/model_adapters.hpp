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

#ifndef SEQPACK_MODEL_ADAPTERS_HPP
#define SEQPACK_MODEL_ADAPTERS_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace seqpack {

// Which sequence each token position of a pack belongs to: value k > 0 means
// the k-th sequence in the pack, 0 is reserved for padding. Nonzero ids form
// contiguous runs in non-decreasing order, e.g. [1, 1, 1, 2, 2].
struct PackComposition {
  std::vector<int> seq_ids;

  void validate() const;
};

PackComposition parse_pack_composition(const std::string& comma_separated);

// L x L masks, row-major. zero_one[i][j] is 1 iff positions i and j belong to
// the same nonzero sequence; additive is 0 where attention is allowed and
// blocked_value where it is blocked. Padding positions attend to nothing and
// are attended by nothing.
struct AttentionMask {
  int size = 0;
  std::vector<std::uint8_t> zero_one;
  std::vector<double> additive;

  std::uint8_t at(int i, int j) const { return zero_one[static_cast<std::size_t>(i) * size + j]; }
  double additive_at(int i, int j) const { return additive[static_cast<std::size_t>(i) * size + j]; }
};

// blocked value -1000 by default; pass negative_infinity for consumers that
// prefer -inf semantics.
AttentionMask build_attention_mask(const PackComposition& comp,
                                   bool negative_infinity = false);

struct UnpackedLoss {
  // Mean nll per sequence id 1..max_sequences_per_pack; ids with no
  // attempted tokens contribute 0.
  std::vector<double> per_sequence_mean_nll;
  std::uint64_t sequences_in_pack = 0;  // max id present
  double pack_loss = 0.0;               // sum of means / sequences_in_pack
};

// Per-sequence loss unpacking: nll_per_token holds the per-token negative
// log-likelihood, masked_lm_weight the owning sequence id per token slot
// (0 = unused slot). Each sequence mean is normalized by its own attempted
// token count so sequences are weighted equally, not per-token or per-pack.
UnpackedLoss unpack_per_sequence_loss(std::span<const double> nll_per_token,
                                      std::span<const int> masked_lm_weight,
                                      int max_sequences_per_pack);

// beta := beta^p componentwise; the packed-update decay correction for a
// packing factor p >= 1.
std::pair<double, double> adjust_lamb_betas(double beta1, double beta2,
                                            double packing_factor);

struct LambEquivalence {
  std::vector<double> sequential_m, sequential_v;
  std::vector<double> packed_m, packed_v;
  double max_abs_diff = 0.0;
  double max_rel_diff = 0.0;
};

// Applies the momentum/velocity EMA p times with (beta1, beta2) against one
// packed step with (beta1^p, beta2^p) under a constant gradient; the two
// paths agree up to floating point.
LambEquivalence lamb_equivalence_check(double beta1, double beta2, int p,
                                       std::span<const double> gradient,
                                       std::span<const double> m0,
                                       std::span<const double> v0);

}  // namespace seqpack

#endif  // SEQPACK_MODEL_ADAPTERS_HPP
