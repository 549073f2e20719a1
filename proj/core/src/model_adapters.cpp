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

#include "seqpack/model_adapters.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "seqpack/error.hpp"

namespace seqpack {

void PackComposition::validate() const {
  // Every sequence's tokens must be one contiguous run; label order is free
  // so that relabeled compositions stay valid.
  std::vector<char> closed;
  int current = 0;
  for (std::size_t i = 0; i < seq_ids.size(); ++i) {
    const int id = seq_ids[i];
    if (id < 0) {
      throw Error("pack composition: negative sequence id at position " +
                  std::to_string(i));
    }
    if (id == current) continue;
    if (id > 0) {
      if (static_cast<std::size_t>(id) > closed.size()) {
        closed.resize(static_cast<std::size_t>(id), 0);
      }
      if (closed[id - 1]) {
        throw Error("pack composition: sequence id " + std::to_string(id) +
                    " reappears after its run ended (position " +
                    std::to_string(i) + ")");
      }
      closed[id - 1] = 1;
    }
    current = id;
  }
}

PackComposition parse_pack_composition(const std::string& comma_separated) {
  PackComposition comp;
  std::stringstream in(comma_separated);
  std::string token;
  while (std::getline(in, token, ',')) {
    try {
      std::size_t used = 0;
      const int id = std::stoi(token, &used);
      if (used != token.size()) throw Error("trailing characters");
      comp.seq_ids.push_back(id);
    } catch (const std::exception&) {
      throw Error("pack composition: cannot parse '" + token + "'");
    }
  }
  comp.validate();
  return comp;
}

AttentionMask build_attention_mask(const PackComposition& comp,
                                   bool negative_infinity) {
  comp.validate();
  const int size = static_cast<int>(comp.seq_ids.size());
  const double blocked =
      negative_infinity ? -std::numeric_limits<double>::infinity() : -1000.0;
  AttentionMask mask;
  mask.size = size;
  mask.zero_one.assign(static_cast<std::size_t>(size) * size, 0);
  mask.additive.assign(static_cast<std::size_t>(size) * size, blocked);
  for (int i = 0; i < size; ++i) {
    if (comp.seq_ids[i] == 0) continue;
    for (int j = 0; j < size; ++j) {
      if (comp.seq_ids[i] == comp.seq_ids[j]) {
        const std::size_t at = static_cast<std::size_t>(i) * size + j;
        mask.zero_one[at] = 1;
        mask.additive[at] = 0.0;
      }
    }
  }
  return mask;
}

UnpackedLoss unpack_per_sequence_loss(std::span<const double> nll_per_token,
                                      std::span<const int> masked_lm_weight,
                                      int max_sequences_per_pack) {
  if (nll_per_token.size() != masked_lm_weight.size()) {
    throw Error("unpack_per_sequence_loss: token and weight arrays differ in "
                "size (" + std::to_string(nll_per_token.size()) + " vs " +
                std::to_string(masked_lm_weight.size()) + ")");
  }
  if (max_sequences_per_pack < 1) {
    throw Error("unpack_per_sequence_loss: max_sequences_per_pack must be >= 1");
  }

  UnpackedLoss result;
  result.per_sequence_mean_nll.assign(
      static_cast<std::size_t>(max_sequences_per_pack), 0.0);
  std::vector<double> attempted(
      static_cast<std::size_t>(max_sequences_per_pack), 0.0);
  int max_id = 0;
  for (std::size_t i = 0; i < masked_lm_weight.size(); ++i) {
    const int id = masked_lm_weight[i];
    if (id < 0 || id > max_sequences_per_pack) {
      throw Error("unpack_per_sequence_loss: sequence id " +
                  std::to_string(id) + " outside 0.." +
                  std::to_string(max_sequences_per_pack));
    }
    if (id == 0) continue;
    result.per_sequence_mean_nll[id - 1] += nll_per_token[i];
    attempted[id - 1] += 1.0;
    max_id = std::max(max_id, id);
  }
  double sum_of_means = 0.0;
  for (int k = 0; k < max_sequences_per_pack; ++k) {
    // Guard against dividing by zero attempted tokens: absent sequences
    // contribute exactly 0.
    if (attempted[k] > 0.0) {
      result.per_sequence_mean_nll[k] /= attempted[k];
    }
    sum_of_means += result.per_sequence_mean_nll[k];
  }
  result.sequences_in_pack = static_cast<std::uint64_t>(max_id);
  result.pack_loss = max_id > 0 ? sum_of_means / max_id : 0.0;
  return result;
}

std::pair<double, double> adjust_lamb_betas(double beta1, double beta2,
                                            double packing_factor) {
  if (!(beta1 > 0.0 && beta1 < 1.0) || !(beta2 > 0.0 && beta2 < 1.0)) {
    throw Error("adjust_lamb_betas: decay parameters must be inside (0, 1)");
  }
  if (!(packing_factor >= 1.0)) {
    throw Error("adjust_lamb_betas: packing factor must be >= 1");
  }
  return {std::pow(beta1, packing_factor), std::pow(beta2, packing_factor)};
}

LambEquivalence lamb_equivalence_check(double beta1, double beta2, int p,
                                       std::span<const double> gradient,
                                       std::span<const double> m0,
                                       std::span<const double> v0) {
  if (p < 1) {
    throw Error("lamb_equivalence_check: p must be >= 1");
  }
  if (gradient.size() != m0.size() || gradient.size() != v0.size()) {
    throw Error("lamb_equivalence_check: gradient, m0 and v0 sizes differ");
  }
  const auto [b1p, b2p] =
      adjust_lamb_betas(beta1, beta2, static_cast<double>(p));

  LambEquivalence result;
  result.sequential_m.assign(m0.begin(), m0.end());
  result.sequential_v.assign(v0.begin(), v0.end());
  for (int step = 0; step < p; ++step) {
    for (std::size_t i = 0; i < gradient.size(); ++i) {
      result.sequential_m[i] =
          beta1 * result.sequential_m[i] + (1.0 - beta1) * gradient[i];
      result.sequential_v[i] = beta2 * result.sequential_v[i] +
                               (1.0 - beta2) * gradient[i] * gradient[i];
    }
  }
  result.packed_m.resize(gradient.size());
  result.packed_v.resize(gradient.size());
  for (std::size_t i = 0; i < gradient.size(); ++i) {
    result.packed_m[i] = b1p * m0[i] + (1.0 - b1p) * gradient[i];
    result.packed_v[i] = b2p * v0[i] + (1.0 - b2p) * gradient[i] * gradient[i];
  }

  for (std::size_t i = 0; i < gradient.size(); ++i) {
    const double dm = std::abs(result.sequential_m[i] - result.packed_m[i]);
    const double dv = std::abs(result.sequential_v[i] - result.packed_v[i]);
    result.max_abs_diff = std::max({result.max_abs_diff, dm, dv});
    const double m_ref = std::max(
        {std::abs(result.sequential_m[i]), std::abs(result.packed_m[i]), 1.0});
    const double v_ref = std::max(
        {std::abs(result.sequential_v[i]), std::abs(result.packed_v[i]), 1.0});
    result.max_rel_diff =
        std::max({result.max_rel_diff, dm / m_ref, dv / v_ref});
  }
  return result;
}

}  // namespace seqpack
