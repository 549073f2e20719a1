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

#ifndef SEQPACK_SOLUTION_HPP
#define SEQPACK_SOLUTION_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "seqpack/strategy.hpp"

namespace seqpack {

struct MixtureEntry {
  Strategy strategy;
  std::uint64_t repeat = 0;

  bool operator==(const MixtureEntry&) const = default;
};

struct PaddingEntry {
  int length = 0;
  std::uint64_t count = 0;

  bool operator==(const PaddingEntry&) const = default;
};

// A packing result: how often to repeat each strategy, plus the explicit
// padding sequences that were invented to realize the mixture. Coverage
// contract: for every length i, the mixture covers hist.count(i) real
// sequences plus the padding additions at i.
struct PackingSolution {
  int max_len = 0;
  std::string algorithm;  // "spfhp" | "lpfhp" | "nnlshp" | "ennlshp"
  std::vector<MixtureEntry> mixture;
  std::vector<PaddingEntry> padding_sequences;

  std::uint64_t num_packs() const;
  int max_depth_observed() const;
  std::uint64_t padding_sequence_count(int length) const;

  // Merges duplicate strategies, drops zero repeats, sorts canonically.
  void normalize();

  bool operator==(const PackingSolution&) const = default;
};

// JSON format:
// {"max_len":int,"algorithm":"...",
//  "mixture":[{"strategy":[int,...],"repeat":int}],
//  "padding_sequences":[{"length":int,"count":int}]}
// Extra keys (e.g. an attached solver report) are ignored by the reader.
std::string solution_to_json(const PackingSolution& solution);
PackingSolution solution_from_json(const std::string& text);

void save_solution(const PackingSolution& solution,
                   const std::filesystem::path& path);
PackingSolution load_solution(const std::filesystem::path& path);

}  // namespace seqpack

#endif  // SEQPACK_SOLUTION_HPP
