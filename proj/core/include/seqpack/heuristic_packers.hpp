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

#ifndef SEQPACK_HEURISTIC_PACKERS_HPP
#define SEQPACK_HEURISTIC_PACKERS_HPP

#include "seqpack/histogram.hpp"
#include "seqpack/solution.hpp"

namespace seqpack {

// Depth sentinel: a pack of all length-1 sequences is the true ceiling, so
// "unlimited" is represented as max_len.
inline constexpr int kUnlimitedDepth = 0;

// Shortest-pack-first histogram packing. Worst-fit over the histogram from
// longest to shortest length: every sequence goes to the open pack with the
// most space left (ties: earliest-created pack), a new pack is opened when
// none fits. Bulk semantics mirror per-sample worst-fit exactly: a length
// whose count only partially covers a group of identical packs splits the
// group in two.
PackingSolution spfhp(const SequenceLengthHistogram& hist,
                      int max_depth = kUnlimitedDepth);

// Longest-pack-first histogram packing. Best-fit variant of spfhp (smallest
// remaining capacity that still fits) with histogram-count splitting: when a
// length divides max_len exactly (k = max_len/i >= 2, k within the depth
// limit), count/k perfect packs [i, ..., i] are emitted up front and only the
// remainder joins the general best-fit pass.
PackingSolution lpfhp(const SequenceLengthHistogram& hist,
                      int max_depth = kUnlimitedDepth);

}  // namespace seqpack

#endif  // SEQPACK_HEURISTIC_PACKERS_HPP
