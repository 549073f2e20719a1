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

#include "seqpack/heuristic_packers.hpp"

#include <algorithm>
#include <cstdint>
#include <list>

#include "seqpack/error.hpp"

namespace seqpack {

namespace {

// A bulk of pack_count identical open packs sharing one partial strategy.
struct PackGroup {
  Strategy strategy;       // sorted
  int remaining = 0;       // max_len - sum(strategy)
  std::uint64_t pack_count = 0;
  std::uint64_t created = 0;  // creation rank of the underlying packs
};

enum class Fit { kWorst, kBest };

void append_sorted(Strategy& s, int length) {
  s.insert(std::upper_bound(s.begin(), s.end(), length), length);
}

// Shared histogram packing loop. Lengths are processed longest to shortest;
// each bulk of `count` sequences of one length is assigned to open pack
// groups chosen by the fit policy (worst fit = most space left, best fit =
// least space left; ties go to the earliest-created group). A group whose
// packs are only partially covered splits in two, which is exactly how
// per-sample fitting behaves on runs of equal-length sequences. When no open
// pack fits, fresh packs are opened and keep absorbing the same length while
// they remain the only candidates, so a run of c sequences of length L opens
// floor(c/k) packs holding k = min(max_len/L, depth) copies plus one partial
// pack for the remainder.
std::vector<PackGroup> pack_histogram(const SequenceLengthHistogram& hist,
                                      int max_depth, Fit fit,
                                      std::vector<std::uint64_t> counts) {
  const int max_len = hist.max_len();
  std::list<PackGroup> groups;
  std::uint64_t next_rank = 0;

  for (int length = max_len; length >= 1; --length) {
    std::uint64_t c = counts[length - 1];
    while (c > 0) {
      auto best = groups.end();
      for (auto it = groups.begin(); it != groups.end(); ++it) {
        if (it->remaining < length) continue;
        if (static_cast<int>(it->strategy.size()) >= max_depth) continue;
        if (best == groups.end()) {
          best = it;
          continue;
        }
        const bool preferred = fit == Fit::kWorst
                                   ? it->remaining > best->remaining
                                   : it->remaining < best->remaining;
        const bool tied = it->remaining == best->remaining &&
                          it->created < best->created;
        if (preferred || tied) best = it;
      }

      if (best == groups.end()) {
        const int per_pack = std::min(max_len / length, max_depth);
        const std::uint64_t k = static_cast<std::uint64_t>(per_pack);
        const std::uint64_t full = c / k;
        const std::uint64_t rem = c % k;
        if (full > 0) {
          PackGroup g;
          g.strategy.assign(static_cast<std::size_t>(per_pack), length);
          g.remaining = max_len - per_pack * length;
          g.pack_count = full;
          g.created = next_rank++;
          groups.push_back(std::move(g));
        }
        if (rem > 0) {
          PackGroup g;
          g.strategy.assign(static_cast<std::size_t>(rem), length);
          g.remaining = max_len - static_cast<int>(rem) * length;
          g.pack_count = 1;
          g.created = next_rank++;
          groups.push_back(std::move(g));
        }
        c = 0;
        continue;
      }

      const std::uint64_t take = std::min(c, best->pack_count);
      if (take < best->pack_count) {
        // Untouched part keeps the original strategy and rank.
        PackGroup untouched = *best;
        untouched.pack_count = best->pack_count - take;
        best->pack_count = take;
        groups.insert(std::next(best), std::move(untouched));
      }
      append_sorted(best->strategy, length);
      best->remaining -= length;
      c -= take;
    }
  }
  return std::vector<PackGroup>(groups.begin(), groups.end());
}

PackingSolution groups_to_solution(int max_len, std::string algorithm,
                                   const std::vector<PackGroup>& groups,
                                   std::vector<MixtureEntry> pre_mixture) {
  PackingSolution solution;
  solution.max_len = max_len;
  solution.algorithm = std::move(algorithm);
  solution.mixture = std::move(pre_mixture);
  for (const PackGroup& g : groups) {
    if (g.pack_count > 0) {
      solution.mixture.push_back({g.strategy, g.pack_count});
    }
  }
  solution.normalize();
  return solution;
}

int effective_depth(const SequenceLengthHistogram& hist, int max_depth) {
  if (max_depth == kUnlimitedDepth) return hist.max_len();
  if (max_depth < 1) {
    throw Error("packing depth must be >= 1, got " + std::to_string(max_depth));
  }
  return std::min(max_depth, hist.max_len());
}

}  // namespace

PackingSolution spfhp(const SequenceLengthHistogram& hist, int max_depth) {
  const int depth = effective_depth(hist, max_depth);
  const auto groups = pack_histogram(hist, depth, Fit::kWorst, hist.counts());
  return groups_to_solution(hist.max_len(), "spfhp", groups, {});
}

PackingSolution lpfhp(const SequenceLengthHistogram& hist, int max_depth) {
  const int depth = effective_depth(hist, max_depth);
  const int max_len = hist.max_len();

  // Histogram-count splitting: lengths that divide max_len exactly are
  // packed as [i, i, ..., i] up front and only the remainder is best-fit.
  std::vector<std::uint64_t> counts = hist.counts();
  std::vector<MixtureEntry> perfect;
  for (int length = 1; length <= max_len; ++length) {
    if (counts[length - 1] == 0) continue;
    const int k = max_len / length;
    if (k < 2 || k > depth || k * length != max_len) continue;
    const std::uint64_t repeats = counts[length - 1] / static_cast<std::uint64_t>(k);
    if (repeats == 0) continue;
    Strategy s(static_cast<std::size_t>(k), length);
    perfect.push_back({std::move(s), repeats});
    counts[length - 1] -= repeats * static_cast<std::uint64_t>(k);
  }

  const auto groups = pack_histogram(hist, depth, Fit::kBest, std::move(counts));
  return groups_to_solution(max_len, "lpfhp", groups, std::move(perfect));
}

}  // namespace seqpack
