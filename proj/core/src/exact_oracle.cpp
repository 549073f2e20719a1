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

#include "seqpack/exact_oracle.hpp"

#include <algorithm>
#include <chrono>

#include "seqpack/error.hpp"

namespace seqpack {

namespace {

struct Bin {
  int remaining = 0;
  int slots_used = 0;
  std::vector<int> contents;
};

struct Search {
  std::vector<int> items;  // descending lengths
  int max_len = 0;
  int max_depth = 0;
  std::uint64_t best = 0;
  std::vector<std::vector<int>> best_packs;
  std::vector<Bin> bins;
  std::chrono::steady_clock::time_point deadline;
  std::uint64_t nodes = 0;

  // Remaining-token lower bound on additional bins.
  std::uint64_t lower_bound(std::size_t next_item) const {
    std::int64_t free_space = 0;
    for (const Bin& bin : bins) {
      if (max_depth == 0 || bin.slots_used < max_depth) {
        free_space += bin.remaining;
      }
    }
    std::int64_t pending = 0;
    for (std::size_t i = next_item; i < items.size(); ++i) pending += items[i];
    const std::int64_t overflow = pending - free_space;
    if (overflow <= 0) return bins.size();
    return bins.size() +
           static_cast<std::uint64_t>((overflow + max_len - 1) / max_len);
  }

  void record() {
    best = bins.size();
    best_packs.clear();
    for (const Bin& bin : bins) {
      std::vector<int> pack = bin.contents;
      std::sort(pack.begin(), pack.end());
      best_packs.push_back(std::move(pack));
    }
  }

  void search(std::size_t next_item) {
    if ((++nodes & 0xfff) == 0 &&
        std::chrono::steady_clock::now() > deadline) {
      throw Error("optimal_pack_count: time budget exhausted");
    }
    if (next_item == items.size()) {
      if (bins.size() < best) record();
      return;
    }
    if (bins.size() >= best || lower_bound(next_item) >= best) return;

    const int item = items[next_item];
    // Symmetric bins (same remaining space and same fill count) are
    // interchangeable; try only the first of each kind. Recursion grows the
    // bins vector, so access stays index-based (capacity is reserved up
    // front, but references would still be easy to misuse).
    std::vector<std::pair<int, int>> tried;
    const std::size_t open_bins = bins.size();
    for (std::size_t b = 0; b < open_bins; ++b) {
      if (bins[b].remaining < item) continue;
      if (max_depth > 0 && bins[b].slots_used >= max_depth) continue;
      const std::pair<int, int> kind{bins[b].remaining, bins[b].slots_used};
      if (std::find(tried.begin(), tried.end(), kind) != tried.end()) continue;
      tried.push_back(kind);

      bins[b].remaining -= item;
      ++bins[b].slots_used;
      bins[b].contents.push_back(item);
      search(next_item + 1);
      bins[b].contents.pop_back();
      --bins[b].slots_used;
      bins[b].remaining += item;
    }

    // One fresh bin; opening several at once is symmetric to this branch.
    Bin fresh;
    fresh.remaining = max_len - item;
    fresh.slots_used = 1;
    fresh.contents.push_back(item);
    bins.push_back(std::move(fresh));
    search(next_item + 1);
    bins.pop_back();
  }
};

// First-fit-decreasing upper bound.
std::uint64_t ffd_bound(const std::vector<int>& items, int max_len,
                        int max_depth) {
  std::vector<Bin> bins;
  for (int item : items) {
    bool placed = false;
    for (Bin& bin : bins) {
      if (bin.remaining >= item &&
          (max_depth == 0 || bin.slots_used < max_depth)) {
        bin.remaining -= item;
        ++bin.slots_used;
        placed = true;
        break;
      }
    }
    if (!placed) {
      bins.push_back({max_len - item, 1, {}});
    }
  }
  return bins.size();
}

}  // namespace

OptimalPacking optimal_pack_count(const SequenceLengthHistogram& hist,
                                  int max_depth, const OracleLimit& limit) {
  const std::uint64_t n = hist.total_sequences();
  if (n > limit.max_sequences) {
    throw Error("optimal_pack_count: " + std::to_string(n) +
                " sequences exceed the oracle limit of " +
                std::to_string(limit.max_sequences));
  }
  if (hist.max_len() > limit.max_len) {
    throw Error("optimal_pack_count: max_len " +
                std::to_string(hist.max_len()) +
                " exceeds the oracle limit of " + std::to_string(limit.max_len));
  }
  OptimalPacking result;
  if (n == 0) return result;

  Search s;
  s.max_len = hist.max_len();
  s.max_depth = max_depth;
  for (int length = hist.max_len(); length >= 1; --length) {
    for (std::uint64_t c = 0; c < hist.count(length); ++c) {
      s.items.push_back(length);
    }
  }
  s.bins.reserve(s.items.size());
  s.best = ffd_bound(s.items, s.max_len, max_depth) + 1;
  s.deadline = std::chrono::steady_clock::now() +
               std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                   std::chrono::duration<double>(limit.time_budget_seconds));
  s.search(0);

  result.min_packs = s.best;
  result.packs = std::move(s.best_packs);
  return result;
}

std::uint64_t count_exact_partitions(int max_len, int depth) {
  if (max_len < 1 || max_len > 1024) {
    throw Error("count_exact_partitions: max_len must be in 1..1024");
  }
  if (depth < 1 || depth > 4) {
    throw Error("count_exact_partitions: depth must be in 1..4");
  }
  // Partitions with non-decreasing parts, counted one partition at a time.
  auto recurse = [](auto&& self, int remaining, int min_part,
                    int parts_left) -> std::uint64_t {
    if (remaining == 0) return 1;
    if (parts_left == 0) return 0;
    std::uint64_t total = 0;
    for (int part = min_part; part <= remaining; ++part) {
      total += self(self, remaining - part, part, parts_left - 1);
    }
    return total;
  };
  return recurse(recurse, max_len, 1, depth);
}

}  // namespace seqpack
