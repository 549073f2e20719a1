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

#ifndef SEQPACK_HISTOGRAM_HPP
#define SEQPACK_HISTOGRAM_HPP

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace seqpack {

// Per-length sequence counts for lengths 1..max_len. This is the problem
// input every packer consumes; counts are immutable after construction and
// safe to share across threads.
class SequenceLengthHistogram {
 public:
  explicit SequenceLengthHistogram(int max_len);
  SequenceLengthHistogram(int max_len, std::vector<std::uint64_t> counts);

  int max_len() const { return max_len_; }
  std::uint64_t count(int length) const { return counts_[length - 1]; }
  // counts()[i] is the count for length i + 1.
  const std::vector<std::uint64_t>& counts() const { return counts_; }

  std::uint64_t total_sequences() const;
  std::uint64_t total_tokens() const;

  bool operator==(const SequenceLengthHistogram&) const = default;

 private:
  int max_len_;
  std::vector<std::uint64_t> counts_;
};

// Counts the multiplicity of every length in a single pass. Lengths outside
// 1..max_len are rejected with the offending value and its zero-based
// position in the input.
SequenceLengthHistogram build_histogram(std::span<const std::int64_t> lengths,
                                        int max_len);

enum class LengthFileFormat {
  kText,  // one base-10 integer per line
  kU32,   // little-endian unsigned 32-bit stream
};

LengthFileFormat parse_length_file_format(const std::string& name);

// Streams lengths out of a file in file order with constant memory. Text
// parse failures report the 1-based line number; I/O failures carry the path.
void for_each_length(const std::filesystem::path& path, LengthFileFormat format,
                     const std::function<void(std::int64_t)>& sink);

SequenceLengthHistogram load_histogram_from_lengths(
    const std::filesystem::path& path, LengthFileFormat format, int max_len);

// Deterministically generates a right-skewed histogram with
// round(peak_fraction_at_max * total_sequences) sequences pinned at max_len
// and the remainder drawn from a seeded log-normal-shaped distribution over
// 1..max_len-1. The total is preserved exactly.
SequenceLengthHistogram synthetic_skewed_histogram(int max_len,
                                                   std::uint64_t total_sequences,
                                                   double peak_fraction_at_max,
                                                   std::uint64_t seed);

// Padded tokens over real tokens: (total_sequences * max_len) / total_tokens.
double theoretical_speedup(const SequenceLengthHistogram& hist);

// Rounds every odd length up to the next even one, halving the number of
// distinct lengths. Opt-in coarsening for deep packing runs where the full
// strategy matrix would be too large; requires an even max_len.
SequenceLengthHistogram coarsen_to_even_lengths(
    const SequenceLengthHistogram& hist);

// CSV format: header "length,count" then one row per length 1..max_len,
// zeros included.
void write_histogram_csv(const SequenceLengthHistogram& hist, std::ostream& out);
SequenceLengthHistogram read_histogram_csv(std::istream& in);

// JSON format: {"max_len": int, "counts": [int; max_len]}.
std::string histogram_to_json(const SequenceLengthHistogram& hist);
SequenceLengthHistogram histogram_from_json(const std::string& text);

void save_histogram(const SequenceLengthHistogram& hist,
                    const std::filesystem::path& path, bool as_json);
// Loads CSV or JSON, sniffed from the first non-space character.
SequenceLengthHistogram load_histogram(const std::filesystem::path& path);

}  // namespace seqpack

#endif  // SEQPACK_HISTOGRAM_HPP
