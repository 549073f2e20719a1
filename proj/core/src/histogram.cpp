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

#include "seqpack/histogram.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <ostream>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

#include "seqpack/error.hpp"

namespace seqpack {

namespace {

void check_max_len(int max_len) {
  if (max_len < 1) {
    throw Error("max_len must be >= 1, got " + std::to_string(max_len));
  }
}

// Uniform in (0, 1), open on both ends so log(-log(u)) style transforms are
// always finite.
double uniform_open01(std::mt19937_64& rng) {
  return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace

SequenceLengthHistogram::SequenceLengthHistogram(int max_len)
    : max_len_(max_len), counts_(static_cast<std::size_t>(max_len), 0) {
  check_max_len(max_len);
}

SequenceLengthHistogram::SequenceLengthHistogram(int max_len,
                                                 std::vector<std::uint64_t> counts)
    : max_len_(max_len), counts_(std::move(counts)) {
  check_max_len(max_len);
  if (counts_.size() != static_cast<std::size_t>(max_len)) {
    throw Error("histogram needs exactly max_len counts: expected " +
                std::to_string(max_len) + ", got " +
                std::to_string(counts_.size()));
  }
}

std::uint64_t SequenceLengthHistogram::total_sequences() const {
  std::uint64_t total = 0;
  for (std::uint64_t c : counts_) total += c;
  return total;
}

std::uint64_t SequenceLengthHistogram::total_tokens() const {
  std::uint64_t total = 0;
  for (int len = 1; len <= max_len_; ++len) {
    total += static_cast<std::uint64_t>(len) * counts_[len - 1];
  }
  return total;
}

SequenceLengthHistogram build_histogram(std::span<const std::int64_t> lengths,
                                        int max_len) {
  SequenceLengthHistogram hist(max_len);
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(max_len), 0);
  for (std::size_t pos = 0; pos < lengths.size(); ++pos) {
    const std::int64_t len = lengths[pos];
    if (len < 1 || len > max_len) {
      throw Error("invalid sequence length " + std::to_string(len) +
                  " at position " + std::to_string(pos) +
                  " (expected 1.." + std::to_string(max_len) + ")");
    }
    ++counts[static_cast<std::size_t>(len - 1)];
  }
  return SequenceLengthHistogram(max_len, std::move(counts));
}

LengthFileFormat parse_length_file_format(const std::string& name) {
  if (name == "text") return LengthFileFormat::kText;
  if (name == "u32") return LengthFileFormat::kU32;
  throw Error("unknown length file format '" + name + "' (valid: text, u32)");
}

void for_each_length(const std::filesystem::path& path, LengthFileFormat format,
                     const std::function<void(std::int64_t)>& sink) {
  std::ifstream in(path, format == LengthFileFormat::kU32
                             ? std::ios::binary | std::ios::in
                             : std::ios::in);
  if (!in) {
    throw Error("cannot open length file: " + path.string());
  }
  if (format == LengthFileFormat::kText) {
    std::string line;
    std::uint64_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty()) continue;
      std::size_t consumed = 0;
      std::int64_t value = 0;
      try {
        value = std::stoll(line, &consumed);
      } catch (const std::exception&) {
        consumed = 0;
      }
      if (consumed == 0 || line.find_first_not_of(" \t", consumed) !=
                               std::string::npos) {
        throw Error("unparsable length at " + path.string() + ":" +
                    std::to_string(line_no) + ": '" + line + "'");
      }
      sink(value);
    }
    if (in.bad()) {
      throw Error("I/O failure while reading " + path.string());
    }
  } else {
    unsigned char buf[4];
    while (in.read(reinterpret_cast<char*>(buf), 4)) {
      const std::uint32_t value = static_cast<std::uint32_t>(buf[0]) |
                                  static_cast<std::uint32_t>(buf[1]) << 8 |
                                  static_cast<std::uint32_t>(buf[2]) << 16 |
                                  static_cast<std::uint32_t>(buf[3]) << 24;
      sink(static_cast<std::int64_t>(value));
    }
    if (in.bad()) {
      throw Error("I/O failure while reading " + path.string());
    }
    if (in.gcount() != 0) {
      throw Error("truncated u32 stream in " + path.string() + ": " +
                  std::to_string(in.gcount()) + " trailing bytes");
    }
  }
}

SequenceLengthHistogram load_histogram_from_lengths(
    const std::filesystem::path& path, LengthFileFormat format, int max_len) {
  check_max_len(max_len);
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(max_len), 0);
  std::uint64_t pos = 0;
  for_each_length(path, format, [&](std::int64_t len) {
    if (len < 1 || len > max_len) {
      throw Error("invalid sequence length " + std::to_string(len) +
                  " at position " + std::to_string(pos) + " in " +
                  path.string() + " (expected 1.." + std::to_string(max_len) +
                  ")");
    }
    ++counts[static_cast<std::size_t>(len - 1)];
    ++pos;
  });
  return SequenceLengthHistogram(max_len, std::move(counts));
}

SequenceLengthHistogram synthetic_skewed_histogram(int max_len,
                                                   std::uint64_t total_sequences,
                                                   double peak_fraction_at_max,
                                                   std::uint64_t seed) {
  check_max_len(max_len);
  if (peak_fraction_at_max < 0.0 || peak_fraction_at_max > 1.0) {
    throw Error("peak_fraction_at_max must be within [0, 1], got " +
                std::to_string(peak_fraction_at_max));
  }
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(max_len), 0);
  const auto peak = static_cast<std::uint64_t>(
      std::llround(peak_fraction_at_max * static_cast<double>(total_sequences)));
  const std::uint64_t at_max = std::min(peak, total_sequences);
  counts[max_len - 1] = at_max;
  std::uint64_t rest = total_sequences - at_max;
  if (rest == 0) {
    return SequenceLengthHistogram(max_len, std::move(counts));
  }
  if (max_len == 1) {
    counts[0] += rest;
    return SequenceLengthHistogram(max_len, std::move(counts));
  }

  // Log-normal-shaped discrete weights over 1..max_len-1: bulk around
  // ~0.3*max_len with a long right tail.
  const double mu = std::log(0.3 * max_len);
  const double sigma = 0.6;
  std::vector<double> cdf(static_cast<std::size_t>(max_len - 1));
  double acc = 0.0;
  for (int len = 1; len < max_len; ++len) {
    const double z = (std::log(static_cast<double>(len)) - mu) / sigma;
    acc += std::exp(-0.5 * z * z) / static_cast<double>(len);
    cdf[len - 1] = acc;
  }
  for (double& v : cdf) v /= acc;

  std::mt19937_64 rng(seed);
  for (std::uint64_t i = 0; i < rest; ++i) {
    const double u = uniform_open01(rng);
    const auto it = std::lower_bound(cdf.begin(), cdf.end(), u);
    const auto idx = static_cast<std::size_t>(it - cdf.begin());
    ++counts[std::min(idx, cdf.size() - 1)];
  }
  return SequenceLengthHistogram(max_len, std::move(counts));
}

SequenceLengthHistogram coarsen_to_even_lengths(
    const SequenceLengthHistogram& hist) {
  const int max_len = hist.max_len();
  if (max_len % 2 != 0) {
    throw Error("coarsen_to_even_lengths: max_len must be even, got " +
                std::to_string(max_len));
  }
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(max_len), 0);
  for (int length = 1; length <= max_len; ++length) {
    const int rounded = length + (length % 2);
    counts[rounded - 1] += hist.count(length);
  }
  return SequenceLengthHistogram(max_len, std::move(counts));
}

double theoretical_speedup(const SequenceLengthHistogram& hist) {
  const std::uint64_t sequences = hist.total_sequences();
  if (sequences == 0) {
    throw Error("theoretical_speedup: no sequences");
  }
  const double padded = static_cast<double>(sequences) *
                        static_cast<double>(hist.max_len());
  return padded / static_cast<double>(hist.total_tokens());
}

void write_histogram_csv(const SequenceLengthHistogram& hist,
                         std::ostream& out) {
  out << "length,count\n";
  for (int len = 1; len <= hist.max_len(); ++len) {
    out << len << ',' << hist.count(len) << '\n';
  }
}

SequenceLengthHistogram read_histogram_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) {
    throw Error("histogram CSV is empty");
  }
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "length,count") {
    throw Error("histogram CSV must start with 'length,count', got '" + line +
                "'");
  }
  std::vector<std::uint64_t> counts;
  std::uint64_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
      throw Error("histogram CSV line " + std::to_string(line_no) +
                  " has no comma: '" + line + "'");
    }
    std::int64_t length = 0;
    std::uint64_t count = 0;
    try {
      length = std::stoll(line.substr(0, comma));
      count = std::stoull(line.substr(comma + 1));
    } catch (const std::exception&) {
      throw Error("histogram CSV line " + std::to_string(line_no) +
                  " is unparsable: '" + line + "'");
    }
    if (length != static_cast<std::int64_t>(counts.size()) + 1) {
      throw Error("histogram CSV line " + std::to_string(line_no) +
                  ": expected length " + std::to_string(counts.size() + 1) +
                  ", got " + std::to_string(length));
    }
    counts.push_back(count);
  }
  if (counts.empty()) {
    throw Error("histogram CSV has no rows");
  }
  const int max_len = static_cast<int>(counts.size());
  return SequenceLengthHistogram(max_len, std::move(counts));
}

std::string histogram_to_json(const SequenceLengthHistogram& hist) {
  nlohmann::json j;
  j["max_len"] = hist.max_len();
  j["counts"] = hist.counts();
  return j.dump();
}

SequenceLengthHistogram histogram_from_json(const std::string& text) {
  try {
    const auto j = nlohmann::json::parse(text);
    const int max_len = j.at("max_len").get<int>();
    auto counts = j.at("counts").get<std::vector<std::uint64_t>>();
    return SequenceLengthHistogram(max_len, std::move(counts));
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("invalid histogram JSON: ") + e.what());
  }
}

void save_histogram(const SequenceLengthHistogram& hist,
                    const std::filesystem::path& path, bool as_json) {
  std::ofstream out(path);
  if (!out) {
    throw Error("cannot write histogram file: " + path.string());
  }
  if (as_json) {
    out << histogram_to_json(hist) << '\n';
  } else {
    write_histogram_csv(hist, out);
  }
  if (!out) {
    throw Error("I/O failure while writing " + path.string());
  }
}

SequenceLengthHistogram load_histogram(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error("cannot open histogram file: " + path.string());
  }
  int first = in.peek();
  while (first == ' ' || first == '\n' || first == '\t' || first == '\r') {
    in.get();
    first = in.peek();
  }
  if (first == '{') {
    std::ostringstream all;
    all << in.rdbuf();
    return histogram_from_json(all.str());
  }
  return read_histogram_csv(in);
}

}  // namespace seqpack
