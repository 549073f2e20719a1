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

#include "seqpack/solution.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "seqpack/error.hpp"

namespace seqpack {

std::uint64_t PackingSolution::num_packs() const {
  std::uint64_t packs = 0;
  for (const MixtureEntry& e : mixture) packs += e.repeat;
  return packs;
}

int PackingSolution::max_depth_observed() const {
  std::size_t depth = 0;
  for (const MixtureEntry& e : mixture) {
    if (e.repeat > 0) depth = std::max(depth, e.strategy.size());
  }
  return static_cast<int>(depth);
}

std::uint64_t PackingSolution::padding_sequence_count(int length) const {
  std::uint64_t total = 0;
  for (const PaddingEntry& e : padding_sequences) {
    if (e.length == length) total += e.count;
  }
  return total;
}

void PackingSolution::normalize() {
  std::sort(mixture.begin(), mixture.end(),
            [](const MixtureEntry& a, const MixtureEntry& b) {
              return strategy_less(a.strategy, b.strategy);
            });
  std::vector<MixtureEntry> merged;
  for (MixtureEntry& e : mixture) {
    if (e.repeat == 0) continue;
    if (!merged.empty() && merged.back().strategy == e.strategy) {
      merged.back().repeat += e.repeat;
    } else {
      merged.push_back(std::move(e));
    }
  }
  mixture = std::move(merged);

  std::sort(padding_sequences.begin(), padding_sequences.end(),
            [](const PaddingEntry& a, const PaddingEntry& b) {
              return a.length < b.length;
            });
  std::vector<PaddingEntry> pad;
  for (const PaddingEntry& e : padding_sequences) {
    if (e.count == 0) continue;
    if (!pad.empty() && pad.back().length == e.length) {
      pad.back().count += e.count;
    } else {
      pad.push_back(e);
    }
  }
  padding_sequences = std::move(pad);
}

namespace {

nlohmann::json solution_to_json_object(const PackingSolution& solution) {
  nlohmann::json j;
  j["max_len"] = solution.max_len;
  j["algorithm"] = solution.algorithm;
  auto mixture = nlohmann::json::array();
  for (const MixtureEntry& e : solution.mixture) {
    mixture.push_back({{"strategy", e.strategy}, {"repeat", e.repeat}});
  }
  j["mixture"] = std::move(mixture);
  auto padding = nlohmann::json::array();
  for (const PaddingEntry& e : solution.padding_sequences) {
    padding.push_back({{"length", e.length}, {"count", e.count}});
  }
  j["padding_sequences"] = std::move(padding);
  return j;
}

}  // namespace

std::string solution_to_json(const PackingSolution& solution) {
  return solution_to_json_object(solution).dump();
}

PackingSolution solution_from_json(const std::string& text) {
  try {
    const auto j = nlohmann::json::parse(text);
    PackingSolution s;
    s.max_len = j.at("max_len").get<int>();
    s.algorithm = j.at("algorithm").get<std::string>();
    for (const auto& e : j.at("mixture")) {
      s.mixture.push_back({e.at("strategy").get<Strategy>(),
                           e.at("repeat").get<std::uint64_t>()});
    }
    for (const auto& e : j.at("padding_sequences")) {
      s.padding_sequences.push_back(
          {e.at("length").get<int>(), e.at("count").get<std::uint64_t>()});
    }
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("invalid packing solution JSON: ") + e.what());
  }
}

void save_solution(const PackingSolution& solution,
                   const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw Error("cannot write solution file: " + path.string());
  }
  out << solution_to_json(solution) << '\n';
  if (!out) {
    throw Error("I/O failure while writing " + path.string());
  }
}

PackingSolution load_solution(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error("cannot open solution file: " + path.string());
  }
  std::ostringstream all;
  all << in.rdbuf();
  return solution_from_json(all.str());
}

}  // namespace seqpack
