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

// Command line front end: histogram ingestion, packing, CSV reports,
// the attention-mask / LAMB kernels and the cluster-scaling simulator.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "seqpack/error.hpp"
#include "seqpack/heuristic_packers.hpp"
#include "seqpack/histogram.hpp"
#include "seqpack/metrics.hpp"
#include "seqpack/model_adapters.hpp"
#include "seqpack/nnls_packer.hpp"
#include "seqpack/scaling_sim.hpp"
#include "seqpack/solution.hpp"

namespace {

using seqpack::Error;

void write_text_output(const std::optional<std::string>& out_path,
                       const std::string& content) {
  if (!out_path) {
    std::cout << content;
    return;
  }
  std::ofstream out(*out_path);
  if (!out) {
    throw Error("cannot write output file: " + *out_path);
  }
  out << content;
  if (!out) {
    throw Error("I/O failure while writing " + *out_path);
  }
}

struct HistogramArgs {
  std::string lengths_file;
  int max_len = 512;
  std::string format = "text";
  std::optional<std::string> out;
  bool json = false;
};

int run_histogram(const HistogramArgs& args) {
  const auto format = seqpack::parse_length_file_format(args.format);
  const auto hist =
      seqpack::load_histogram_from_lengths(args.lengths_file, format, args.max_len);
  if (args.out) {
    seqpack::save_histogram(hist, *args.out, args.json);
  } else {
    std::ostringstream buf;
    if (args.json) {
      buf << seqpack::histogram_to_json(hist) << '\n';
    } else {
      seqpack::write_histogram_csv(hist, buf);
    }
    std::cout << buf.str();
  }
  std::cout << "total_sequences=" << hist.total_sequences()
            << " total_tokens=" << hist.total_tokens();
  if (hist.total_sequences() > 0) {
    char speedup[32];
    std::snprintf(speedup, sizeof(speedup), "%.4f",
                  seqpack::theoretical_speedup(hist));
    std::cout << " theoretical_speedup=" << speedup;
  }
  std::cout << '\n';
  return 0;
}

struct PackArgs {
  std::string histogram_file;
  std::string algorithm;
  std::string depth = "default";
  double small_weight = 0.09;
  double large_weight = 1e6;
  double tolerance = 1e-8;
  int max_iterations = 0;
  bool repack_leftovers = false;
  bool round_up = false;
  bool coarsen_even = false;
  double overhead = 0.0;
  std::optional<std::string> out;
};

int parse_depth(const std::string& text, const std::string& algorithm) {
  if (text == "default") {
    return (algorithm == "nnlshp" || algorithm == "ennlshp")
               ? 3
               : seqpack::kUnlimitedDepth;
  }
  if (text == "max" || text == "unlimited") return seqpack::kUnlimitedDepth;
  try {
    std::size_t used = 0;
    const int depth = std::stoi(text, &used);
    if (used != text.size() || depth < 1) throw Error("bad depth");
    return depth;
  } catch (const std::exception&) {
    throw Error("invalid --depth '" + text + "' (expected a positive integer, "
                "'max' or 'default')");
  }
}

// Solver flags only make sense for the algorithm family they configure;
// conflicts are rejected up front, naming both flags.
void reject_flag_conflicts(const CLI::App& pack_cmd,
                           const std::string& algorithm) {
  const bool heuristic = algorithm == "spfhp" || algorithm == "lpfhp";
  struct Rule {
    const char* flag;
    bool conflicting;
  };
  const Rule rules[] = {
      {"--small-weight", heuristic || algorithm == "ennlshp"},
      {"--large-weight", heuristic || algorithm == "nnlshp"},
      {"--round-up", algorithm != "ennlshp"},
      {"--repack-leftovers", heuristic},
      {"--tolerance", heuristic},
      {"--max-iterations", heuristic},
  };
  for (const Rule& rule : rules) {
    if (rule.conflicting && pack_cmd.count(rule.flag) > 0) {
      throw Error(std::string(rule.flag) + " conflicts with --algorithm " +
                  algorithm);
    }
  }
}

int run_pack(const PackArgs& args) {
  static const std::vector<std::string> kAlgorithms = {"spfhp", "lpfhp",
                                                       "nnlshp", "ennlshp"};
  if (std::find(kAlgorithms.begin(), kAlgorithms.end(), args.algorithm) ==
      kAlgorithms.end()) {
    throw Error("unknown algorithm '" + args.algorithm +
                "' (valid: spfhp, lpfhp, nnlshp, ennlshp)");
  }
  auto hist = seqpack::load_histogram(args.histogram_file);
  if (args.coarsen_even) {
    hist = seqpack::coarsen_to_even_lengths(hist);
  }
  const int depth = parse_depth(args.depth, args.algorithm);

  seqpack::PackingSolution solution;
  std::string payload;
  if (args.algorithm == "spfhp") {
    solution = seqpack::spfhp(hist, depth);
    payload = seqpack::solution_to_json(solution) + "\n";
  } else if (args.algorithm == "lpfhp") {
    solution = seqpack::lpfhp(hist, depth);
    payload = seqpack::solution_to_json(solution) + "\n";
  } else if (args.algorithm == "nnlshp") {
    seqpack::NnlshpOptions options;
    // An explicit --depth max runs into the enumeration cap, with its error.
    options.max_depth =
        depth == seqpack::kUnlimitedDepth ? hist.max_len() : depth;
    auto weights = seqpack::default_weights(hist.max_len());
    for (int len = 1; len <= std::min(8, hist.max_len()); ++len) {
      weights.weights[len - 1] = args.small_weight;
    }
    options.weights = std::move(weights);
    options.tolerance = args.tolerance;
    options.max_iterations = args.max_iterations;
    options.repack_leftovers = args.repack_leftovers;
    auto [s, report] = seqpack::nnlshp(hist, options);
    solution = std::move(s);
    payload = seqpack::solution_with_report_to_json(solution, report) + "\n";
  } else {
    seqpack::EnnlshpOptions options;
    options.max_depth =
        depth == seqpack::kUnlimitedDepth ? hist.max_len() : depth;
    options.large_weight = args.large_weight;
    options.tolerance = args.tolerance;
    options.max_iterations = args.max_iterations;
    options.repack_leftovers = args.repack_leftovers;
    options.round_up = args.round_up;
    auto [s, report] = seqpack::ennlshp(hist, options);
    solution = std::move(s);
    payload = seqpack::solution_with_report_to_json(solution, report) + "\n";
  }

  // evaluate() rejects any coverage violation before a solution is emitted.
  const auto row = seqpack::make_report_row(hist, solution, args.overhead);
  if (args.out) {
    write_text_output(args.out, payload);
  }
  std::ostringstream csv;
  seqpack::write_report_csv(std::span(&row, 1), csv);
  std::cout << csv.str();
  return 0;
}

struct ReportArgs {
  std::vector<std::string> solution_files;
  double overhead = 0.0;
  std::optional<std::string> out;
};

int run_report(const ReportArgs& args) {
  std::vector<seqpack::ReportRow> rows;
  for (const std::string& file : args.solution_files) {
    const auto solution = seqpack::load_solution(file);
    // The coverage contract pins down the histogram the solution packed, so
    // stats are reproducible from the solution file alone.
    std::vector<std::uint64_t> counts(
        static_cast<std::size_t>(solution.max_len), 0);
    for (const auto& entry : solution.mixture) {
      for (int length : entry.strategy) {
        counts[length - 1] += entry.repeat;
      }
    }
    for (const auto& pad : solution.padding_sequences) {
      if (pad.length < 1 || pad.length > solution.max_len ||
          counts[pad.length - 1] < pad.count) {
        throw Error("solution file " + file +
                    " declares padding that the mixture does not cover");
      }
      counts[pad.length - 1] -= pad.count;
    }
    const seqpack::SequenceLengthHistogram hist(solution.max_len,
                                                std::move(counts));
    rows.push_back(seqpack::make_report_row(hist, solution, args.overhead));
  }
  std::ostringstream csv;
  seqpack::write_report_csv(rows, csv);
  write_text_output(args.out, csv.str());
  return 0;
}

struct MaskArgs {
  std::string composition;
  bool json = false;
  bool neg_inf = false;
  std::optional<std::string> out;
};

int run_mask(const MaskArgs& args) {
  const auto comp = seqpack::parse_pack_composition(args.composition);
  const auto mask = seqpack::build_attention_mask(comp, args.neg_inf);
  std::ostringstream buf;
  if (args.json) {
    nlohmann::json rows = nlohmann::json::array();
    for (int i = 0; i < mask.size; ++i) {
      nlohmann::json row = nlohmann::json::array();
      for (int j = 0; j < mask.size; ++j) row.push_back(int(mask.at(i, j)));
      rows.push_back(std::move(row));
    }
    buf << rows.dump() << '\n';
  } else {
    for (int i = 0; i < mask.size; ++i) {
      for (int j = 0; j < mask.size; ++j) buf << int(mask.at(i, j));
      buf << '\n';
    }
  }
  write_text_output(args.out, buf.str());
  return 0;
}

struct LambArgs {
  double beta1 = 0.0;
  double beta2 = 0.0;
  double packing_factor = 1.0;
  bool json = false;
};

int run_lamb(const LambArgs& args) {
  const auto [b1, b2] =
      seqpack::adjust_lamb_betas(args.beta1, args.beta2, args.packing_factor);
  char buf[96];
  if (args.json) {
    std::snprintf(buf, sizeof(buf), "{\"beta1\":%.10g,\"beta2\":%.10g}\n", b1,
                  b2);
  } else {
    std::snprintf(buf, sizeof(buf), "%.10g, %.10g\n", b1, b2);
  }
  std::cout << buf;
  return 0;
}

struct ScalingArgs {
  double alpha_n = 1.6038;
  double beta_n = 0.1288;
  int fit_devices = 8;
  std::string devices = "1,2,8,32,2048";
  double packing_speedup = 1.913;
  std::uint64_t samples = 1000000;
  std::uint64_t seed = 7;
  std::optional<std::string> out;
};

int run_scaling(const ScalingArgs& args) {
  std::vector<std::uint64_t> device_counts;
  std::stringstream in(args.devices);
  std::string token;
  while (std::getline(in, token, ',')) {
    try {
      device_counts.push_back(std::stoull(token));
    } catch (const std::exception&) {
      throw Error("invalid --devices entry '" + token + "'");
    }
  }
  const seqpack::GumbelParams fitted = seqpack::fit_single_device(
      {args.alpha_n, args.beta_n}, args.fit_devices);
  char info[128];
  std::snprintf(info, sizeof(info),
                "fitted single-device gumbel: alpha_1=%.4f beta_1=%.4f\n",
                fitted.alpha, fitted.beta);
  std::cerr << info;
  const auto rows = seqpack::speedup_curve(
      fitted, device_counts, args.packing_speedup, args.samples, args.seed);
  std::ostringstream csv;
  seqpack::write_speedup_curve_csv(rows, csv);
  write_text_output(args.out, csv.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"histogram-based sequence packing toolkit"};
  app.require_subcommand(1);

  HistogramArgs hist_args;
  auto* hist_cmd = app.add_subcommand(
      "histogram", "Build a length histogram from a lengths file");
  hist_cmd->add_option("lengths-file", hist_args.lengths_file,
                       "one integer per line, or raw little-endian u32 with "
                       "--format=u32")
      ->required();
  hist_cmd->add_option("--max-len", hist_args.max_len, "maximum length")
      ->check(CLI::PositiveNumber);
  hist_cmd->add_option("--format", hist_args.format, "text | u32");
  hist_cmd->add_option("--out", hist_args.out, "histogram output file");
  hist_cmd->add_flag("--json", hist_args.json, "emit JSON instead of CSV");

  PackArgs pack_args;
  auto* pack_cmd = app.add_subcommand("pack", "Pack a histogram");
  pack_cmd->add_option("histogram-file", pack_args.histogram_file)->required();
  pack_cmd->add_option("--algorithm", pack_args.algorithm,
                       "spfhp | lpfhp | nnlshp | ennlshp")
      ->required();
  pack_cmd->add_option("--depth", pack_args.depth,
                       "packing depth (integer, 'max' or 'default')");
  pack_cmd->add_option("--small-weight", pack_args.small_weight,
                       "nnlshp residual weight for lengths <= 8");
  pack_cmd->add_option("--large-weight", pack_args.large_weight,
                       "ennlshp residual-block weight");
  pack_cmd->add_option("--tolerance", pack_args.tolerance,
                       "nnls KKT tolerance");
  pack_cmd->add_option("--max-iterations", pack_args.max_iterations,
                       "nnls iteration cap (0 = 3x columns)");
  pack_cmd->add_flag("--repack-leftovers", pack_args.repack_leftovers,
                     "second SPFHP pass over unpacked sequences");
  pack_cmd->add_flag("--round-up", pack_args.round_up,
                     "ennlshp: round the mixture up instead of to nearest");
  pack_cmd->add_flag("--coarsen-even", pack_args.coarsen_even,
                     "round odd lengths up to even before packing");
  pack_cmd->add_option("--overhead", pack_args.overhead,
                       "overhead fraction for the realized speed-up column");
  pack_cmd->add_option("--out", pack_args.out, "solution JSON output file");

  ReportArgs report_args;
  auto* report_cmd =
      app.add_subcommand("report", "Merge solution files into one CSV table");
  report_cmd->add_option("solutions", report_args.solution_files,
                         "solution JSON files");
  report_cmd->add_option("--overhead", report_args.overhead,
                         "overhead fraction applied to every row");
  report_cmd->add_option("--out", report_args.out, "CSV output file");

  MaskArgs mask_args;
  auto* mask_cmd = app.add_subcommand(
      "mask", "Print the block-diagonal attention mask for a composition");
  mask_cmd->add_option("composition", mask_args.composition,
                       "comma separated sequence ids, e.g. 1,1,1,2,2")
      ->required();
  mask_cmd->add_flag("--json", mask_args.json, "emit nested JSON arrays");
  mask_cmd->add_flag("--neg-inf", mask_args.neg_inf,
                     "use -inf instead of -1000 in the additive mask");
  mask_cmd->add_option("--out", mask_args.out, "output file");

  LambArgs lamb_args;
  auto* lamb_cmd = app.add_subcommand(
      "lamb", "Adjust LAMB decay parameters for a packing factor");
  lamb_cmd->add_option("beta1", lamb_args.beta1)->required();
  lamb_cmd->add_option("beta2", lamb_args.beta2)->required();
  lamb_cmd->add_option("packing-factor", lamb_args.packing_factor)->required();
  lamb_cmd->add_flag("--json", lamb_args.json, "emit JSON");

  ScalingArgs scaling_args;
  auto* scaling_cmd = app.add_subcommand(
      "scaling", "Un-padding speed-up versus cluster size");
  scaling_cmd->add_option("--alpha8", scaling_args.alpha_n,
                          "observed n-device gumbel location");
  scaling_cmd->add_option("--beta8", scaling_args.beta_n,
                          "observed n-device gumbel scale");
  scaling_cmd->add_option("--fit-devices", scaling_args.fit_devices,
                          "device count behind the observed fit");
  scaling_cmd->add_option("--devices", scaling_args.devices,
                          "comma separated cluster sizes");
  scaling_cmd->add_option("--packing-speedup", scaling_args.packing_speedup,
                          "constant packing speed-up column");
  scaling_cmd->add_option("--samples", scaling_args.samples,
                          "Monte-Carlo samples per cluster size");
  scaling_cmd->add_option("--seed", scaling_args.seed, "RNG seed");
  scaling_cmd->add_option("--out", scaling_args.out, "CSV output file");

  try {
    app.parse(argc, argv);
    if (hist_cmd->parsed()) return run_histogram(hist_args);
    if (pack_cmd->parsed()) {
      reject_flag_conflicts(*pack_cmd, pack_args.algorithm);
      return run_pack(pack_args);
    }
    if (report_cmd->parsed()) return run_report(report_args);
    if (mask_cmd->parsed()) return run_mask(mask_args);
    if (lamb_cmd->parsed()) return run_lamb(lamb_args);
    if (scaling_cmd->parsed()) return run_scaling(scaling_args);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
