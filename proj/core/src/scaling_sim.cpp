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

#include "seqpack/scaling_sim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <random>

#include "seqpack/error.hpp"

namespace seqpack {

namespace {

void check_params(const GumbelParams& params) {
  if (!(params.beta > 0.0)) {
    throw Error("gumbel scale must be > 0, got " + std::to_string(params.beta));
  }
}

double uniform_open01(std::mt19937_64& rng) {
  return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace

double gumbel_cdf(const GumbelParams& params, double s) {
  check_params(params);
  return std::exp(-std::exp(-(s - params.alpha) / params.beta));
}

double gumbel_sf(const GumbelParams& params, double s) {
  return 1.0 - gumbel_cdf(params, s);
}

SimplexResult simplex_minimize(
    const std::function<double(std::span<const double>)>& f,
    std::span<const double> x0, const SimplexOptions& options) {
  const std::size_t dim = x0.size();
  if (dim == 0) {
    throw Error("simplex_minimize: empty starting point");
  }

  // Initial simplex: the starting point plus one vertex per coordinate,
  // displaced by 5% (or a small absolute step on zero coordinates).
  std::vector<std::vector<double>> vertices(dim + 1,
                                            std::vector<double>(x0.begin(), x0.end()));
  for (std::size_t i = 0; i < dim; ++i) {
    double& v = vertices[i + 1][i];
    v = v != 0.0 ? v * 1.05 : 0.00025;
  }
  std::vector<double> fv(dim + 1);
  for (std::size_t i = 0; i <= dim; ++i) fv[i] = f(vertices[i]);

  constexpr double kReflect = 1.0;
  constexpr double kExpand = 2.0;
  constexpr double kContract = 0.5;
  constexpr double kShrink = 0.5;

  std::vector<double> centroid(dim), trial(dim), trial2(dim);
  SimplexResult result;

  auto order = [&] {
    // Insertion order is stable; ties keep their relative order, which keeps
    // the search deterministic.
    std::vector<std::size_t> idx(dim + 1);
    for (std::size_t i = 0; i <= dim; ++i) idx[i] = i;
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
    std::vector<std::vector<double>> vs(dim + 1);
    std::vector<double> fs(dim + 1);
    for (std::size_t i = 0; i <= dim; ++i) {
      vs[i] = std::move(vertices[idx[i]]);
      fs[i] = fv[idx[i]];
    }
    vertices = std::move(vs);
    fv = std::move(fs);
  };

  int iter = 0;
  for (; iter < options.max_iterations; ++iter) {
    order();

    double diameter = 0.0;
    for (std::size_t i = 1; i <= dim; ++i) {
      for (std::size_t d = 0; d < dim; ++d) {
        diameter = std::max(diameter, std::abs(vertices[i][d] - vertices[0][d]));
      }
    }
    if (diameter < options.diameter_tolerance) {
      result.converged = true;
      break;
    }

    for (std::size_t d = 0; d < dim; ++d) {
      double acc = 0.0;
      for (std::size_t i = 0; i < dim; ++i) acc += vertices[i][d];
      centroid[d] = acc / static_cast<double>(dim);
    }

    for (std::size_t d = 0; d < dim; ++d) {
      trial[d] = centroid[d] + kReflect * (centroid[d] - vertices[dim][d]);
    }
    const double f_reflect = f(trial);

    if (f_reflect < fv[0]) {
      for (std::size_t d = 0; d < dim; ++d) {
        trial2[d] = centroid[d] + kExpand * (trial[d] - centroid[d]);
      }
      const double f_expand = f(trial2);
      if (f_expand < f_reflect) {
        vertices[dim] = trial2;
        fv[dim] = f_expand;
      } else {
        vertices[dim] = trial;
        fv[dim] = f_reflect;
      }
      continue;
    }
    if (f_reflect < fv[dim - 1]) {
      vertices[dim] = trial;
      fv[dim] = f_reflect;
      continue;
    }

    if (f_reflect < fv[dim]) {
      // Outside contraction.
      for (std::size_t d = 0; d < dim; ++d) {
        trial2[d] = centroid[d] + kContract * (trial[d] - centroid[d]);
      }
      const double f_contract = f(trial2);
      if (f_contract <= f_reflect) {
        vertices[dim] = trial2;
        fv[dim] = f_contract;
        continue;
      }
    } else {
      // Inside contraction.
      for (std::size_t d = 0; d < dim; ++d) {
        trial2[d] = centroid[d] - kContract * (centroid[d] - vertices[dim][d]);
      }
      const double f_contract = f(trial2);
      if (f_contract < fv[dim]) {
        vertices[dim] = trial2;
        fv[dim] = f_contract;
        continue;
      }
    }

    for (std::size_t i = 1; i <= dim; ++i) {
      for (std::size_t d = 0; d < dim; ++d) {
        vertices[i][d] =
            vertices[0][d] + kShrink * (vertices[i][d] - vertices[0][d]);
      }
      fv[i] = f(vertices[i]);
    }
  }

  order();
  result.x = vertices[0];
  result.fmin = fv[0];
  result.iterations = iter;
  return result;
}

GumbelParams fit_single_device(const GumbelParams& params_n, int n_devices) {
  check_params(params_n);
  if (n_devices < 1) {
    throw Error("fit_single_device: n_devices must be >= 1");
  }
  if (n_devices == 1) {
    // The median and mode relations degenerate to identities.
    return params_n;
  }

  const double median_n =
      params_n.alpha - params_n.beta * std::log(std::log(2.0));
  const double mode_n = params_n.alpha;
  const double n = static_cast<double>(n_devices);

  auto equations = [&](std::span<const double> x) -> double {
    const GumbelParams candidate{x[0], x[1]};
    if (!(candidate.beta > 0.0)) return 1e30;
    const double e1 =
        0.5 - std::pow(gumbel_sf(candidate, median_n), n);
    const double e2 = (1.0 - std::exp(-1.0)) -
                      std::pow(gumbel_sf(candidate, mode_n), n);
    return e1 * e1 + e2 * e2;
  };

  const double seed[2] = {params_n.alpha, params_n.beta};
  const SimplexResult result = simplex_minimize(equations, seed);
  if (result.fmin > 1e-10) {
    throw Error("fit_single_device: no convergence after " +
                std::to_string(result.iterations) +
                " iterations; best point alpha=" + std::to_string(result.x[0]) +
                " beta=" + std::to_string(result.x[1]) +
                " residual=" + std::to_string(result.fmin));
  }
  return {result.x[0], result.x[1]};
}

MonteCarloEstimate expected_cluster_speedup(const GumbelParams& params_1,
                                            std::uint64_t n_devices,
                                            std::uint64_t n_samples,
                                            std::uint64_t seed) {
  check_params(params_1);
  if (n_devices < 1) {
    throw Error("expected_cluster_speedup: n_devices must be >= 1");
  }
  if (n_samples < 1) {
    throw Error("expected_cluster_speedup: n_samples must be >= 1");
  }

  std::mt19937_64 rng(seed);
  double sum = 0.0;
  double sum_sq = 0.0;
  for (std::uint64_t s = 0; s < n_samples; ++s) {
    // The inverse-cdf transform is monotone in u, so the minimum over the
    // device draws is the transform of the minimum uniform.
    double u_min = uniform_open01(rng);
    for (std::uint64_t d = 1; d < n_devices; ++d) {
      u_min = std::min(u_min, uniform_open01(rng));
    }
    const double draw =
        params_1.alpha - params_1.beta * std::log(-std::log(u_min));
    sum += draw;
    sum_sq += draw * draw;
  }
  const double mean = sum / static_cast<double>(n_samples);
  MonteCarloEstimate estimate;
  estimate.mean = mean;
  estimate.n_samples = n_samples;
  if (n_samples > 1) {
    const double var =
        (sum_sq - sum * mean) / static_cast<double>(n_samples - 1);
    estimate.std_error =
        std::sqrt(std::max(0.0, var) / static_cast<double>(n_samples));
  }
  return estimate;
}

std::vector<SpeedupCurveRow> speedup_curve(
    const GumbelParams& params_1, std::span<const std::uint64_t> device_counts,
    double packing_speedup_constant, std::uint64_t n_samples,
    std::uint64_t seed) {
  if (device_counts.empty()) {
    throw Error("speedup_curve: device_counts is empty");
  }
  std::vector<SpeedupCurveRow> rows;
  rows.reserve(device_counts.size());
  for (std::uint64_t n : device_counts) {
    const MonteCarloEstimate estimate =
        expected_cluster_speedup(params_1, n, n_samples, seed);
    rows.push_back({n, estimate.mean, packing_speedup_constant});
  }
  return rows;
}

void write_speedup_curve_csv(std::span<const SpeedupCurveRow> rows,
                             std::ostream& out) {
  out << "n_devices,unpadding_speedup,packing_speedup\n";
  char buf[96];
  for (const SpeedupCurveRow& row : rows) {
    std::snprintf(buf, sizeof(buf), "%llu,%.6f,%.6f\n",
                  static_cast<unsigned long long>(row.n_devices),
                  row.unpadding_speedup, row.packing_speedup);
    out << buf;
  }
}

}  // namespace seqpack
