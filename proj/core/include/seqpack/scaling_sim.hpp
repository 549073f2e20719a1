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

#ifndef SEQPACK_SCALING_SIM_HPP
#define SEQPACK_SCALING_SIM_HPP

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

namespace seqpack {

// Location/scale of a speed-up distribution used for cluster-scaling
// extrapolation.
struct GumbelParams {
  double alpha = 0.0;  // location
  double beta = 1.0;   // scale, > 0
};

// cdf(s) = exp(-exp(-(s - alpha) / beta))
double gumbel_cdf(const GumbelParams& params, double s);
double gumbel_sf(const GumbelParams& params, double s);

struct SimplexOptions {
  int max_iterations = 10000;
  double diameter_tolerance = 1e-12;
};

struct SimplexResult {
  std::vector<double> x;
  double fmin = 0.0;
  int iterations = 0;
  bool converged = false;
};

// Derivative-free Nelder-Mead minimization, intended for very small
// dimension. Deterministic for a fixed starting point.
SimplexResult simplex_minimize(
    const std::function<double(std::span<const double>)>& f,
    std::span<const double> x0, const SimplexOptions& options = {});

// Recovers single-device Gumbel parameters from an n-device fit by solving
// the median and mode relations of the min-of-n distribution,
//   0.5       = sf_1(alpha_n - beta_n ln(ln 2))^n
//   1 - e^-1  = sf_1(alpha_n)^n,
// by simplex search seeded at params_n. The squared-equation residual at the
// returned point is at most 1e-10.
GumbelParams fit_single_device(const GumbelParams& params_n, int n_devices);

struct MonteCarloEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::uint64_t n_samples = 0;
};

// Seeded Monte-Carlo estimate of E[min of n_devices i.i.d. Gumbel(params_1)
// draws]; bit-for-bit reproducible for a fixed seed and sample count.
MonteCarloEstimate expected_cluster_speedup(const GumbelParams& params_1,
                                            std::uint64_t n_devices,
                                            std::uint64_t n_samples,
                                            std::uint64_t seed);

struct SpeedupCurveRow {
  std::uint64_t n_devices = 0;
  double unpadding_speedup = 0.0;
  double packing_speedup = 0.0;
};

// One row per device count: the un-padding estimate falls with cluster size
// while the packing column stays constant.
std::vector<SpeedupCurveRow> speedup_curve(
    const GumbelParams& params_1, std::span<const std::uint64_t> device_counts,
    double packing_speedup_constant, std::uint64_t n_samples,
    std::uint64_t seed);

// CSV header: n_devices,unpadding_speedup,packing_speedup
void write_speedup_curve_csv(std::span<const SpeedupCurveRow> rows,
                             std::ostream& out);

}  // namespace seqpack

#endif  // SEQPACK_SCALING_SIM_HPP
