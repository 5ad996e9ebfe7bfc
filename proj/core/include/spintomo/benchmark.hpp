// Copyright 2026 The Spintomo Authors
//
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

#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "spintomo/numeric.hpp"

namespace spintomo {

// Best average fidelity any measure-and-prepare strategy can reach when the
// device is asked to apply gain sqrt(eta) to coherent states drawn from the
// isotropic Gaussian ensemble p_lambda(a) = (lambda/pi) exp(-lambda |a|^2).
// Requires eta >= 0 and lambda > 0.
double classical_bound(double eta, double lambda);

// Mean-square-deviation threshold: staying below it is sufficient for
// non-classical performance. Same preconditions as classical_bound.
double delta_bound(double eta, double lambda);

// Fidelity between a coherent target and a single-mode Gaussian state whose
// mean differs by `delta` (quadrature 2-vector) and whose covariance is `cov`:
//   F = exp(-delta^T S^-1 delta / 2) / sqrt(det S),  S = cov + I/2.
double gaussian_overlap_fidelity(const Eigen::Vector2d& delta,
                                 const Eigen::Matrix2d& cov);

// Single-mode Gaussian channel: mean -> X m + d, cov -> X V X^T + Y.
struct GaussianChannel {
  Eigen::Matrix2d X = Eigen::Matrix2d::Identity();
  Eigen::Vector2d d = Eigen::Vector2d::Zero();
  Eigen::Matrix2d Y = Eigen::Matrix2d::Zero();

  // Complete positivity: Y + (i/2)(Omega - X Omega X^T) must be PSD.
  void validate(const NumericPolicy& policy = NumericPolicy::standard()) const;

  static GaussianChannel identity();
  // Transmission eta in (0, 1] with optional output phase phi; adds the
  // minimal thermal noise (1-eta)/2 per quadrature.
  static GaussianChannel attenuator(double eta, double phi = 0.0);
};

// Classical strategy: double-homodyne the input, re-prepare |gain * a_hat>.
struct MeasureAndPrepare {
  double gain = 1.0;
};

struct BenchmarkConfig {
  double eta = 1.0;     // target intensity gain (>= 0)
  double lambda = 1.0;  // ensemble width parameter (> 0)
  double phi = 0.0;     // target output rotation: |a> -> |sqrt(eta) e^{i phi} a>
  long n_draws = 2000;
  std::uint64_t seed = 1;
  int threads = 1;
};

struct BenchmarkResult {
  double eta = 0.0, lambda = 0.0, phi = 0.0;
  double f_bar = 0.0, f_bar_err = 0.0, f_c = 0.0;
  double delta_bar = 0.0, delta_bar_err = 0.0, delta_threshold = 0.0;
  bool pass_fidelity = false;  // f_bar clears f_c by >= 3 standard errors
  bool pass_delta = false;     // delta_bar stays 3 standard errors below threshold
  std::uint64_t seed = 0;
};

// Monte-Carlo average over the coherent ensemble. Per draw, the fidelity is
// the Gaussian overlap with the target coherent state, and the deviation
// score is offset^2 + Var(x) + Var(p) - 1 of the output. Each draw uses its
// own random substream, so results are independent of the thread count.
BenchmarkResult run_benchmark(const GaussianChannel& channel, const BenchmarkConfig& cfg);
BenchmarkResult run_benchmark(const MeasureAndPrepare& strategy, const BenchmarkConfig& cfg);

}  // namespace spintomo
