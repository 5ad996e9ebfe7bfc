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
#include <complex>
#include <optional>
#include <vector>

#include "spintomo/recon_grid.hpp"
#include "spintomo/sample_set.hpp"

namespace spintomo {

// Histogrammed quadrature data, one row of counts per tomography angle.
// Outcomes are multiplied by the scheme's outcome sign while binning, so the
// stored marginals are those of the spin state itself rather than of the
// (possibly negated) optical readout.
struct Sinogram {
  std::vector<double> angles;     // K distinct angles, order of appearance
  Eigen::MatrixXd counts;         // K x B
  std::vector<double> bin_centers;
  double bin_width = 0.0;
  std::vector<long> shots;        // per-angle totals, dropped outcomes included
  long dropped = 0;               // outcomes outside [-q_max, q_max)

  static Sinogram from_samples(const SampleSet& samples, int n_bins, double q_max);
};

struct FbpOptions {
  GridSpec grid{5.0, 64, "W"};
  double cutoff = 4.0;  // ramp-filter frequency cutoff k_c
  int threads = 1;      // grid rows are independent; result is thread-invariant
};

// Filtered back-projection with the analytically band-limited ramp kernel
//   K(s) = 2 [ k_c sin(k_c s)/s + (cos(k_c s) - 1)/s^2 ],  K(0) = k_c^2,
// summed as W(x,p) = (1/4pi^2) sum_k dtheta sum_j (n_kj/N_k) K(x cos + p sin - q_j)
// with dtheta = pi/K.
ReconGrid fbp_reconstruct(const Sinogram& sinogram, const FbpOptions& opt);

// The same back-projection sum evaluated at a single phase-space point.
double fbp_point(const Sinogram& sinogram, double x, double p, double cutoff);

struct HusimiOptions {
  GridSpec grid{3.0, 128, "Q"};
  double bandwidth = 0.0;  // > 0 overrides Silverman's rule on both axes
  std::optional<double> rotation_override;  // default: scheme's residual rotation
  int threads = 1;
};

// Gaussian kernel density estimate of Q from paired (Re a, Im a) outcomes.
// The scheme's residual phase-space rotation is undone sample-by-sample first.
// Accumulation order is fixed, so results do not depend on the thread count.
ReconGrid husimi_estimate(const SampleSet& samples, const HusimiOptions& opt);

struct ReferenceState {
  enum class Kind { Vacuum, Coherent, Squeezed, FockOne };
  Kind kind = Kind::Vacuum;
  std::complex<double> alpha{0.0, 0.0};  // Coherent only
  double r = 0.0;                        // Squeezed only (x-quadrature squeezed)
};

// Closed-form W or Q (selected by spec.kind) sampled at the cell centers.
ReconGrid analytic_reference(const ReferenceState& state, const GridSpec& spec);

// Gaussian smoothing of a Wigner grid into the Husimi function, evaluated on
// an alpha-plane grid with the same resolution and extent = input extent/sqrt(2).
// Requires the significant support of W (|W| > 1e-3 max) to sit at least four
// vacuum standard deviations inside the grid edge; throws invariant_error
// otherwise rather than silently wrapping truncation error into the result.
ReconGrid q_from_wigner(const ReconGrid& wigner);

struct GridMoments {
  double mass = 0.0;
  Eigen::Vector2d mean = Eigen::Vector2d::Zero();
  Eigen::Matrix2d cov = Eigen::Matrix2d::Zero();  // central, mass-normalised
};

GridMoments grid_moments(const ReconGrid& grid);

// Location of the grid maximum, refined within the peak cell by a quadratic
// fit along each axis. Returns (x, p) (or (Re a, Im a) for Q grids).
Eigen::Vector2d grid_peak(const ReconGrid& grid);

}  // namespace spintomo
