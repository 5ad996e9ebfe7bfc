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

#include <complex>
#include <cstdint>
#include <vector>

#include "spintomo/interactions.hpp"
#include "spintomo/sample_set.hpp"

namespace spintomo {

// Single-mode Gaussian preparation used for probes and spin inputs.
// Squeezed preparations squeeze x (j_y / s_y); alpha displaces any kind.
struct StatePrep {
  enum class Kind { Vacuum, Coherent, Squeezed, Thermal };
  Kind kind = Kind::Vacuum;
  std::complex<double> alpha{0.0, 0.0};
  double r = 0.0;         // Squeezed
  double thermal_v = 0.5; // Thermal per-quadrature variance, >= 1/2
};

// The standard two-mode layout: LIGHT = (s_y, s_z) then SPIN = (j_y, j_z).
const ModeLayout& light_spin_layout();

// Overwrites `mode` of `state` with the prepared moments (no correlations).
void prepare_mode(GaussianState& state, const std::string& mode, const StatePrep& prep);

// Z pass then Y pass, both at kappa. At kappa = 1 this maps
// (s_y, s_z, j_y, j_z) -> (s_y + j_z, -j_y, j_y + s_z, -s_y): the light's
// outgoing s_z carries -j_y with no probe-noise admixture at all.
SymplecticMap two_pass_transducer_map(double kappa);

// Z, Y, Z passes. At kappa = 1: (s_y, s_z, j_y, j_z) -> (j_z, -j_y, s_z, -s_y),
// a full state exchange composed with a local pi/2 phase rotation on each mode.
SymplecticMap three_pass_swap_map(double kappa = 1.0);

// The local rotation left on each output mode by the kappa = 1 swap.
inline constexpr double kSwapResidualRotation = M_PI_2;

struct AcquisitionOptions {
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

// Probe light squeezed by r in s_y, one Z pass, homodyne of s_y. Outcomes
// estimate j_z with additive probe noise exp(-2r)/2.
SampleSet single_pass_probe(const StatePrep& spin_prep, double r, std::size_t shots,
                            const AcquisitionOptions& options);

// For each angle: prepare the spin state, rotate it by theta (FMPS), run the
// two-pass transducer with a vacuum probe and homodyne s_z. Outcomes sample
// -(j_y cos t + j_z sin t) exactly; the sign lives in scheme_traits, the raw
// outcomes are stored as measured.
SampleSet tomography_scan(const StatePrep& spin_prep, const std::vector<double>& angles,
                          std::size_t shots_per_angle, const AcquisitionOptions& options);

// Three-pass swap onto the light, then double homodyne. Pair density is the
// Husimi-Q of the pi/2-rotated spin state; the rotation is recorded in
// scheme_traits("three_pass_husimi") for reconstruction to undo.
SampleSet husimi_acquisition(const StatePrep& spin_prep, std::size_t shots,
                             const AcquisitionOptions& options);

// Tomography records for a Fock state |n>, drawn from the truncated-space
// quadrature densities instead of the Gaussian engine (which cannot represent
// them). Outcomes carry the same readout sign convention as tomography_scan
// and are tagged "fock_tomography".
SampleSet fock_tomography_scan(int fock_n, int dim, const std::vector<double>& angles,
                               std::size_t shots_per_angle,
                               const AcquisitionOptions& options);

}  // namespace spintomo
