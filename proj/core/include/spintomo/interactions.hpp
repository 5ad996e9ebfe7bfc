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

#include <string>

#include "spintomo/gaussian_state.hpp"
#include "spintomo/rng.hpp"

namespace spintomo {

// One Faraday-rotation passage of the light pulse through the ensemble.
// Z couples the p quadratures (generator p_L p_A), Y couples the x
// quadratures (generator x_L x_A); the naming follows the generator algebra,
// not the beam geometry. A negative sign flips the effective kappa.
enum class CouplingType { Z, Y };

struct PassSpec {
  CouplingType coupling_type = CouplingType::Z;
  int sign = +1;      // +1 or -1
  double kappa = 1.0;
};

// Local-oscillator phase of a homodyne detector on one mode. The measured
// quadrature is q_phi = x cos(phi) - p sin(phi).
struct HomodyneSetting {
  std::string mode;
  double phi = 0.0;  // radians, [0, 2*pi)
};

// Z-type, sign +: x_L += kappa p_A, x_A += kappa p_L (p's unchanged).
// Y-type, sign +: p_L -= kappa x_A, p_A -= kappa x_L (x's unchanged).
// Exact linear maps; no truncation anywhere.
SymplecticMap fr_pass(const ModeLayout& layout, const PassSpec& spec,
                      const std::string& light_mode, const std::string& spin_mode);

// Spin phase rotation (fictitious-magnetic-field phase shifter):
// (x_A, p_A) -> (x_A cos t + p_A sin t, -x_A sin t + p_A cos t).
SymplecticMap fmps_rotation(const ModeLayout& layout, const std::string& spin_mode,
                            double theta);

// Same rotation on the light mode's (s_y, s_z) plane.
SymplecticMap stokes_rotation(const ModeLayout& layout, const std::string& light_mode,
                              double theta);

// x -> exp(-r) x, p -> exp(+r) p; r > 0 squeezes x.
SymplecticMap squeezer(const ModeLayout& layout, const std::string& mode, double r);

// Two-mode mixing with transmittance T:
//   x1' =  sqrt(T) x1 + sqrt(1-T) x2
//   x2' = -sqrt(1-T) x1 + sqrt(T) x2   (same for p's)
SymplecticMap beamsplitter(const ModeLayout& layout, const std::string& m1,
                           const std::string& m2, double transmittance);

// Pure-loss channel of transmissivity eta on one mode (not symplectic):
// mean scales by sqrt(eta), the mode's covariance block relaxes toward
// vacuum, cross covariances scale by sqrt(eta).
GaussianState attenuator(const GaussianState& state, const std::string& mode, double eta);

struct HomodyneMoments {
  double mean;
  double variance;
};

// Exact first and second moment of q_phi on the configured mode.
HomodyneMoments homodyne_statistics(const GaussianState& state, const HomodyneSetting& setting);

struct HomodyneResult {
  double outcome;
  GaussianState post;  // remaining modes, conditioned on the outcome
  bool degenerate;     // variance below policy.degenerate_variance: outcome deterministic
};

// Draws outcome ~ N(mean, variance) and conditions the remaining modes on it
// (Schur-complement update). The measured mode is removed from the layout.
HomodyneResult homodyne_sample(const GaussianState& state, const HomodyneSetting& setting,
                               StreamRng& rng,
                               const NumericPolicy& policy = NumericPolicy::standard());

struct DoubleHomodyneResult {
  double x_out;
  double p_out;
  GaussianState post;  // remaining modes after the measured mode is consumed
};

// Splits `mode` on a 50:50 beamsplitter against a vacuum ancilla and
// homodynes x on one arm and p on the other. The joint density of
// (x_out, p_out) is the Husimi-Q function of the mode in alpha-plane
// coordinates (x_out + i p_out <-> alpha).
DoubleHomodyneResult double_homodyne_sample(const GaussianState& state, const std::string& mode,
                                            StreamRng& rng,
                                            const NumericPolicy& policy = NumericPolicy::standard());

}  // namespace spintomo
