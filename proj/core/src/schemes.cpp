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

#include "spintomo/schemes.hpp"

#include <cmath>
#include <stdexcept>

#include "spintomo/fock_oracle.hpp"
#include "spintomo/parallel.hpp"

namespace spintomo {

namespace {
// Homodyne of s_z = p_L: q_phi = x cos(phi) - p sin(phi) equals +p at 3*pi/2.
constexpr double kSzPhase = 1.5 * M_PI;
}  // namespace

const ModeLayout& light_spin_layout() {
  static const ModeLayout layout{modes::kLight, modes::kSpin};
  return layout;
}

void prepare_mode(GaussianState& state, const std::string& mode, const StatePrep& prep) {
  const auto x = static_cast<Eigen::Index>(state.layout.x_index(mode));
  state.mean(x) = M_SQRT2 * prep.alpha.real();
  state.mean(x + 1) = M_SQRT2 * prep.alpha.imag();
  double vx = 0.5, vp = 0.5;
  switch (prep.kind) {
    case StatePrep::Kind::Vacuum:
    case StatePrep::Kind::Coherent:
      break;
    case StatePrep::Kind::Squeezed:
      vx = 0.5 * std::exp(-2.0 * prep.r);
      vp = 0.5 * std::exp(2.0 * prep.r);
      break;
    case StatePrep::Kind::Thermal:
      if (prep.thermal_v < 0.5)
        throw std::invalid_argument("prepare_mode: thermal variance below vacuum");
      vx = vp = prep.thermal_v;
      break;
  }
  // Re-preparing a mode puts it in a product state: drop any correlations
  // accumulated with the rest of the register, or the covariance could be
  // left unphysical.
  state.cov.row(x).setZero();
  state.cov.row(x + 1).setZero();
  state.cov.col(x).setZero();
  state.cov.col(x + 1).setZero();
  state.cov(x, x) = vx;
  state.cov(x + 1, x + 1) = vp;
}

SymplecticMap two_pass_transducer_map(double kappa) {
  if (kappa == 0.0) throw std::invalid_argument("two_pass_transducer_map: kappa must be nonzero");
  const auto& layout = light_spin_layout();
  return compose({fr_pass(layout, {CouplingType::Z, +1, kappa}, modes::kLight, modes::kSpin),
                  fr_pass(layout, {CouplingType::Y, +1, kappa}, modes::kLight, modes::kSpin)});
}

SymplecticMap three_pass_swap_map(double kappa) {
  const auto& layout = light_spin_layout();
  const auto z = fr_pass(layout, {CouplingType::Z, +1, kappa}, modes::kLight, modes::kSpin);
  const auto y = fr_pass(layout, {CouplingType::Y, +1, kappa}, modes::kLight, modes::kSpin);
  return compose({z, y, z});
}

namespace {

GaussianState spin_probe_input(const StatePrep& spin_prep) {
  GaussianState state = vacuum_state(light_spin_layout());
  prepare_mode(state, modes::kSpin, spin_prep);
  return state;
}

// Draws `shots` independent homodyne outcomes from a fixed pre-measurement
// state, one RNG stream per shot (stream index = stream_base + shot).
std::vector<double> sample_outcomes(const GaussianState& state, const HomodyneSetting& setting,
                                    std::size_t shots, const AcquisitionOptions& options,
                                    std::size_t stream_base) {
  std::vector<double> outcomes(shots);
  parallel_for(shots, options.threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t s = begin; s < end; ++s) {
      StreamRng rng(options.seed, stream_base + s);
      outcomes[s] = homodyne_sample(state, setting, rng).outcome;
    }
  });
  return outcomes;
}

}  // namespace

SampleSet single_pass_probe(const StatePrep& spin_prep, double r, std::size_t shots,
                            const AcquisitionOptions& options) {
  if (r < 0.0) throw std::invalid_argument("single_pass_probe: negative squeeze parameter");
  if (shots < 1) throw std::invalid_argument("single_pass_probe: shots must be >= 1");
  const auto& layout = light_spin_layout();
  GaussianState state = spin_probe_input(spin_prep);
  state = apply_map(state, squeezer(layout, modes::kLight, r));
  state = apply_map(state, fr_pass(layout, {CouplingType::Z, +1, 1.0}, modes::kLight, modes::kSpin));

  SampleSet set{"single_pass_probe", options.seed, {}};
  set.records.resize(shots);
  const auto outcomes = sample_outcomes(state, {modes::kLight, 0.0}, shots, options, 0);
  for (std::size_t s = 0; s < shots; ++s) set.records[s] = {0.0, outcomes[s], 0.0};
  return set;
}

SampleSet tomography_scan(const StatePrep& spin_prep, const std::vector<double>& angles,
                          std::size_t shots_per_angle, const AcquisitionOptions& options) {
  if (angles.empty()) throw std::invalid_argument("tomography_scan: empty angle list");
  if (shots_per_angle < 1) throw std::invalid_argument("tomography_scan: shots must be >= 1");
  for (double theta : angles)
    if (!(theta >= 0.0 && theta < M_PI))
      throw std::invalid_argument("tomography_scan: angles must lie in [0, pi)");

  const auto& layout = light_spin_layout();
  const SymplecticMap transducer = two_pass_transducer_map(1.0);
  const GaussianState input = spin_probe_input(spin_prep);

  std::vector<GaussianState> rotated;
  rotated.reserve(angles.size());
  for (double theta : angles) {
    const auto map = compose({fmps_rotation(layout, modes::kSpin, theta), transducer});
    rotated.push_back(apply_map(input, map));
  }

  SampleSet set{"two_pass_tomography", options.seed, {}};
  const std::size_t total = angles.size() * shots_per_angle;
  set.records.resize(total);
  parallel_for(total, options.threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const std::size_t a = i / shots_per_angle;
      StreamRng rng(options.seed, i);
      const double outcome =
          homodyne_sample(rotated[a], {modes::kLight, kSzPhase}, rng).outcome;
      set.records[i] = {angles[a], outcome, 0.0};
    }
  });
  return set;
}

SampleSet husimi_acquisition(const StatePrep& spin_prep, std::size_t shots,
                             const AcquisitionOptions& options) {
  if (shots < 1) throw std::invalid_argument("husimi_acquisition: shots must be >= 1");
  const GaussianState swapped = apply_map(spin_probe_input(spin_prep), three_pass_swap_map(1.0));

  SampleSet set{"three_pass_husimi", options.seed, {}};
  set.records.resize(shots);
  parallel_for(shots, options.threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t s = begin; s < end; ++s) {
      StreamRng rng(options.seed, s);
      const auto pair = double_homodyne_sample(swapped, modes::kLight, rng);
      set.records[s] = {0.0, pair.x_out, pair.p_out};
    }
  });
  return set;
}

SampleSet fock_tomography_scan(int fock_n, int dim, const std::vector<double>& angles,
                               std::size_t shots_per_angle,
                               const AcquisitionOptions& options) {
  if (angles.empty()) throw std::invalid_argument("fock_tomography_scan: empty angle list");
  if (shots_per_angle < 1)
    throw std::invalid_argument("fock_tomography_scan: shots must be >= 1");
  for (double theta : angles)
    if (!(theta >= 0.0 && theta < M_PI))
      throw std::invalid_argument("fock_tomography_scan: angles must lie in [0, pi)");

  const fock::TruncatedFockState state = fock::fock_state(dim, fock_n);
  const Eigen::VectorXd grid = fock::default_pdf_grid();

  SampleSet set{"fock_tomography", options.seed, {}};
  set.records.resize(angles.size() * shots_per_angle);
  // One stream per angle; samplers are cheap enough to rebuild per chunk.
  parallel_for(angles.size(), options.threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t a = begin; a < end; ++a) {
      const fock::PdfSampler sampler(grid, fock::homodyne_pdf(state, angles[a], grid));
      StreamRng rng(options.seed, a);
      for (std::size_t s = 0; s < shots_per_angle; ++s) {
        // Recorded with the transducer's readout sign, matching scheme_traits.
        set.records[a * shots_per_angle + s] = {angles[a], -sampler.draw(rng), 0.0};
      }
    }
  });
  return set;
}

}  // namespace spintomo
