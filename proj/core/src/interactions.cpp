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

#include "spintomo/interactions.hpp"

#include <cmath>
#include <stdexcept>

namespace spintomo {

namespace {

SymplecticMap rotation_on(const ModeLayout& layout, const std::string& mode, double theta) {
  if (!std::isfinite(theta)) throw std::invalid_argument("rotation: non-finite angle");
  SymplecticMap map = SymplecticMap::identity(layout.mode_count());
  const auto x = static_cast<Eigen::Index>(layout.x_index(mode));
  const double c = std::cos(theta), s = std::sin(theta);
  map.S(x, x) = c;
  map.S(x, x + 1) = s;
  map.S(x + 1, x) = -s;
  map.S(x + 1, x + 1) = c;
  return map;
}

// Removes the 2x2 slice belonging to `mode` from mean/cov and the layout.
GaussianState drop_mode(const GaussianState& state, const std::string& mode) {
  const auto cut = static_cast<Eigen::Index>(state.layout.x_index(mode));
  const auto n = static_cast<Eigen::Index>(state.dim());
  Eigen::VectorXd mean(n - 2);
  Eigen::MatrixXd cov(n - 2, n - 2);
  std::vector<Eigen::Index> keep;
  keep.reserve(n - 2);
  for (Eigen::Index i = 0; i < n; ++i)
    if (i != cut && i != cut + 1) keep.push_back(i);
  for (std::size_t a = 0; a < keep.size(); ++a) {
    mean(static_cast<Eigen::Index>(a)) = state.mean(keep[a]);
    for (std::size_t b = 0; b < keep.size(); ++b)
      cov(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) =
          state.cov(keep[a], keep[b]);
  }
  return {state.layout.without_mode(mode), std::move(mean), std::move(cov)};
}

}  // namespace

SymplecticMap fr_pass(const ModeLayout& layout, const PassSpec& spec,
                      const std::string& light_mode, const std::string& spin_mode) {
  if (light_mode == spin_mode)
    throw std::invalid_argument("fr_pass: light and spin modes coincide");
  if (!std::isfinite(spec.kappa)) throw std::invalid_argument("fr_pass: non-finite kappa");
  if (spec.sign != 1 && spec.sign != -1) throw std::invalid_argument("fr_pass: sign must be +-1");
  SymplecticMap map = SymplecticMap::identity(layout.mode_count());
  const auto xl = static_cast<Eigen::Index>(layout.x_index(light_mode));
  const auto xa = static_cast<Eigen::Index>(layout.x_index(spin_mode));
  const double k = spec.sign * spec.kappa;
  if (spec.coupling_type == CouplingType::Z) {
    map.S(xl, xa + 1) = k;  // x_L += k p_A
    map.S(xa, xl + 1) = k;  // x_A += k p_L
  } else {
    map.S(xl + 1, xa) = -k;  // p_L -= k x_A
    map.S(xa + 1, xl) = -k;  // p_A -= k x_L
  }
  return map;
}

SymplecticMap fmps_rotation(const ModeLayout& layout, const std::string& spin_mode,
                            double theta) {
  return rotation_on(layout, spin_mode, theta);
}

SymplecticMap stokes_rotation(const ModeLayout& layout, const std::string& light_mode,
                              double theta) {
  return rotation_on(layout, light_mode, theta);
}

SymplecticMap squeezer(const ModeLayout& layout, const std::string& mode, double r) {
  if (!std::isfinite(r)) throw std::invalid_argument("squeezer: non-finite r");
  SymplecticMap map = SymplecticMap::identity(layout.mode_count());
  const auto x = static_cast<Eigen::Index>(layout.x_index(mode));
  map.S(x, x) = std::exp(-r);
  map.S(x + 1, x + 1) = std::exp(r);
  return map;
}

SymplecticMap beamsplitter(const ModeLayout& layout, const std::string& m1,
                           const std::string& m2, double transmittance) {
  if (m1 == m2) throw std::invalid_argument("beamsplitter: modes coincide");
  if (!(transmittance >= 0.0 && transmittance <= 1.0))
    throw std::invalid_argument("beamsplitter: transmittance outside [0,1]");
  SymplecticMap map = SymplecticMap::identity(layout.mode_count());
  const auto i = static_cast<Eigen::Index>(layout.x_index(m1));
  const auto j = static_cast<Eigen::Index>(layout.x_index(m2));
  const double c = std::sqrt(transmittance), s = std::sqrt(1.0 - transmittance);
  for (Eigen::Index q = 0; q < 2; ++q) {  // same mixing for x and p
    map.S(i + q, i + q) = c;
    map.S(i + q, j + q) = s;
    map.S(j + q, i + q) = -s;
    map.S(j + q, j + q) = c;
  }
  return map;
}

GaussianState attenuator(const GaussianState& state, const std::string& mode, double eta) {
  if (!(eta >= 0.0 && eta <= 1.0)) throw std::invalid_argument("attenuator: eta outside [0,1]");
  const auto x = static_cast<Eigen::Index>(state.layout.x_index(mode));
  const double root = std::sqrt(eta);
  GaussianState out = state;
  out.mean(x) *= root;
  out.mean(x + 1) *= root;
  // X = sqrt(eta) on the mode: the 2x2 block picks up eta, cross blocks sqrt(eta).
  out.cov.row(x) *= root;
  out.cov.row(x + 1) *= root;
  out.cov.col(x) *= root;
  out.cov.col(x + 1) *= root;
  out.cov(x, x) += (1.0 - eta) * 0.5;
  out.cov(x + 1, x + 1) += (1.0 - eta) * 0.5;
  return out;
}

HomodyneMoments homodyne_statistics(const GaussianState& state, const HomodyneSetting& setting) {
  const auto x = static_cast<Eigen::Index>(state.layout.x_index(setting.mode));
  Eigen::VectorXd a = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(state.dim()));
  a(x) = std::cos(setting.phi);
  a(x + 1) = -std::sin(setting.phi);
  return {a.dot(state.mean), a.dot(state.cov * a)};
}

HomodyneResult homodyne_sample(const GaussianState& state, const HomodyneSetting& setting,
                               StreamRng& rng, const NumericPolicy& policy) {
  const auto n = static_cast<Eigen::Index>(state.dim());
  const auto x = static_cast<Eigen::Index>(state.layout.x_index(setting.mode));
  Eigen::VectorXd a = Eigen::VectorXd::Zero(n);
  a(x) = std::cos(setting.phi);
  a(x + 1) = -std::sin(setting.phi);
  const double mu = a.dot(state.mean);
  const double var = a.dot(state.cov * a);

  if (var < policy.degenerate_variance) {
    // Deterministic quadrature: outcome is the mean; correlations with the
    // rest are bounded by sqrt(var) and carry no usable update.
    return {mu, drop_mode(state, setting.mode), true};
  }

  const double outcome = mu + std::sqrt(var) * rng.gaussian();
  const Eigen::VectorXd c = state.cov * a;
  GaussianState conditioned = state;
  conditioned.mean += c * ((outcome - mu) / var);
  conditioned.cov -= (c * c.transpose()) / var;
  return {outcome, drop_mode(conditioned, setting.mode), false};
}

DoubleHomodyneResult double_homodyne_sample(const GaussianState& state, const std::string& mode,
                                            StreamRng& rng, const NumericPolicy& policy) {
  std::string ancilla = modes::kAncilla;
  while (state.layout.contains(ancilla)) ancilla += "'";

  // Adjoin a vacuum ancilla.
  const auto n = static_cast<Eigen::Index>(state.dim());
  GaussianState extended{state.layout.with_mode(ancilla), Eigen::VectorXd::Zero(n + 2),
                         Eigen::MatrixXd::Zero(n + 2, n + 2)};
  extended.mean.head(n) = state.mean;
  extended.cov.topLeftCorner(n, n) = state.cov;
  extended.cov(n, n) = 0.5;
  extended.cov(n + 1, n + 1) = 0.5;

  GaussianState mixed = apply_map(extended, beamsplitter(extended.layout, mode, ancilla, 0.5));

  // Arm 1 (transmitted port): x. Arm 2 (reflected port) carries -x_in/sqrt(2),
  // so measuring at phi = pi/2 (q = -p) re-centers the outcome on +p_in.
  HomodyneResult first = homodyne_sample(mixed, {mode, 0.0}, rng, policy);
  HomodyneResult second = homodyne_sample(first.post, {ancilla, M_PI_2}, rng, policy);
  return {first.outcome, second.outcome, std::move(second.post)};
}

}  // namespace spintomo
