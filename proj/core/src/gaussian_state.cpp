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

#include "spintomo/gaussian_state.hpp"

#include <Eigen/Eigenvalues>
#include <stdexcept>
#include <string>

#include "spintomo/errors.hpp"

namespace spintomo {

void GaussianState::validate(const NumericPolicy& policy) const {
  const auto n = static_cast<Eigen::Index>(dim());
  if (mean.size() != n || cov.rows() != n || cov.cols() != n)
    throw std::invalid_argument("GaussianState: dimensions disagree with layout");
  if (!mean.allFinite() || !cov.allFinite())
    throw invariant_error("GaussianState: non-finite moments");
  const double asym = (cov - cov.transpose()).cwiseAbs().maxCoeff();
  if (asym > policy.cov_symmetry_tol)
    throw invariant_error("GaussianState: covariance asymmetry " + std::to_string(asym));
  // Uncertainty relation: cov + (i/2) Omega must be positive semidefinite.
  Eigen::MatrixXcd c = cov.cast<std::complex<double>>();
  c += std::complex<double>(0.0, 0.5) * symplectic_form(layout.mode_count()).cast<std::complex<double>>();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(c, Eigen::EigenvaluesOnly);
  const double min_eig = eig.eigenvalues().minCoeff();
  if (min_eig < -policy.uncertainty_tol)
    throw invariant_error("GaussianState: uncertainty relation violated, min eig " +
                          std::to_string(min_eig));
}

GaussianState vacuum_state(const ModeLayout& layout) {
  if (layout.empty()) throw std::invalid_argument("vacuum_state: empty layout");
  const auto n = static_cast<Eigen::Index>(layout.dim());
  return {layout, Eigen::VectorXd::Zero(n), 0.5 * Eigen::MatrixXd::Identity(n, n)};
}

GaussianState coherent_state(const ModeLayout& layout, const std::string& mode,
                             std::complex<double> alpha) {
  GaussianState state = vacuum_state(layout);
  state.mean(static_cast<Eigen::Index>(layout.x_index(mode))) = M_SQRT2 * alpha.real();
  state.mean(static_cast<Eigen::Index>(layout.p_index(mode))) = M_SQRT2 * alpha.imag();
  return state;
}

GaussianState thermal_state(const ModeLayout& layout, const std::string& mode, double v) {
  if (v < 0.5) throw std::invalid_argument("thermal_state: variance below vacuum");
  GaussianState state = vacuum_state(layout);
  const auto i = static_cast<Eigen::Index>(layout.x_index(mode));
  state.cov(i, i) = v;
  state.cov(i + 1, i + 1) = v;
  return state;
}

GaussianState apply_map(const GaussianState& state, const SymplecticMap& map) {
  if (map.dim() != state.dim())
    throw std::invalid_argument("apply_map: dimension mismatch");
  return {state.layout, map.S * state.mean + map.d,
          map.S * state.cov * map.S.transpose()};
}

}  // namespace spintomo
