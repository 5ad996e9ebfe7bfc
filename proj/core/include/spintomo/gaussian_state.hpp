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

#include "spintomo/mode_layout.hpp"
#include "spintomo/numeric.hpp"
#include "spintomo/symplectic_map.hpp"

namespace spintomo {

// Gaussian state over the modes of `layout`: first and second moments in
// quadrature ordering (x1, p1, x2, p2, ...). Vacuum variance is 1/2.
struct GaussianState {
  ModeLayout layout;
  Eigen::VectorXd mean;
  Eigen::MatrixXd cov;

  std::size_t dim() const { return layout.dim(); }

  double mean_x(const std::string& mode) const { return mean(layout.x_index(mode)); }
  double mean_p(const std::string& mode) const { return mean(layout.p_index(mode)); }

  // 2x2 covariance block of a single mode.
  Eigen::Matrix2d mode_cov(const std::string& mode) const {
    const auto i = layout.x_index(mode);
    return cov.block<2, 2>(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i));
  }

  // Checks symmetry of cov, finiteness, and the uncertainty relation
  // cov + (i/2) Omega >= 0. Validation is explicit, not run on every
  // construction, so hot sampling loops stay cheap.
  void validate(const NumericPolicy& policy = NumericPolicy::standard()) const;
};

GaussianState vacuum_state(const ModeLayout& layout);

// Coherent amplitude alpha on `mode`, vacuum elsewhere:
// mean = (sqrt(2) Re a, sqrt(2) Im a), cov = (1/2) I.
GaussianState coherent_state(const ModeLayout& layout, const std::string& mode,
                             std::complex<double> alpha);

// Isotropic Gaussian state with per-quadrature variance v >= 1/2 on `mode`,
// vacuum elsewhere.
GaussianState thermal_state(const ModeLayout& layout, const std::string& mode, double v);

GaussianState apply_map(const GaussianState& state, const SymplecticMap& map);

}  // namespace spintomo
