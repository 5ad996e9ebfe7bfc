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
#include <vector>

#include "spintomo/numeric.hpp"

namespace spintomo {

// The symplectic form Omega = blockdiag([[0,1],[-1,0]], ...) for n modes.
Eigen::MatrixXd symplectic_form(std::size_t n_modes);

// Linear phase-space map v -> S v + d. Immutable value type; all passes,
// rotations and full schemes compile down to one of these.
struct SymplecticMap {
  Eigen::MatrixXd S;
  Eigen::VectorXd d;

  static SymplecticMap identity(std::size_t n_modes);
  static SymplecticMap displacement(const Eigen::VectorXd& d);

  std::size_t dim() const { return static_cast<std::size_t>(S.rows()); }

  // Throws invariant_error unless S Omega S^T = Omega and det S = 1
  // within policy tolerances.
  void validate(const NumericPolicy& policy = NumericPolicy::standard()) const;
};

// Chronological composition: maps[0] is applied first, so the result is
// maps[n-1] * ... * maps[0] with displacements threaded through.
SymplecticMap compose(const std::vector<SymplecticMap>& maps);

}  // namespace spintomo
