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

#include "spintomo/symplectic_map.hpp"

#include <stdexcept>
#include <string>

#include "spintomo/errors.hpp"

namespace spintomo {

Eigen::MatrixXd symplectic_form(std::size_t n_modes) {
  Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(2 * n_modes, 2 * n_modes);
  for (std::size_t m = 0; m < n_modes; ++m) {
    const auto i = static_cast<Eigen::Index>(2 * m);
    omega(i, i + 1) = 1.0;
    omega(i + 1, i) = -1.0;
  }
  return omega;
}

SymplecticMap SymplecticMap::identity(std::size_t n_modes) {
  return {Eigen::MatrixXd::Identity(2 * n_modes, 2 * n_modes),
          Eigen::VectorXd::Zero(2 * n_modes)};
}

SymplecticMap SymplecticMap::displacement(const Eigen::VectorXd& d) {
  if (d.size() % 2 != 0) throw std::invalid_argument("displacement: odd dimension");
  return {Eigen::MatrixXd::Identity(d.size(), d.size()), d};
}

void SymplecticMap::validate(const NumericPolicy& policy) const {
  if (S.rows() != S.cols() || S.rows() % 2 != 0 || S.rows() != d.size())
    throw std::invalid_argument("SymplecticMap: inconsistent dimensions");
  if (!S.allFinite() || !d.allFinite())
    throw invariant_error("SymplecticMap: non-finite entries");
  const Eigen::MatrixXd omega = symplectic_form(dim() / 2);
  const double defect = (S * omega * S.transpose() - omega).cwiseAbs().maxCoeff();
  if (defect > policy.symplectic_tol)
    throw invariant_error("SymplecticMap: S Omega S^T deviates from Omega by " +
                          std::to_string(defect));
  const double det_defect = std::abs(S.determinant() - 1.0);
  if (det_defect > policy.det_tol)
    throw invariant_error("SymplecticMap: |det S - 1| = " + std::to_string(det_defect));
}

SymplecticMap compose(const std::vector<SymplecticMap>& maps) {
  if (maps.empty()) throw std::invalid_argument("compose: empty map list");
  SymplecticMap out = maps.front();
  for (std::size_t i = 1; i < maps.size(); ++i) {
    const auto& next = maps[i];
    if (next.dim() != out.dim()) throw std::invalid_argument("compose: dimension mismatch");
    out.d = next.S * out.d + next.d;
    out.S = next.S * out.S;
  }
  return out;
}

}  // namespace spintomo
