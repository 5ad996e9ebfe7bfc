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

#include <cstddef>
#include <span>

namespace spintomo {

// Every validation tolerance in one place. Conventions throughout the
// library: hbar = 1, [x,p] = i, vacuum variance 1/2 per quadrature,
// quadrature ordering (x1, p1, x2, p2, ...).
struct NumericPolicy {
  double cov_symmetry_tol = 1e-12;   // |cov - cov^T|
  double uncertainty_tol = 1e-9;     // min eig of cov + (i/2) Omega
  double symplectic_tol = 1e-10;     // |S Omega S^T - Omega|
  double det_tol = 1e-9;             // |det S - 1|
  double degenerate_variance = 1e-12;  // below this a homodyne outcome is deterministic

  static const NumericPolicy& standard() {
    static const NumericPolicy policy{};
    return policy;
  }
};

// Pairwise (cascade) summation: O(log n) error growth and a fixed reduction
// order, so Monte Carlo accumulations reproduce bit-for-bit regardless of
// how the samples were produced.
inline double pairwise_sum(std::span<const double> v) {
  if (v.size() <= 16) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  }
  const std::size_t half = v.size() / 2;
  return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

}  // namespace spintomo
