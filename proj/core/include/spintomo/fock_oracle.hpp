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
#include <vector>

#include "spintomo/interactions.hpp"
#include "spintomo/rng.hpp"

namespace spintomo::fock {

// Brute-force number-basis backend. Mode 0 is the light mode and mode 1 the
// spin mode, matching the Gaussian engine's (LIGHT, SPIN) layout. Truncation
// is never silent: every state carries its leakage 1 - tr(rho).
struct TruncatedFockState {
  Eigen::MatrixXcd rho;  // d x d (one mode) or d^2 x d^2 (two modes)
  int dim = 0;           // levels per mode
  int n_modes = 1;

  double leakage() const { return 1.0 - rho.trace().real(); }

  // Hermiticity within 1e-10, eigenvalues >= -1e-9, trace in [1 - leak_tol, 1].
  void validate(double leak_tol = 1e-6) const;
};

Eigen::MatrixXcd ladder(int d);  // annihilation operator a
enum class Quadrature { X, P };
// x = (a + a^dag)/sqrt(2), p = (a - a^dag)/(i sqrt(2)); Hermitian.
Eigen::MatrixXcd quadrature_operator(int d, Quadrature kind);

TruncatedFockState fock_state(int d, int n);
TruncatedFockState coherent_fock(int d, std::complex<double> alpha);
// Squeezed vacuum with the x quadrature squeezed: Var(x) = exp(-2r)/2.
TruncatedFockState squeezed_vacuum_fock(int d, double r);
// Two-mode product, a = mode 0 (light), b = mode 1 (spin).
TruncatedFockState product(const TruncatedFockState& a, const TruncatedFockState& b);

// exp(-i kappa G) with G = p (x) p for Z coupling, x (x) x for Y, via
// eigendecomposition of the Hermitian single-mode factor. Dense d^2 x d^2.
Eigen::MatrixXcd gate_exponential(int d, CouplingType type, double kappa);

// Evolves a two-mode state by the same gate without materializing it:
// mode-wise basis changes plus a diagonal phase in the eigenbasis.
void apply_gate(TruncatedFockState& state, CouplingType type, double kappa, int sign = +1);

void apply_unitary(TruncatedFockState& state, const Eigen::MatrixXcd& u);

TruncatedFockState partial_trace(const TruncatedFockState& state, int keep_mode);

// Re tr(rho op), op on the full Hilbert space of the state.
double expectation(const TruncatedFockState& state, const Eigen::MatrixXcd& op);

// tr(rho (a (x) b)) for a on mode 0 and b on mode 1, without forming a (x) b.
std::complex<double> expectation_product(const TruncatedFockState& state,
                                         const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

// Quadrature mean vector and symmetrized covariance in the Gaussian engine's
// ordering: (x0, p0) or (x0, p0, x1, p1).
struct QuadratureMoments {
  Eigen::VectorXd mean;
  Eigen::MatrixXd cov;
};
QuadratureMoments quadrature_moments(const TruncatedFockState& state);

// Homodyne density of a single-mode state: p(q|phi) =
// sum_{m,n} rho_mn psi_m(q) psi_n(q) exp(i (n - m) phi), the distribution of
// x cos(phi) + p sin(phi) with oscillator eigenfunctions normalized so that
// the vacuum has variance 1/2.
Eigen::VectorXd homodyne_pdf(const TruncatedFockState& state, double phi,
                             const Eigen::VectorXd& q_grid);

// 801 points on [-8, 8]: resolves vacuum-width features to < 1e-4.
Eigen::VectorXd default_pdf_grid();

// Tabulated-density sampler: trapezoid cell masses, piecewise-linear CDF
// inversion. Negative density values are clipped to zero first.
class PdfSampler {
 public:
  PdfSampler(const Eigen::VectorXd& q_grid, const Eigen::VectorXd& pdf);
  double draw(StreamRng& rng) const;

 private:
  Eigen::VectorXd grid_;
  std::vector<double> cdf_;  // size grid_.size(), cdf_[0] = 0
};

std::vector<double> sample_from_pdf(const Eigen::VectorXd& q_grid, const Eigen::VectorXd& pdf,
                                    StreamRng& rng, std::size_t shots);

}  // namespace spintomo::fock
