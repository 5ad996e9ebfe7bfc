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

#include "spintomo/fock_oracle.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "spintomo/errors.hpp"

namespace spintomo::fock {

namespace {
using Eigen::Index;
using Cplx = std::complex<double>;

// (I (x) B) M for a two-mode matrix M: B acts on the fast (second) index.
Eigen::MatrixXcd kron1_left(const Eigen::MatrixXcd& b, const Eigen::MatrixXcd& m, int d) {
  Eigen::MatrixXcd out(m.rows(), m.cols());
  for (int i = 0; i < d; ++i)
    out.middleRows(static_cast<Index>(i) * d, d) =
        b * m.middleRows(static_cast<Index>(i) * d, d);
  return out;
}

// Reorders both indices of a two-mode matrix so the modes swap places.
Eigen::MatrixXcd swap_modes(const Eigen::MatrixXcd& m, int d) {
  Eigen::MatrixXcd out(m.rows(), m.cols());
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      out.row(static_cast<Index>(j) * d + i) = m.row(static_cast<Index>(i) * d + j);
  Eigen::MatrixXcd out2(m.rows(), m.cols());
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      out2.col(static_cast<Index>(j) * d + i) = out.col(static_cast<Index>(i) * d + j);
  return out2;
}

// (A (x) B) M (A (x) B)^dag without materializing the Kronecker products.
Eigen::MatrixXcd sandwich(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b,
                          const Eigen::MatrixXcd& m, int d) {
  Eigen::MatrixXcd t = kron1_left(b, m, d);                    // (I (x) B) M
  t = swap_modes(kron1_left(a, swap_modes(t, d), d), d);       // (A (x) I) ...
  // Right factor: M K^dag = (K M^dag)^dag with K = A (x) B.
  Eigen::MatrixXcd u = kron1_left(b, t.adjoint(), d);
  u = swap_modes(kron1_left(a, swap_modes(u, d), d), d);
  return u.adjoint();
}

}  // namespace

void TruncatedFockState::validate(double leak_tol) const {
  const double herm = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  if (herm > 1e-10)
    throw invariant_error("TruncatedFockState: non-Hermitian by " + std::to_string(herm));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(rho, Eigen::EigenvaluesOnly);
  const double min_eig = eig.eigenvalues().minCoeff();
  if (min_eig < -1e-9)
    throw invariant_error("TruncatedFockState: negative eigenvalue " + std::to_string(min_eig));
  const double trace = rho.trace().real();
  if (trace > 1.0 + 1e-10 || trace < 1.0 - leak_tol)
    throw invariant_error("TruncatedFockState: trace " + std::to_string(trace) +
                          " outside [1 - " + std::to_string(leak_tol) + ", 1]");
}

Eigen::MatrixXcd ladder(int d) {
  if (d < 2) throw std::invalid_argument("ladder: need d >= 2");
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(d, d);
  for (int n = 1; n < d; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

Eigen::MatrixXcd quadrature_operator(int d, Quadrature kind) {
  const Eigen::MatrixXcd a = ladder(d);
  if (kind == Quadrature::X) return (a + a.adjoint()) / M_SQRT2;
  return (a - a.adjoint()) / Cplx(0.0, M_SQRT2);
}

TruncatedFockState fock_state(int d, int n) {
  if (n < 0 || n >= d) throw std::invalid_argument("fock_state: level outside truncation");
  TruncatedFockState state{Eigen::MatrixXcd::Zero(d, d), d, 1};
  state.rho(n, n) = 1.0;
  return state;
}

TruncatedFockState coherent_fock(int d, std::complex<double> alpha) {
  Eigen::VectorXcd c(d);
  c(0) = std::exp(-0.5 * std::norm(alpha));
  for (int n = 1; n < d; ++n) c(n) = c(n - 1) * alpha / std::sqrt(static_cast<double>(n));
  TruncatedFockState state{c * c.adjoint(), d, 1};
  return state;
}

TruncatedFockState squeezed_vacuum_fock(int d, double r) {
  // S(r) = exp(r (a^2 - a^dag^2)/2) squeezes x; only even levels populate:
  // c_{2m} = (cosh r)^{-1/2} (-tanh r)^m sqrt((2m)!) / (2^m m!).
  Eigen::VectorXcd c = Eigen::VectorXcd::Zero(d);
  c(0) = 1.0 / std::sqrt(std::cosh(r));
  for (int m = 1; 2 * m < d; ++m) {
    // ratio c_{2m} / c_{2m-2} = -tanh(r) sqrt((2m)(2m-1)) / (2m)
    const double k = 2.0 * m;
    c(2 * m) = c(2 * m - 2) * (-std::tanh(r)) * std::sqrt(k * (k - 1.0)) / k;
  }
  TruncatedFockState state{c * c.adjoint(), d, 1};
  return state;
}

TruncatedFockState product(const TruncatedFockState& a, const TruncatedFockState& b) {
  if (a.n_modes != 1 || b.n_modes != 1 || a.dim != b.dim)
    throw std::invalid_argument("product: expects two single-mode states of equal dimension");
  const int d = a.dim;
  TruncatedFockState out{Eigen::MatrixXcd(d * d, d * d), d, 2};
  for (int i = 0; i < d; ++i)
    for (int k = 0; k < d; ++k)
      out.rho.block(static_cast<Index>(i) * d, static_cast<Index>(k) * d, d, d) =
          a.rho(i, k) * b.rho;
  return out;
}

Eigen::MatrixXcd gate_exponential(int d, CouplingType type, double kappa) {
  if (d < 2) throw std::invalid_argument("gate_exponential: need d >= 2");
  if (!std::isfinite(kappa)) throw std::invalid_argument("gate_exponential: non-finite kappa");
  const Eigen::MatrixXcd q =
      quadrature_operator(d, type == CouplingType::Z ? Quadrature::P : Quadrature::X);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(q);
  if (eig.info() != Eigen::Success)
    throw invariant_error("gate_exponential: eigendecomposition failed");
  const Eigen::MatrixXcd& v = eig.eigenvectors();
  const Eigen::VectorXd& e = eig.eigenvalues();

  Eigen::MatrixXcd w(d * d, d * d);  // V (x) V
  for (int i = 0; i < d; ++i)
    for (int k = 0; k < d; ++k)
      w.block(static_cast<Index>(i) * d, static_cast<Index>(k) * d, d, d) = v(i, k) * v;

  Eigen::VectorXcd phases(d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      phases(static_cast<Index>(i) * d + j) = std::exp(Cplx(0.0, -kappa * e(i) * e(j)));

  return w * phases.asDiagonal() * w.adjoint();
}

void apply_gate(TruncatedFockState& state, CouplingType type, double kappa, int sign) {
  if (state.n_modes != 2) throw std::invalid_argument("apply_gate: expects a two-mode state");
  if (sign != 1 && sign != -1) throw std::invalid_argument("apply_gate: sign must be +-1");
  const int d = state.dim;
  const Eigen::MatrixXcd q =
      quadrature_operator(d, type == CouplingType::Z ? Quadrature::P : Quadrature::X);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(q);
  if (eig.info() != Eigen::Success)
    throw invariant_error("apply_gate: eigendecomposition failed");
  const Eigen::MatrixXcd& v = eig.eigenvectors();
  const Eigen::VectorXd& e = eig.eigenvalues();
  const Eigen::MatrixXcd vdag = v.adjoint();

  // rho' = (V(x)V) F [(V(x)V)^dag rho (V(x)V)] F^dag (V(x)V)^dag
  Eigen::MatrixXcd t = sandwich(vdag, vdag, state.rho, d);
  const double k = sign * kappa;
  for (Index r = 0; r < t.rows(); ++r) {
    const double er = e(static_cast<int>(r) / d) * e(static_cast<int>(r) % d);
    for (Index c = 0; c < t.cols(); ++c) {
      const double ec = e(static_cast<int>(c) / d) * e(static_cast<int>(c) % d);
      t(r, c) *= std::exp(Cplx(0.0, -k * (er - ec)));
    }
  }
  state.rho = sandwich(v, v, t, d);
}

void apply_unitary(TruncatedFockState& state, const Eigen::MatrixXcd& u) {
  if (u.rows() != state.rho.rows() || u.cols() != state.rho.cols())
    throw std::invalid_argument("apply_unitary: dimension mismatch");
  state.rho = u * state.rho * u.adjoint();
}

TruncatedFockState partial_trace(const TruncatedFockState& state, int keep_mode) {
  if (state.n_modes != 2) throw std::invalid_argument("partial_trace: expects a two-mode state");
  if (keep_mode != 0 && keep_mode != 1) throw std::invalid_argument("partial_trace: bad mode");
  const int d = state.dim;
  TruncatedFockState out{Eigen::MatrixXcd::Zero(d, d), d, 1};
  for (int i = 0; i < d; ++i)
    for (int k = 0; k < d; ++k) {
      Cplx sum = 0.0;
      for (int j = 0; j < d; ++j)
        sum += keep_mode == 0
                   ? state.rho(static_cast<Index>(i) * d + j, static_cast<Index>(k) * d + j)
                   : state.rho(static_cast<Index>(j) * d + i, static_cast<Index>(j) * d + k);
      out.rho(i, k) = sum;
    }
  return out;
}

double expectation(const TruncatedFockState& state, const Eigen::MatrixXcd& op) {
  if (op.rows() != state.rho.rows())
    throw std::invalid_argument("expectation: dimension mismatch");
  return (state.rho.transpose().cwiseProduct(op)).sum().real();
}

std::complex<double> expectation_product(const TruncatedFockState& state,
                                         const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  if (state.n_modes != 2)
    throw std::invalid_argument("expectation_product: expects a two-mode state");
  const int d = state.dim;
  Cplx sum = 0.0;
  for (int i = 0; i < d; ++i)
    for (int ip = 0; ip < d; ++ip) {
      if (a(ip, i) == Cplx(0.0)) continue;
      Cplx inner = 0.0;
      for (int j = 0; j < d; ++j)
        for (int jp = 0; jp < d; ++jp)
          inner += state.rho(static_cast<Index>(i) * d + j, static_cast<Index>(ip) * d + jp) *
                   b(jp, j);
      sum += a(ip, i) * inner;
    }
  return sum;
}

QuadratureMoments quadrature_moments(const TruncatedFockState& state) {
  const int d = state.dim;
  const Eigen::MatrixXcd x = quadrature_operator(d, Quadrature::X);
  const Eigen::MatrixXcd p = quadrature_operator(d, Quadrature::P);
  const Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(d, d);
  const std::vector<const Eigen::MatrixXcd*> quads = {&x, &p};

  const int nq = 2 * state.n_modes;
  QuadratureMoments out;
  out.mean.resize(nq);
  out.cov.resize(nq, nq);

  auto single = [&](int qi) -> Eigen::MatrixXcd {  // operator of quadrature index qi
    return *quads[qi % 2];
  };
  auto expect_pair = [&](int qa, int qb) -> double {
    // Symmetrized <{q_a, q_b}>/2 across the full state.
    const int ma = qa / 2, mb = qb / 2;
    if (state.n_modes == 1) {
      const Eigen::MatrixXcd sym = 0.5 * (single(qa) * single(qb) + single(qb) * single(qa));
      return expectation(state, sym);
    }
    if (ma == mb) {
      const Eigen::MatrixXcd sym = 0.5 * (single(qa) * single(qb) + single(qb) * single(qa));
      return ma == 0 ? expectation_product(state, sym, eye).real()
                     : expectation_product(state, eye, sym).real();
    }
    // Different modes commute; order (mode0, mode1).
    const Eigen::MatrixXcd& a = ma == 0 ? single(qa) : single(qb);
    const Eigen::MatrixXcd& b = ma == 0 ? single(qb) : single(qa);
    return expectation_product(state, a, b).real();
  };

  for (int qa = 0; qa < nq; ++qa) {
    if (state.n_modes == 1)
      out.mean(qa) = expectation(state, single(qa));
    else
      out.mean(qa) = qa / 2 == 0 ? expectation_product(state, single(qa), eye).real()
                                 : expectation_product(state, eye, single(qa)).real();
  }
  for (int qa = 0; qa < nq; ++qa)
    for (int qb = qa; qb < nq; ++qb) {
      const double second = expect_pair(qa, qb);
      out.cov(qa, qb) = second - out.mean(qa) * out.mean(qb);
      out.cov(qb, qa) = out.cov(qa, qb);
    }
  return out;
}

Eigen::VectorXd homodyne_pdf(const TruncatedFockState& state, double phi,
                             const Eigen::VectorXd& q_grid) {
  if (state.n_modes != 1)
    throw std::invalid_argument("homodyne_pdf: reduce to a single mode first");
  const int d = state.dim;
  const Index npts = q_grid.size();

  // psi_0 = pi^{-1/4} exp(-q^2/2), psi_n = q sqrt(2/n) psi_{n-1}
  //                                        - sqrt((n-1)/n) psi_{n-2}.
  Eigen::MatrixXd psi(d, npts);
  for (Index k = 0; k < npts; ++k) {
    const double q = q_grid(k);
    psi(0, k) = std::pow(M_PI, -0.25) * std::exp(-0.5 * q * q);
    if (d > 1) psi(1, k) = q * M_SQRT2 * psi(0, k);
    for (int n = 2; n < d; ++n)
      psi(n, k) = q * std::sqrt(2.0 / n) * psi(n - 1, k) -
                  std::sqrt((n - 1.0) / n) * psi(n - 2, k);
  }

  // M = D rho D^dag with D = diag(exp(-i m phi)); p(q) = psi^T Re(M) psi.
  Eigen::MatrixXcd m = state.rho;
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c)
      m(r, c) *= std::exp(Cplx(0.0, (c - r) * phi));
  const Eigen::MatrixXd re = m.real();
  return ((re * psi).cwiseProduct(psi)).colwise().sum().transpose();
}

Eigen::VectorXd default_pdf_grid() { return Eigen::VectorXd::LinSpaced(801, -8.0, 8.0); }

PdfSampler::PdfSampler(const Eigen::VectorXd& q_grid, const Eigen::VectorXd& pdf)
    : grid_(q_grid) {
  if (q_grid.size() != pdf.size() || q_grid.size() < 2)
    throw std::invalid_argument("PdfSampler: grid/pdf size mismatch");
  const Index n = q_grid.size();
  cdf_.assign(static_cast<std::size_t>(n), 0.0);
  for (Index i = 1; i < n; ++i) {
    const double lo = std::max(pdf(i - 1), 0.0);
    const double hi = std::max(pdf(i), 0.0);
    cdf_[static_cast<std::size_t>(i)] =
        cdf_[static_cast<std::size_t>(i - 1)] + 0.5 * (lo + hi) * (q_grid(i) - q_grid(i - 1));
  }
  const double total = cdf_.back();
  if (!(total > 0.0)) throw std::invalid_argument("PdfSampler: density integrates to zero");
  for (auto& c : cdf_) c /= total;
}

double PdfSampler::draw(StreamRng& rng) const {
  const double u = rng.uniform();
  const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  std::size_t hi = std::min<std::size_t>(static_cast<std::size_t>(it - cdf_.begin()),
                                         cdf_.size() - 1);
  if (hi == 0) hi = 1;
  const std::size_t lo = hi - 1;
  const double mass = cdf_[hi] - cdf_[lo];
  const double frac = mass > 0.0 ? (u - cdf_[lo]) / mass : 0.0;
  return grid_(static_cast<Index>(lo)) +
         frac * (grid_(static_cast<Index>(hi)) - grid_(static_cast<Index>(lo)));
}

std::vector<double> sample_from_pdf(const Eigen::VectorXd& q_grid, const Eigen::VectorXd& pdf,
                                    StreamRng& rng, std::size_t shots) {
  const PdfSampler sampler(q_grid, pdf);
  std::vector<double> out(shots);
  for (auto& o : out) o = sampler.draw(rng);
  return out;
}

}  // namespace spintomo::fock
