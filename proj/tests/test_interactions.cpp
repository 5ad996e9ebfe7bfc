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

#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "spintomo/errors.hpp"
#include "spintomo/interactions.hpp"
#include "spintomo/schemes.hpp"

using namespace spintomo;

namespace {
const ModeLayout& two_modes() { return light_spin_layout(); }
}  // namespace

TEST_SUITE("interactions") {

TEST_CASE("fr_pass Z couples p into the partner x") {
  const double k = 0.7;
  const auto map = fr_pass(two_modes(), {CouplingType::Z, +1, k}, modes::kLight, modes::kSpin);
  map.validate();

  Eigen::MatrixXd want = Eigen::MatrixXd::Identity(4, 4);
  want(0, 3) = k;  // x_L += k p_A
  want(2, 1) = k;  // x_A += k p_L
  CHECK((map.S - want).norm() == 0.0);
  CHECK(map.d.norm() == 0.0);

  const auto neg = fr_pass(two_modes(), {CouplingType::Z, -1, k}, modes::kLight, modes::kSpin);
  want(0, 3) = -k;
  want(2, 1) = -k;
  CHECK((neg.S - want).norm() == 0.0);
}

TEST_CASE("fr_pass Y couples x into the partner p") {
  const double k = 1.3;
  const auto map = fr_pass(two_modes(), {CouplingType::Y, +1, k}, modes::kLight, modes::kSpin);
  map.validate();

  Eigen::MatrixXd want = Eigen::MatrixXd::Identity(4, 4);
  want(1, 2) = -k;  // p_L -= k x_A
  want(3, 0) = -k;  // p_A -= k x_L
  CHECK((map.S - want).norm() == 0.0);

  CHECK_THROWS_AS(
      fr_pass(two_modes(), {CouplingType::Z, 0, 1.0}, modes::kLight, modes::kSpin),
      std::invalid_argument);
  CHECK_THROWS_AS(fr_pass(two_modes(), {}, modes::kLight, modes::kLight),
                  std::invalid_argument);
}

TEST_CASE("phase rotations move coherent amplitudes clockwise") {
  // theta rotates alpha -> alpha exp(-i theta); check on the mean vector.
  const std::complex<double> alpha{0.6, 0.2};
  const double theta = 1.1;
  const auto state = coherent_state(two_modes(), modes::kSpin, alpha);
  const auto rotated = apply_map(state, fmps_rotation(two_modes(), modes::kSpin, theta));

  const auto expect = alpha * std::exp(std::complex<double>(0.0, -theta));
  CHECK(rotated.mean_x(modes::kSpin) ==
        doctest::Approx(std::sqrt(2.0) * expect.real()).epsilon(1e-14));
  CHECK(rotated.mean_p(modes::kSpin) ==
        doctest::Approx(std::sqrt(2.0) * expect.imag()).epsilon(1e-14));
  CHECK(rotated.mean_x(modes::kLight) == 0.0);

  // Quarter turn: (x, p) -> (p, -x).
  const auto quarter = fmps_rotation(two_modes(), modes::kSpin, M_PI_2);
  CHECK(quarter.S(2, 3) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(quarter.S(3, 2) == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(std::abs(quarter.S(2, 2)) < 1e-15);

  // The light-side rotation acts on the light block the same way.
  const auto stokes = stokes_rotation(two_modes(), modes::kLight, theta);
  const auto fmps = fmps_rotation(two_modes(), modes::kSpin, theta);
  CHECK((stokes.S.block<2, 2>(0, 0) - fmps.S.block<2, 2>(2, 2)).norm() == 0.0);
  CHECK((stokes.S.block<2, 2>(2, 2) - Eigen::Matrix2d::Identity()).norm() == 0.0);
}

TEST_CASE("squeezer scales quadratures") {
  const double r = 0.5;
  const auto sq = squeezer(two_modes(), modes::kLight, r);
  sq.validate();
  const auto out = apply_map(vacuum_state(two_modes()), sq);
  CHECK(out.cov(0, 0) == doctest::Approx(0.5 * std::exp(-2.0 * r)).epsilon(1e-14));
  CHECK(out.cov(1, 1) == doctest::Approx(0.5 * std::exp(2.0 * r)).epsilon(1e-14));
  CHECK(out.cov(2, 2) == 0.5);
  out.validate();
}

TEST_CASE("beamsplitter is orthogonal and mixes amplitudes") {
  const double T = 0.7;
  const auto bs = beamsplitter(two_modes(), modes::kLight, modes::kSpin, T);
  bs.validate();
  CHECK((bs.S.transpose() * bs.S - Eigen::MatrixXd::Identity(4, 4)).norm() < 1e-14);

  const std::complex<double> alpha{1.0, -0.5};
  const auto in = coherent_state(two_modes(), modes::kLight, alpha);
  const auto out = apply_map(in, bs);
  CHECK(out.mean_x(modes::kLight) ==
        doctest::Approx(std::sqrt(T) * std::sqrt(2.0) * alpha.real()).epsilon(1e-14));
  CHECK(out.mean_x(modes::kSpin) ==
        doctest::Approx(-std::sqrt(1.0 - T) * std::sqrt(2.0) * alpha.real()).epsilon(1e-14));
  // Total energy (mean square + covariance trace) is conserved.
  CHECK(out.mean.squaredNorm() == doctest::Approx(in.mean.squaredNorm()).epsilon(1e-13));
  CHECK(out.cov.trace() == doctest::Approx(in.cov.trace()).epsilon(1e-13));

  CHECK_THROWS_AS(beamsplitter(two_modes(), modes::kLight, modes::kSpin, 1.2),
                  std::invalid_argument);
}

TEST_CASE("attenuator pulls states toward vacuum") {
  const double eta = 0.36;
  const auto coh = coherent_state(two_modes(), modes::kLight, {1.0, 1.0});
  const auto out = attenuator(coh, modes::kLight, eta);
  CHECK(out.mean_x(modes::kLight) ==
        doctest::Approx(std::sqrt(eta) * std::sqrt(2.0)).epsilon(1e-14));
  // Coherent states stay coherent under pure loss.
  CHECK((out.cov - coh.cov).norm() < 1e-14);

  const auto th = thermal_state(two_modes(), modes::kLight, 2.0);
  const auto th_out = attenuator(th, modes::kLight, eta);
  CHECK(th_out.cov(0, 0) == doctest::Approx(eta * 2.0 + (1.0 - eta) * 0.5).epsilon(1e-14));

  // Cross covariances scale by sqrt(eta) and the result stays physical.
  auto entangled = apply_map(
      apply_map(vacuum_state(two_modes()), squeezer(two_modes(), modes::kLight, 1.0)),
      beamsplitter(two_modes(), modes::kLight, modes::kSpin, 0.5));
  const Eigen::Matrix2d cross = entangled.cov.block<2, 2>(0, 2);
  const auto lossy = attenuator(entangled, modes::kLight, eta);
  CHECK((lossy.cov.block<2, 2>(0, 2) - std::sqrt(eta) * cross).norm() < 1e-14);
  CHECK((lossy.cov.block<2, 2>(2, 2) - entangled.cov.block<2, 2>(2, 2)).norm() == 0.0);
  lossy.validate();

  const auto dead = attenuator(entangled, modes::kLight, 0.0);
  CHECK((dead.cov.block<2, 2>(0, 0) - 0.5 * Eigen::Matrix2d::Identity()).norm() < 1e-14);
  CHECK_THROWS_AS(attenuator(coh, modes::kLight, 1.5), std::invalid_argument);
}

TEST_CASE("homodyne statistics at a rotated quadrature") {
  const std::complex<double> alpha{0.8, -0.3};
  const auto coh = coherent_state(two_modes(), modes::kLight, alpha);
  for (const double phi : {0.0, 0.4, M_PI_2, 3.0}) {
    const auto st = homodyne_statistics(coh, {modes::kLight, phi});
    const auto proj = alpha * std::exp(std::complex<double>(0.0, phi));
    CHECK(st.mean == doctest::Approx(std::sqrt(2.0) * proj.real()).epsilon(1e-13));
    CHECK(st.variance == doctest::Approx(0.5).epsilon(1e-13));
  }

  const double r = 0.6;
  const auto sq = apply_map(vacuum_state(two_modes()), squeezer(two_modes(), modes::kLight, r));
  const double phi = 0.7;
  const auto st = homodyne_statistics(sq, {modes::kLight, phi});
  const double want = 0.5 * (std::exp(-2.0 * r) * std::cos(phi) * std::cos(phi) +
                             std::exp(2.0 * r) * std::sin(phi) * std::sin(phi));
  CHECK(st.variance == doctest::Approx(want).epsilon(1e-12));
}

TEST_CASE("homodyne sampling matches its own statistics") {
  const auto coh = coherent_state(two_modes(), modes::kLight, {0.5, 0.25});
  const auto st = homodyne_statistics(coh, {modes::kLight, 0.9});
  const int n = 20000;
  double sum = 0.0, sum2 = 0.0;
  StreamRng rng(2024, 0);
  for (int i = 0; i < n; ++i) {
    const auto r = homodyne_sample(coh, {modes::kLight, 0.9}, rng);
    CHECK(!r.degenerate);
    sum += r.outcome;
    sum2 += r.outcome * r.outcome;
  }
  const double mean = sum / n;
  const double var = sum2 / n - mean * mean;
  const double sd = std::sqrt(st.variance);
  CHECK(std::abs(mean - st.mean) < 5.0 * sd / std::sqrt(static_cast<double>(n)));
  CHECK(std::abs(var - st.variance) < 5.0 * st.variance * std::sqrt(2.0 / n));
}

TEST_CASE("conditioning follows the joint covariance") {
  // Entangle the two modes, measure x on the light side, and verify the
  // conditional spin moments against the 2x2 Schur formula written out here
  // from the joint blocks: E[b|a] = c a / v, Var[b|a] = v_b - c^2 / v_a.
  auto joint = apply_map(
      apply_map(vacuum_state(two_modes()), squeezer(two_modes(), modes::kLight, 0.9)),
      beamsplitter(two_modes(), modes::kLight, modes::kSpin, 0.6));
  const double va = joint.cov(0, 0);
  const double vb = joint.cov(2, 2);
  const double c_xx = joint.cov(0, 2);
  const double c_xp = joint.cov(0, 3);

  StreamRng rng(5, 1);
  const auto r = homodyne_sample(joint, {modes::kLight, 0.0}, rng);
  REQUIRE(r.post.layout.mode_count() == 1);
  CHECK(r.post.layout.contains(modes::kSpin));
  CHECK(r.post.mean_x(modes::kSpin) == doctest::Approx(c_xx * r.outcome / va).epsilon(1e-12));
  CHECK(r.post.mean_p(modes::kSpin) == doctest::Approx(c_xp * r.outcome / va).epsilon(1e-12));
  CHECK(r.post.mode_cov(modes::kSpin)(0, 0) ==
        doctest::Approx(vb - c_xx * c_xx / va).epsilon(1e-12));
  r.post.validate();

  // End-to-end: the empirical covariance of sequential outcomes must equal
  // the unconditional joint covariance (law of total covariance).
  const int n = 30000;
  double sa = 0.0, sb = 0.0, sab = 0.0, saa = 0.0;
  for (int i = 0; i < n; ++i) {
    const auto first = homodyne_sample(joint, {modes::kLight, 0.0}, rng);
    const auto second = homodyne_sample(first.post, {modes::kSpin, 0.0}, rng);
    sa += first.outcome;
    sb += second.outcome;
    sab += first.outcome * second.outcome;
    saa += first.outcome * first.outcome;
  }
  const double cov_ab = sab / n - (sa / n) * (sb / n);
  const double var_a = saa / n - (sa / n) * (sa / n);
  CHECK(std::abs(var_a - va) < 5.0 * va * std::sqrt(2.0 / n));
  // SE of a covariance estimate at zero mean: sqrt((va vb + c^2) / n).
  CHECK(std::abs(cov_ab - c_xx) < 5.0 * std::sqrt((va * vb + c_xx * c_xx) / n));
}

TEST_CASE("degenerate quadratures produce deterministic outcomes") {
  auto flat = coherent_state(two_modes(), modes::kLight, {2.0, 0.0});
  flat = apply_map(flat, squeezer(two_modes(), modes::kLight, 20.0));
  StreamRng rng(17, 0);
  const auto r = homodyne_sample(flat, {modes::kLight, 0.0}, rng);
  CHECK(r.degenerate);
  CHECK(r.outcome == flat.mean_x(modes::kLight));
}

TEST_CASE("double homodyne samples the Husimi density") {
  const std::complex<double> alpha{0.9, -0.6};
  const auto coh = coherent_state(two_modes(), modes::kLight, alpha);
  StreamRng rng(99, 0);
  const int n = 30000;
  double sx = 0.0, sp = 0.0, sxx = 0.0, spp = 0.0;
  for (int i = 0; i < n; ++i) {
    const auto r = double_homodyne_sample(coh, modes::kLight, rng);
    CHECK(r.post.layout.mode_count() == 1);
    sx += r.x_out;
    sp += r.p_out;
    sxx += r.x_out * r.x_out;
    spp += r.p_out * r.p_out;
  }
  const double mx = sx / n, mp = sp / n;
  // Outcome coordinates are alpha-plane: mean (Re a, Im a), variance 1/2
  // per axis for a coherent input.
  const double tol = 5.0 * std::sqrt(0.5 / n);
  CHECK(std::abs(mx - alpha.real()) < tol);
  CHECK(std::abs(mp - alpha.imag()) < tol);
  CHECK(std::abs(sxx / n - mx * mx - 0.5) < 5.0 * 0.5 * std::sqrt(2.0 / n));
  CHECK(std::abs(spp / n - mp * mp - 0.5) < 5.0 * 0.5 * std::sqrt(2.0 / n));
}

TEST_CASE("double homodyne variances for squeezed input") {
  const double r = 0.7;
  const auto sq = apply_map(vacuum_state(two_modes()), squeezer(two_modes(), modes::kLight, r));
  StreamRng rng(7, 7);
  const int n = 40000;
  double sxx = 0.0, spp = 0.0;
  for (int i = 0; i < n; ++i) {
    const auto d = double_homodyne_sample(sq, modes::kLight, rng);
    sxx += d.x_out * d.x_out;
    spp += d.p_out * d.p_out;
  }
  // Var(Re a) = (1 + e^{-2r})/4, Var(Im a) = (1 + e^{2r})/4 for the Q of
  // x-squeezed vacuum.
  const double vx = 0.25 * (1.0 + std::exp(-2.0 * r));
  const double vp = 0.25 * (1.0 + std::exp(2.0 * r));
  CHECK(std::abs(sxx / n - vx) < 5.0 * vx * std::sqrt(2.0 / n));
  CHECK(std::abs(spp / n - vp) < 5.0 * vp * std::sqrt(2.0 / n));
}

}  // TEST_SUITE
