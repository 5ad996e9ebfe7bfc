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

#include "spintomo/benchmark.hpp"
#include "spintomo/errors.hpp"

using namespace spintomo;

TEST_SUITE("benchmark") {

TEST_CASE("classical bound closed forms") {
  CHECK(classical_bound(1.0, 1.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(classical_bound(0.5, 0.25) == doctest::Approx(1.25 / 1.75).epsilon(1e-15));
  CHECK(classical_bound(0.0, 0.7) == 1.0);
  // The narrow-ensemble limit reaches 1/2 exactly in double precision.
  CHECK(classical_bound(1.0, 1e-18) == 0.5);
  CHECK(delta_bound(1.0, 1e-18) == 1.0);
  CHECK(delta_bound(0.5, 0.25) == doctest::Approx(1.0 / 1.75).epsilon(1e-15));

  // Harder gains lower the bound, broader priors raise it.
  CHECK(classical_bound(2.0, 0.5) < classical_bound(1.0, 0.5));
  CHECK(classical_bound(1.0, 2.0) > classical_bound(1.0, 0.5));

  CHECK_THROWS_AS(classical_bound(1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(classical_bound(-0.1, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(delta_bound(1.0, -1.0), std::invalid_argument);
}

TEST_CASE("overlap fidelity against the coherent-state formula") {
  // For cov = I/2 the output is coherent and F = exp(-|beta - alpha|^2),
  // i.e. exp(-|delta|^2/2) in quadrature units.
  const Eigen::Matrix2d coherent_cov = 0.5 * Eigen::Matrix2d::Identity();
  CHECK(gaussian_overlap_fidelity({0.0, 0.0}, coherent_cov) == 1.0);
  const Eigen::Vector2d d{0.6, -0.4};
  CHECK(gaussian_overlap_fidelity(d, coherent_cov) ==
        doctest::Approx(std::exp(-0.5 * d.squaredNorm())).epsilon(1e-14));

  // One added vacuum unit of noise costs exactly 1/3 at zero offset.
  CHECK(gaussian_overlap_fidelity({0.0, 0.0}, Eigen::Matrix2d::Identity()) ==
        doctest::Approx(2.0 / 3.0).epsilon(1e-15));

  // Anisotropic case, checked against the determinant formula by hand:
  // S = diag(1, 2), F = exp(-d_x^2/2 - d_p^2/4) / sqrt(2).
  Eigen::Matrix2d cov = Eigen::Matrix2d::Zero();
  cov(0, 0) = 0.5;
  cov(1, 1) = 1.5;
  CHECK(gaussian_overlap_fidelity({0.2, 0.3}, cov) ==
        doctest::Approx(std::exp(-0.02 - 0.0225) / std::sqrt(2.0)).epsilon(1e-13));
}

TEST_CASE("channel complete positivity") {
  GaussianChannel::identity().validate();
  GaussianChannel::attenuator(0.36, 0.7).validate();
  GaussianChannel::attenuator(1.0).validate();

  // Noiseless amplification is unphysical ...
  GaussianChannel amp;
  amp.X = 1.2 * Eigen::Matrix2d::Identity();
  CHECK_THROWS_AS(amp.validate(), invariant_error);
  // ... until the minimal noise floor (|1 - eta|)/2 per quadrature is added.
  amp.Y = 0.5 * (1.2 * 1.2 - 1.0) * Eigen::Matrix2d::Identity();
  amp.validate();

  CHECK_THROWS_AS(GaussianChannel::attenuator(0.0), std::invalid_argument);
  CHECK_THROWS_AS(GaussianChannel::attenuator(1.2), std::invalid_argument);

  const auto att = GaussianChannel::attenuator(0.49, 0.0);
  CHECK((att.X - 0.7 * Eigen::Matrix2d::Identity()).norm() < 1e-15);
  CHECK((att.Y - 0.255 * Eigen::Matrix2d::Identity()).norm() < 1e-15);
}

TEST_CASE("identity channel saturates fidelity exactly") {
  BenchmarkConfig cfg;
  cfg.eta = 1.0;
  cfg.lambda = 0.8;
  cfg.n_draws = 500;
  cfg.seed = 11;
  const auto res = run_benchmark(GaussianChannel::identity(), cfg);
  CHECK(res.f_bar == 1.0);
  CHECK(res.f_bar_err == 0.0);
  CHECK(res.delta_bar == 0.0);
  CHECK(res.delta_bar_err == 0.0);
  CHECK(res.f_c == doctest::Approx(1.8 / 2.8).epsilon(1e-15));
  CHECK(res.delta_threshold == doctest::Approx(2.0 / 2.8).epsilon(1e-15));
  CHECK(res.pass_fidelity);
  CHECK(res.pass_delta);
  CHECK(res.seed == 11);
}

TEST_CASE("gain-matched pure loss is noiseless for coherent inputs") {
  // |alpha> -> |sqrt(eta) e^{i phi} alpha> exactly, so every draw scores
  // F = 1 and deviation 0 when the target matches the channel.
  BenchmarkConfig cfg;
  cfg.eta = 0.36;
  cfg.phi = 0.9;
  cfg.lambda = 0.7;
  cfg.n_draws = 400;
  cfg.seed = 5;
  const auto res = run_benchmark(GaussianChannel::attenuator(0.36, 0.9), cfg);
  CHECK(res.f_bar == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(res.f_bar_err < 1e-12);
  CHECK(std::abs(res.delta_bar) < 1e-12);
  CHECK(res.pass_fidelity);
  CHECK(res.pass_delta);
}

TEST_CASE("one added noise unit scores 2/3 and unit deviation") {
  GaussianChannel noisy = GaussianChannel::identity();
  noisy.Y = 0.5 * Eigen::Matrix2d::Identity();
  noisy.validate();
  BenchmarkConfig cfg;
  cfg.eta = 1.0;
  cfg.lambda = 1.0;
  cfg.n_draws = 300;
  cfg.seed = 2;
  const auto res = run_benchmark(noisy, cfg);
  CHECK(res.f_bar == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  CHECK(res.f_bar_err < 1e-14);
  CHECK(res.delta_bar == doctest::Approx(1.0).epsilon(1e-12));
  // f_bar equals F_c(1, 1) = 2/3 with no clearance either way.
  CHECK(!res.pass_fidelity);
  CHECK(!res.pass_delta);  // threshold 2/3 < 1
}

TEST_CASE("constant displacement shows up as a squared offset") {
  GaussianChannel shifted = GaussianChannel::identity();
  shifted.d = Eigen::Vector2d{0.3, 0.4};
  BenchmarkConfig cfg;
  cfg.n_draws = 200;
  cfg.seed = 3;
  const auto res = run_benchmark(shifted, cfg);
  CHECK(res.f_bar == doctest::Approx(std::exp(-0.125)).epsilon(1e-13));
  CHECK(res.f_bar_err < 1e-13);
  CHECK(res.delta_bar == doctest::Approx(0.25).epsilon(1e-13));
}

TEST_CASE("measure-and-prepare means match the closed form") {
  // Outcome = alpha + nu with E|nu|^2 = 1; re-prep g(alpha + nu). Per axis
  // the miss variance is v = (g - sqrt(eta))^2 / (2 lambda) + g^2 / 2, so
  // F_bar = 1 / (1 + 2v) and delta_bar = 4v.
  struct Case {
    double gain, eta, lambda;
  };
  for (const auto c : {Case{1.0, 1.0, 0.5}, Case{0.8, 0.64, 0.7}}) {
    BenchmarkConfig cfg;
    cfg.eta = c.eta;
    cfg.lambda = c.lambda;
    cfg.n_draws = 40000;
    cfg.seed = 31;
    const auto res = run_benchmark(MeasureAndPrepare{c.gain}, cfg);
    const double v = 0.5 * std::pow(c.gain - std::sqrt(c.eta), 2) / c.lambda +
                     0.5 * c.gain * c.gain;
    CHECK(std::abs(res.f_bar - 1.0 / (1.0 + 2.0 * v)) < 4.0 * res.f_bar_err);
    CHECK(std::abs(res.delta_bar - 4.0 * v) < 4.0 * res.delta_bar_err);
    CHECK(res.f_bar_err > 0.0);
    // The classical strategy must never clear the classical bound.
    CHECK(!res.pass_fidelity);
  }
}

TEST_CASE("optimal measure-and-prepare saturates the classical bound") {
  // gain = sqrt(eta)/(1 + lambda) minimizes the miss variance and lands the
  // average fidelity exactly on F_c.
  struct Case {
    double eta, lambda;
  };
  for (const auto c : {Case{1.0, 0.01}, Case{0.49, 0.5}}) {
    BenchmarkConfig cfg;
    cfg.eta = c.eta;
    cfg.lambda = c.lambda;
    cfg.n_draws = 50000;
    cfg.seed = 77;
    const double gain = std::sqrt(c.eta) / (1.0 + c.lambda);
    const auto res = run_benchmark(MeasureAndPrepare{gain}, cfg);
    CHECK(std::abs(res.f_bar - res.f_c) < 4.0 * res.f_bar_err);
    CHECK(!res.pass_fidelity);
  }
}

TEST_CASE("benchmark runs are seeded and thread-invariant") {
  BenchmarkConfig cfg;
  cfg.eta = 1.0;
  cfg.lambda = 0.3;
  cfg.n_draws = 5000;
  cfg.seed = 123;
  const auto a = run_benchmark(MeasureAndPrepare{1.0}, cfg);
  const auto b = run_benchmark(MeasureAndPrepare{1.0}, cfg);
  cfg.threads = 4;
  const auto c = run_benchmark(MeasureAndPrepare{1.0}, cfg);
  CHECK(a.f_bar == b.f_bar);
  CHECK(a.f_bar == c.f_bar);
  CHECK(a.delta_bar == c.delta_bar);
  CHECK(a.f_bar_err == c.f_bar_err);

  cfg.seed = 124;
  const auto d = run_benchmark(MeasureAndPrepare{1.0}, cfg);
  CHECK(d.f_bar != a.f_bar);

  BenchmarkConfig bad = cfg;
  bad.lambda = 0.0;
  CHECK_THROWS_AS(run_benchmark(MeasureAndPrepare{1.0}, bad), std::invalid_argument);
}

}  // TEST_SUITE
