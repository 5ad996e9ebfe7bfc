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
#include <map>
#include <sstream>
#include <vector>

#include "spintomo/errors.hpp"
#include "spintomo/schemes.hpp"

using namespace spintomo;

namespace {

// Per-angle sample means and variances.
struct AngleStats {
  long n = 0;
  double sum = 0.0, sum2 = 0.0;
  double mean() const { return sum / static_cast<double>(n); }
  double var() const { return sum2 / static_cast<double>(n) - mean() * mean(); }
};

std::map<double, AngleStats> by_angle(const SampleSet& set) {
  std::map<double, AngleStats> stats;
  for (const auto& rec : set.records) {
    auto& s = stats[rec.angle_rad];
    ++s.n;
    s.sum += rec.outcome_1;
    s.sum2 += rec.outcome_1 * rec.outcome_1;
  }
  return stats;
}

}  // namespace

TEST_SUITE("schemes") {

TEST_CASE("standard layout order") {
  const auto& layout = light_spin_layout();
  REQUIRE(layout.mode_count() == 2);
  CHECK(layout.label(0) == modes::kLight);
  CHECK(layout.label(1) == modes::kSpin);
}

TEST_CASE("prepare_mode overwrites one mode and clears its correlations") {
  auto state = vacuum_state(light_spin_layout());
  state = apply_map(state, squeezer(light_spin_layout(), modes::kLight, 1.0));
  state = apply_map(state, beamsplitter(light_spin_layout(), modes::kLight, modes::kSpin, 0.5));
  REQUIRE(std::abs(state.cov(0, 2)) > 1e-3);  // entangled before

  const Eigen::Matrix2d spin_before = state.mode_cov(modes::kSpin);
  prepare_mode(state, modes::kLight, {StatePrep::Kind::Thermal, {0, 0}, 0.0, 2.0});
  CHECK((state.cov.block<2, 2>(0, 2)).norm() == 0.0);
  CHECK((state.mode_cov(modes::kSpin) - spin_before).norm() == 0.0);
  CHECK(state.cov(0, 0) == 2.0);
  CHECK(state.mean_x(modes::kLight) == 0.0);

  prepare_mode(state, modes::kSpin, {StatePrep::Kind::Squeezed, {0.5, -0.5}, 0.7, 0.5});
  CHECK(state.mode_cov(modes::kSpin)(0, 0) ==
        doctest::Approx(0.5 * std::exp(-1.4)).epsilon(1e-14));
  CHECK(state.mean_x(modes::kSpin) == doctest::Approx(std::sqrt(2.0) * 0.5).epsilon(1e-15));
  state.validate();
}

TEST_CASE("two-pass transducer tuple at kappa 1") {
  const auto map = two_pass_transducer_map(1.0);
  map.validate();
  Eigen::Matrix4d want;
  // (s_y, s_z, j_y, j_z) -> (s_y + j_z, -j_y, j_y + s_z, -s_y)
  want << 1, 0, 0, 1,
          0, 0, -1, 0,
          0, 1, 1, 0,
          -1, 0, 0, 0;
  CHECK((map.S - want).norm() == 0.0);
  CHECK(map.d.norm() == 0.0);
}

TEST_CASE("transducer probe noise cancels only at kappa 1") {
  // The s_z' row keeps a (1 - kappa^2) s_z admixture away from kappa = 1.
  const double k = 0.9;
  const auto map = two_pass_transducer_map(k);
  CHECK(map.S(1, 1) == doctest::Approx(1.0 - k * k).epsilon(1e-14));
  CHECK(map.S(1, 2) == doctest::Approx(-k).epsilon(1e-14));
  CHECK(two_pass_transducer_map(1.0).S(1, 1) == 0.0);
}

TEST_CASE("three-pass composite is a rotated swap") {
  const auto map = three_pass_swap_map();
  map.validate();
  Eigen::Matrix4d want;
  // (s_y, s_z, j_y, j_z) -> (j_z, -j_y, s_z, -s_y)
  want << 0, 0, 0, 1,
          0, 0, -1, 0,
          0, 1, 0, 0,
          -1, 0, 0, 0;
  CHECK((map.S - want).norm() == 0.0);

  // Undoing the residual rotation on both outputs leaves the plain exchange.
  const auto& layout = light_spin_layout();
  const auto undone = compose({map,
                               stokes_rotation(layout, modes::kLight, -kSwapResidualRotation),
                               fmps_rotation(layout, modes::kSpin, -kSwapResidualRotation)});
  Eigen::Matrix4d swap = Eigen::Matrix4d::Zero();
  swap.block<2, 2>(0, 2).setIdentity();
  swap.block<2, 2>(2, 0).setIdentity();
  CHECK((undone.S - swap).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("single-pass probe estimates j_z with squeezed-probe noise") {
  const double r = 1.0;
  const StatePrep spin{StatePrep::Kind::Coherent, {0.3, 0.45}, 0.0, 0.5};
  const auto set = single_pass_probe(spin, r, 20000, {421, 2});
  CHECK(set.scheme == "single_pass_probe");
  CHECK(set.records.size() == 20000);
  CHECK(set.traits().outcome_sign == 1.0);
  CHECK(!set.traits().pairs);

  const auto stats = by_angle(set).begin()->second;
  const double want_mean = std::sqrt(2.0) * 0.45;           // <j_z>
  const double want_var = 0.5 * std::exp(-2.0 * r) + 0.5;   // probe + spin
  CHECK(std::abs(stats.mean() - want_mean) <
        5.0 * std::sqrt(want_var / static_cast<double>(stats.n)));
  CHECK(std::abs(stats.var() - want_var) <
        5.0 * want_var * std::sqrt(2.0 / static_cast<double>(stats.n)));
}

TEST_CASE("tomography scan samples the rotated spin marginal") {
  const StatePrep spin{StatePrep::Kind::Coherent, {0.6, 0.3}, 0.0, 0.5};
  const std::vector<double> angles{0.0, M_PI / 3.0, 2.0 * M_PI / 3.0};
  const auto set = tomography_scan(spin, angles, 4000, {99, 3});
  CHECK(set.scheme == "two_pass_tomography");
  CHECK(set.seed == 99);
  CHECK(set.records.size() == angles.size() * 4000);
  CHECK(set.traits().outcome_sign == -1.0);

  const double jy = std::sqrt(2.0) * 0.6, jz = std::sqrt(2.0) * 0.3;
  auto stats = by_angle(set);
  REQUIRE(stats.size() == angles.size());
  for (const double t : angles) {
    const auto& s = stats.at(t);
    CHECK(s.n == 4000);
    // Raw outcomes carry the optical sign: mean -(j_y cos t + j_z sin t).
    const double want = -(jy * std::cos(t) + jz * std::sin(t));
    CHECK(std::abs(s.mean() - want) < 5.0 * std::sqrt(0.5 / static_cast<double>(s.n)));
    CHECK(std::abs(s.var() - 0.5) < 5.0 * 0.5 * std::sqrt(2.0 / static_cast<double>(s.n)));
  }
}

TEST_CASE("acquisition is thread-count invariant") {
  const StatePrep spin{StatePrep::Kind::Squeezed, {0.2, 0.0}, 0.4, 0.5};
  const std::vector<double> angles{0.0, 1.0};
  const auto one = tomography_scan(spin, angles, 500, {7, 1});
  const auto four = tomography_scan(spin, angles, 500, {7, 4});
  REQUIRE(one.records.size() == four.records.size());
  bool identical = true;
  for (std::size_t i = 0; i < one.records.size(); ++i)
    identical = identical && one.records[i].outcome_1 == four.records[i].outcome_1 &&
                one.records[i].angle_rad == four.records[i].angle_rad;
  CHECK(identical);

  const auto h1 = husimi_acquisition(spin, 800, {3, 1});
  const auto h3 = husimi_acquisition(spin, 800, {3, 3});
  bool same = h1.records.size() == h3.records.size();
  for (std::size_t i = 0; same && i < h1.records.size(); ++i)
    same = h1.records[i].outcome_1 == h3.records[i].outcome_1 &&
           h1.records[i].outcome_2 == h3.records[i].outcome_2;
  CHECK(same);
}

TEST_CASE("husimi acquisition lands on the rotated amplitude") {
  const StatePrep spin{StatePrep::Kind::Coherent, {0.5, 0.0}, 0.0, 0.5};
  const auto set = husimi_acquisition(spin, 30000, {2025, 2});
  CHECK(set.scheme == "three_pass_husimi");
  CHECK(set.traits().pairs);
  CHECK(set.traits().rotation_rad == doctest::Approx(M_PI_2));

  double su = 0.0, sv = 0.0;
  for (const auto& rec : set.records) {
    su += rec.outcome_1;
    sv += rec.outcome_2;
  }
  const double n = static_cast<double>(set.records.size());
  // Swap leaves alpha' = alpha exp(-i pi/2) = -i alpha on the light mode.
  const double tol = 5.0 * std::sqrt(0.5 / n);
  CHECK(std::abs(su / n - 0.0) < tol);
  CHECK(std::abs(sv / n - (-0.5)) < tol);
}

TEST_CASE("fock tomography scan matches oracle variances") {
  const std::vector<double> angles{0.0, 1.1};
  const auto set = fock_tomography_scan(1, 20, angles, 6000, {31, 2});
  CHECK(set.scheme == "fock_tomography");
  CHECK(set.traits().outcome_sign == -1.0);
  auto stats = by_angle(set);
  REQUIRE(stats.size() == 2);
  for (const auto& [angle, s] : stats) {
    CHECK(s.n == 6000);
    // |1>: mean 0, variance 3/2 at every angle; var of the variance
    // estimator uses <q^4> = 15/4.
    CHECK(std::abs(s.mean()) < 5.0 * std::sqrt(1.5 / static_cast<double>(s.n)));
    CHECK(std::abs(s.var() - 1.5) <
          5.0 * std::sqrt((15.0 / 4.0 - 2.25) / static_cast<double>(s.n)));
  }
}

TEST_CASE("traits registry") {
  CHECK(scheme_traits("single_pass_probe").outcome_sign == 1.0);
  CHECK(scheme_traits("two_pass_tomography").outcome_sign == -1.0);
  CHECK(scheme_traits("fock_tomography").outcome_sign == -1.0);
  CHECK(scheme_traits("three_pass_husimi").pairs);
  CHECK(!scheme_traits("two_pass_tomography").pairs);
  CHECK_THROWS_AS(scheme_traits("unheard_of"), config_error);
}

TEST_CASE("sample csv round-trips bit-exactly") {
  SampleSet set;
  set.scheme = "two_pass_tomography";
  set.seed = 0xDEADBEEFCAFEULL;
  StreamRng rng(55, 0);
  for (int i = 0; i < 64; ++i)
    set.records.push_back({M_PI * rng.uniform(), (rng.gaussian()) * 1e3,
                           0.0});
  std::ostringstream out;
  set.to_csv(out);
  std::istringstream in(out.str());
  const auto back = SampleSet::from_csv(in, "mem");
  CHECK(back.scheme == set.scheme);
  CHECK(back.seed == set.seed);
  REQUIRE(back.records.size() == set.records.size());
  bool exact = true;
  for (std::size_t i = 0; i < set.records.size(); ++i)
    exact = exact && back.records[i].angle_rad == set.records[i].angle_rad &&
            back.records[i].outcome_1 == set.records[i].outcome_1;
  CHECK(exact);

  // Paired schemes carry and restore the second column.
  SampleSet pairs;
  pairs.scheme = "three_pass_husimi";
  pairs.seed = 3;
  pairs.records.push_back({0.0, 0.125, -7.25e-3});
  std::ostringstream pout;
  pairs.to_csv(pout);
  CHECK(pout.str().find("outcome_2") != std::string::npos);
  std::istringstream pin(pout.str());
  const auto pback = SampleSet::from_csv(pin, "mem");
  CHECK(pback.records.at(0).outcome_2 == -7.25e-3);
}

TEST_CASE("malformed sample csv is rejected with a location") {
  std::istringstream bad("scheme,seed,angle_rad,outcome_1\n");
  CHECK_THROWS_AS(SampleSet::from_csv(bad, "x"), config_error);

  std::istringstream wrong_header("a,b\n1,2\n");
  CHECK_THROWS_AS(SampleSet::from_csv(wrong_header, "x"), config_error);

  std::istringstream bad_row(
      "scheme,seed,angle_rad,outcome_1\n"
      "two_pass_tomography,1,0.5,not_a_number\n");
  try {
    SampleSet::from_csv(bad_row, "x");
    FAIL("expected config_error");
  } catch (const config_error& e) {
    CHECK(std::string(e.what()).find("x:2") != std::string::npos);
  }
}

}  // TEST_SUITE
