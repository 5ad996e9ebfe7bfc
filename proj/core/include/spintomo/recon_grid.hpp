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
#include <iosfwd>
#include <string>

namespace spintomo {

// Square phase-space grid: `resolution` cells per axis on [-extent, extent],
// sampled at cell centers. Wigner grids ("W") live in quadrature coordinates,
// Husimi grids ("Q") in alpha-plane coordinates.
struct GridSpec {
  double extent = 5.0;
  int resolution = 64;
  std::string kind = "W";

  double cell() const { return 2.0 * extent / resolution; }
  double axis(int i) const { return -extent + (i + 0.5) * cell(); }
  double cell_area() const { return cell() * cell(); }
  bool operator==(const GridSpec& o) const {
    return extent == o.extent && resolution == o.resolution && kind == o.kind;
  }
};

struct ReconGrid {
  GridSpec spec;
  Eigen::MatrixXd values;  // values(i, j) at (axis(i), axis(j)) = (x, p)

  // Riemann sum of values * cell area.
  double mass() const { return values.sum() * spec.cell_area(); }

  // CSV matrix preceded by one JSON header line carrying the grid spec;
  // doubles use 17 significant digits for a bit-exact round-trip.
  void to_csv(std::ostream& out) const;
  void save(const std::string& path) const;
  static ReconGrid from_csv(std::istream& in, const std::string& origin = "<stream>");
  static ReconGrid load(const std::string& path);

  // Plain whitespace-separated matrix, one row per line (gnuplot `matrix`).
  void write_gnuplot(std::ostream& out) const;
  void save_gnuplot(const std::string& path) const;
};

struct GridErrorResult {
  double l1;       // sum |a - b| * cell area
  double max_abs;  // max |a - b|
};

// Both grids must share an identical spec.
GridErrorResult grid_error(const ReconGrid& a, const ReconGrid& b);

}  // namespace spintomo
