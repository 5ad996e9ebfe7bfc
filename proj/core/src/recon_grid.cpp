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

#include "spintomo/recon_grid.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "spintomo/errors.hpp"

namespace spintomo {

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

void ReconGrid::to_csv(std::ostream& out) const {
  nlohmann::ordered_json header;
  header["extent"] = spec.extent;
  header["resolution"] = spec.resolution;
  header["kind"] = spec.kind;
  out << header.dump() << "\n";
  for (Eigen::Index i = 0; i < values.rows(); ++i) {
    for (Eigen::Index j = 0; j < values.cols(); ++j) {
      if (j) out << ',';
      out << fmt17(values(i, j));
    }
    out << "\n";
  }
}

void ReconGrid::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  to_csv(out);
}

ReconGrid ReconGrid::from_csv(std::istream& in, const std::string& origin) {
  std::string line;
  if (!std::getline(in, line))
    throw config_error(origin + ":1: empty grid file");

  ReconGrid grid;
  try {
    auto header = nlohmann::json::parse(line);
    grid.spec.extent = header.at("extent").get<double>();
    grid.spec.resolution = header.at("resolution").get<int>();
    grid.spec.kind = header.at("kind").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw config_error(origin + ":1: bad grid header: " + e.what());
  }
  if (grid.spec.extent <= 0.0 || grid.spec.resolution <= 0)
    throw config_error(origin + ":1: grid spec out of range");

  const int n = grid.spec.resolution;
  grid.values.resize(n, n);
  for (int i = 0; i < n; ++i) {
    if (!std::getline(in, line))
      throw config_error(origin + ":" + std::to_string(i + 2) +
                         ": expected " + std::to_string(n) + " data rows");
    std::stringstream row(line);
    std::string field;
    for (int j = 0; j < n; ++j) {
      if (!std::getline(row, field, ','))
        throw config_error(origin + ":" + std::to_string(i + 2) +
                           ": expected " + std::to_string(n) + " columns");
      char* end = nullptr;
      grid.values(i, j) = std::strtod(field.c_str(), &end);
      if (end == field.c_str() || *end != '\0')
        throw config_error(origin + ":" + std::to_string(i + 2) +
                           ": bad number '" + field + "'");
    }
    if (std::getline(row, field, ','))
      throw config_error(origin + ":" + std::to_string(i + 2) + ": extra columns");
  }
  return grid;
}

ReconGrid ReconGrid::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);
  return from_csv(in, path);
}

void ReconGrid::write_gnuplot(std::ostream& out) const {
  for (Eigen::Index i = 0; i < values.rows(); ++i) {
    for (Eigen::Index j = 0; j < values.cols(); ++j) {
      if (j) out << ' ';
      out << fmt17(values(i, j));
    }
    out << "\n";
  }
}

void ReconGrid::save_gnuplot(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  write_gnuplot(out);
}

GridErrorResult grid_error(const ReconGrid& a, const ReconGrid& b) {
  if (!(a.spec == b.spec))
    throw std::invalid_argument("grid_error: grid specs differ");
  const Eigen::MatrixXd diff = (a.values - b.values).cwiseAbs();
  return {diff.sum() * a.spec.cell_area(), diff.maxCoeff()};
}

}  // namespace spintomo
