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

#include "spintomo/folded_search.hpp"

#include <cmath>
#include <stdexcept>

namespace spintomo {

namespace {

const std::vector<double>& quarter_turns() {
  static const std::vector<double> angles = {0.0, M_PI_2, -M_PI_2};
  return angles;
}

std::string angle_label(double theta) {
  if (theta == 0.0) return "0deg";
  if (theta == M_PI_2) return "+90deg";
  if (theta == -M_PI_2) return "-90deg";
  throw std::invalid_argument("folded search: rotation angle outside {0, +-pi/2}");
}

SymplecticMap step_map(const FoldedStep& step) {
  const auto& layout = light_spin_layout();
  switch (step.kind) {
    case FoldedStep::Kind::Pass:
      return fr_pass(layout, step.pass, modes::kLight, modes::kSpin);
    case FoldedStep::Kind::Fmps:
      return fmps_rotation(layout, modes::kSpin, step.theta);
    case FoldedStep::Kind::Stokes:
      return stokes_rotation(layout, modes::kLight, step.theta);
  }
  throw std::logic_error("unreachable");
}

bool is_rotation_block(const Eigen::Matrix2d& b, double tol) {
  return (b.transpose() * b - Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff() <= tol &&
         b.determinant() > 0.0;
}

TemplateSlot pass_slot(std::vector<PassSpec> choices) {
  TemplateSlot slot;
  slot.kind = FoldedStep::Kind::Pass;
  slot.pass_choices = std::move(choices);
  return slot;
}

TemplateSlot fixed_fmps(double theta) {
  TemplateSlot slot;
  slot.kind = FoldedStep::Kind::Fmps;
  slot.angle_choices = {theta};
  return slot;
}

TemplateSlot free_stokes() {
  TemplateSlot slot;
  slot.kind = FoldedStep::Kind::Stokes;
  slot.angle_choices = quarter_turns();
  return slot;
}

std::vector<PassSpec> free_pass() {
  return {{CouplingType::Z, +1, 1.0},
          {CouplingType::Z, -1, 1.0},
          {CouplingType::Y, +1, 1.0},
          {CouplingType::Y, -1, 1.0}};
}

}  // namespace

std::string folded_step_label(const FoldedStep& step) {
  switch (step.kind) {
    case FoldedStep::Kind::Pass:
      return std::string("pass:") + (step.pass.coupling_type == CouplingType::Z ? "Z" : "Y") +
             (step.pass.sign > 0 ? "+" : "-");
    case FoldedStep::Kind::Fmps:
      return "fmps:" + angle_label(step.theta);
    case FoldedStep::Kind::Stokes:
      return "stokes:" + angle_label(step.theta);
  }
  throw std::logic_error("unreachable");
}

SearchTemplate fig1b_template(bool with_stokes) {
  // Folded three-pass beam: the first passage is the reference Z coupling
  // (sign free — counter-propagation may flip it), the two return passages
  // have free type and sign, and the fold inserts a +pi/2 spin rotation on
  // the way out and -pi/2 on the way back.
  SearchTemplate tmpl;
  tmpl.name = with_stokes ? "fig1b" : "fig1b_fmps_only";
  tmpl.slots.push_back(pass_slot({{CouplingType::Z, +1, 1.0}, {CouplingType::Z, -1, 1.0}}));
  tmpl.slots.push_back(fixed_fmps(M_PI_2));
  if (with_stokes) tmpl.slots.push_back(free_stokes());
  tmpl.slots.push_back(pass_slot(free_pass()));
  tmpl.slots.push_back(fixed_fmps(-M_PI_2));
  if (with_stokes) tmpl.slots.push_back(free_stokes());
  tmpl.slots.push_back(pass_slot(free_pass()));
  return tmpl;
}

SearchTemplate fig2b_template(bool with_stokes) {
  // Folded two-pass beam with a single +pi/2 spin rotation between passages.
  SearchTemplate tmpl;
  tmpl.name = with_stokes ? "fig2b" : "fig2b_fmps_only";
  tmpl.slots.push_back(pass_slot(free_pass()));
  tmpl.slots.push_back(fixed_fmps(M_PI_2));
  if (with_stokes) tmpl.slots.push_back(free_stokes());
  tmpl.slots.push_back(pass_slot(free_pass()));
  return tmpl;
}

SearchTemplate unfolded_zyz_template() {
  SearchTemplate tmpl;
  tmpl.name = "unfolded_zyz";
  tmpl.slots.push_back(pass_slot({{CouplingType::Z, +1, 1.0}}));
  tmpl.slots.push_back(pass_slot({{CouplingType::Y, +1, 1.0}}));
  tmpl.slots.push_back(pass_slot({{CouplingType::Z, +1, 1.0}}));
  return tmpl;
}

bool is_swap_class(const SymplecticMap& map, double tol) {
  const Eigen::Matrix2d ll = map.S.block<2, 2>(0, 0);
  const Eigen::Matrix2d ss = map.S.block<2, 2>(2, 2);
  if (ll.cwiseAbs().maxCoeff() > tol || ss.cwiseAbs().maxCoeff() > tol) return false;
  return is_rotation_block(map.S.block<2, 2>(0, 2), tol) &&
         is_rotation_block(map.S.block<2, 2>(2, 0), tol);
}

bool matches_up_to_local_rotations(const SymplecticMap& composite, const SymplecticMap& target,
                                   double tol) {
  if (composite.dim() != 4 || target.dim() != 4)
    throw std::invalid_argument("matches_up_to_local_rotations: expected two-mode maps");
  if (composite.d.cwiseAbs().maxCoeff() > tol || target.d.cwiseAbs().maxCoeff() > tol)
    return false;
  const Eigen::Matrix4d m = composite.S * target.S.inverse();
  if (m.block<2, 2>(0, 2).cwiseAbs().maxCoeff() > tol ||
      m.block<2, 2>(2, 0).cwiseAbs().maxCoeff() > tol)
    return false;
  return is_rotation_block(m.block<2, 2>(0, 0), tol) &&
         is_rotation_block(m.block<2, 2>(2, 2), tol);
}

std::vector<std::string> FoldedAssignment::labels() const {
  std::vector<std::string> out;
  out.reserve(steps.size());
  for (const auto& step : steps) out.push_back(folded_step_label(step));
  return out;
}

SearchResult folded_scheme_search(const SymplecticMap& target, const SearchTemplate& tmpl) {
  if (tmpl.slots.empty()) throw std::invalid_argument("folded_scheme_search: empty template");
  std::size_t space = 1;
  for (const auto& slot : tmpl.slots) {
    const std::size_t n =
        slot.kind == FoldedStep::Kind::Pass ? slot.pass_choices.size() : slot.angle_choices.size();
    if (n == 0) throw std::invalid_argument("folded_scheme_search: slot with empty choice set");
    space *= n;
  }

  SearchResult result;
  result.space_size = space;

  std::vector<std::size_t> odometer(tmpl.slots.size(), 0);
  std::vector<FoldedStep> steps(tmpl.slots.size());
  for (std::size_t index = 0; index < space; ++index) {
    std::size_t rem = index;
    for (std::size_t s = 0; s < tmpl.slots.size(); ++s) {
      const auto& slot = tmpl.slots[s];
      const std::size_t n = slot.kind == FoldedStep::Kind::Pass ? slot.pass_choices.size()
                                                                : slot.angle_choices.size();
      odometer[s] = rem % n;
      rem /= n;
      FoldedStep step;
      step.kind = slot.kind;
      if (slot.kind == FoldedStep::Kind::Pass)
        step.pass = slot.pass_choices[odometer[s]];
      else
        step.theta = slot.angle_choices[odometer[s]];
      steps[s] = step;
    }
    std::vector<SymplecticMap> maps;
    maps.reserve(steps.size());
    for (const auto& step : steps) maps.push_back(step_map(step));
    if (matches_up_to_local_rotations(compose(maps), target))
      result.matches.push_back({steps});
  }
  result.found = !result.matches.empty();
  return result;
}

}  // namespace spintomo
