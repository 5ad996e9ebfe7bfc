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

#include <string>
#include <vector>

#include "spintomo/interactions.hpp"
#include "spintomo/schemes.hpp"

namespace spintomo {

// One resolved step of a folded-path candidate.
struct FoldedStep {
  enum class Kind { Pass, Fmps, Stokes };
  Kind kind = Kind::Pass;
  PassSpec pass{};      // when kind == Pass
  double theta = 0.0;   // when kind is a rotation; restricted to {0, +-pi/2}
};

// Stable human-readable form, e.g. "pass:Z+", "fmps:+90deg", "stokes:0deg".
std::string folded_step_label(const FoldedStep& step);

// A template slot: one position in the optical path with a discrete choice
// set. Exactly one of the choice vectors is populated, matching `kind`.
struct TemplateSlot {
  FoldedStep::Kind kind = FoldedStep::Kind::Pass;
  std::vector<PassSpec> pass_choices;
  std::vector<double> angle_choices;
};

struct SearchTemplate {
  std::string name;
  std::vector<TemplateSlot> slots;
};

// Templates for the folded single-beam geometries. `with_stokes` adds an
// optional light-side waveplate rotation (angle 0 meaning "absent") after
// each spin rotation, since the folded geometry leaves that freedom open.
SearchTemplate fig1b_template(bool with_stokes);   // folded three-pass (swap candidate)
SearchTemplate fig2b_template(bool with_stokes);   // folded two-pass (transducer candidate)
SearchTemplate unfolded_zyz_template();            // fixed (Z, Y, Z), sanity target

// True when map.S has exactly-zero diagonal (light->light, spin->spin) blocks
// and orthogonal cross blocks: the structure of a state exchange up to local
// phase rotations. For symplectic maps orthogonal cross blocks are
// automatically rotations.
bool is_swap_class(const SymplecticMap& map, double tol = 1e-12);

// True when composite = (R_light ⊕ R_spin) * target for some local phase
// rotations: composite * target^{-1} must be block-diagonal with SO(2) blocks.
bool matches_up_to_local_rotations(const SymplecticMap& composite, const SymplecticMap& target,
                                   double tol = 1e-12);

struct FoldedAssignment {
  std::vector<FoldedStep> steps;
  std::vector<std::string> labels() const;
};

struct SearchResult {
  bool found = false;
  std::size_t space_size = 0;
  std::vector<FoldedAssignment> matches;  // every matching assignment, enumeration order
};

// Exhaustively enumerates the template's choice space and collects every
// assignment whose composite matches the target up to local phase rotations.
SearchResult folded_scheme_search(const SymplecticMap& target, const SearchTemplate& tmpl);

}  // namespace spintomo
