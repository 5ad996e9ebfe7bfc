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

#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace spintomo {

namespace modes {
inline constexpr const char* kLight = "LIGHT";    // (x_L, p_L) == (s_y, s_z)
inline constexpr const char* kSpin = "SPIN";      // (x_A, p_A) == (j_y, j_z)
inline constexpr const char* kAncilla = "ANCILLA";
}  // namespace modes

// Ordered set of mode labels. Quadratures are interleaved: mode i owns the
// vector/matrix indices (2i, 2i+1) for (x_i, p_i).
class ModeLayout {
 public:
  ModeLayout() = default;
  ModeLayout(std::initializer_list<std::string> labels)
      : ModeLayout(std::vector<std::string>(labels)) {}
  explicit ModeLayout(std::vector<std::string> labels) : labels_(std::move(labels)) {
    for (std::size_t i = 0; i < labels_.size(); ++i)
      for (std::size_t j = i + 1; j < labels_.size(); ++j)
        if (labels_[i] == labels_[j])
          throw std::invalid_argument("ModeLayout: duplicate mode label '" + labels_[i] + "'");
  }

  std::size_t mode_count() const { return labels_.size(); }
  std::size_t dim() const { return 2 * labels_.size(); }
  bool empty() const { return labels_.empty(); }

  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(std::size_t mode) const { return labels_.at(mode); }

  bool contains(const std::string& label) const {
    for (const auto& l : labels_)
      if (l == label) return true;
    return false;
  }

  std::size_t index_of(const std::string& label) const {
    for (std::size_t i = 0; i < labels_.size(); ++i)
      if (labels_[i] == label) return i;
    throw std::invalid_argument("ModeLayout: unknown mode '" + label + "'");
  }

  std::size_t x_index(const std::string& label) const { return 2 * index_of(label); }
  std::size_t p_index(const std::string& label) const { return 2 * index_of(label) + 1; }

  // Layout with `label` appended (used when adjoining ancillas).
  ModeLayout with_mode(const std::string& label) const {
    auto ls = labels_;
    ls.push_back(label);
    return ModeLayout(std::move(ls));
  }

  // Layout with `label` removed (used when a measurement consumes a mode).
  ModeLayout without_mode(const std::string& label) const {
    std::vector<std::string> ls;
    bool found = false;
    for (const auto& l : labels_) {
      if (l == label && !found) {
        found = true;
        continue;
      }
      ls.push_back(l);
    }
    if (!found) throw std::invalid_argument("ModeLayout: unknown mode '" + label + "'");
    return ModeLayout(std::move(ls));
  }

  bool operator==(const ModeLayout& other) const { return labels_ == other.labels_; }

 private:
  std::vector<std::string> labels_;
};

}  // namespace spintomo
