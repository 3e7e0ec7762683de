// Copyright 2026 The qacp Authors
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

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "qacp/model.hpp"
#include "qacp/semantics.hpp"

namespace qacp {

inline constexpr const char* kTauLabel = "tau";

struct LtsEdge {
  std::size_t from = 0;
  std::string label;
  std::size_t to = 0;

  friend bool operator==(const LtsEdge&, const LtsEdge&) = default;
};

/// Plain rooted LTS. A node with a termination value is a terminated
/// configuration; the value is what an observer sees of its state.
struct Lts {
  std::size_t root = 0;
  std::size_t size = 0;
  std::vector<LtsEdge> edges;
  std::vector<std::optional<std::string>> termination;
  std::string model_id;

  std::vector<std::vector<std::size_t>> out_edges() const;
};

Lts to_lts(const ConfigGraph& graph);

/// Nodes of `b` are shifted by a.size; the root is a's root.
Lts disjoint_union(const Lts& a, const Lts& b);

/// Nodes reachable from the root, renumbered in breadth-first order.
Lts reachable_part(const Lts& lts);

/// Structural isomorphism of the parts reachable from the roots.
bool isomorphic(const Lts& a, const Lts& b);

/// Builds the linear specification read off an LTS (one variable per
/// non-terminated node, bare labels for moves into terminated nodes).
RecursiveSpec linearize(const Lts& lts, const Model& model, const std::string& name = "L");

}  // namespace qacp
