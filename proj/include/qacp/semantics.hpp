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
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "qacp/model.hpp"
#include "qacp/quantum.hpp"
#include "qacp/term.hpp"

namespace qacp {

using StatePtr = std::shared_ptr<const QuantumState>;

enum class LabelKind : std::uint8_t { Quantum, Classical, Silent };

/// Groups of transition rules. A construct whose group is disabled has no
/// transitions, which is how conservative extension is tested.
enum RuleGroup : unsigned {
  kRulesBasic = 1u << 0,        // actions, +, .
  kRulesParallel = 1u << 1,     // ||, |_, |
  kRulesEncap = 1u << 2,        // encap{H}
  kRulesRecursion = 1u << 3,    // recursion variables
  kRulesSilent = 1u << 4,       // tau constant
  kRulesAbstraction = 1u << 5,  // tau{I}
  kRulesRenaming = 1u << 6,     // rename{f}
  kRulesAll = (1u << 7) - 1,
};

struct Transition {
  std::string label;
  LabelKind kind = LabelKind::Classical;
  /// nullptr stands for successful termination.
  TermPtr next;
  StatePtr state;
};

class Semantics {
 public:
  explicit Semantics(const Model& model, unsigned rules = kRulesAll,
                     double public_tolerance = kPublicStateTolerance);

  /// All transitions of the configuration <term, state>.
  std::vector<Transition> step(const TermPtr& term, const StatePtr& state) const;

  const Model& model() const { return model_; }
  unsigned rules() const { return rules_; }

 private:
  void collect(const TermPtr& term, const StatePtr& state, std::vector<Transition>& out,
               std::size_t depth) const;
  StatePtr apply(const std::string& action, const StatePtr& state) const;

  const Model& model_;
  unsigned rules_;
  double public_tolerance_;
  mutable std::map<std::pair<std::string, const QuantumState*>, StatePtr> cache_;
  mutable std::vector<StatePtr> keep_alive_;
};

struct Configuration {
  TermPtr term;  // nullptr = terminated
  StatePtr state;
};

struct GraphEdge {
  std::size_t from = 0;
  std::string label;
  LabelKind kind = LabelKind::Classical;
  std::size_t to = 0;
};

struct ConfigGraph {
  std::vector<Configuration> nodes;
  std::size_t root = 0;
  std::vector<GraphEdge> edges;
  /// Indices of terminated configurations.
  std::vector<std::size_t> terminating;
  std::string model_id;

  std::size_t structural_size() const;
};

struct GraphLimits {
  std::size_t max_states = 10000;
  std::optional<std::size_t> max_depth;
};

ConfigGraph build_graph(const TermPtr& root, const Model& model, const GraphLimits& limits = {},
                        unsigned rules = kRulesAll,
                        double public_tolerance = kPublicStateTolerance);
ConfigGraph build_graph(const TermPtr& root, const StatePtr& initial, const Model& model,
                        const GraphLimits& limits = {}, unsigned rules = kRulesAll,
                        double public_tolerance = kPublicStateTolerance);

/// Observation attached to terminated nodes: the rounded public state.
std::string termination_observation(const QuantumState& state);

/// One variable per non-terminated node (X1 for the root, then in node
/// order); edges into terminated nodes become bare labels.
RecursiveSpec linearize(const ConfigGraph& graph, const std::string& name = "L");

/// Which operators a term uses, as RuleGroup bits.
unsigned rules_used(const TermPtr& term, const Model& model);

}  // namespace qacp
