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
#include <string_view>
#include <utility>
#include <vector>

#include "qacp/lts.hpp"
#include "qacp/model.hpp"
#include "qacp/semantics.hpp"

namespace qacp {

enum class Mode { Strong, Branching, RootedBranching };

std::string_view mode_name(Mode mode);
std::optional<Mode> parse_mode(std::string_view text);

struct Partition {
  std::vector<std::size_t> block;
  std::size_t count = 0;
};

/// Coarsest strong bisimulation of one LTS.
Partition strong_partition(const Lts& lts);
/// Coarsest branching bisimulation of one LTS (divergence-blind).
Partition branching_partition(const Lts& lts);

struct Verdict {
  bool related = false;
  Mode mode = Mode::Strong;
  /// Pairs (node of left, node of right) of the relation found.
  std::vector<std::pair<std::size_t, std::size_t>> witness;
  /// Shortest distinguishing label sequence when not related.
  std::vector<std::string> counterexample;
  /// Which clause fails at the end of the counterexample.
  std::string obligation;
};

Verdict strong_bisim(const Lts& left, const Lts& right);
Verdict branching_bisim(const Lts& left, const Lts& right);
Verdict rooted_branching_bisim(const Lts& left, const Lts& right);
Verdict check_equivalence(const Lts& left, const Lts& right, Mode mode);
Verdict check_equivalence(const ConfigGraph& left, const ConfigGraph& right, Mode mode);

/// Re-checks the defining clauses of `mode` on every witness pair without
/// reusing the partition machinery.
bool validate_witness(const Lts& left, const Lts& right,
                      const std::vector<std::pair<std::size_t, std::size_t>>& witness, Mode mode,
                      std::string* failure = nullptr);

/// Quotient by the coarsest relation of `mode`. Branching modes first
/// require every tau cycle to have an exit.
Lts minimize(const Lts& lts, Mode mode);

/// Throws TauDivergence if some tau cycle cannot be left.
void check_divergence(const Lts& lts);

struct Cluster {
  std::vector<std::string> variables;
  std::vector<TermPtr> exits;
};

/// Clusters of a linear specification for internal actions `internal`.
std::vector<Cluster> find_clusters(const RecursiveSpec& spec, const ActionSet& internal);

struct ReductionReport {
  /// Both graphs are label-deterministic and tau-free, so a unique final
  /// state per trace exists.
  bool applicable = false;
  bool structural_related = false;
  bool final_states_equal = false;
  bool related = false;
  bool agrees = false;
  std::string detail;
};

struct TermVerdict {
  Verdict verdict;
  ReductionReport reduction;
};

TermVerdict quantum_bisim_terms(const TermPtr& p, const TermPtr& q, const Model& model, Mode mode,
                                const GraphLimits& limits = {});

}  // namespace qacp
