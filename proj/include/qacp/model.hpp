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
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "qacp/quantum.hpp"
#include "qacp/term.hpp"

namespace qacp {

struct Equation {
  std::string variable;
  TermPtr body;
};

struct RecursiveSpec {
  std::string name;
  std::vector<Equation> equations;

  const Equation* find(const std::string& variable) const;
};

/// Every right-hand side is a sum of atoms and atom . variable summands
/// (delta standing for the empty sum).
bool is_linear(const RecursiveSpec& spec);

/// How the initial state was described, kept so a model can be written back.
struct InitialStateSpec {
  std::map<std::string, std::size_t> digits;
  std::vector<std::string> apply;
  std::optional<Matrix> explicit_matrix;
};

class Model {
 public:
  std::vector<Register> registers;
  std::map<std::string, QuantumOperation> quantum;
  std::set<std::string> classical;
  /// Symmetric: both (a,b) and (b,a) are present after finalize().
  std::map<std::pair<std::string, std::string>, std::string> gamma;
  std::vector<RecursiveSpec> specs;
  std::vector<std::pair<std::string, TermPtr>> named_terms;
  /// Named action sets usable inside encap{..}, tau{..} and CLI flags.
  std::map<std::string, std::vector<std::string>> action_sets;
  InitialStateSpec init;

  bool is_quantum(const std::string& id) const { return quantum.count(id) != 0; }
  bool is_classical(const std::string& id) const { return classical.count(id) != 0; }
  bool is_action(const std::string& id) const { return is_quantum(id) || is_classical(id); }
  bool is_variable(const std::string& id) const { return var_index_.count(id) != 0; }

  std::optional<std::string> communicate(const std::string& a, const std::string& b) const;

  /// Right-hand side bound to a recursion variable, or nullptr.
  const TermPtr* definition(const std::string& variable) const;
  const RecursiveSpec* spec_of(const std::string& variable) const;
  const RecursiveSpec* find_spec(const std::string& name) const;
  std::optional<TermPtr> named_term(const std::string& name) const;
  /// Expands set names and checks the rest are declared actions.
  ActionSet resolve_action_set(const std::vector<std::string>& ids) const;

  const QuantumState& initial_state() const;
  /// Stable digest of the full model text; graphs remember it so that
  /// comparisons across different models can be refused.
  const std::string& fingerprint() const { return fingerprint_; }

  /// Validates every invariant, closes gamma symmetrically, builds the
  /// variable index and the initial state. Must be called after edits.
  void finalize();

 private:
  std::map<std::string, std::pair<std::size_t, std::size_t>> var_index_;
  std::optional<QuantumState> initial_;
  std::string fingerprint_;
};

/// Throws UnguardedRecursion when some variable can reach itself without
/// passing an action or tau prefix.
void check_guarded(const Model& model);

/// Throws UndeclaredAction/InvalidArgument if the term mentions ids the
/// model does not know or renames across action kinds.
void check_term(const TermPtr& term, const Model& model);

}  // namespace qacp
