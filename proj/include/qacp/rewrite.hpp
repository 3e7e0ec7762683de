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
#include <vector>

#include "qacp/model.hpp"
#include "qacp/term.hpp"

namespace qacp {

/// Axiom catalogues. Each system contains the previous one.
enum class System { Bqpa, Qpap, Aqcp, AqcpTau };

std::string_view system_name(System system);
std::optional<System> parse_system(std::string_view text);

enum class Strategy { Innermost, Outermost };

/// Path from the root: 0/1 select the operands of a binary operator or the
/// body of a unary one; inside a sum the index selects a summand of the
/// flattened sum.
using Position = std::vector<std::size_t>;

struct RewriteStep {
  TermPtr result;
  std::string rule;
  Position position;
};

inline constexpr std::size_t kDefaultBudget = 100000;

class Rewriter {
 public:
  Rewriter(const Model& model, System system);

  /// One rewrite of the leftmost-innermost (or leftmost-outermost) redex,
  /// matching modulo associativity and commutativity of +. The result is
  /// returned in AC-canonical form. Empty when the term is a normal form.
  std::optional<RewriteStep> rewrite_step(const TermPtr& term,
                                          Strategy strategy = Strategy::Innermost) const;

  /// Rewrites to normal form; throws BudgetExceeded after `budget` steps
  /// and OperatorNotEliminable for recursion variables or operators the
  /// system has no axioms for.
  TermPtr normalize(const TermPtr& term, std::size_t budget = kDefaultBudget) const;

  /// Same result through repeated rewrite_step calls; records every step.
  TermPtr normalize_traced(const TermPtr& term, Strategy strategy, std::size_t budget,
                           std::vector<RewriteStep>* trace) const;

  System system() const { return system_; }

 private:
  std::optional<std::pair<TermPtr, std::string>> root_rule(const TermPtr& t) const;
  std::optional<RewriteStep> find(const TermPtr& t, Strategy strategy) const;
  TermPtr nf(const TermPtr& t, std::size_t& steps, std::size_t budget) const;
  void check_operators(const TermPtr& t) const;
  bool has(System minimum) const { return system_ >= minimum; }

  const Model& model_;
  System system_;
};

/// Sorts the summands of every sum by the fixed term order.
TermPtr ac_canonical(const TermPtr& term);

/// Only actions, tau, delta, + and . occur.
bool is_basic_term(const TermPtr& term);

/// Replaces every recursion variable by its right-hand side, `depth` times.
TermPtr unfold_rdp(const TermPtr& term, const Model& model, std::size_t depth);

}  // namespace qacp
