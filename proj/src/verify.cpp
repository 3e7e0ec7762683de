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
#include "qacp/verify.hpp"

#include <set>

#include "qacp/error.hpp"

namespace qacp {
namespace {

// Every action the term can perform, following variable definitions.
std::set<std::string> labels_of(const TermPtr& root, const Model& model) {
  std::set<std::string> labels;
  std::set<std::string> seen_vars;
  std::vector<TermPtr> todo{root};
  while (!todo.empty()) {
    TermPtr t = todo.back();
    todo.pop_back();
    for_each_node(t, [&](const TermPtr& n) {
      if (is_action(n->kind())) labels.insert(n->name());
      if (n->kind() == TermKind::RecVar && seen_vars.insert(n->name()).second) {
        if (const TermPtr* body = model.definition(n->name())) todo.push_back(*body);
      }
      if (n->kind() == TermKind::Rename) {
        for (const auto& [from, to] : n->renaming()) labels.insert(to);
      }
    });
  }
  return labels;
}

}  // namespace

void validate_job(const VerificationJob& job, const Model& model) {
  if (!job.impl || !job.spec) throw Error(ErrorKind::InvalidJob, "job needs both impl and spec");
  for (const auto& h : job.hide) {
    if (!model.is_classical(h)) {
      throw Error(ErrorKind::InvalidJob, "hidden action '" + h + "' is not a classical action");
    }
  }
  for (const auto& i : job.internal) {
    if (!model.is_action(i)) {
      throw Error(ErrorKind::InvalidJob, "internal action '" + i + "' is not declared");
    }
  }
  for (const auto& l : labels_of(job.spec, model)) {
    if (contains(job.hide, l) || contains(job.internal, l)) {
      throw Error(ErrorKind::InvalidJob, "spec uses non-external action '" + l + "'");
    }
  }
}

VerificationResult check_external_behavior(const VerificationJob& job, const Model& model) {
  validate_job(job, model);
  const TermPtr system = Term::abstract(job.internal, Term::encap(job.hide, job.impl));
  const ConfigGraph impl_graph =
      build_graph(system, model, job.limits, kRulesAll, job.public_tolerance);
  const ConfigGraph spec_graph =
      build_graph(job.spec, model, job.limits, kRulesAll, job.public_tolerance);

  VerificationResult result;
  result.explored_states = impl_graph.nodes.size();
  const Lts impl = to_lts(impl_graph);
  check_divergence(impl);
  result.implementation = minimize(impl, Mode::Branching);
  result.specification = to_lts(spec_graph);
  // The minimized graph is only branching-equivalent to the original, so
  // the rooted comparison is made on the original graph.
  result.verdict = job.mode == Mode::RootedBranching
                       ? check_equivalence(impl, result.specification, job.mode)
                       : check_equivalence(result.implementation, result.specification, job.mode);
  return result;
}

}  // namespace qacp
