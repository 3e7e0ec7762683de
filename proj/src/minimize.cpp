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
#include <algorithm>
#include <map>
#include <set>
#include <tuple>

#include "qacp/equivalence.hpp"
#include "qacp/error.hpp"

namespace qacp {
namespace {

Lts quotient(const Lts& lts, const Partition& p, bool drop_inert_tau) {
  Lts q;
  q.size = p.count;
  q.root = p.block[lts.root];
  q.model_id = lts.model_id;
  q.termination.resize(p.count);
  for (std::size_t s = 0; s < lts.size; ++s) {
    if (lts.termination[s]) q.termination[p.block[s]] = lts.termination[s];
  }
  std::set<std::tuple<std::size_t, std::string, std::size_t>> seen;
  for (const auto& e : lts.edges) {
    const std::size_t a = p.block[e.from];
    const std::size_t b = p.block[e.to];
    if (drop_inert_tau && e.label == kTauLabel && a == b) continue;
    if (seen.emplace(a, e.label, b).second) q.edges.push_back({a, e.label, b});
  }
  return q;
}

}  // namespace

void check_divergence(const Lts& lts) {
  // Strongly connected components over tau moves; a nontrivial one with no
  // way out and no termination is a livelock the quotient would erase.
  const auto out = lts.out_edges();
  const std::size_t n = lts.size;
  std::vector<std::size_t> order;
  std::vector<bool> seen(n, false);
  for (std::size_t s = 0; s < n; ++s) {
    if (seen[s]) continue;
    std::vector<std::pair<std::size_t, std::size_t>> stack{{s, 0}};
    seen[s] = true;
    while (!stack.empty()) {
      auto& [v, i] = stack.back();
      if (i < out[v].size()) {
        const auto& e = lts.edges[out[v][i++]];
        if (e.label == kTauLabel && !seen[e.to]) {
          seen[e.to] = true;
          stack.emplace_back(e.to, 0);
        }
      } else {
        order.push_back(v);
        stack.pop_back();
      }
    }
  }
  std::vector<std::vector<std::size_t>> rev(n);
  for (const auto& e : lts.edges) {
    if (e.label == kTauLabel) rev[e.to].push_back(e.from);
  }
  std::vector<std::size_t> comp(n, SIZE_MAX);
  std::size_t ncomp = 0;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    if (comp[*it] != SIZE_MAX) continue;
    std::vector<std::size_t> work{*it};
    comp[*it] = ncomp;
    while (!work.empty()) {
      const std::size_t v = work.back();
      work.pop_back();
      for (std::size_t u : rev[v]) {
        if (comp[u] == SIZE_MAX) {
          comp[u] = ncomp;
          work.push_back(u);
        }
      }
    }
    ++ncomp;
  }
  std::vector<std::size_t> members(ncomp, 0);
  std::vector<bool> cyclic(ncomp, false), exit(ncomp, false);
  for (std::size_t s = 0; s < n; ++s) {
    ++members[comp[s]];
    if (lts.termination[s]) exit[comp[s]] = true;
  }
  for (const auto& e : lts.edges) {
    const std::size_t c = comp[e.from];
    if (e.label == kTauLabel && comp[e.to] == c) {
      cyclic[c] = true;
    } else {
      exit[c] = true;
    }
  }
  for (std::size_t c = 0; c < ncomp; ++c) {
    if ((members[c] > 1 || cyclic[c]) && !exit[c]) {
      std::size_t witness = 0;
      while (comp[witness] != c) ++witness;
      throw Error(ErrorKind::TauDivergence, "tau cycle through state " + std::to_string(witness) +
                                                " has no exit");
    }
  }
}

Lts minimize(const Lts& input, Mode mode) {
  const Lts lts = reachable_part(input);
  if (mode == Mode::Strong) return reachable_part(quotient(lts, strong_partition(lts), false));
  check_divergence(lts);
  const Partition p = branching_partition(lts);
  Lts q = reachable_part(quotient(lts, p, true));
  if (mode == Mode::Branching) return q;
  if (check_equivalence(q, lts, Mode::RootedBranching).related) return q;
  // The root keeps its own first moves, including silent ones into its block.
  Lts r = quotient(lts, p, true);
  const std::size_t fresh = r.size++;
  r.termination.push_back(lts.termination[lts.root]);
  std::set<std::pair<std::string, std::size_t>> seen;
  for (const auto& e : lts.edges) {
    if (e.from != lts.root) continue;
    if (seen.emplace(e.label, p.block[e.to]).second) r.edges.push_back({fresh, e.label, p.block[e.to]});
  }
  r.root = fresh;
  return reachable_part(r);
}

std::vector<Cluster> find_clusters(const RecursiveSpec& spec, const ActionSet& internal) {
  if (!is_linear(spec)) {
    throw Error(ErrorKind::SpecNotLinear, "spec '" + spec.name + "' is not linear");
  }
  const std::size_t n = spec.equations.size();
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < n; ++i) index[spec.equations[i].variable] = i;
  auto silent_like = [&](const TermPtr& atom) {
    return atom->kind() == TermKind::Silent ||
           (is_action(atom->kind()) && contains(internal, atom->name()));
  };
  // reach[i][j]: j reachable from i through internal or silent summands.
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) {
    if (spec.equations[i].body->kind() == TermKind::Deadlock) continue;
    for (const auto& s : summands(spec.equations[i].body)) {
      if (s->kind() != TermKind::Seq || !silent_like(s->left())) continue;
      auto it = index.find(s->right()->name());
      if (it != index.end()) reach[i][it->second] = true;
    }
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!reach[i][k]) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (reach[k][j]) reach[i][j] = true;
      }
    }
  }
  std::vector<Cluster> clusters;
  std::vector<bool> placed(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    if (placed[i]) continue;
    std::vector<std::size_t> group{i};
    placed[i] = true;
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!placed[j] && reach[i][j] && reach[j][i]) {
        group.push_back(j);
        placed[j] = true;
      }
    }
    Cluster c;
    for (std::size_t g : group) c.variables.push_back(spec.equations[g].variable);
    for (std::size_t g : group) {
      if (spec.equations[g].body->kind() == TermKind::Deadlock) continue;
      for (const auto& s : summands(spec.equations[g].body)) {
        if (s->kind() == TermKind::Seq) {
          const auto& target = s->right()->name();
          const bool inside =
              std::find(c.variables.begin(), c.variables.end(), target) != c.variables.end();
          if (silent_like(s->left()) && inside) continue;
        }
        bool dup = false;
        for (const auto& e : c.exits) dup = dup || structurally_equal(e, s);
        if (!dup) c.exits.push_back(s);
      }
    }
    clusters.push_back(std::move(c));
  }
  return clusters;
}

}  // namespace qacp
