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
#include "qacp/lts.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>

namespace qacp {

std::vector<std::vector<std::size_t>> Lts::out_edges() const {
  std::vector<std::vector<std::size_t>> out(size);
  for (std::size_t e = 0; e < edges.size(); ++e) out[edges[e].from].push_back(e);
  return out;
}

Lts to_lts(const ConfigGraph& graph) {
  Lts lts;
  lts.root = graph.root;
  lts.size = graph.nodes.size();
  lts.model_id = graph.model_id;
  lts.termination.resize(lts.size);
  for (std::size_t i : graph.terminating) {
    lts.termination[i] = termination_observation(*graph.nodes[i].state);
  }
  lts.edges.reserve(graph.edges.size());
  for (const auto& e : graph.edges) lts.edges.push_back({e.from, e.label, e.to});
  return lts;
}

Lts disjoint_union(const Lts& a, const Lts& b) {
  Lts u;
  u.root = a.root;
  u.size = a.size + b.size;
  u.model_id = a.model_id;
  u.edges = a.edges;
  for (const auto& e : b.edges) u.edges.push_back({e.from + a.size, e.label, e.to + a.size});
  u.termination = a.termination;
  u.termination.insert(u.termination.end(), b.termination.begin(), b.termination.end());
  return u;
}

Lts reachable_part(const Lts& lts) {
  const auto out = lts.out_edges();
  std::vector<std::size_t> id(lts.size, SIZE_MAX);
  std::vector<std::size_t> order;
  std::deque<std::size_t> queue{lts.root};
  id[lts.root] = 0;
  order.push_back(lts.root);
  while (!queue.empty()) {
    const std::size_t s = queue.front();
    queue.pop_front();
    for (std::size_t e : out[s]) {
      const std::size_t t = lts.edges[e].to;
      if (id[t] == SIZE_MAX) {
        id[t] = order.size();
        order.push_back(t);
        queue.push_back(t);
      }
    }
  }
  Lts r;
  r.root = 0;
  r.size = order.size();
  r.model_id = lts.model_id;
  for (std::size_t s : order) r.termination.push_back(lts.termination[s]);
  for (std::size_t s : order) {
    for (std::size_t e : out[s]) r.edges.push_back({id[s], lts.edges[e].label, id[lts.edges[e].to]});
  }
  return r;
}

bool isomorphic(const Lts& a0, const Lts& b0) {
  const Lts a = reachable_part(a0);
  const Lts b = reachable_part(b0);
  if (a.size != b.size || a.edges.size() != b.edges.size()) return false;
  using Profile = std::pair<std::optional<std::string>, std::vector<std::string>>;
  auto profiles = [](const Lts& l) {
    std::vector<Profile> p(l.size);
    for (std::size_t i = 0; i < l.size; ++i) p[i].first = l.termination[i];
    for (const auto& e : l.edges) p[e.from].second.push_back(e.label);
    for (auto& x : p) std::sort(x.second.begin(), x.second.end());
    return p;
  };
  const auto pa = profiles(a);
  const auto pb = profiles(b);
  auto edge_set = [](const Lts& l) {
    std::vector<std::tuple<std::size_t, std::string, std::size_t>> s;
    for (const auto& e : l.edges) s.emplace_back(e.from, e.label, e.to);
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
  };
  const auto eb = edge_set(b);
  if (edge_set(a).size() != eb.size()) return false;
  std::vector<std::size_t> map(a.size, SIZE_MAX);
  std::vector<bool> used(b.size, false);
  const auto out_a = a.out_edges();

  std::function<bool(std::size_t)> assign = [&](std::size_t i) -> bool {
    if (i == a.size) {
      for (const auto& e : a.edges) {
        if (!std::binary_search(eb.begin(), eb.end(),
                                std::make_tuple(map[e.from], e.label, map[e.to]))) {
          return false;
        }
      }
      return true;
    }
    // Reachable parts are numbered breadth-first, so the root comes first.
    for (std::size_t j = 0; j < b.size; ++j) {
      if (used[j] || pa[i].first != pb[j].first || pa[i].second != pb[j].second) continue;
      if (i == 0 && j != 0) continue;
      bool ok = true;
      for (std::size_t e : out_a[i]) {
        const std::size_t t = a.edges[e].to;
        if (t < i && !std::binary_search(eb.begin(), eb.end(),
                                         std::make_tuple(j, a.edges[e].label, map[t]))) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      map[i] = j;
      used[j] = true;
      if (assign(i + 1)) return true;
      used[j] = false;
    }
    map[i] = SIZE_MAX;
    return false;
  };
  return assign(0);
}

RecursiveSpec linearize(const Lts& lts, const Model& model, const std::string& name) {
  RecursiveSpec spec;
  spec.name = name;
  const Lts r = reachable_part(lts);
  std::vector<std::string> var(r.size);
  std::size_t k = 0;
  for (std::size_t i = 0; i < r.size; ++i) {
    if (!r.termination[i] || i == r.root) var[i] = "X" + std::to_string(++k);
  }
  const auto out = r.out_edges();
  for (std::size_t i = 0; i < r.size; ++i) {
    if (var[i].empty()) continue;
    std::vector<TermPtr> parts;
    for (std::size_t e : out[i]) {
      const auto& edge = r.edges[e];
      TermPtr atom = edge.label == kTauLabel        ? Term::silent()
                     : model.is_quantum(edge.label) ? Term::quantum(edge.label)
                                                    : Term::classical(edge.label);
      if (var[edge.to].empty()) {
        parts.push_back(atom);
      } else {
        parts.push_back(Term::seq(atom, Term::var(var[edge.to])));
      }
    }
    spec.equations.push_back({var[i], make_sum(parts)});
  }
  return spec;
}

}  // namespace qacp
