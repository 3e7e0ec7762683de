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
#include "qacp/equivalence.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "qacp/error.hpp"

namespace qacp {
namespace {

constexpr int kTauId = 0;

using SigEntry = std::pair<long, std::size_t>;
using Signature = std::vector<SigEntry>;

/// Integer view of an LTS shared by the refinement loops.
struct Indexed {
  std::size_t n = 0;
  std::vector<std::vector<std::pair<int, std::size_t>>> out;  // (label, target)
  std::vector<long> obs;                                      // -1: not terminated
  std::vector<std::string> labels;
};

Indexed index_lts(const Lts& lts) {
  Indexed ix;
  ix.n = lts.size;
  ix.out.resize(ix.n);
  ix.obs.assign(ix.n, -1);
  std::map<std::string, int> label_ids{{kTauLabel, kTauId}};
  ix.labels.push_back(kTauLabel);
  for (const auto& e : lts.edges) {
    auto [it, inserted] = label_ids.emplace(e.label, static_cast<int>(ix.labels.size()));
    if (inserted) ix.labels.push_back(e.label);
    ix.out[e.from].emplace_back(it->second, e.to);
  }
  std::map<std::string, long> obs_ids;
  for (std::size_t i = 0; i < ix.n; ++i) {
    if (!lts.termination[i]) continue;
    auto [it, inserted] = obs_ids.emplace(*lts.termination[i], static_cast<long>(obs_ids.size()));
    ix.obs[i] = it->second;
  }
  for (auto& o : ix.out) {
    std::sort(o.begin(), o.end());
    o.erase(std::unique(o.begin(), o.end()), o.end());
  }
  return ix;
}

SigEntry obs_entry(long obs) { return {-2 - obs, 0}; }

/// Renumbers blocks by first occurrence of (old block, signature).
std::size_t renumber(const std::vector<std::size_t>& old_block, const std::vector<Signature>& sigs,
                     std::vector<std::size_t>& out) {
  std::map<std::pair<std::size_t, Signature>, std::size_t> ids;
  out.assign(sigs.size(), 0);
  for (std::size_t i = 0; i < sigs.size(); ++i) {
    auto [it, inserted] = ids.emplace(std::make_pair(old_block[i], sigs[i]), ids.size());
    out[i] = it->second;
  }
  return ids.size();
}

/// Tarjan's algorithm restricted to tau edges; iterative to survive long chains.
std::vector<std::size_t> tau_components(const Indexed& ix, std::size_t& count) {
  const std::size_t n = ix.n;
  std::vector<std::size_t> comp(n, SIZE_MAX), low(n, 0), num(n, SIZE_MAX);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::size_t counter = 0;
  count = 0;
  for (std::size_t start = 0; start < n; ++start) {
    if (num[start] != SIZE_MAX) continue;
    std::vector<std::pair<std::size_t, std::size_t>> call{{start, 0}};
    num[start] = low[start] = counter++;
    stack.push_back(start);
    on_stack[start] = true;
    while (!call.empty()) {
      auto& [v, i] = call.back();
      if (i < ix.out[v].size()) {
        const auto [label, w] = ix.out[v][i++];
        if (label != kTauId) continue;
        if (num[w] == SIZE_MAX) {
          num[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          call.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], num[w]);
        }
        continue;
      }
      if (low[v] == num[v]) {
        for (;;) {
          const std::size_t w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp[w] = count;
          if (w == v) break;
        }
        ++count;
      }
      const std::size_t done = v;
      call.pop_back();
      if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[done]);
    }
  }
  return comp;
}

void check_models(const Lts& a, const Lts& b) {
  if (!a.model_id.empty() && !b.model_id.empty() && a.model_id != b.model_id) {
    throw Error(ErrorKind::ModelMismatch, "graphs were built from different models");
  }
}

std::set<std::size_t> tau_closure(const Indexed& ix, std::size_t s) {
  std::set<std::size_t> seen{s};
  std::vector<std::size_t> work{s};
  while (!work.empty()) {
    const std::size_t v = work.back();
    work.pop_back();
    for (const auto& [l, t] : ix.out[v]) {
      if (l == kTauId && seen.insert(t).second) work.push_back(t);
    }
  }
  return seen;
}

struct SearchNode {
  std::size_t s, t;
  std::size_t parent;
  std::string label;
};

std::vector<std::string> trace_to(const std::vector<SearchNode>& nodes, std::size_t i) {
  std::vector<std::string> trace;
  while (i != SIZE_MAX) {
    if (nodes[i].parent != SIZE_MAX) trace.push_back(nodes[i].label);
    i = nodes[i].parent;
  }
  std::reverse(trace.begin(), trace.end());
  return trace;
}

/// Breadth-first search over pairs of inequivalent states for the first
/// pair whose immediate offers differ. Branching modes compare weak offers.
void counterexample(const Indexed& ix, const std::vector<std::size_t>& block, std::size_t r1,
                    std::size_t r2, bool weak, Verdict& v) {
  std::vector<SearchNode> nodes{{r1, r2, SIZE_MAX, ""}};
  std::set<std::pair<std::size_t, std::size_t>> visited{{r1, r2}};
  auto closure = [&](std::size_t s) {
    return weak ? tau_closure(ix, s) : std::set<std::size_t>{s};
  };
  for (std::size_t head = 0; head < nodes.size(); ++head) {
    const std::size_t s = nodes[head].s;
    const std::size_t t = nodes[head].t;
    const auto cs = closure(s);
    const auto ct = closure(t);
    // Offers: visible labels (plus tau for strong) and termination values.
    auto offers = [&](const std::set<std::size_t>& c, std::set<int>& labels, std::set<long>& obs) {
      for (std::size_t u : c) {
        if (ix.obs[u] >= 0) obs.insert(ix.obs[u]);
        for (const auto& [l, w] : ix.out[u]) {
          if (!weak || l != kTauId) labels.insert(l);
        }
      }
    };
    std::set<int> ls, lt;
    std::set<long> os, ot;
    offers(cs, ls, os);
    offers(ct, lt, ot);
    if (os != ot) {
      v.counterexample = trace_to(nodes, head);
      v.obligation = "termination differs";
      return;
    }
    for (int l : ls) {
      if (!lt.count(l)) {
        v.counterexample = trace_to(nodes, head);
        v.counterexample.push_back(ix.labels[static_cast<std::size_t>(l)]);
        v.obligation = "'" + ix.labels[static_cast<std::size_t>(l)] + "' only possible on the left";
        return;
      }
    }
    for (int l : lt) {
      if (!ls.count(l)) {
        v.counterexample = trace_to(nodes, head);
        v.counterexample.push_back(ix.labels[static_cast<std::size_t>(l)]);
        v.obligation = "'" + ix.labels[static_cast<std::size_t>(l)] + "' only possible on the right";
        return;
      }
    }
    // Same offers: descend along moves of one side that the other cannot match.
    auto succ = [&](const std::set<std::size_t>& c, int label) {
      std::vector<std::size_t> out;
      for (std::size_t u : c) {
        for (const auto& [l, w] : ix.out[u]) {
          if (l == label) out.push_back(w);
        }
      }
      return out;
    };
    auto push = [&](std::size_t a, std::size_t b, const std::string& label, bool left_moved) {
      const auto key = left_moved ? std::make_pair(a, b) : std::make_pair(b, a);
      if (block[key.first] == block[key.second]) return;
      if (visited.insert(key).second) nodes.push_back({key.first, key.second, head, label});
    };
    for (int side = 0; side < 2; ++side) {
      const std::size_t me = side == 0 ? s : t;
      const auto& other_closure = side == 0 ? ct : cs;
      for (const auto& [l, w] : ix.out[me]) {
        if (weak && l == kTauId) {
          if (block[w] == block[me]) continue;
          bool matched = false;
          for (std::size_t u : other_closure) matched = matched || block[u] == block[w];
          if (matched) continue;
          for (std::size_t u : other_closure) push(w, u, kTauLabel, side == 0);
          continue;
        }
        const auto others = succ(other_closure, l);
        bool matched = false;
        for (std::size_t o : others) matched = matched || block[o] == block[w];
        if (matched) continue;
        for (std::size_t o : others) push(w, o, ix.labels[static_cast<std::size_t>(l)], side == 0);
      }
    }
  }
  v.counterexample.clear();
  v.obligation = weak ? "branching structure differs" : "states are not bisimilar";
}

Verdict decide(const Lts& left, const Lts& right, Mode mode) {
  check_models(left, right);
  const Lts u = disjoint_union(left, right);
  const Partition p = mode == Mode::Strong ? strong_partition(u) : branching_partition(u);
  const std::size_t r1 = left.root;
  const std::size_t r2 = right.root + left.size;
  Verdict v;
  v.mode = mode;
  v.related = p.block[r1] == p.block[r2];
  const Indexed ix = index_lts(u);
  if (v.related && mode == Mode::RootedBranching) {
    if (ix.obs[r1] != ix.obs[r2]) {
      v.related = false;
      v.obligation = "termination differs at the root";
    }
    for (int side = 0; side < 2 && v.related; ++side) {
      const std::size_t a = side == 0 ? r1 : r2;
      const std::size_t b = side == 0 ? r2 : r1;
      for (const auto& [l, w] : ix.out[a]) {
        bool matched = false;
        for (const auto& [l2, w2] : ix.out[b]) {
          matched = matched || (l2 == l && p.block[w2] == p.block[w]);
        }
        if (!matched) {
          v.related = false;
          v.counterexample = {ix.labels[static_cast<std::size_t>(l)]};
          v.obligation = "initial '" + ix.labels[static_cast<std::size_t>(l)] +
                         "' move unmatched on the " + (side == 0 ? "right" : "left");
          break;
        }
      }
    }
    if (v.related) v.obligation.clear();
    return v;
  }
  if (!v.related) {
    counterexample(ix, p.block, r1, r2, mode != Mode::Strong, v);
  }
  return v;
}

void fill_witness(const Lts& left, const Lts& right, Verdict& v) {
  if (!v.related) return;
  const Lts u = disjoint_union(left, right);
  const Partition p = v.mode == Mode::Strong ? strong_partition(u) : branching_partition(u);
  for (std::size_t s = 0; s < left.size; ++s) {
    for (std::size_t t = 0; t < right.size; ++t) {
      if (p.block[s] == p.block[t + left.size]) v.witness.emplace_back(s, t);
    }
  }
}

}  // namespace

std::string_view mode_name(Mode mode) {
  switch (mode) {
    case Mode::Strong: return "strong";
    case Mode::Branching: return "branching";
    case Mode::RootedBranching: return "rooted-branching";
  }
  return "strong";
}

std::optional<Mode> parse_mode(std::string_view text) {
  if (text == "strong") return Mode::Strong;
  if (text == "branching") return Mode::Branching;
  if (text == "rooted-branching" || text == "rooted") return Mode::RootedBranching;
  return std::nullopt;
}

Partition strong_partition(const Lts& lts) {
  const Indexed ix = index_lts(lts);
  Partition p;
  p.block.assign(ix.n, 0);
  p.count = ix.n ? 1 : 0;
  for (;;) {
    std::vector<Signature> sigs(ix.n);
    for (std::size_t s = 0; s < ix.n; ++s) {
      auto& sig = sigs[s];
      if (ix.obs[s] >= 0) sig.push_back(obs_entry(ix.obs[s]));
      for (const auto& [l, t] : ix.out[s]) sig.emplace_back(l, p.block[t]);
      std::sort(sig.begin(), sig.end());
      sig.erase(std::unique(sig.begin(), sig.end()), sig.end());
    }
    std::vector<std::size_t> next;
    const std::size_t count = renumber(p.block, sigs, next);
    p.block = std::move(next);
    if (count == p.count) break;
    p.count = count;
  }
  return p;
}

Partition branching_partition(const Lts& lts) {
  const Indexed ix = index_lts(lts);
  std::size_t ncomp = 0;
  const std::vector<std::size_t> comp = tau_components(ix, ncomp);

  // Quotient by tau cycles: all states on one are branching bisimilar.
  std::vector<std::vector<std::pair<int, std::size_t>>> out(ncomp);
  std::vector<long> obs(ncomp, -1);
  for (std::size_t s = 0; s < ix.n; ++s) {
    if (ix.obs[s] >= 0) obs[comp[s]] = ix.obs[s];
    for (const auto& [l, t] : ix.out[s]) {
      if (l == kTauId && comp[s] == comp[t]) continue;
      out[comp[s]].emplace_back(l, comp[t]);
    }
  }
  std::vector<std::size_t> indegree(ncomp, 0);
  for (auto& o : out) {
    std::sort(o.begin(), o.end());
    o.erase(std::unique(o.begin(), o.end()), o.end());
    for (const auto& [l, t] : o) {
      if (l == kTauId) ++indegree[t];
    }
  }
  // Topological order of the tau DAG; signatures are built sinks first.
  std::vector<std::size_t> topo;
  std::deque<std::size_t> ready;
  for (std::size_t c = 0; c < ncomp; ++c) {
    if (indegree[c] == 0) ready.push_back(c);
  }
  while (!ready.empty()) {
    const std::size_t c = ready.front();
    ready.pop_front();
    topo.push_back(c);
    for (const auto& [l, t] : out[c]) {
      if (l == kTauId && --indegree[t] == 0) ready.push_back(t);
    }
  }

  std::vector<std::size_t> block(ncomp, 0);
  std::size_t count = ncomp ? 1 : 0;
  for (;;) {
    std::vector<Signature> sigs(ncomp);
    for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
      const std::size_t c = *it;
      std::set<SigEntry> sig;
      if (obs[c] >= 0) sig.insert(obs_entry(obs[c]));
      for (const auto& [l, t] : out[c]) {
        if (l == kTauId && block[t] == block[c]) {
          sig.insert(sigs[t].begin(), sigs[t].end());
        } else {
          sig.emplace(l, block[t]);
        }
      }
      sigs[c].assign(sig.begin(), sig.end());
    }
    std::vector<std::size_t> next;
    const std::size_t n = renumber(block, sigs, next);
    block = std::move(next);
    if (n == count) break;
    count = n;
  }
  Partition p;
  p.count = count;
  p.block.resize(ix.n);
  for (std::size_t s = 0; s < ix.n; ++s) p.block[s] = block[comp[s]];
  return p;
}

Verdict strong_bisim(const Lts& left, const Lts& right) {
  return check_equivalence(left, right, Mode::Strong);
}
Verdict branching_bisim(const Lts& left, const Lts& right) {
  return check_equivalence(left, right, Mode::Branching);
}
Verdict rooted_branching_bisim(const Lts& left, const Lts& right) {
  return check_equivalence(left, right, Mode::RootedBranching);
}

Verdict check_equivalence(const Lts& left, const Lts& right, Mode mode) {
  Verdict v = decide(left, right, mode);
  fill_witness(left, right, v);
  return v;
}

Verdict check_equivalence(const ConfigGraph& left, const ConfigGraph& right, Mode mode) {
  return check_equivalence(to_lts(left), to_lts(right), mode);
}

bool validate_witness(const Lts& left, const Lts& right,
                      const std::vector<std::pair<std::size_t, std::size_t>>& witness, Mode mode,
                      std::string* failure) {
  auto fail = [&](const std::string& why) {
    if (failure) *failure = why;
    return false;
  };
  std::set<std::pair<std::size_t, std::size_t>> rel(witness.begin(), witness.end());
  if (!rel.count({left.root, right.root})) return fail("roots are not related");
  const auto out_l = left.out_edges();
  const auto out_r = right.out_edges();
  // related(a, b, flipped): a belongs to the side that moved.
  auto related = [&](std::size_t a, std::size_t b, bool flipped) {
    return flipped ? rel.count({b, a}) != 0 : rel.count({a, b}) != 0;
  };
  auto tau_reach = [](const Lts& g, const std::vector<std::vector<std::size_t>>& out,
                      std::size_t s) {
    std::vector<std::size_t> seen{s};
    for (std::size_t i = 0; i < seen.size(); ++i) {
      for (std::size_t e : out[seen[i]]) {
        if (g.edges[e].label == kTauLabel &&
            std::find(seen.begin(), seen.end(), g.edges[e].to) == seen.end()) {
          seen.push_back(g.edges[e].to);
        }
      }
    }
    return seen;
  };
  const bool weak = mode != Mode::Strong;
  for (const auto& [s0, t0] : rel) {
    for (int side = 0; side < 2; ++side) {
      const bool flipped = side == 1;
      const Lts& g1 = flipped ? right : left;
      const Lts& g2 = flipped ? left : right;
      const auto& o1 = flipped ? out_r : out_l;
      const auto& o2 = flipped ? out_l : out_r;
      const std::size_t s = flipped ? t0 : s0;
      const std::size_t t = flipped ? s0 : t0;
      const std::vector<std::size_t> reach =
          weak ? tau_reach(g2, o2, t) : std::vector<std::size_t>{t};
      if (g1.termination[s]) {
        bool ok = false;
        for (std::size_t u : reach) {
          ok = ok || (g2.termination[u] == g1.termination[s] && related(s, u, flipped));
        }
        if (!ok) return fail("termination of a related state is not matched");
      }
      for (std::size_t e : o1[s]) {
        const auto& move = g1.edges[e];
        if (weak && move.label == kTauLabel && related(move.to, t, flipped)) continue;
        bool ok = false;
        for (std::size_t u : reach) {
          if (weak && !related(s, u, flipped)) continue;
          for (std::size_t f : o2[u]) {
            const auto& m2 = g2.edges[f];
            if (m2.label == move.label && related(move.to, m2.to, flipped)) {
              ok = true;
              break;
            }
          }
          if (ok) break;
        }
        if (!ok) return fail("move '" + move.label + "' of a related state is not matched");
      }
    }
  }
  if (mode == Mode::RootedBranching) {
    if (left.termination[left.root] != right.termination[right.root]) {
      return fail("root termination differs");
    }
    for (int side = 0; side < 2; ++side) {
      const bool flipped = side == 1;
      const Lts& g1 = flipped ? right : left;
      const Lts& g2 = flipped ? left : right;
      const auto& o1 = flipped ? out_r : out_l;
      const auto& o2 = flipped ? out_l : out_r;
      for (std::size_t e : o1[g1.root]) {
        bool ok = false;
        for (std::size_t f : o2[g2.root]) {
          ok = ok || (g2.edges[f].label == g1.edges[e].label &&
                      related(g1.edges[e].to, g2.edges[f].to, flipped));
        }
        if (!ok) return fail("initial move '" + g1.edges[e].label + "' is not matched exactly");
      }
    }
  }
  return true;
}

TermVerdict quantum_bisim_terms(const TermPtr& p, const TermPtr& q, const Model& model, Mode mode,
                                const GraphLimits& limits) {
  const Lts gp = to_lts(build_graph(p, model, limits));
  const Lts gq = to_lts(build_graph(q, model, limits));
  TermVerdict out;
  out.verdict = check_equivalence(gp, gq, mode);
  ReductionReport& r = out.reduction;

  auto deterministic = [](const Lts& g) {
    const auto o = g.out_edges();
    for (std::size_t s = 0; s < g.size; ++s) {
      std::set<std::string> labels;
      for (std::size_t e : o[s]) {
        if (g.edges[e].label == kTauLabel || !labels.insert(g.edges[e].label).second) return false;
      }
    }
    return true;
  };
  r.applicable = deterministic(gp) && deterministic(gq);
  if (!r.applicable) {
    r.detail = "not applicable: a graph is nondeterministic or has silent steps";
    return out;
  }
  auto strip = [](Lts g) {
    for (auto& t : g.termination) {
      if (t) t = std::string();
    }
    return g;
  };
  r.structural_related = check_equivalence(strip(gp), strip(gq), Mode::Strong).related;
  r.final_states_equal = true;
  const auto op = gp.out_edges();
  const auto oq = gq.out_edges();
  std::set<std::pair<std::size_t, std::size_t>> seen{{gp.root, gq.root}};
  std::vector<std::pair<std::size_t, std::size_t>> work{{gp.root, gq.root}};
  while (!work.empty()) {
    const auto [a, b] = work.back();
    work.pop_back();
    if (gp.termination[a] && gq.termination[b] && gp.termination[a] != gq.termination[b]) {
      r.final_states_equal = false;
      r.detail = "final public states differ after a common trace";
    }
    for (std::size_t e : op[a]) {
      for (std::size_t f : oq[b]) {
        if (gp.edges[e].label != gq.edges[f].label) continue;
        auto next = std::make_pair(gp.edges[e].to, gq.edges[f].to);
        if (seen.insert(next).second) work.push_back(next);
      }
    }
  }
  r.related = r.structural_related && r.final_states_equal;
  r.agrees = r.related == out.verdict.related;
  if (r.detail.empty()) r.detail = r.related ? "reduction relates the terms" : "structures differ";
  return out;
}

}  // namespace qacp
