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
#include "qacp/semantics.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <tuple>

#include "qacp/error.hpp"
#include "qacp/syntax.hpp"

namespace qacp {
namespace {

constexpr std::size_t kMaxUnfoldDepth = 4096;

TermPtr rebuild(TermKind kind, const TermPtr& residue, const TermPtr& other, bool residue_left) {
  return residue_left ? Term::binary(kind, residue, other) : Term::binary(kind, other, residue);
}

/// Residue after both sides of a merge moved; nullptr when both terminated.
TermPtr join(const TermPtr& x, const TermPtr& y) {
  if (!x) return y;
  if (!y) return x;
  return Term::merge(x, y);
}

class StateTable {
 public:
  StatePtr intern(const StatePtr& s) {
    const StateDigest d = state_digest(*s);
    auto& bucket = table_[d.hi ^ (d.lo * 0x9e3779b97f4a7c15ULL)];
    for (const auto& existing : bucket) {
      if (existing == s || same_key(*existing, *s)) return existing;
    }
    bucket.push_back(s);
    return s;
  }

 private:
  std::unordered_map<std::uint64_t, std::vector<StatePtr>> table_;
};

}  // namespace

Semantics::Semantics(const Model& model, unsigned rules, double public_tolerance)
    : model_(model), rules_(rules), public_tolerance_(public_tolerance) {}

StatePtr Semantics::apply(const std::string& action, const StatePtr& state) const {
  auto key = std::make_pair(action, state.get());
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;
  auto op = model_.quantum.find(action);
  if (op == model_.quantum.end()) {
    throw Error(ErrorKind::UndeclaredAction, "'" + action + "' is not a quantum action");
  }
  auto result = std::make_shared<const QuantumState>(apply_operation(*state, op->second));
  keep_alive_.push_back(state);
  cache_.emplace(key, result);
  return result;
}

std::vector<Transition> Semantics::step(const TermPtr& term, const StatePtr& state) const {
  std::vector<Transition> out;
  collect(term, state, out, 0);
  // Drop duplicates such as the two identical moves of a + a.
  std::vector<Transition> unique;
  for (auto& t : out) {
    bool dup = false;
    for (const auto& u : unique) {
      if (u.label == t.label && u.kind == t.kind && u.state == t.state &&
          structurally_equal(u.next, t.next)) {
        dup = true;
        break;
      }
    }
    if (!dup) unique.push_back(std::move(t));
  }
  return unique;
}

void Semantics::collect(const TermPtr& term, const StatePtr& state, std::vector<Transition>& out,
                        std::size_t depth) const {
  if (depth > kMaxUnfoldDepth) {
    throw Error(ErrorKind::UnguardedRecursion, "recursion unfolding does not reach an action");
  }
  switch (term->kind()) {
    case TermKind::Deadlock: return;
    case TermKind::Silent:
      if (rules_ & kRulesSilent) out.push_back({"tau", LabelKind::Silent, nullptr, state});
      return;
    case TermKind::QuantumAction:
      if (rules_ & kRulesBasic) {
        out.push_back({term->name(), LabelKind::Quantum, nullptr, apply(term->name(), state)});
      }
      return;
    case TermKind::ClassicalAction:
      if (rules_ & kRulesBasic) out.push_back({term->name(), LabelKind::Classical, nullptr, state});
      return;
    case TermKind::RecVar: {
      if (!(rules_ & kRulesRecursion)) return;
      const TermPtr* body = model_.definition(term->name());
      if (!body) throw Error(ErrorKind::UnboundVariable, "variable '" + term->name() + "' is not defined");
      collect(*body, state, out, depth + 1);
      return;
    }
    case TermKind::Alt:
      if (!(rules_ & kRulesBasic)) return;
      collect(term->left(), state, out, depth + 1);
      collect(term->right(), state, out, depth + 1);
      return;
    case TermKind::Seq: {
      if (!(rules_ & kRulesBasic)) return;
      std::vector<Transition> first;
      collect(term->left(), state, first, depth + 1);
      for (auto& t : first) {
        t.next = t.next ? Term::seq(t.next, term->right()) : term->right();
        out.push_back(std::move(t));
      }
      return;
    }
    case TermKind::Merge:
    case TermKind::LeftMerge:
    case TermKind::CommMerge: {
      if (!(rules_ & kRulesParallel)) return;
      std::vector<Transition> xs;
      std::vector<Transition> ys;
      collect(term->left(), state, xs, depth + 1);
      const bool need_right = term->kind() != TermKind::LeftMerge;
      if (need_right) collect(term->right(), state, ys, depth + 1);
      if (term->kind() != TermKind::CommMerge) {
        for (const auto& t : xs) {
          out.push_back({t.label, t.kind,
                         t.next ? rebuild(TermKind::Merge, t.next, term->right(), true)
                                : term->right(),
                         t.state});
        }
      }
      if (term->kind() == TermKind::Merge) {
        for (const auto& t : ys) {
          out.push_back({t.label, t.kind,
                         t.next ? rebuild(TermKind::Merge, t.next, term->left(), false)
                                : term->left(),
                         t.state});
        }
      }
      if (term->kind() != TermKind::LeftMerge) {
        for (const auto& x : xs) {
          if (x.kind != LabelKind::Classical) continue;
          for (const auto& y : ys) {
            if (y.kind != LabelKind::Classical) continue;
            auto c = model_.communicate(x.label, y.label);
            if (!c) continue;
            out.push_back({*c, LabelKind::Classical, join(x.next, y.next), state});
          }
        }
      }
      return;
    }
    case TermKind::Encap: {
      if (!(rules_ & kRulesEncap)) return;
      std::vector<Transition> inner;
      collect(term->body(), state, inner, depth + 1);
      for (auto& t : inner) {
        if (t.kind != LabelKind::Silent && contains(term->actions(), t.label)) continue;
        if (t.next) t.next = Term::encap(term->actions(), t.next);
        out.push_back(std::move(t));
      }
      return;
    }
    case TermKind::Abstract: {
      if (!(rules_ & kRulesAbstraction)) return;
      std::vector<Transition> inner;
      collect(term->body(), state, inner, depth + 1);
      for (auto& t : inner) {
        if (t.kind != LabelKind::Silent && contains(term->actions(), t.label)) {
          if (t.state != state) {
            const double d = trace_distance(public_part(*state), public_part(*t.state));
            if (d > public_tolerance_) {
              throw Error(ErrorKind::HiddenActionDisturbsPublicState,
                          "hiding '" + t.label + "' changes the public state by " +
                              std::to_string(d));
            }
          }
          t.label = "tau";
          t.kind = LabelKind::Silent;
        }
        if (t.next) t.next = Term::abstract(term->actions(), t.next);
        out.push_back(std::move(t));
      }
      return;
    }
    case TermKind::Rename: {
      if (!(rules_ & kRulesRenaming)) return;
      std::vector<Transition> inner;
      collect(term->body(), state, inner, depth + 1);
      for (auto& t : inner) {
        if (t.kind != LabelKind::Silent) {
          if (auto to = lookup(term->renaming(), t.label)) t.label = *to;
        }
        if (t.next) t.next = Term::rename(term->renaming(), t.next);
        out.push_back(std::move(t));
      }
      return;
    }
  }
}

std::string termination_observation(const QuantumState& state) {
  const QuantumState pub = public_part(state);
  std::string key = state_key(pub);
  std::string hex;
  static const char* digits = "0123456789abcdef";
  // Hex keeps the observation printable for exports and diagnostics.
  std::uint64_t h1 = 1469598103934665603ULL;
  std::uint64_t h2 = 0x84222325cbf29ce4ULL;
  for (unsigned char c : key) {
    h1 = (h1 ^ c) * 1099511628211ULL;
    h2 = (h2 ^ c) * 0x100000001b3ULL + 0x9e3779b97f4a7c15ULL;
  }
  for (std::uint64_t v : {h1, h2}) {
    for (int i = 15; i >= 0; --i) hex.push_back(digits[(v >> (4 * i)) & 0xf]);
  }
  return hex;
}

std::size_t ConfigGraph::structural_size() const {
  std::vector<TermPtr> terms;
  for (const auto& n : nodes) {
    if (!n.term) continue;
    bool seen = false;
    for (const auto& t : terms) {
      if (structurally_equal(t, n.term)) {
        seen = true;
        break;
      }
    }
    if (!seen) terms.push_back(n.term);
  }
  return terms.size();
}

ConfigGraph build_graph(const TermPtr& root, const Model& model, const GraphLimits& limits,
                        unsigned rules, double public_tolerance) {
  return build_graph(root, std::make_shared<const QuantumState>(model.initial_state()), model,
                     limits, rules, public_tolerance);
}

ConfigGraph build_graph(const TermPtr& root, const StatePtr& initial, const Model& model,
                        const GraphLimits& limits, unsigned rules, double public_tolerance) {
  Semantics sem(model, rules, public_tolerance);
  StateTable states;
  ConfigGraph g;
  g.model_id = model.fingerprint();
  std::unordered_map<std::size_t, std::vector<std::size_t>> index;
  std::vector<std::size_t> depth;

  auto node_hash = [](const TermPtr& t, const StatePtr& s) {
    return (t ? t->hash() : 0x5bd1e995ULL) * 1000003ULL ^ reinterpret_cast<std::uintptr_t>(s.get());
  };
  auto intern = [&](const TermPtr& t, const StatePtr& s, std::size_t d) -> std::size_t {
    const std::size_t h = node_hash(t, s);
    auto& bucket = index[h];
    for (std::size_t i : bucket) {
      if (g.nodes[i].state == s && structurally_equal(g.nodes[i].term, t)) return i;
    }
    if (g.nodes.size() >= limits.max_states) {
      throw Error(ErrorKind::StateSpaceExceeded,
                  "more than " + std::to_string(limits.max_states) + " configurations");
    }
    if (limits.max_depth && d > *limits.max_depth) {
      throw Error(ErrorKind::DepthExceeded,
                  "configuration beyond depth " + std::to_string(*limits.max_depth));
    }
    bucket.push_back(g.nodes.size());
    g.nodes.push_back({t, s});
    depth.push_back(d);
    if (!t) g.terminating.push_back(g.nodes.size() - 1);
    return g.nodes.size() - 1;
  };

  g.root = intern(root, states.intern(initial), 0);
  for (std::size_t cur = 0; cur < g.nodes.size(); ++cur) {
    if (!g.nodes[cur].term) continue;
    const TermPtr term = g.nodes[cur].term;
    const StatePtr state = g.nodes[cur].state;
    const std::size_t first_edge = g.edges.size();
    for (const auto& t : sem.step(term, state)) {
      const std::size_t to = intern(t.next, states.intern(t.state), depth[cur] + 1);
      bool dup = false;
      for (std::size_t e = first_edge; e < g.edges.size(); ++e) {
        if (g.edges[e].to == to && g.edges[e].label == t.label) {
          dup = true;
          break;
        }
      }
      if (!dup) g.edges.push_back({cur, t.label, t.kind, to});
    }
  }
  return g;
}

RecursiveSpec linearize(const ConfigGraph& graph, const std::string& name) {
  RecursiveSpec spec;
  spec.name = name;
  std::vector<std::string> var(graph.nodes.size());
  std::vector<std::size_t> order;
  order.push_back(graph.root);
  for (std::size_t i = 0; i < graph.nodes.size(); ++i) {
    if (i != graph.root && graph.nodes[i].term) order.push_back(i);
  }
  for (std::size_t k = 0; k < order.size(); ++k) var[order[k]] = "X" + std::to_string(k + 1);
  for (std::size_t n : order) {
    std::vector<TermPtr> parts;
    for (const auto& e : graph.edges) {
      if (e.from != n) continue;
      TermPtr atom = e.kind == LabelKind::Silent    ? Term::silent()
                     : e.kind == LabelKind::Quantum ? Term::quantum(e.label)
                                                    : Term::classical(e.label);
      if (graph.nodes[e.to].term) {
        parts.push_back(Term::seq(atom, Term::var(var[e.to])));
      } else {
        parts.push_back(atom);
      }
    }
    spec.equations.push_back({var[n], make_sum(parts)});
  }
  return spec;
}

unsigned rules_used(const TermPtr& term, const Model& model) {
  unsigned used = 0;
  std::set<std::string> visited;
  std::vector<TermPtr> work{term};
  while (!work.empty()) {
    TermPtr t = work.back();
    work.pop_back();
    for_each_node(t, [&](const TermPtr& n) {
      switch (n->kind()) {
        case TermKind::Silent: used |= kRulesSilent; break;
        case TermKind::QuantumAction:
        case TermKind::ClassicalAction:
        case TermKind::Alt:
        case TermKind::Seq: used |= kRulesBasic; break;
        case TermKind::Merge:
        case TermKind::LeftMerge:
        case TermKind::CommMerge: used |= kRulesParallel; break;
        case TermKind::Encap: used |= kRulesEncap; break;
        case TermKind::Abstract: used |= kRulesAbstraction; break;
        case TermKind::Rename: used |= kRulesRenaming; break;
        case TermKind::RecVar:
          used |= kRulesRecursion;
          if (visited.insert(n->name()).second) {
            if (const TermPtr* body = model.definition(n->name())) work.push_back(*body);
          }
          break;
        case TermKind::Deadlock: break;
      }
    });
  }
  return used;
}

}  // namespace qacp
