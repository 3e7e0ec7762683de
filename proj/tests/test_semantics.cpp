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
#include <doctest.h>

#include <algorithm>
#include <memory>

#include "generators.hpp"
#include "qacp/bb84.hpp"
#include "qacp/equivalence.hpp"
#include "qacp/error.hpp"
#include "qacp/lts.hpp"
#include "qacp/semantics.hpp"
#include "qacp/syntax.hpp"
#include "test_model.hpp"

using namespace qacp;
using qacp::test::T;

namespace {

const Model& M() { return test::test_model(); }

StatePtr init_state(const Model& m) { return std::make_shared<QuantumState>(m.initial_state()); }

ErrorKind kind_of_graph(const TermPtr& t, const GraphLimits& limits = {}) {
  try {
    build_graph(t, M(), limits);
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("graph built without error");
  return ErrorKind::IoError;
}

// Multiset view used to compare graphs node for node.
std::vector<std::string> edge_multiset(const ConfigGraph& g) {
  std::vector<std::string> out;
  auto name = [&](std::size_t v) {
    const auto& n = g.nodes[v];
    return (n.term ? format_term(n.term) : std::string("tick")) + "@" + state_key(*n.state);
  };
  for (const auto& e : g.edges) out.push_back(name(e.from) + " -" + e.label + "-> " + name(e.to));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_SUITE("semantics") {
  TEST_CASE("quantum action terminates with the new state") {
    const Semantics sem(M());
    const auto steps = sem.step(T("h"), init_state(M()));
    REQUIRE(steps.size() == 1);
    CHECK(steps[0].label == "h");
    CHECK(steps[0].kind == LabelKind::Quantum);
    CHECK(steps[0].next == nullptr);
    const QuantumState pub = public_part(*steps[0].state);
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) CHECK(std::abs(pub.matrix()(i, j) - Complex(0.5)) < 1e-12);
    }
  }

  TEST_CASE("classical actions keep the state") {
    const Semantics sem(M());
    const StatePtr s = init_state(M());
    const auto steps = sem.step(T("a . h"), s);
    REQUIRE(steps.size() == 1);
    CHECK(steps[0].kind == LabelKind::Classical);
    CHECK(same_key(*steps[0].state, *s));
    CHECK(structurally_equal(steps[0].next, T("h")));
  }

  TEST_CASE("communication in a merge") {
    const Model m = build_bb84(1);
    const Semantics sem(m);
    const StatePtr s = init_state(m);
    const auto steps = sem.step(parse_term("send_Q(q) || receive_Q(q)", m), s);
    auto it = std::find_if(steps.begin(), steps.end(),
                           [](const Transition& t) { return t.label == "c_Q(q)"; });
    REQUIRE(it != steps.end());
    CHECK(it->next == nullptr);
    CHECK(trace_distance(*it->state, *s) == 0.0);
    CHECK(steps.size() == 3);  // both interleavings and the communication
    // Only the communication survives encapsulation.
    const auto enc = sem.step(parse_term("encap{H}(send_Q(q) || receive_Q(q))", m), s);
    REQUIRE(enc.size() == 1);
    CHECK(enc[0].label == "c_Q(q)");
  }

  TEST_CASE("merge family") {
    const Semantics sem(M());
    const StatePtr s = init_state(M());
    CHECK(sem.step(T("a |_ b"), s).size() == 1);
    CHECK(sem.step(T("a | b"), s).size() == 1);
    CHECK(sem.step(T("a | c"), s).empty());
    CHECK(sem.step(T("h | k"), s).empty());
    CHECK(sem.step(T("tau | tau"), s).empty());
    CHECK(sem.step(T("a || h"), s).size() == 2);
  }

  TEST_CASE("encapsulation blocks") {
    const Semantics sem(M());
    CHECK(sem.step(T("encap{a}(a)"), init_state(M())).empty());
    CHECK(sem.step(T("encap{a}(b + a)"), init_state(M())).size() == 1);
  }

  TEST_CASE("abstraction and the public state") {
    const Semantics sem(M());
    const auto steps = sem.step(T("tau{k}(k)"), init_state(M()));
    REQUIRE(steps.size() == 1);
    CHECK(steps[0].label == kTauLabel);
    CHECK(steps[0].kind == LabelKind::Silent);
    CHECK(kind_of_graph(T("tau{h}(h)")) == ErrorKind::HiddenActionDisturbsPublicState);
    // x flips the public qubit: not silent either.
    CHECK(kind_of_graph(T("a . tau{x}(x)")) == ErrorKind::HiddenActionDisturbsPublicState);
  }

  TEST_CASE("renaming keeps the effect") {
    const Semantics sem(M());
    const auto steps = sem.step(T("rename{a -> b}(a . c)"), init_state(M()));
    REQUIRE(steps.size() == 1);
    CHECK(steps[0].label == "b");
  }

  TEST_CASE("chain graph and its linearization") {
    const ConfigGraph g = build_graph(T("a . b"), M());
    CHECK(g.nodes.size() == 3);
    CHECK(g.edges.size() == 2);
    CHECK(g.terminating.size() == 1);
    const RecursiveSpec lin = linearize(g, "L");
    REQUIRE(lin.equations.size() == 2);
    CHECK(lin.equations[0].variable == "X1");
    CHECK(format_term(lin.equations[0].body) == "a . X2");
    CHECK(format_term(lin.equations[1].body) == "b");
    CHECK(is_linear(lin));
  }

  TEST_CASE("recursive loop is one node") {
    const ConfigGraph g = build_graph(T("X"), M());
    CHECK(g.nodes.size() == 1);
    REQUIRE(g.edges.size() == 1);
    CHECK(g.edges[0].from == 0);
    CHECK(g.edges[0].to == 0);
    CHECK(g.terminating.empty());
  }

  TEST_CASE("tau self loop linearizes to X1 = tau . X1") {
    Lts l;
    l.size = 1;
    l.termination = {std::nullopt};
    l.edges = {{0, kTauLabel, 0}};
    const RecursiveSpec lin = linearize(l, M(), "L");
    REQUIRE(lin.equations.size() == 1);
    CHECK(format_term(lin.equations[0].body) == "tau . X1");
    CHECK_THROWS_AS(check_divergence(l), Error);
  }

  TEST_CASE("limits") {
    GraphLimits small;
    small.max_states = 2;
    CHECK(kind_of_graph(T("a . b . c"), small) == ErrorKind::StateSpaceExceeded);
    GraphLimits shallow;
    shallow.max_depth = 1;
    CHECK(kind_of_graph(T("a . b . c"), shallow) == ErrorKind::DepthExceeded);
  }

  TEST_CASE("disabled rule groups give no transitions") {
    const Semantics basic(M(), kRulesBasic);
    CHECK(basic.step(T("a || b"), init_state(M())).empty());
    CHECK(basic.step(T("X"), init_state(M())).empty());
    CHECK(basic.step(T("tau"), init_state(M())).empty());
    CHECK(rules_used(T("a . tau{k}(X)"), M()) ==
          (kRulesBasic | kRulesAbstraction | kRulesRecursion));
  }

  TEST_CASE("edges respect the state-change discipline") {
    test::Rng rng(5);
    for (int i = 0; i < 150; ++i) {
      const TermPtr t = test::random_term(rng, System::AqcpTau, 4);
      const ConfigGraph g = build_graph(t, M());
      for (const auto& e : g.edges) {
        const QuantumState& a = *g.nodes[e.from].state;
        const QuantumState& b = *g.nodes[e.to].state;
        if (e.kind == LabelKind::Classical) CHECK(trace_distance(a, b) == 0.0);
        if (e.kind == LabelKind::Silent) CHECK(trace_distance(public_part(a), public_part(b)) <= 1e-6);
      }
      for (std::size_t v : g.terminating) CHECK(g.nodes[v].term == nullptr);
    }
  }

  TEST_CASE("BQPA terms get the same graph under every rule set") {
    test::Rng rng(6);
    for (int i = 0; i < 100; ++i) {
      const TermPtr t = test::random_basic_term(rng, 5);
      const ConfigGraph basic = build_graph(t, M(), {}, kRulesBasic);
      const ConfigGraph full = build_graph(t, M(), {}, kRulesAll);
      CHECK(basic.nodes.size() == full.nodes.size());
      CHECK(edge_multiset(basic) == edge_multiset(full));
    }
  }

  TEST_CASE("merge expands into left merges and communication") {
    test::Rng rng(8);
    for (int i = 0; i < 100; ++i) {
      const TermPtr x = test::random_term(rng, System::Qpap, 3);
      const TermPtr y = test::random_term(rng, System::Qpap, 3);
      const TermPtr lhs = Term::merge(x, y);
      const TermPtr rhs = Term::alt(Term::alt(Term::left_merge(x, y), Term::left_merge(y, x)),
                                    Term::comm_merge(x, y));
      CHECK_MESSAGE(strong_bisim(to_lts(build_graph(lhs, M())), to_lts(build_graph(rhs, M()))).related,
                    format_term(lhs));
    }
  }

  TEST_CASE("deduplication by term and state") {
    // Both branches reach <b, same state>.
    const ConfigGraph g = build_graph(T("a . b + c . b"), M());
    CHECK(g.nodes.size() == 3);
    // h . h returns to the initial state but with a different term.
    const ConfigGraph hh = build_graph(T("h . h"), M());
    CHECK(hh.nodes.size() == 3);
    CHECK(same_key(*hh.nodes[hh.root].state, *hh.nodes[hh.terminating[0]].state));
  }
}
