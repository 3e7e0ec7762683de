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

#include "generators.hpp"
#include "oracle.hpp"
#include "qacp/equivalence.hpp"
#include "qacp/error.hpp"
#include "qacp/syntax.hpp"
#include "test_model.hpp"

using namespace qacp;
using qacp::test::T;

namespace {

Lts G(const std::string& text) { return to_lts(build_graph(T(text), test::test_model())); }

Verdict check(const std::string& l, const std::string& r, Mode mode) {
  const Lts a = G(l);
  const Lts b = G(r);
  Verdict v = check_equivalence(a, b, mode);
  if (v.related) {
    std::string why;
    CHECK_MESSAGE(validate_witness(a, b, v.witness, mode, &why), why);
  }
  return v;
}

}  // namespace

TEST_SUITE("equivalence") {
  TEST_CASE("strong examples") {
    CHECK(check("a + a", "a", Mode::Strong).related);
    const Verdict v = check("a . b", "b . a", Mode::Strong);
    CHECK_FALSE(v.related);
    CHECK(v.counterexample == std::vector<std::string>{"a"});
    CHECK_FALSE(v.obligation.empty());
    CHECK_FALSE(check("a . b", "a . c", Mode::Strong).related);
    CHECK(check("a . (b + c)", "a . (c + b)", Mode::Strong).related);
    CHECK_FALSE(check("a . (b + c)", "a . b + a . c", Mode::Strong).related);
  }

  TEST_CASE("termination observes the public state") {
    CHECK_FALSE(check("a . h", "a . x", Mode::Strong).related);
    // k only touches the private register.
    CHECK(check("tau{k}(k)", "tau", Mode::Strong).related);
    CHECK_FALSE(check("a", "a . delta", Mode::Strong).related);
  }

  TEST_CASE("branching examples") {
    CHECK(check("a . tau . b", "a . b", Mode::Branching).related);
    CHECK(check("tau . a + a", "a", Mode::Branching).related);
    CHECK_FALSE(check("tau . a + a", "a", Mode::RootedBranching).related);
    CHECK_FALSE(check("a + tau . b", "a + b", Mode::Branching).related);
    CHECK_FALSE(check("a . tau . b", "a . b", Mode::Strong).related);
  }

  TEST_CASE("rooted branching examples") {
    CHECK(check("h . tau", "h", Mode::RootedBranching).related);
    CHECK(check("a . (tau . (b + c) + b)", "a . (b + c)", Mode::RootedBranching).related);
    CHECK(check("a . (tau . (b + h) + b)", "a . (b + h)", Mode::RootedBranching).related);
    CHECK_FALSE(check("a . (tau . b + c)", "a . (b + c)", Mode::RootedBranching).related);
  }

  TEST_CASE("graphs of different models are refused") {
    const Model other = parse_spec("registers { q; }\nactions { classical a; }\n");
    const Lts mine = G("a");
    const Lts theirs = to_lts(build_graph(parse_term("a", other), other));
    try {
      check_equivalence(mine, theirs, Mode::Strong);
      FAIL("expected ModelMismatch");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::ModelMismatch);
    }
  }

  TEST_CASE("partition refinement agrees with the fixpoint oracle") {
    test::Rng rng(12);
    int related = 0;
    for (int i = 0; i < 400; ++i) {
      const Lts a = test::random_lts(rng, 12);
      const Lts b = i % 2 ? test::stutter_variant(rng, a) : test::random_lts(rng, 12);
      for (Mode m : {Mode::Strong, Mode::Branching, Mode::RootedBranching}) {
        const Verdict v = check_equivalence(a, b, m);
        CHECK(v.related == test::naive_related(a, b, m));
        if (v.related) {
          ++related;
          CHECK(validate_witness(a, b, v.witness, m));
        } else {
          CHECK_FALSE(v.obligation.empty());
        }
      }
    }
    CHECK(related > 100);
  }

  TEST_CASE("minimize") {
    const Lts chain = G("a . tau . tau . b");
    CHECK(isomorphic(minimize(chain, Mode::Branching), G("a . b")));
    test::Rng rng(21);
    for (int i = 0; i < 200; ++i) {
      const Lts g = test::random_lts(rng, 10);
      for (Mode m : {Mode::Strong, Mode::Branching, Mode::RootedBranching}) {
        Lts once;
        try {
          once = minimize(g, m);
        } catch (const Error& e) {
          CHECK(e.kind() == ErrorKind::TauDivergence);
          CHECK(m != Mode::Strong);
          continue;
        }
        CHECK(check_equivalence(once, g, m).related);
        CHECK(isomorphic(minimize(once, m), once));
        CHECK(once.size <= reachable_part(g).size + (m == Mode::RootedBranching ? 1 : 0));
      }
    }
  }

  TEST_CASE("tau divergence") {
    Lts l;
    l.size = 2;
    l.termination = {std::nullopt, std::nullopt};
    l.edges = {{0, "a", 1}, {1, kTauLabel, 1}};
    CHECK_THROWS_AS(minimize(l, Mode::Branching), Error);
    CHECK_NOTHROW(minimize(l, Mode::Strong));
    l.edges.push_back({1, "b", 0});
    CHECK_NOTHROW(check_divergence(l));
  }

  TEST_CASE("clusters") {
    const Model& m = test::test_model();
    const auto two = find_clusters(*m.find_spec("Pair"), {});
    REQUIRE(two.size() == 1);
    CHECK(two[0].variables == std::vector<std::string>{"U", "V"});
    REQUIRE(two[0].exits.size() == 2);
    CHECK(format_term(two[0].exits[0]) == "a");
    CHECK(format_term(two[0].exits[1]) == "b");

    const auto loop = find_clusters(*m.find_spec("Loop"), {});
    REQUIRE(loop.size() == 1);
    CHECK(loop[0].variables == std::vector<std::string>{"X"});

    RecursiveSpec s{"S",
                    {{"X", Term::alt(Term::seq(Term::classical("i"), Term::var("X")),
                                     Term::seq(Term::classical("a"), Term::var("Y")))},
                     {"Y", Term::classical("b")}}};
    const auto cl = find_clusters(s, make_action_set({"i"}));
    REQUIRE(cl.size() == 2);
    CHECK(cl[0].variables == std::vector<std::string>{"X"});
    REQUIRE(cl[0].exits.size() == 1);
    CHECK(format_term(cl[0].exits[0]) == "a . Y");

    RecursiveSpec bad{"B", {{"X", Term::seq(Term::classical("a"), Term::seq(Term::classical("b"), Term::var("X")))}}};
    try {
      find_clusters(bad, {});
      FAIL("expected SpecNotLinear");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::SpecNotLinear);
    }
  }

  TEST_CASE("reduction report") {
    const Model& m = test::test_model();
    const TermVerdict same = quantum_bisim_terms(T("h . a"), T("h . a"), m, Mode::Strong);
    CHECK(same.verdict.related);
    CHECK(same.reduction.applicable);
    CHECK(same.reduction.agrees);

    // Equal final states, different labels.
    const TermVerdict labels = quantum_bisim_terms(T("h . h"), T("x . x"), m, Mode::Strong);
    CHECK_FALSE(labels.verdict.related);
    CHECK(labels.reduction.final_states_equal);
    CHECK(labels.reduction.agrees);

    // Same labels, different operations behind them.
    const TermVerdict effect = quantum_bisim_terms(T("rename{h -> x}(h)"), T("x"), m, Mode::Strong);
    CHECK_FALSE(effect.verdict.related);
    CHECK(effect.reduction.structural_related);
    CHECK_FALSE(effect.reduction.final_states_equal);
    CHECK(effect.reduction.agrees);

    CHECK(quantum_bisim_terms(T("a + b"), T("b + a"), m, Mode::Strong).reduction.applicable);
    CHECK_FALSE(quantum_bisim_terms(T("a . b + a . c"), T("a"), m, Mode::Strong).reduction.applicable);
  }

  TEST_CASE("congruence for random contexts") {
    const Model& m = test::test_model();
    test::Rng rng(31);
    auto g = [&](const TermPtr& t) { return to_lts(build_graph(t, m)); };
    for (int i = 0; i < 60; ++i) {
      const TermPtr p = test::random_basic_term(rng, 4);
      const TermPtr q = test::equivalent_variant(rng, p);
      const TermPtr r = test::random_term(rng, System::Qpap, 3);
      REQUIRE(strong_bisim(g(p), g(q)).related);
      const ActionSet h = make_action_set({"a"});
      CHECK(strong_bisim(g(Term::alt(p, r)), g(Term::alt(q, r))).related);
      CHECK(strong_bisim(g(Term::seq(p, r)), g(Term::seq(q, r))).related);
      CHECK(strong_bisim(g(Term::seq(r, p)), g(Term::seq(r, q))).related);
      CHECK(strong_bisim(g(Term::merge(p, r)), g(Term::merge(q, r))).related);
      CHECK(strong_bisim(g(Term::encap(h, p)), g(Term::encap(h, q))).related);
    }
  }
}
