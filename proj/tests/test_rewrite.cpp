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
#include "qacp/bb84.hpp"
#include "qacp/equivalence.hpp"
#include "qacp/error.hpp"
#include "qacp/rewrite.hpp"
#include "qacp/syntax.hpp"
#include "test_model.hpp"

using namespace qacp;
using qacp::test::T;

namespace {

const Model& M() { return test::test_model(); }

std::string nf(const std::string& text, System s) {
  return format_term(Rewriter(M(), s).normalize(T(text)));
}

ErrorKind kind_of_nf(const TermPtr& t, System s, std::size_t budget = kDefaultBudget) {
  try {
    Rewriter(M(), s).normalize(t, budget);
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("normalized without error");
  return ErrorKind::IoError;
}

Lts G(const TermPtr& t) { return to_lts(build_graph(t, M())); }

}  // namespace

TEST_SUITE("rewrite") {
  TEST_CASE("single steps") {
    const Rewriter bq(M(), System::Bqpa);
    auto s = bq.rewrite_step(T("a + a"));
    REQUIRE(s);
    CHECK(format_term(s->result) == "a");
    CHECK(s->rule == "QA3");
    CHECK(s->position.empty());

    const Rewriter qp(M(), System::Qpap);
    s = qp.rewrite_step(T("delta . a"));
    REQUIRE(s);
    CHECK(format_term(s->result) == "delta");
    CHECK(s->rule == "QA7");
    CHECK(s->position.empty());

    CHECK_FALSE(bq.rewrite_step(T("a . b")));

    s = bq.rewrite_step(T("c . (a + a)"));
    REQUIRE(s);
    CHECK(s->position == Position{1});
    // Redexes inside a flattened sum are addressed by summand index.
    s = bq.rewrite_step(T("b + (a . b) . c + a"));
    REQUIRE(s);
    CHECK(s->rule == "QA5");
    CHECK(s->position == Position{2});
  }

  TEST_CASE("normal forms") {
    CHECK(nf("(a + b) . c", System::Bqpa) == "a . c + b . c");
    CHECK(nf("a || b", System::Qpap) == format_term(ac_canonical(T("a . b + b . a + c"))));
    CHECK(nf("encap{a}(a . b)", System::Aqcp) == "delta");
    CHECK(nf("a . tau", System::AqcpTau) == "a");
    CHECK(nf("a . (tau . (b + c) + b)", System::AqcpTau) == "a . (b + c)");
    CHECK(nf("tau{a}(a . b + c)", System::AqcpTau) == "c + tau . b");
    CHECK(nf("rename{a -> b}(a . c)", System::AqcpTau) == "b . c");
    CHECK(nf("b + a + delta", System::Qpap) == "a + b");
    CHECK(nf("a | c", System::Qpap) == "delta");
    CHECK(nf("h | k", System::Qpap) == "delta");
    CHECK(nf("(a . h) | (b . x)", System::Qpap) == "c . (h . x + x . h)");
  }

  TEST_CASE("operators outside the system") {
    CHECK(kind_of_nf(T("a || b"), System::Bqpa) == ErrorKind::OperatorNotEliminable);
    CHECK(kind_of_nf(T("encap{a}(a)"), System::Qpap) == ErrorKind::OperatorNotEliminable);
    CHECK(kind_of_nf(T("tau{a}(a)"), System::Aqcp) == ErrorKind::OperatorNotEliminable);
    CHECK(kind_of_nf(T("a . X"), System::AqcpTau) == ErrorKind::OperatorNotEliminable);
    // Renaming a quantum action keeps its Kraus effect, which no plain
    // action of the target name has.
    CHECK(kind_of_nf(T("rename{h -> x}(h)"), System::AqcpTau) == ErrorKind::OperatorNotEliminable);
    CHECK(kind_of_nf(T("(a + b) . (c + a) . (b + c)"), System::Bqpa, 1) ==
          ErrorKind::BudgetExceeded);
  }

  TEST_CASE("rdp unfolding") {
    CHECK(format_term(unfold_rdp(T("X"), M(), 2)) == "a . a . X");
    CHECK(format_term(unfold_rdp(T("X"), M(), 0)) == "X");
    const Model b = build_bb84(1);
    CHECK(format_term(unfold_rdp(parse_term("X", b), b, 1)) == "receive_A(d) . Y");
    try {
      unfold_rdp(Term::var("Nope"), M(), 1);
      FAIL("expected UnboundVariable");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::UnboundVariable);
    }
  }

  TEST_CASE("canonical order") {
    CHECK(structurally_equal(ac_canonical(T("b + a")), ac_canonical(T("a + b"))));
    CHECK(structurally_equal(ac_canonical(T("(c + a) + b")), T("a + b + c")));
    CHECK(is_basic_term(T("a . (b + delta) + tau")));
    CHECK_FALSE(is_basic_term(T("a || b")));
  }

  TEST_CASE("traced and direct normalization agree, and are idempotent") {
    test::Rng rng(41);
    for (System s : {System::Bqpa, System::Qpap, System::Aqcp, System::AqcpTau}) {
      const Rewriter rw(M(), s);
      for (int i = 0; i < 100; ++i) {
        const TermPtr t = test::random_term(rng, s, 4);
        const TermPtr n = rw.normalize(t);
        std::vector<RewriteStep> trace;
        const TermPtr inner = rw.normalize_traced(t, Strategy::Innermost, kDefaultBudget, &trace);
        const TermPtr outer = rw.normalize_traced(t, Strategy::Outermost, kDefaultBudget, nullptr);
        CHECK_MESSAGE(structurally_equal(n, inner), format_term(t));
        CHECK_MESSAGE(structurally_equal(n, outer), format_term(t));
        CHECK(structurally_equal(rw.normalize(n), n));
        CHECK_FALSE(rw.rewrite_step(n));
        if (s >= System::Aqcp) CHECK(is_basic_term(n));
        for (const auto& st : trace) CHECK_FALSE(st.rule.empty());
      }
    }
  }

  TEST_CASE("normal forms are sound") {
    test::Rng rng(43);
    for (System s : {System::Bqpa, System::Qpap, System::Aqcp, System::AqcpTau}) {
      const Rewriter rw(M(), s);
      const Mode mode = s == System::AqcpTau ? Mode::RootedBranching : Mode::Strong;
      for (int i = 0; i < 60; ++i) {
        const TermPtr t = test::random_term(rng, s, 4);
        CHECK_MESSAGE(check_equivalence(G(t), G(rw.normalize(t)), mode).related, format_term(t));
      }
    }
  }
}
