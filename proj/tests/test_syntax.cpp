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

#include <cmath>

#include "generators.hpp"
#include "qacp/bb84.hpp"
#include "qacp/error.hpp"
#include "qacp/syntax.hpp"
#include "test_model.hpp"

using namespace qacp;
using qacp::test::T;

namespace {

ErrorKind kind_of(const std::string& text) {
  try {
    parse_spec(text);
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("model loaded without error");
  return ErrorKind::IoError;
}

const char* kQubit = "registers { q; }\n";

}  // namespace

TEST_SUITE("syntax") {
  TEST_CASE("smallest model") {
    const Model m = parse_spec(std::string(kQubit) + "actions { quantum h = H on q; }\n");
    CHECK(m.quantum.size() == 1);
    CHECK(m.classical.empty());
    CHECK(m.initial_state().dimension() == 2);
  }

  TEST_CASE("BB84 model shape") {
    const Model m = build_bb84(1);
    REQUIRE(m.find_spec("Alice"));
    REQUIRE(m.find_spec("Bob"));
    CHECK(m.find_spec("Alice")->equations.size() == 9);
    CHECK(m.find_spec("Bob")->equations.size() == 7);
    std::size_t pairs = 0;
    for (const auto& [k, v] : m.gamma) pairs += k.first < k.second;
    CHECK(pairs == 3);
    CHECK(m.gamma.size() == 6);
    CHECK(m.quantum.size() == 6);
    for (const auto& [name, op] : m.quantum) {
      for (const auto& stage : op.stages) {
        CHECK_MESSAGE(validate_kraus(stage).classification == KrausClass::TracePreserving, name);
      }
    }
    // The shipped file is the same model.
    CHECK(load_spec_file(QACP_DATA_DIR "/bb84.qacp").fingerprint() == m.fingerprint());
  }

  TEST_CASE("terms over the BB84 model") {
    const Model m = build_bb84(1);
    const TermPtr t = parse_term("tau{I}(encap{H}(A || B))", m);
    REQUIRE(t->kind() == TermKind::Abstract);
    CHECK(t->actions() == make_action_set(m.action_sets.at("I")));
    const TermPtr e = t->body();
    REQUIRE(e->kind() == TermKind::Encap);
    CHECK(e->actions().size() == 6);
    REQUIRE(e->body()->kind() == TermKind::Merge);
    CHECK(e->body()->left()->kind() == TermKind::RecVar);
    CHECK(e->body()->left()->name() == "A");
    CHECK(e->body()->right()->name() == "B");
    CHECK(parse_term("M[q;K_b] . cmp(K_{a,b},K_a,K_b,B_a,B_b)", m)->left()->kind() ==
          TermKind::QuantumAction);
  }

  TEST_CASE("basic term shapes") {
    const TermPtr aa = T("a + a");
    CHECK(aa->kind() == TermKind::Alt);
    CHECK(aa->left()->name() == "a");
    CHECK_FALSE(structurally_equal(T("(a . b) . c"), T("a . (b . c)")));
    CHECK(structurally_equal(T("a . b . c"), T("a . (b . c)")));
    CHECK(T("a + b . c")->kind() == TermKind::Alt);
    CHECK(T("a || b + c")->kind() == TermKind::Alt);
    CHECK(T("a . b || c")->kind() == TermKind::Merge);
    CHECK(T("h")->kind() == TermKind::QuantumAction);
    CHECK(T("X")->kind() == TermKind::RecVar);
    CHECK(T("tau")->kind() == TermKind::Silent);
    CHECK(T("delta")->kind() == TermKind::Deadlock);
  }

  TEST_CASE("formatting") {
    CHECK(format_term(T("a + b")) == "a + b");
    CHECK(format_term(Term::deadlock()) == "delta");
    CHECK(format_term(Term::encap(make_action_set({"a"}), T("a . b"))) == "encap{a}(a . b)");
    CHECK(format_term(T("(a . b) . c")) == "(a . b) . c");
    CHECK(format_term(T("(a + b) . c")) == "(a + b) . c");
    CHECK(format_term(T("(a || b) || c")) == "(a || b) || c");
    CHECK(format_term(T("a | (b |_ c)")) == "a | (b |_ c)");
    CHECK(format_term(T("rename{a -> b}(tau{k}(a))")) == "rename{a -> b}(tau{k}(a))");
  }

  TEST_CASE("parse(format(t)) is t for random terms") {
    test::Rng rng(17);
    for (System s : {System::Bqpa, System::Qpap, System::Aqcp, System::AqcpTau}) {
      for (int i = 0; i < 300; ++i) {
        const TermPtr t = test::random_term(rng, s, 6);
        const std::string text = format_term(t);
        CHECK_MESSAGE(structurally_equal(T(text), t), text);
      }
    }
  }

  TEST_CASE("term errors") {
    CHECK_THROWS_AS(T("a +"), SyntaxError);
    CHECK_THROWS_AS(T("a b"), SyntaxError);
    CHECK_THROWS_AS(T("a || b |_ c"), SyntaxError);
    CHECK_THROWS_AS(T("(a"), SyntaxError);
    try {
      T("a + zz");
      FAIL("expected UndeclaredAction");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::UndeclaredAction);
    }
    try {
      T("encap{zz}(a)");
      FAIL("expected UndeclaredAction");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::UndeclaredAction);
    }
    try {
      T("rename{a -> h}(a)");
      FAIL("expected InvalidArgument");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::InvalidArgument);
    }
  }

  TEST_CASE("syntax errors carry positions") {
    try {
      parse_spec("registers { q; }\nactions {\n  quantum h = H on q\n}\n");
      FAIL("expected SyntaxError");
    } catch (const SyntaxError& e) {
      CHECK(e.line() == 4);
      CHECK(e.column() == 1);
    }
  }

  TEST_CASE("model validation errors") {
    const std::string q = kQubit;
    CHECK(kind_of(q + "actions { classical a; }\nspec S { X = a . Y; }\n") ==
          ErrorKind::UndeclaredAction);
    CHECK(kind_of(q + "actions { quantum m = [[1, 0]] on q; }\n") == ErrorKind::NonSquareKraus);
    CHECK(kind_of(q + "actions { quantum m = kraus { [[0.5, 0], [0, 0.5]] } on q; }\n") ==
          ErrorKind::InvalidKraus);
    CHECK(kind_of(q + "actions { quantum m = CNOT on q; }\n") == ErrorKind::RegisterMismatch);
    CHECK(kind_of(q + "actions { classical a; }\nspec S { X = X + a; }\n") ==
          ErrorKind::UnguardedRecursion);
    CHECK(kind_of(q + "actions { classical a; }\nspec S { X = Y; Y = a . X + X; }\n") ==
          ErrorKind::UnguardedRecursion);
    CHECK(kind_of(q + "actions { quantum h = H on q; classical a, c; }\ngamma { h | a -> c; }\n") ==
          ErrorKind::GammaOnQuantumAction);
    CHECK(kind_of(q + "actions { classical a; classical a; }\n") == ErrorKind::DuplicateDeclaration);
    CHECK(kind_of(q + "actions { classical a; }\nspec S { X = a; }\nspec R { X = a; }\n") ==
          ErrorKind::DuplicateDeclaration);
    CHECK(kind_of(q + "actions { classical a, b, c, d; }\ngamma { a | b -> c; b | a -> d; }\n") ==
          ErrorKind::DuplicateDeclaration);
    std::string big = "registers {";
    for (int i = 0; i < 11; ++i) big += " q" + std::to_string(i) + ";";
    CHECK(kind_of(big + " }\n") == ErrorKind::DimensionCap);
    CHECK(kind_of("registers { q; }\nfrobnicate { }\n") == ErrorKind::SyntaxError);
    CHECK(kind_of(q + "actions { quantum m = warp on q; }\n") == ErrorKind::SyntaxError);
    CHECK(kind_of(q + "actions { classical a; }\nset S = {a, zz};\n") == ErrorKind::UndeclaredAction);
  }

  TEST_CASE("matrix literals and complex arithmetic") {
    const Model m = parse_spec(std::string(kQubit) +
                               "actions {\n"
                               "  quantum had = [[1/sqrt(2), 1/sqrt(2)], [1/sqrt(2), -1/sqrt(2)]] on q;\n"
                               "  quantum y = [[0, -i], [1i, 0]] on q;\n"
                               "  quantum both = H on q then Y on q;\n"
                               "}\n");
    const Matrix& had = m.quantum.at("had").stages.at(0).operators.at(0);
    CHECK((had - builtin_kraus("H", 2)->operators[0]).cwiseAbs().maxCoeff() < 1e-15);
    const Matrix& y = m.quantum.at("y").stages.at(0).operators.at(0);
    CHECK((y - builtin_kraus("Y", 2)->operators[0]).cwiseAbs().maxCoeff() < 1e-15);
    CHECK(m.quantum.at("both").stages.size() == 2);
  }

  TEST_CASE("initial states") {
    const Model m = parse_spec("registers { q; r : 3 private; }\n"
                               "actions { quantum x = X on q; }\n"
                               "init { r = 2; apply x; }\n");
    const QuantumState& s = m.initial_state();
    CHECK(s.dimension() == 6);
    CHECK(std::abs(s.matrix()(5, 5) - 1.0) < 1e-12);  // |1>|2>
    const Model e = parse_spec("registers { q; }\ninit = [[0.5, 0.5], [0.5, 0.5]];\n");
    CHECK(std::abs(e.initial_state().matrix()(0, 1) - 0.5) < 1e-12);
    CHECK(kind_of("registers { q; }\ninit = [[1, 0], [0, 1]];\n") == ErrorKind::NonPhysicalResult);
  }

  TEST_CASE("write_spec round trip") {
    for (const Model* m : {&test::test_model()}) {
      const Model again = parse_spec(write_spec(*m));
      CHECK(again.fingerprint() == m->fingerprint());
      CHECK(write_spec(again) == write_spec(*m));
    }
    const Model b = build_bb84(1);
    CHECK(parse_spec(write_spec(b)).fingerprint() == b.fingerprint());
  }

  TEST_CASE("linearity flag") {
    const Model& m = test::test_model();
    CHECK(is_linear(*m.find_spec("Loop")));
    CHECK(is_linear(*m.find_spec("Pair")));
    CHECK(is_linear(*build_bb84(1).find_spec("Alice")));
    RecursiveSpec s{"S", {{"X", T("a . b . X")}}};
    CHECK_FALSE(is_linear(s));
  }

  TEST_CASE("missing file") {
    try {
      load_spec_file("/nonexistent/model.qacp");
      FAIL("expected IoError");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::IoError);
    }
  }
}
