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

#include "qacp/bb84.hpp"
#include "qacp/error.hpp"
#include "qacp/lts.hpp"
#include "qacp/syntax.hpp"
#include "qacp/verify.hpp"
#include "test_model.hpp"

using namespace qacp;
using qacp::test::T;

namespace {

ErrorKind kind_of_job(const VerificationJob& job, const Model& m) {
  try {
    check_external_behavior(job, m);
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("job ran without error");
  return ErrorKind::IoError;
}

// Structural part of a graph: labels and termination, observations dropped.
Lts structure(const Lts& g) {
  Lts s = g;
  s.model_id.clear();
  for (auto& t : s.termination) {
    if (t) t = std::string();
  }
  return s;
}

}  // namespace

TEST_SUITE("verify") {
  TEST_CASE("reflexivity") {
    VerificationJob job;
    job.impl = T("X");
    job.spec = T("X");
    const VerificationResult r = check_external_behavior(job, test::test_model());
    CHECK(r.verdict.related);
    CHECK(r.implementation.size == 1);
  }

  TEST_CASE("hiding a communication partner") {
    VerificationJob job;
    job.impl = T("a . c || b");
    job.spec = T("c . c");
    job.hide = make_action_set({"a", "b"});
    job.mode = Mode::RootedBranching;
    CHECK(check_external_behavior(job, test::test_model()).verdict.related);
    job.spec = T("c");
    CHECK_FALSE(check_external_behavior(job, test::test_model()).verdict.related);
  }

  TEST_CASE("job validation") {
    const Model& m = test::test_model();
    VerificationJob job;
    job.impl = T("a . h");
    job.spec = T("h");
    job.hide = make_action_set({"h"});
    CHECK(kind_of_job(job, m) == ErrorKind::InvalidJob);
    job.hide = make_action_set({"a"});
    job.spec = T("a");
    CHECK(kind_of_job(job, m) == ErrorKind::InvalidJob);
    job.hide = {};
    job.internal = make_action_set({"a"});
    job.spec = T("X");  // X = a . X uses a
    CHECK(kind_of_job(job, m) == ErrorKind::InvalidJob);
  }

  TEST_CASE("errors from the pipeline") {
    const Model& m = test::test_model();
    VerificationJob job;
    job.impl = T("X");
    job.spec = T("tau");
    job.internal = make_action_set({"a"});
    CHECK(kind_of_job(job, m) == ErrorKind::TauDivergence);
    job.impl = T("h");
    job.internal = make_action_set({"h"});
    job.spec = T("tau");
    CHECK(kind_of_job(job, m) == ErrorKind::HiddenActionDisturbsPublicState);
  }

  TEST_CASE("BB84 model") {
    const Model m = build_bb84(1);
    for (const auto& r : m.registers) CHECK_FALSE(r.is_public);
    // With no public register every hidden action is silent on the
    // observable state.
    CHECK(public_part(m.initial_state()).dimension() == 1);
    // The initial state is what one round leaves behind.
    QuantumState s = m.initial_state();
    for (const char* a : {"Rand[q;B_a]", "Rand[q;K_a]", "Set_{K_a}[q]", "H_{B_a}[q]",
                          "Rand[q';B_b]", "M[q;K_b]"}) {
      s = apply_operation(s, m.quantum.at(a));
    }
    CHECK(trace_distance(s, m.initial_state()) < 1e-12);
    try {
      build_bb84(3);
      FAIL("expected DimensionCap");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::DimensionCap);
    }
  }

  TEST_CASE("BB84 structure does not depend on the qubit count") {
    const Model one = build_bb84(1);
    const Model two = build_bb84(2);
    const Lts g1 = to_lts(build_graph(*one.named_term("impl"), one));
    const Lts g2 = to_lts(build_graph(*two.named_term("impl"), two));
    CHECK(g1.size == g2.size);
    CHECK(isomorphic(structure(g1), structure(g2)));
  }

  TEST_CASE("BB84: Alice may start the next round before Bob outputs") {
    // A8 || B5 can do cmp on either side; after Alice's cmp she is back at A
    // and may accept a new input while Bob still owes cmp and send_B.
    const Model m = build_bb84(1);
    const ConfigGraph g = build_graph(*m.named_term("impl"), m);
    bool overlap = false;
    for (const auto& n : g.nodes) {
      overlap = overlap || (n.term && format_term(n.term).find("(A1 || B5)") != std::string::npos);
    }
    CHECK(overlap);
  }

  TEST_CASE("BB84 with a broken channel") {
    Model m = build_bb84(1);
    m.gamma.erase({"send_Q(q)", "receive_Q(q)"});
    m.gamma.erase({"receive_Q(q)", "send_Q(q)"});
    m.finalize();
    const VerificationResult r = check_external_behavior(bb84_job(m), m);
    CHECK_FALSE(r.verdict.related);
    REQUIRE_FALSE(r.verdict.counterexample.empty());
    CHECK(r.verdict.counterexample == std::vector<std::string>{"receive_A(d)", "send_B(d)"});
    // After receive_A nothing but a silent prefix and a deadlock remain.
    CHECK(r.implementation.size == 2);
  }
}
