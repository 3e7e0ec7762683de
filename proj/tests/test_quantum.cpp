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
#include <random>

#include "qacp/error.hpp"
#include "qacp/quantum.hpp"

using namespace qacp;

namespace {

const std::vector<Register> kOne{{"q", 2, true}};
const std::vector<Register> kTwo{{"q", 2, true}, {"r", 2, false}};

QuantumState pure(const std::vector<Register>& regs, const Eigen::VectorXcd& psi) {
  return QuantumState(regs, psi * psi.adjoint());
}

KrausSet gate(const char* name, std::size_t d, std::vector<std::string> on) {
  KrausSet k = *builtin_kraus(name, d);
  k.acts_on = std::move(on);
  return k;
}

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

// Haar-ish unitary from the QR factor of a Gaussian matrix.
Matrix random_unitary(std::mt19937_64& rng, int d) {
  std::normal_distribution<double> g;
  Matrix a(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) a(i, j) = Complex(g(rng), g(rng));
  }
  Eigen::HouseholderQR<Matrix> qr(a);
  return qr.householderQ() * Matrix::Identity(d, d);
}

QuantumState random_state(std::mt19937_64& rng, const std::vector<Register>& regs) {
  const int d = static_cast<int>(total_dimension(regs));
  std::normal_distribution<double> g;
  Matrix a(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) a(i, j) = Complex(g(rng), g(rng));
  }
  Matrix rho = a * a.adjoint();
  rho /= rho.trace().real();
  return QuantumState(regs, rho);
}

// Trace-preserving set: blocks of a random isometry d -> m*d.
KrausSet random_channel(std::mt19937_64& rng, int d, int m, std::vector<std::string> on) {
  const Matrix u = random_unitary(rng, d * m);
  KrausSet k;
  k.acts_on = std::move(on);
  for (int i = 0; i < m; ++i) k.operators.push_back(u.block(i * d, 0, d, d));
  return k;
}

}  // namespace

TEST_SUITE("quantum") {
  TEST_CASE("hadamard on |0><0| matches hand multiplication") {
    const QuantumState s = QuantumState::basis(kOne, {0});
    const QuantumState out = apply_operation(s, gate("H", 2, {"q"}));
    // H|0> = (|0> + |1>)/sqrt2, so every entry of the projector is 1/2.
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) CHECK(std::abs(out.matrix()(i, j) - Complex(0.5, 0)) < 1e-12);
    }
  }

  TEST_CASE("identity set leaves the state alone") {
    std::mt19937_64 rng(7);
    const QuantumState s = random_state(rng, kTwo);
    const KrausSet id = gate("I", 2, {"r"});
    CHECK(trace_distance(apply_operation(s, id), s) < 1e-12);
  }

  TEST_CASE("full measurement dephases |+><+|") {
    Eigen::VectorXcd plus(2);
    plus << 1 / std::sqrt(2.0), 1 / std::sqrt(2.0);
    const QuantumState out = apply_operation(pure(kOne, plus), gate("measure", 2, {"q"}));
    CHECK(std::abs(out.matrix()(0, 0) - 0.5) < 1e-12);
    CHECK(std::abs(out.matrix()(1, 1) - 0.5) < 1e-12);
    CHECK(std::abs(out.matrix()(0, 1)) < 1e-12);
    CHECK(std::abs(out.matrix()(1, 0)) < 1e-12);
  }

  TEST_CASE("validate_kraus classifications") {
    const KrausReport h = validate_kraus(*builtin_kraus("H", 2));
    CHECK(h.classification == KrausClass::TracePreserving);
    CHECK(h.deviation < 1e-12);

    KrausSet halves;
    halves.operators = {Matrix::Identity(2, 2) * 0.5, Matrix::Identity(2, 2) * 0.5};
    halves.trace_preserving = true;
    const KrausReport r = validate_kraus(halves);
    CHECK(r.classification == KrausClass::TraceNonIncreasing);
    CHECK(r.declared_mismatch);
    CHECK_FALSE(r.ok());
    CHECK(std::abs(r.deviation - 0.5) < 1e-12);

    KrausSet blown;
    blown.operators = {Matrix::Identity(2, 2) * 2.0};
    CHECK(validate_kraus(blown).classification == KrausClass::Invalid);

    KrausSet proj;
    Matrix p0 = Matrix::Zero(2, 2), p1 = Matrix::Zero(2, 2);
    p0(0, 0) = 1;
    p1(1, 1) = 1;
    proj.operators = {p0, p1};
    CHECK(validate_kraus(proj).classification == KrausClass::TracePreserving);

    KrausSet ragged;
    ragged.operators = {Matrix::Identity(2, 2), Matrix::Identity(4, 4)};
    CHECK(validate_kraus(ragged).classification == KrausClass::Invalid);
  }

  TEST_CASE("trace distance examples") {
    const QuantumState z = QuantumState::basis(kOne, {0});
    const QuantumState o = QuantumState::basis(kOne, {1});
    Eigen::VectorXcd plus(2);
    plus << 1 / std::sqrt(2.0), 1 / std::sqrt(2.0);
    CHECK(trace_distance(z, z) < 1e-15);
    CHECK(std::abs(trace_distance(z, o) - 1.0) < 1e-12);
    // Difference [[1/2,-1/2],[-1/2,-1/2]] has eigenvalues +-1/sqrt2.
    CHECK(std::abs(trace_distance(z, pure(kOne, plus)) - std::sqrt(0.5)) < 1e-12);
    CHECK_THROWS_AS(trace_distance(z, QuantumState::basis(kTwo, {0, 0})), Error);
  }

  TEST_CASE("partial trace examples") {
    const QuantumState prod = QuantumState::basis(kTwo, {0, 1});
    const QuantumState kept = partial_trace(prod, {"q"});
    CHECK(kept.dimension() == 2);
    CHECK(std::abs(kept.matrix()(0, 0) - 1.0) < 1e-12);

    Eigen::VectorXcd bell = Eigen::VectorXcd::Zero(4);
    bell(0) = bell(3) = 1 / std::sqrt(2.0);
    const QuantumState half = partial_trace(pure(kTwo, bell), {"q"});
    CHECK(max_abs(half.matrix() - Matrix::Identity(2, 2) * 0.5) < 1e-12);

    std::mt19937_64 rng(3);
    const QuantumState s = random_state(rng, kTwo);
    CHECK(max_abs(partial_trace(s, {"q", "r"}).matrix() - s.matrix()) < 1e-15);
    CHECK_THROWS_AS(partial_trace(s, {"nope"}), Error);

    // Keeping the second factor: contract over q by hand.
    const QuantumState rr = partial_trace(s, {"r"});
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) {
        const Complex want = s.matrix()(a, b) + s.matrix()(2 + a, 2 + b);
        CHECK(std::abs(rr.matrix()(a, b) - want) < 1e-12);
      }
    }
  }

  TEST_CASE("public part drops private registers") {
    const QuantumState s = QuantumState::basis(kTwo, {1, 0});
    const QuantumState pub = public_part(s);
    CHECK(pub.registers().size() == 1);
    CHECK(std::abs(pub.matrix()(1, 1) - 1.0) < 1e-12);
    const QuantumState none = public_part(QuantumState::basis({{"r", 2, false}}, {0}));
    CHECK(none.dimension() == 1);
  }

  TEST_CASE("state keys") {
    const QuantumState z = QuantumState::basis(kOne, {0});
    Matrix m = z.matrix();
    m(0, 0) += 1e-12;
    CHECK(state_key(z) == state_key(QuantumState(kOne, m)));
    CHECK(same_key(z, QuantumState(kOne, m)));
    CHECK(state_key(z) != state_key(QuantumState::basis(kOne, {1})));
    std::mt19937_64 rng(11);
    const QuantumState s = random_state(rng, kOne);
    const KrausSet h = gate("H", 2, {"q"});
    CHECK(state_key(apply_operation(apply_operation(s, h), h)) == state_key(s));
    CHECK(state_digest(apply_operation(apply_operation(s, h), h)) == state_digest(s));
  }

  TEST_CASE("random trace-preserving maps keep states physical") {
    std::mt19937_64 rng(2024);
    for (int i = 0; i < 100; ++i) {
      const QuantumState s = random_state(rng, kTwo);
      const KrausSet k = random_channel(rng, 2, 1 + static_cast<int>(rng() % 3), {"r"});
      CHECK(validate_kraus(k).classification == KrausClass::TracePreserving);
      const StateReport rep = check_state(apply_operation(s, k));
      CHECK(rep.valid());
      // Private-only maps never move the public marginal.
      CHECK(trace_distance(public_part(apply_operation(s, k)), public_part(s)) <= 1e-9);
    }
  }

  TEST_CASE("composition is associative") {
    std::mt19937_64 rng(99);
    for (int i = 0; i < 20; ++i) {
      const QuantumState s = random_state(rng, kTwo);
      const KrausSet a = random_channel(rng, 2, 2, {"q"});
      const KrausSet b = random_channel(rng, 4, 1, {"q", "r"});
      const KrausSet c = random_channel(rng, 2, 2, {"r"});
      const QuantumState step = apply_operation(apply_operation(apply_operation(s, a), b), c);
      const QuantumState left = apply_operation(s, compose(compose(a, b, kTwo), c, kTwo));
      const QuantumState right = apply_operation(s, compose(a, compose(b, c, kTwo), kTwo));
      CHECK(trace_distance(step, left) <= 1e-9);
      CHECK(trace_distance(left, right) <= 1e-9);
    }
  }

  TEST_CASE("embedding respects register order") {
    // CNOT with control r, target q flips q only when r = 1.
    const KrausSet cnot = gate("CNOT", 4, {"r", "q"});
    const QuantumState out = apply_operation(QuantumState::basis(kTwo, {0, 1}), cnot);
    CHECK(std::abs(out.matrix()(3, 3) - 1.0) < 1e-12);  // |1 1>
    const QuantumState still = apply_operation(QuantumState::basis(kTwo, {1, 0}), cnot);
    CHECK(std::abs(still.matrix()(2, 2) - 1.0) < 1e-12);  // |1 0>
  }

  TEST_CASE("builtins are complete") {
    for (const auto& name : builtin_names()) {
      for (std::size_t d : {2u, 3u, 4u}) {
        auto k = builtin_kraus(name, d);
        if (!k) continue;
        CHECK_MESSAGE(validate_kraus(*k).deviation <= 1e-9, name);
      }
    }
    CHECK_FALSE(builtin_kraus("H", 3).has_value());
    CHECK_FALSE(builtin_kraus("nope", 2).has_value());
  }

  TEST_CASE("application errors") {
    const QuantumState s = QuantumState::basis(kOne, {0});
    KrausSet h = *builtin_kraus("H", 2);
    h.acts_on = {"zz"};
    CHECK_THROWS_WITH_AS(apply_operation(s, h), doctest::Contains("zz"), Error);
    KrausSet lossy;
    lossy.operators = {Matrix::Identity(2, 2) * 0.5};
    lossy.acts_on = {"q"};
    try {
      apply_operation(s, lossy);
      FAIL("expected NonPhysicalResult");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::NonPhysicalResult);
    }
  }
}
