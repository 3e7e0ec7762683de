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
#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace qacp {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

/// Physicality tolerance for states and Kraus completeness.
inline constexpr double kPhysicalTolerance = 1e-9;
/// Rounding grain of state keys.
inline constexpr double kKeyGrain = 1e-6;
/// How far a hidden action may move the public reduced state.
inline constexpr double kPublicStateTolerance = 1e-6;
/// Output trace deviation that makes a Kraus application non-physical.
inline constexpr double kTraceLossTolerance = 1e-6;
/// Largest total Hilbert-space dimension a model may declare.
inline constexpr std::size_t kMaxDimension = 1024;

struct Register {
  std::string name;
  std::size_t dim = 2;
  bool is_public = true;

  friend bool operator==(const Register&, const Register&) = default;
};

std::size_t total_dimension(const std::vector<Register>& registers);

/// Density matrix over an ordered register list. Register 0 is the most
/// significant tensor factor.
class QuantumState {
 public:
  QuantumState(std::vector<Register> registers, Matrix matrix);

  /// Product of computational basis kets, one digit per register.
  static QuantumState basis(std::vector<Register> registers, const std::vector<std::size_t>& digits);

  const std::vector<Register>& registers() const noexcept { return registers_; }
  const Matrix& matrix() const noexcept { return matrix_; }
  std::size_t dimension() const noexcept { return static_cast<std::size_t>(matrix_.rows()); }
  std::optional<std::size_t> register_index(const std::string& name) const;
  std::vector<std::string> public_registers() const;

 private:
  std::vector<Register> registers_;
  Matrix matrix_;
};

struct StateReport {
  double hermiticity_error = 0.0;
  double min_eigenvalue = 0.0;
  double trace_error = 0.0;

  bool valid(double tolerance = kPhysicalTolerance) const {
    return hermiticity_error <= tolerance && min_eigenvalue >= -tolerance &&
           trace_error <= tolerance;
  }
};

StateReport check_state(const QuantumState& state);

/// Kraus operators acting on an ordered subset of registers. The first
/// register in acts_on is the most significant factor of each operator.
struct KrausSet {
  std::vector<Matrix> operators;
  std::vector<std::string> acts_on;
  bool trace_preserving = true;
  /// Builtin name the set was constructed from, empty for literal matrices.
  std::string origin;
};

/// A quantum action's semantics: Kraus sets applied in order.
struct QuantumOperation {
  std::vector<KrausSet> stages;
};

enum class KrausClass { TracePreserving, TraceNonIncreasing, Invalid };

struct KrausReport {
  KrausClass classification = KrausClass::Invalid;
  /// max |(sum_k K_k^dagger K_k - I)_ij|
  double deviation = 0.0;
  double max_eigenvalue = 0.0;
  bool declared_mismatch = false;
  std::string message;

  bool ok() const { return classification != KrausClass::Invalid && !declared_mismatch; }
};

KrausReport validate_kraus(const KrausSet& op);

/// sum_k K_k rho K_k^dagger with each K_k embedded on acts_on.
/// Throws RegisterMismatch or NonPhysicalResult.
QuantumState apply_operation(const QuantumState& state, const KrausSet& op);
QuantumState apply_operation(const QuantumState& state, const QuantumOperation& op);

/// Half the trace norm of a - b.
double trace_distance(const QuantumState& a, const QuantumState& b);

/// Reduced state on keep, registers kept in their original order.
QuantumState partial_trace(const QuantumState& state, const std::vector<std::string>& keep);
/// Reduced state on the public registers; 1x1 when none are public.
QuantumState public_part(const QuantumState& state);

/// Canonical key from entries rounded to kKeyGrain.
std::string state_key(const QuantumState& state);

struct StateDigest {
  std::uint64_t hi = 0;
  std::uint64_t lo = 0;
  friend bool operator==(const StateDigest&, const StateDigest&) = default;
};
/// Hash of the same rounded entries state_key encodes.
StateDigest state_digest(const QuantumState& state);
/// True iff state_key(a) == state_key(b), without materializing the keys.
bool same_key(const QuantumState& a, const QuantumState& b);

/// Matrix of op on acts_on lifted to the full register list.
Matrix embed(const Matrix& op, const std::vector<std::string>& acts_on,
             const std::vector<Register>& registers);

/// Kraus set of "first, then second" on the union of their registers.
KrausSet compose(const KrausSet& first, const KrausSet& second,
                 const std::vector<Register>& registers);

/// Builtin Kraus sets: I X Y Z H S T (one qubit), CNOT CZ CH SWAP (two
/// qubits, control first), measure, reset, randomize (any dimension).
std::optional<KrausSet> builtin_kraus(const std::string& name, std::size_t dimension);
std::vector<std::string> builtin_names();

}  // namespace qacp
