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

#include <cstddef>
#include <string>
#include <vector>

#include "qacp/model.hpp"
#include "qacp/verify.hpp"

namespace qacp {

struct Bb84Options {
  /// Data items accepted on channel A and emitted on channel B.
  std::vector<std::string> inputs{"d"};
  std::vector<std::string> outputs{"d"};
};

/// Model text for n qubits: registers q, Ba, Ka, Bb, Kb per qubit (all
/// private), the six quantum actions, Alice, Bob, the external loop X, the
/// action sets H and I, and the terms impl and system.
std::string bb84_source(std::size_t qubits, const Bb84Options& options = {});

/// Parsed and validated; DimensionCap once 5n qubits exceed the cap.
Model build_bb84(std::size_t qubits, const Bb84Options& options = {});

/// tau{I}(encap{H}(A || B)) against X in rooted-branching mode.
VerificationJob bb84_job(const Model& model);

}  // namespace qacp
