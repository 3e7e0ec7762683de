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

#include "qacp/equivalence.hpp"
#include "qacp/lts.hpp"
#include "qacp/model.hpp"
#include "qacp/semantics.hpp"

namespace qacp {

/// Checks tau{internal}(encap{hide}(impl)) against spec.
struct VerificationJob {
  TermPtr impl;
  /// A term, usually the first variable of a recursive specification.
  TermPtr spec;
  ActionSet hide;
  ActionSet internal;
  Mode mode = Mode::RootedBranching;
  GraphLimits limits;
  double public_tolerance = kPublicStateTolerance;
};

struct VerificationResult {
  Verdict verdict;
  /// Branching-minimized graph of the abstracted implementation.
  Lts implementation;
  Lts specification;
  /// Size of the unminimized implementation graph.
  std::size_t explored_states = 0;
};

/// Throws InvalidJob when hide is not classical or the spec mentions a
/// hidden or internal label.
void validate_job(const VerificationJob& job, const Model& model);

VerificationResult check_external_behavior(const VerificationJob& job, const Model& model);

}  // namespace qacp
