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

#include "qacp/error.hpp"

namespace qacp {

std::string_view error_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::UndeclaredAction: return "UndeclaredAction";
    case ErrorKind::NonSquareKraus: return "NonSquareKraus";
    case ErrorKind::InvalidKraus: return "InvalidKraus";
    case ErrorKind::UnguardedRecursion: return "UnguardedRecursion";
    case ErrorKind::GammaOnQuantumAction: return "GammaOnQuantumAction";
    case ErrorKind::DuplicateDeclaration: return "DuplicateDeclaration";
    case ErrorKind::DimensionCap: return "DimensionCap";
    case ErrorKind::NonPhysicalResult: return "NonPhysicalResult";
    case ErrorKind::RegisterMismatch: return "RegisterMismatch";
    case ErrorKind::HiddenActionDisturbsPublicState: return "HiddenActionDisturbsPublicState";
    case ErrorKind::StateSpaceExceeded: return "StateSpaceExceeded";
    case ErrorKind::DepthExceeded: return "DepthExceeded";
    case ErrorKind::ModelMismatch: return "ModelMismatch";
    case ErrorKind::TauDivergence: return "TauDivergence";
    case ErrorKind::SpecNotLinear: return "SpecNotLinear";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::OperatorNotEliminable: return "OperatorNotEliminable";
    case ErrorKind::UnboundVariable: return "UnboundVariable";
    case ErrorKind::InvalidJob: return "InvalidJob";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::IoError: return "IoError";
  }
  return "Error";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(message), kind_(kind) {}

SyntaxError::SyntaxError(std::size_t line, std::size_t column, const std::string& message)
    : Error(ErrorKind::SyntaxError,
            std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

}  // namespace qacp
