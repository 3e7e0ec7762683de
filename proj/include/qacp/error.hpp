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
#include <stdexcept>
#include <string>
#include <string_view>

namespace qacp {

enum class ErrorKind {
  SyntaxError,
  UndeclaredAction,
  NonSquareKraus,
  InvalidKraus,
  UnguardedRecursion,
  GammaOnQuantumAction,
  DuplicateDeclaration,
  DimensionCap,
  NonPhysicalResult,
  RegisterMismatch,
  HiddenActionDisturbsPublicState,
  StateSpaceExceeded,
  DepthExceeded,
  ModelMismatch,
  TauDivergence,
  SpecNotLinear,
  BudgetExceeded,
  OperatorNotEliminable,
  UnboundVariable,
  InvalidJob,
  InvalidArgument,
  IoError,
};

std::string_view error_name(ErrorKind kind);

/// Every failure raised by the toolkit. The kind name is what the CLI
/// reports in its JSON payload.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }
  std::string_view name() const noexcept { return error_name(kind_); }

 private:
  ErrorKind kind_;
};

class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t line, std::size_t column, const std::string& message);

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace qacp
