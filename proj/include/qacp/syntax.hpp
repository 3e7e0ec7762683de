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

#include <string>
#include <string_view>

#include "qacp/model.hpp"
#include "qacp/term.hpp"

namespace qacp {

/// Binary operators associate to the right. Precedence from loosest to
/// tightest: `+`, the merge family (`||`, `|_`, `|`), `.`, then unary
/// operators and atoms. Different merge operators cannot be chained without
/// parentheses.
TermPtr parse_term(std::string_view text, const Model& model);

/// Inverse of parse_term with the fewest parentheses the grammar needs.
std::string format_term(const TermPtr& term);

Model parse_spec(std::string_view text);
Model load_spec_file(const std::string& path);

/// Serializes a finalized model in the model file grammar.
std::string write_spec(const Model& model);

}  // namespace qacp
