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
#include <functional>
#include <string>
#include <vector>

#include "qacp/lexer.hpp"
#include "qacp/term.hpp"

namespace qacp::detail {

/// Maps an identifier token to an action or variable leaf.
using IdentResolver = std::function<TermPtr(const Token&)>;
/// Checks that an id may appear in an operator set or renaming.
using ActionCheck = std::function<void(const Token&)>;
/// Members of a named action set, or nullptr if the id names none.
using SetLookup = std::function<const std::vector<std::string>*(const std::string&)>;

class TermParser {
 public:
  TermParser(const std::vector<Token>& tokens, std::size_t pos, IdentResolver resolve,
             ActionCheck check_action, SetLookup lookup_set = nullptr);

  TermPtr parse_sum();
  std::size_t position() const { return pos_; }

 private:
  TermPtr parse_merge();
  TermPtr parse_seq();
  TermPtr parse_unary();
  ActionSet parse_id_set();
  RenameMap parse_renaming();
  TermPtr parse_parenthesized();

  const Token& peek() const { return tokens_[pos_]; }
  const Token& expect(TokenKind kind, const char* what);
  bool accept(TokenKind kind);

  const std::vector<Token>& tokens_;
  std::size_t pos_;
  IdentResolver resolve_;
  ActionCheck check_action_;
  SetLookup lookup_set_;
};

[[noreturn]] void syntax_fail(const Token& at, const std::string& message);

}  // namespace qacp::detail
