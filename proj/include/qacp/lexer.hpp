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
#include <string_view>
#include <vector>

namespace qacp {

enum class TokenKind {
  Ident,
  Number,
  LParen,
  RParen,
  LBrace,
  RBrace,
  LBracket,
  RBracket,
  Comma,
  Semicolon,
  Colon,
  Equals,
  Plus,
  Minus,
  Star,
  Slash,
  Dot,
  Bar,
  BarBar,
  LeftMergeOp,
  Arrow,
  End,
};

std::string_view token_name(TokenKind kind);

struct Token {
  TokenKind kind = TokenKind::End;
  std::string text;
  /// Number literal carried an 'i' suffix.
  bool imaginary = false;
  std::size_t line = 1;
  std::size_t column = 1;
};

/// Splits source text into tokens. Identifiers may carry attached
/// argument groups: `name(...)`, `name[...]` and, after an underscore,
/// `name_{...}`. Whitespace inside a group is dropped so that
/// `cmp(a, b)` and `cmp(a,b)` name the same action.
std::vector<Token> tokenize(std::string_view text);

bool is_reserved_word(std::string_view word);

}  // namespace qacp
