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
#include "term_parser.hpp"

#include "qacp/error.hpp"
#include "qacp/syntax.hpp"

namespace qacp {
namespace detail {

void syntax_fail(const Token& at, const std::string& message) {
  throw SyntaxError(at.line, at.column, message);
}

TermParser::TermParser(const std::vector<Token>& tokens, std::size_t pos, IdentResolver resolve,
                       ActionCheck check_action, SetLookup lookup_set)
    : tokens_(tokens),
      pos_(pos),
      resolve_(std::move(resolve)),
      check_action_(std::move(check_action)),
      lookup_set_(std::move(lookup_set)) {}

const Token& TermParser::expect(TokenKind kind, const char* what) {
  const Token& t = peek();
  if (t.kind != kind) {
    syntax_fail(t, std::string("expected ") + what + ", found " +
                       (t.kind == TokenKind::End ? std::string("end of input")
                                                 : "'" + t.text + "'"));
  }
  ++pos_;
  return t;
}

bool TermParser::accept(TokenKind kind) {
  if (peek().kind != kind) return false;
  ++pos_;
  return true;
}

TermPtr TermParser::parse_sum() {
  TermPtr left = parse_merge();
  if (accept(TokenKind::Plus)) return Term::alt(left, parse_sum());
  return left;
}

TermPtr TermParser::parse_merge() {
  TermPtr first = parse_seq();
  auto op_kind = [](TokenKind k) -> std::optional<TermKind> {
    if (k == TokenKind::BarBar) return TermKind::Merge;
    if (k == TokenKind::LeftMergeOp) return TermKind::LeftMerge;
    if (k == TokenKind::Bar) return TermKind::CommMerge;
    return std::nullopt;
  };
  auto kind = op_kind(peek().kind);
  if (!kind) return first;
  std::vector<TermPtr> operands{first};
  while (auto k = op_kind(peek().kind)) {
    if (*k != *kind) {
      syntax_fail(peek(), "mixing '" + peek().text +
                              "' with another merge operator requires parentheses");
    }
    ++pos_;
    operands.push_back(parse_seq());
  }
  TermPtr acc = operands.back();
  for (std::size_t i = operands.size() - 1; i-- > 0;) acc = Term::binary(*kind, operands[i], acc);
  return acc;
}

TermPtr TermParser::parse_seq() {
  TermPtr left = parse_unary();
  if (accept(TokenKind::Dot)) return Term::seq(left, parse_seq());
  return left;
}

TermPtr TermParser::parse_parenthesized() {
  expect(TokenKind::LParen, "'('");
  TermPtr body = parse_sum();
  expect(TokenKind::RParen, "')'");
  return body;
}

ActionSet TermParser::parse_id_set() {
  expect(TokenKind::LBrace, "'{'");
  std::vector<std::string> ids;
  if (!accept(TokenKind::RBrace)) {
    do {
      const Token& id = expect(TokenKind::Ident, "action identifier");
      const std::vector<std::string>* named = lookup_set_ ? lookup_set_(id.text) : nullptr;
      if (named) {
        ids.insert(ids.end(), named->begin(), named->end());
      } else {
        check_action_(id);
        ids.push_back(id.text);
      }
    } while (accept(TokenKind::Comma));
    expect(TokenKind::RBrace, "'}'");
  }
  return make_action_set(std::move(ids));
}

RenameMap TermParser::parse_renaming() {
  expect(TokenKind::LBrace, "'{'");
  std::vector<std::pair<std::string, std::string>> entries;
  if (!accept(TokenKind::RBrace)) {
    do {
      const Token& from = expect(TokenKind::Ident, "action identifier");
      check_action_(from);
      expect(TokenKind::Arrow, "'->'");
      const Token& to = expect(TokenKind::Ident, "action identifier");
      check_action_(to);
      for (const auto& e : entries) {
        if (e.first == from.text && e.second != to.text) {
          syntax_fail(from, "action '" + from.text + "' renamed twice");
        }
      }
      entries.emplace_back(from.text, to.text);
    } while (accept(TokenKind::Comma));
    expect(TokenKind::RBrace, "'}'");
  }
  return make_rename_map(std::move(entries));
}

TermPtr TermParser::parse_unary() {
  const Token& t = peek();
  if (t.kind == TokenKind::LParen) return parse_parenthesized();
  if (t.kind != TokenKind::Ident) {
    syntax_fail(t, t.kind == TokenKind::End ? "unexpected end of term"
                                            : "unexpected '" + t.text + "' in term");
  }
  if (t.text == "delta") {
    ++pos_;
    return Term::deadlock();
  }
  if (t.text == "tau") {
    ++pos_;
    if (peek().kind != TokenKind::LBrace) return Term::silent();
    ActionSet set = parse_id_set();
    return Term::abstract(std::move(set), parse_parenthesized());
  }
  if (t.text == "encap") {
    ++pos_;
    ActionSet set = parse_id_set();
    return Term::encap(std::move(set), parse_parenthesized());
  }
  if (t.text == "rename") {
    ++pos_;
    RenameMap map = parse_renaming();
    return Term::rename(std::move(map), parse_parenthesized());
  }
  if (is_reserved_word(t.text)) syntax_fail(t, "'" + t.text + "' cannot start a term");
  ++pos_;
  return resolve_(t);
}

}  // namespace detail

TermPtr parse_term(std::string_view text, const Model& model) {
  const std::vector<Token> tokens = tokenize(text);
  auto resolve = [&model](const Token& t) -> TermPtr {
    if (model.is_quantum(t.text)) return Term::quantum(t.text);
    if (model.is_classical(t.text)) return Term::classical(t.text);
    if (model.is_variable(t.text)) return Term::var(t.text);
    throw Error(ErrorKind::UndeclaredAction, std::to_string(t.line) + ":" +
                                                 std::to_string(t.column) + ": '" + t.text +
                                                 "' is not a declared action or variable");
  };
  auto check = [&model](const Token& t) {
    if (!model.is_action(t.text)) {
      throw Error(ErrorKind::UndeclaredAction, std::to_string(t.line) + ":" +
                                                   std::to_string(t.column) + ": '" + t.text +
                                                   "' is not a declared action");
    }
  };
  auto sets = [&model](const std::string& name) -> const std::vector<std::string>* {
    auto it = model.action_sets.find(name);
    return it == model.action_sets.end() ? nullptr : &it->second;
  };
  detail::TermParser parser(tokens, 0, resolve, check, sets);
  TermPtr term = parser.parse_sum();
  const Token& rest = tokens[parser.position()];
  if (rest.kind != TokenKind::End) detail::syntax_fail(rest, "trailing input '" + rest.text + "'");
  check_term(term, model);
  return term;
}

}  // namespace qacp
