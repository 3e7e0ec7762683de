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
#include "qacp/lexer.hpp"

#include <array>
#include <cctype>

#include "qacp/error.hpp"

namespace qacp {
namespace {

constexpr std::array<std::string_view, 6> kReserved = {"delta", "tau",  "encap",
                                                       "rename", "kraus", "sqrt"};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_blank();
      Token tok;
      tok.line = line_;
      tok.column = col_;
      if (pos_ >= src_.size()) {
        tok.kind = TokenKind::End;
        out.push_back(tok);
        return out;
      }
      const char c = src_[pos_];
      if (ident_start(c)) {
        lex_ident(tok);
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        lex_number(tok);
      } else {
        lex_punct(tok);
      }
      out.push_back(std::move(tok));
    }
  }

 private:
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
  }

  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_blank() {
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  [[noreturn]] void fail(const std::string& msg) const { throw SyntaxError(line_, col_, msg); }

  void lex_ident(Token& tok) {
    tok.kind = TokenKind::Ident;
    while (pos_ < src_.size() && ident_char(src_[pos_])) {
      tok.text.push_back(src_[pos_]);
      advance();
    }
    if (is_reserved_word(tok.text) && tok.text != "sqrt") return;
    // Attached argument groups belong to the identifier.
    for (;;) {
      const char c = peek();
      const bool brace_ok = c == '{' && !tok.text.empty() && tok.text.back() == '_';
      if (c != '(' && c != '[' && !brace_ok) break;
      read_group(tok.text);
      while (pos_ < src_.size() && ident_char(src_[pos_])) {
        tok.text.push_back(src_[pos_]);
        advance();
      }
    }
  }

  void read_group(std::string& out) {
    std::vector<char> stack;
    const std::size_t start_line = line_;
    const std::size_t start_col = col_;
    do {
      if (pos_ >= src_.size()) {
        throw SyntaxError(start_line, start_col, "unterminated argument group in identifier");
      }
      const char c = src_[pos_];
      if (c == '(' || c == '[' || c == '{') {
        stack.push_back(c == '(' ? ')' : c == '[' ? ']' : '}');
      } else if (c == ')' || c == ']' || c == '}') {
        if (stack.empty() || stack.back() != c) fail("mismatched bracket in identifier");
        stack.pop_back();
      } else if (c == '\n' || c == '#' || (c == ';' && (stack.empty() || stack.back() != ']'))) {
        // ';' only separates arguments inside [..], as in M[q;K_b].
        throw SyntaxError(start_line, start_col, "unterminated argument group in identifier");
      }
      if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
      advance();
    } while (!stack.empty());
  }

  void lex_number(Token& tok) {
    tok.kind = TokenKind::Number;
    auto digits = [&] {
      while (std::isdigit(static_cast<unsigned char>(peek()))) {
        tok.text.push_back(peek());
        advance();
      }
    };
    digits();
    if (peek() == '.' && std::isdigit(static_cast<unsigned char>(peek(1)))) {
      tok.text.push_back('.');
      advance();
      digits();
    }
    if ((peek() == 'e' || peek() == 'E') &&
        (std::isdigit(static_cast<unsigned char>(peek(1))) ||
         ((peek(1) == '-' || peek(1) == '+') && std::isdigit(static_cast<unsigned char>(peek(2)))))) {
      tok.text.push_back('e');
      advance();
      if (peek() == '-' || peek() == '+') {
        tok.text.push_back(peek());
        advance();
      }
      digits();
    }
    if (peek() == 'i' && !ident_char(peek(1))) {
      tok.imaginary = true;
      advance();
    }
    if (ident_char(peek())) fail("malformed number literal");
  }

  void lex_punct(Token& tok) {
    const char c = peek();
    auto single = [&](TokenKind k) {
      tok.kind = k;
      tok.text = std::string(1, c);
      advance();
    };
    switch (c) {
      case '(': return single(TokenKind::LParen);
      case ')': return single(TokenKind::RParen);
      case '{': return single(TokenKind::LBrace);
      case '}': return single(TokenKind::RBrace);
      case '[': return single(TokenKind::LBracket);
      case ']': return single(TokenKind::RBracket);
      case ',': return single(TokenKind::Comma);
      case ';': return single(TokenKind::Semicolon);
      case ':': return single(TokenKind::Colon);
      case '=': return single(TokenKind::Equals);
      case '+': return single(TokenKind::Plus);
      case '*': return single(TokenKind::Star);
      case '/': return single(TokenKind::Slash);
      case '.': return single(TokenKind::Dot);
      case '-':
        if (peek(1) == '>') {
          tok.kind = TokenKind::Arrow;
          tok.text = "->";
          advance();
          advance();
          return;
        }
        return single(TokenKind::Minus);
      case '|':
        if (peek(1) == '|') {
          tok.kind = TokenKind::BarBar;
          tok.text = "||";
          advance();
          advance();
          return;
        }
        if (peek(1) == '_') {
          tok.kind = TokenKind::LeftMergeOp;
          tok.text = "|_";
          advance();
          advance();
          return;
        }
        return single(TokenKind::Bar);
      default:
        fail(std::string("unexpected character '") + c + "'");
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

}  // namespace

std::string_view token_name(TokenKind kind) {
  switch (kind) {
    case TokenKind::Ident: return "identifier";
    case TokenKind::Number: return "number";
    case TokenKind::LParen: return "'('";
    case TokenKind::RParen: return "')'";
    case TokenKind::LBrace: return "'{'";
    case TokenKind::RBrace: return "'}'";
    case TokenKind::LBracket: return "'['";
    case TokenKind::RBracket: return "']'";
    case TokenKind::Comma: return "','";
    case TokenKind::Semicolon: return "';'";
    case TokenKind::Colon: return "':'";
    case TokenKind::Equals: return "'='";
    case TokenKind::Plus: return "'+'";
    case TokenKind::Minus: return "'-'";
    case TokenKind::Star: return "'*'";
    case TokenKind::Slash: return "'/'";
    case TokenKind::Dot: return "'.'";
    case TokenKind::Bar: return "'|'";
    case TokenKind::BarBar: return "'||'";
    case TokenKind::LeftMergeOp: return "'|_'";
    case TokenKind::Arrow: return "'->'";
    case TokenKind::End: return "end of input";
  }
  return "token";
}

bool is_reserved_word(std::string_view word) {
  for (auto r : kReserved) {
    if (r == word) return true;
  }
  return false;
}

std::vector<Token> tokenize(std::string_view text) { return Lexer(text).run(); }

}  // namespace qacp
