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
#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "qacp/error.hpp"
#include "qacp/lexer.hpp"
#include "qacp/syntax.hpp"
#include "term_parser.hpp"

namespace qacp {
namespace {

using detail::syntax_fail;

struct PendingTerm {
  enum class Owner { Spec, Named } owner;
  std::size_t spec = 0;
  std::string name;
  std::size_t start = 0;
};

class SpecParser {
 public:
  explicit SpecParser(std::string_view text) : tokens_(tokenize(text)) {}

  Model run() {
    while (peek().kind != TokenKind::End) section();
    resolve_terms();
    model_.finalize();
    return std::move(model_);
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    const std::size_t i = std::min(pos_ + ahead, tokens_.size() - 1);
    return tokens_[i];
  }
  const Token& next() {
    const Token& t = tokens_[pos_];
    if (t.kind != TokenKind::End) ++pos_;
    return t;
  }
  bool accept(TokenKind kind) {
    if (peek().kind != kind) return false;
    ++pos_;
    return true;
  }
  bool accept_word(std::string_view word) {
    if (peek().kind != TokenKind::Ident || peek().text != word) return false;
    ++pos_;
    return true;
  }
  const Token& expect(TokenKind kind, const char* what) {
    const Token& t = peek();
    if (t.kind != kind) {
      syntax_fail(t, std::string("expected ") + what + ", found " +
                         (t.kind == TokenKind::End ? std::string("end of input")
                                                   : "'" + t.text + "'"));
    }
    return next();
  }
  void expect_word(std::string_view word) {
    if (!accept_word(word)) syntax_fail(peek(), "expected '" + std::string(word) + "'");
  }

  void section() {
    const Token& head = expect(TokenKind::Ident, "section keyword");
    if (head.text == "registers") return registers();
    if (head.text == "actions") return actions();
    if (head.text == "gamma") return gamma();
    if (head.text == "spec") return spec();
    if (head.text == "term") return named_term();
    if (head.text == "set") return action_set();
    if (head.text == "init") return init();
    syntax_fail(head, "unknown section '" + head.text + "'");
  }

  void registers() {
    expect(TokenKind::LBrace, "'{'");
    while (!accept(TokenKind::RBrace)) {
      Register r;
      r.name = expect(TokenKind::Ident, "register name").text;
      if (accept(TokenKind::Colon)) {
        const Token& d = expect(TokenKind::Number, "register dimension");
        r.dim = parse_count(d);
        if (r.dim < 1) syntax_fail(d, "register dimension must be positive");
      }
      if (accept_word("private")) {
        r.is_public = false;
      } else {
        accept_word("public");
      }
      expect(TokenKind::Semicolon, "';'");
      model_.registers.push_back(std::move(r));
    }
  }

  std::size_t parse_count(const Token& t) {
    if (t.imaginary || t.text.find_first_not_of("0123456789") != std::string::npos) {
      syntax_fail(t, "expected a non-negative integer");
    }
    return static_cast<std::size_t>(std::stoull(t.text));
  }

  std::size_t dimension_of(const std::vector<std::string>& regs, const Token& at) {
    std::size_t d = 1;
    for (const auto& name : regs) {
      auto it = std::find_if(model_.registers.begin(), model_.registers.end(),
                             [&](const Register& r) { return r.name == name; });
      if (it == model_.registers.end()) {
        throw Error(ErrorKind::RegisterMismatch, std::to_string(at.line) + ":" +
                                                     std::to_string(at.column) +
                                                     ": undeclared register '" + name + "'");
      }
      d *= it->dim;
    }
    return d;
  }

  void declare_action(const Token& name) {
    if (model_.is_action(name.text) || declared_.count(name.text)) {
      throw Error(ErrorKind::DuplicateDeclaration, std::to_string(name.line) + ":" +
                                                       std::to_string(name.column) + ": action '" +
                                                       name.text + "' declared twice");
    }
    declared_.insert(name.text);
  }

  void actions() {
    expect(TokenKind::LBrace, "'{'");
    while (!accept(TokenKind::RBrace)) {
      if (accept_word("classical")) {
        do {
          const Token& name = expect(TokenKind::Ident, "action name");
          declare_action(name);
          model_.classical.insert(name.text);
        } while (accept(TokenKind::Comma));
      } else if (accept_word("quantum")) {
        const Token& name = expect(TokenKind::Ident, "action name");
        declare_action(name);
        expect(TokenKind::Equals, "'='");
        QuantumOperation op;
        do {
          op.stages.push_back(stage());
        } while (accept_word("then"));
        model_.quantum.emplace(name.text, std::move(op));
      } else {
        syntax_fail(peek(), "expected 'quantum' or 'classical'");
      }
      expect(TokenKind::Semicolon, "';'");
    }
  }

  KrausSet stage() {
    const Token& at = peek();
    KrausSet set;
    std::string builtin;
    if (at.kind == TokenKind::LBracket) {
      set.operators.push_back(matrix());
    } else if (accept_word("kraus")) {
      expect(TokenKind::LBrace, "'{'");
      do {
        set.operators.push_back(matrix());
      } while (accept(TokenKind::Comma));
      expect(TokenKind::RBrace, "'}'");
    } else {
      builtin = expect(TokenKind::Ident, "operation name, matrix or 'kraus'").text;
    }
    expect_word("on");
    do {
      set.acts_on.push_back(expect(TokenKind::Ident, "register name").text);
    } while (accept(TokenKind::Comma));
    const std::size_t dim = dimension_of(set.acts_on, at);
    for (const auto& k : set.operators) {
      if (k.rows() != k.cols()) {
        throw Error(ErrorKind::NonSquareKraus,
                    std::to_string(at.line) + ":" + std::to_string(at.column) + ": " +
                        std::to_string(k.rows()) + "x" + std::to_string(k.cols()) +
                        " Kraus operator is not square");
      }
    }
    if (!builtin.empty()) {
      auto known = builtin_names();
      if (std::find(known.begin(), known.end(), builtin) == known.end()) {
        syntax_fail(at, "unknown operation '" + builtin + "'");
      }
      auto k = builtin_kraus(builtin, dim);
      if (!k) {
        throw Error(ErrorKind::RegisterMismatch,
                    std::to_string(at.line) + ":" + std::to_string(at.column) + ": '" + builtin +
                        "' does not fit registers of dimension " + std::to_string(dim));
      }
      k->acts_on = set.acts_on;
      return *k;
    }
    return set;
  }

  Matrix matrix() {
    const Token& at = expect(TokenKind::LBracket, "'['");
    std::vector<std::vector<Complex>> rows;
    do {
      expect(TokenKind::LBracket, "'['");
      std::vector<Complex> row;
      do {
        row.push_back(complex_expr());
      } while (accept(TokenKind::Comma));
      expect(TokenKind::RBracket, "']'");
      rows.push_back(std::move(row));
    } while (accept(TokenKind::Comma));
    expect(TokenKind::RBracket, "']'");
    for (const auto& r : rows) {
      if (r.size() != rows.front().size()) syntax_fail(at, "matrix rows differ in length");
    }
    Matrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.front().size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
      for (std::size_t j = 0; j < rows[i].size(); ++j) {
        m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
      }
    }
    return m;
  }

  Complex complex_expr() {
    Complex acc = 0.0;
    bool negate = false;
    if (accept(TokenKind::Minus)) {
      negate = true;
    } else {
      accept(TokenKind::Plus);
    }
    Complex first = complex_product();
    acc = negate ? -first : first;
    for (;;) {
      if (accept(TokenKind::Plus)) {
        acc += complex_product();
      } else if (accept(TokenKind::Minus)) {
        acc -= complex_product();
      } else {
        return acc;
      }
    }
  }

  Complex complex_product() {
    Complex acc = complex_factor();
    for (;;) {
      if (accept(TokenKind::Star)) {
        acc *= complex_factor();
      } else if (accept(TokenKind::Slash)) {
        acc /= complex_factor();
      } else {
        return acc;
      }
    }
  }

  Complex complex_factor() {
    const Token& t = next();
    if (t.kind == TokenKind::Number) {
      const double v = std::stod(t.text);
      return t.imaginary ? Complex(0.0, v) : Complex(v, 0.0);
    }
    if (t.kind == TokenKind::LParen) {
      Complex v = complex_expr();
      expect(TokenKind::RParen, "')'");
      return v;
    }
    if (t.kind == TokenKind::Ident && t.text == "i") return Complex(0.0, 1.0);
    if (t.kind == TokenKind::Ident && t.text.rfind("sqrt(", 0) == 0 && t.text.back() == ')') {
      SpecParser inner(t.text.substr(5, t.text.size() - 6));
      Complex v = inner.complex_expr();
      if (inner.peek().kind != TokenKind::End) syntax_fail(t, "malformed sqrt argument");
      return std::sqrt(v);
    }
    syntax_fail(t, "expected a complex number");
  }

  void gamma() {
    expect(TokenKind::LBrace, "'{'");
    while (!accept(TokenKind::RBrace)) {
      const Token& a = expect(TokenKind::Ident, "action name");
      expect(TokenKind::Bar, "'|'");
      const Token& b = expect(TokenKind::Ident, "action name");
      expect(TokenKind::Arrow, "'->'");
      const Token& c = expect(TokenKind::Ident, "action name");
      expect(TokenKind::Semicolon, "';'");
      auto key = std::make_pair(a.text, b.text);
      auto it = model_.gamma.find(key);
      if (it != model_.gamma.end() && it->second != c.text) {
        throw Error(ErrorKind::DuplicateDeclaration,
                    std::to_string(a.line) + ":" + std::to_string(a.column) +
                        ": communication of '" + a.text + "' and '" + b.text + "' defined twice");
      }
      model_.gamma[key] = c.text;
    }
  }

  std::size_t skip_term() {
    const std::size_t start = pos_;
    if (peek().kind == TokenKind::Semicolon) syntax_fail(peek(), "empty term");
    while (peek().kind != TokenKind::Semicolon) {
      if (peek().kind == TokenKind::End) syntax_fail(peek(), "missing ';' after term");
      ++pos_;
    }
    ++pos_;
    return start;
  }

  void spec() {
    RecursiveSpec s;
    s.name = expect(TokenKind::Ident, "spec name").text;
    expect(TokenKind::LBrace, "'{'");
    const std::size_t index = model_.specs.size();
    while (!accept(TokenKind::RBrace)) {
      const Token& var = expect(TokenKind::Ident, "variable name");
      expect(TokenKind::Equals, "'='");
      pending_.push_back({PendingTerm::Owner::Spec, index, var.text, skip_term()});
      s.equations.push_back({var.text, nullptr});
    }
    model_.specs.push_back(std::move(s));
  }

  void action_set() {
    const Token& name = expect(TokenKind::Ident, "set name");
    expect(TokenKind::Equals, "'='");
    expect(TokenKind::LBrace, "'{'");
    std::vector<std::string> members;
    if (!accept(TokenKind::RBrace)) {
      do {
        members.push_back(expect(TokenKind::Ident, "action identifier").text);
      } while (accept(TokenKind::Comma));
      expect(TokenKind::RBrace, "'}'");
    }
    expect(TokenKind::Semicolon, "';'");
    if (!model_.action_sets.emplace(name.text, std::move(members)).second) {
      throw Error(ErrorKind::DuplicateDeclaration, std::to_string(name.line) + ":" +
                                                       std::to_string(name.column) + ": set '" +
                                                       name.text + "' declared twice");
    }
  }

  void named_term() {
    const Token& name = expect(TokenKind::Ident, "term name");
    expect(TokenKind::Equals, "'='");
    pending_.push_back({PendingTerm::Owner::Named, 0, name.text, skip_term()});
    model_.named_terms.emplace_back(name.text, nullptr);
  }

  void init() {
    if (accept(TokenKind::Equals)) {
      if (model_.init.explicit_matrix) syntax_fail(peek(), "initial state given twice");
      model_.init.explicit_matrix = matrix();
      expect(TokenKind::Semicolon, "';'");
      return;
    }
    expect(TokenKind::LBrace, "'{'");
    while (!accept(TokenKind::RBrace)) {
      if (accept_word("apply")) {
        model_.init.apply.push_back(expect(TokenKind::Ident, "quantum action").text);
      } else {
        const Token& reg = expect(TokenKind::Ident, "register name");
        expect(TokenKind::Equals, "'='");
        model_.init.digits[reg.text] = parse_count(expect(TokenKind::Number, "basis digit"));
      }
      expect(TokenKind::Semicolon, "';'");
    }
  }

  void resolve_terms() {
    std::set<std::string> variables;
    for (const auto& s : model_.specs) {
      for (const auto& eq : s.equations) variables.insert(eq.variable);
    }
    auto resolve = [&](const Token& t) -> TermPtr {
      if (model_.quantum.count(t.text)) return Term::quantum(t.text);
      if (model_.classical.count(t.text)) return Term::classical(t.text);
      if (variables.count(t.text)) return Term::var(t.text);
      throw Error(ErrorKind::UndeclaredAction, std::to_string(t.line) + ":" +
                                                   std::to_string(t.column) + ": '" + t.text +
                                                   "' is not a declared action or variable");
    };
    auto check = [&](const Token& t) {
      if (!model_.quantum.count(t.text) && !model_.classical.count(t.text)) {
        throw Error(ErrorKind::UndeclaredAction, std::to_string(t.line) + ":" +
                                                     std::to_string(t.column) + ": '" + t.text +
                                                     "' is not a declared action");
      }
    };
    std::vector<std::size_t> next_eq(model_.specs.size(), 0);
    std::size_t next_named = 0;
    for (const auto& p : pending_) {
      auto sets = [&](const std::string& name) -> const std::vector<std::string>* {
        auto it = model_.action_sets.find(name);
        return it == model_.action_sets.end() ? nullptr : &it->second;
      };
      detail::TermParser parser(tokens_, p.start, resolve, check, sets);
      TermPtr t = parser.parse_sum();
      const Token& end = tokens_[parser.position()];
      if (end.kind != TokenKind::Semicolon) syntax_fail(end, "unexpected '" + end.text + "' in term");
      if (p.owner == PendingTerm::Owner::Spec) {
        model_.specs[p.spec].equations[next_eq[p.spec]++].body = t;
      } else {
        model_.named_terms[next_named++].second = t;
      }
    }
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  Model model_;
  std::set<std::string> declared_;
  std::vector<PendingTerm> pending_;
};

}  // namespace

Model parse_spec(std::string_view text) { return SpecParser(text).run(); }

Model load_spec_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoError, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_spec(buf.str());
}

}  // namespace qacp
