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
#include "qacp/model.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "qacp/error.hpp"
#include "qacp/lexer.hpp"
#include "qacp/syntax.hpp"

namespace qacp {
namespace {

std::string base_name(const std::string& id) {
  std::size_t n = 0;
  while (n < id.size() && id[n] != '(' && id[n] != '[' && id[n] != '{') ++n;
  return id.substr(0, n);
}

void check_identifier(const std::string& id, const char* what) {
  if (id.empty()) throw Error(ErrorKind::SyntaxError, std::string("empty ") + what + " name");
  if (is_reserved_word(base_name(id))) {
    throw Error(ErrorKind::SyntaxError, std::string(what) + " may not be named '" + id + "'");
  }
}

void unguarded_vars(const TermPtr& t, std::set<std::string>& out) {
  switch (t->kind()) {
    case TermKind::RecVar: out.insert(t->name()); return;
    case TermKind::Seq:
    case TermKind::LeftMerge: unguarded_vars(t->left(), out); return;
    case TermKind::Alt:
    case TermKind::Merge:
    case TermKind::CommMerge:
      unguarded_vars(t->left(), out);
      unguarded_vars(t->right(), out);
      return;
    case TermKind::Encap:
    case TermKind::Abstract:
    case TermKind::Rename: unguarded_vars(t->body(), out); return;
    default: return;
  }
}

std::string hex_digest(const std::string& text) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : text) h = (h ^ c) * 1099511628211ULL;
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

}  // namespace

const Equation* RecursiveSpec::find(const std::string& variable) const {
  for (const auto& eq : equations) {
    if (eq.variable == variable) return &eq;
  }
  return nullptr;
}

bool is_linear(const RecursiveSpec& spec) {
  for (const auto& eq : spec.equations) {
    if (eq.body->kind() == TermKind::Deadlock) continue;
    for (const auto& s : summands(eq.body)) {
      if (is_atomic(s->kind())) continue;
      if (s->kind() == TermKind::Seq && is_atomic(s->left()->kind()) &&
          s->right()->kind() == TermKind::RecVar) {
        continue;
      }
      return false;
    }
  }
  return true;
}

std::optional<std::string> Model::communicate(const std::string& a, const std::string& b) const {
  auto it = gamma.find({a, b});
  if (it == gamma.end()) return std::nullopt;
  return it->second;
}

const TermPtr* Model::definition(const std::string& variable) const {
  auto it = var_index_.find(variable);
  if (it == var_index_.end()) return nullptr;
  return &specs[it->second.first].equations[it->second.second].body;
}

const RecursiveSpec* Model::spec_of(const std::string& variable) const {
  auto it = var_index_.find(variable);
  if (it == var_index_.end()) return nullptr;
  return &specs[it->second.first];
}

const RecursiveSpec* Model::find_spec(const std::string& name) const {
  for (const auto& s : specs) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

ActionSet Model::resolve_action_set(const std::vector<std::string>& ids) const {
  std::vector<std::string> out;
  for (const auto& id : ids) {
    auto it = action_sets.find(id);
    if (it != action_sets.end()) {
      out.insert(out.end(), it->second.begin(), it->second.end());
    } else if (is_action(id)) {
      out.push_back(id);
    } else {
      throw Error(ErrorKind::UndeclaredAction, "'" + id + "' is not a declared action or set");
    }
  }
  return make_action_set(std::move(out));
}

std::optional<TermPtr> Model::named_term(const std::string& name) const {
  for (const auto& [n, t] : named_terms) {
    if (n == name) return t;
  }
  return std::nullopt;
}

const QuantumState& Model::initial_state() const {
  if (!initial_) throw Error(ErrorKind::InvalidArgument, "model has not been finalized");
  return *initial_;
}

void Model::finalize() {
  // Registers.
  std::set<std::string> seen;
  for (const auto& r : registers) {
    check_identifier(r.name, "register");
    if (!seen.insert(r.name).second) {
      throw Error(ErrorKind::DuplicateDeclaration, "register '" + r.name + "' declared twice");
    }
    if (r.dim < 1) throw Error(ErrorKind::RegisterMismatch, "register '" + r.name + "' has dimension 0");
  }
  std::size_t total = 1;
  for (const auto& r : registers) {
    total *= r.dim;
    if (total > kMaxDimension) {
      throw Error(ErrorKind::DimensionCap, "total register dimension exceeds " +
                                               std::to_string(kMaxDimension));
    }
  }

  // Quantum actions.
  for (const auto& [name, op] : quantum) {
    check_identifier(name, "action");
    if (classical.count(name)) {
      throw Error(ErrorKind::DuplicateDeclaration,
                  "'" + name + "' declared both quantum and classical");
    }
    if (op.stages.empty()) throw Error(ErrorKind::InvalidKraus, "action '" + name + "' has no stages");
    for (const auto& stage : op.stages) {
      std::size_t dim = 1;
      for (const auto& reg : stage.acts_on) {
        auto it = std::find_if(registers.begin(), registers.end(),
                               [&](const Register& r) { return r.name == reg; });
        if (it == registers.end()) {
          throw Error(ErrorKind::RegisterMismatch,
                      "action '" + name + "' acts on undeclared register '" + reg + "'");
        }
        dim *= it->dim;
      }
      if (stage.operators.empty()) {
        throw Error(ErrorKind::InvalidKraus, "action '" + name + "' has an empty Kraus set");
      }
      for (const auto& k : stage.operators) {
        if (k.rows() != k.cols()) {
          throw Error(ErrorKind::NonSquareKraus, "action '" + name + "' has a " +
                                                     std::to_string(k.rows()) + "x" +
                                                     std::to_string(k.cols()) + " Kraus operator");
        }
        if (static_cast<std::size_t>(k.rows()) != dim) {
          throw Error(ErrorKind::RegisterMismatch,
                      "action '" + name + "': operator dimension " + std::to_string(k.rows()) +
                          " does not match its registers (" + std::to_string(dim) + ")");
        }
      }
      const KrausReport report = validate_kraus(stage);
      if (report.classification != KrausClass::TracePreserving) {
        throw Error(ErrorKind::InvalidKraus, "action '" + name +
                                                 "' is not trace-preserving (deviation " +
                                                 std::to_string(report.deviation) + ")");
      }
    }
  }
  for (const auto& name : classical) check_identifier(name, "action");

  // Communication function, closed under symmetry.
  std::map<std::pair<std::string, std::string>, std::string> closed;
  for (const auto& [key, result] : gamma) {
    for (const auto* id : {&key.first, &key.second, &result}) {
      if (is_quantum(*id)) {
        throw Error(ErrorKind::GammaOnQuantumAction,
                    "communication involves quantum action '" + *id + "'");
      }
      if (!is_classical(*id)) {
        throw Error(ErrorKind::UndeclaredAction, "communication uses undeclared action '" + *id + "'");
      }
    }
    for (const auto& k : {key, std::make_pair(key.second, key.first)}) {
      auto [it, inserted] = closed.emplace(k, result);
      if (!inserted && it->second != result) {
        throw Error(ErrorKind::DuplicateDeclaration, "conflicting communications for '" +
                                                         k.first + "' and '" + k.second + "'");
      }
    }
  }
  gamma = std::move(closed);

  // Recursion variables.
  var_index_.clear();
  std::set<std::string> spec_names;
  for (std::size_t s = 0; s < specs.size(); ++s) {
    if (!spec_names.insert(specs[s].name).second) {
      throw Error(ErrorKind::DuplicateDeclaration, "spec '" + specs[s].name + "' declared twice");
    }
    for (std::size_t e = 0; e < specs[s].equations.size(); ++e) {
      const std::string& v = specs[s].equations[e].variable;
      check_identifier(v, "variable");
      if (is_action(v)) {
        throw Error(ErrorKind::DuplicateDeclaration, "variable '" + v + "' clashes with an action");
      }
      if (!var_index_.emplace(v, std::make_pair(s, e)).second) {
        throw Error(ErrorKind::DuplicateDeclaration, "variable '" + v + "' defined twice");
      }
    }
  }
  for (const auto& [name, members] : action_sets) {
    check_identifier(name, "set");
    if (is_action(name) || var_index_.count(name)) {
      throw Error(ErrorKind::DuplicateDeclaration, "set '" + name + "' clashes with another name");
    }
    for (const auto& m : members) {
      if (!is_action(m)) {
        throw Error(ErrorKind::UndeclaredAction, "set '" + name + "' lists undeclared action '" + m + "'");
      }
    }
  }
  for (const auto& spec : specs) {
    for (const auto& eq : spec.equations) check_term(eq.body, *this);
  }
  std::set<std::string> term_names;
  for (const auto& [name, t] : named_terms) {
    if (!term_names.insert(name).second) {
      throw Error(ErrorKind::DuplicateDeclaration, "term '" + name + "' declared twice");
    }
    check_term(t, *this);
  }
  check_guarded(*this);

  // Initial state.
  if (init.explicit_matrix) {
    QuantumState s(registers, *init.explicit_matrix);
    if (!check_state(s).valid()) {
      throw Error(ErrorKind::NonPhysicalResult, "initial matrix is not a density operator");
    }
    initial_ = std::move(s);
  } else {
    std::vector<std::size_t> digits(registers.size(), 0);
    for (const auto& [reg, d] : init.digits) {
      auto it = std::find_if(registers.begin(), registers.end(),
                             [&](const Register& r) { return r.name == reg; });
      if (it == registers.end()) {
        throw Error(ErrorKind::RegisterMismatch, "init names undeclared register '" + reg + "'");
      }
      digits[static_cast<std::size_t>(it - registers.begin())] = d;
    }
    QuantumState s = QuantumState::basis(registers, digits);
    for (const auto& a : init.apply) {
      auto it = quantum.find(a);
      if (it == quantum.end()) {
        throw Error(ErrorKind::UndeclaredAction, "init applies unknown quantum action '" + a + "'");
      }
      s = apply_operation(s, it->second);
    }
    initial_ = std::move(s);
  }
  fingerprint_ = hex_digest(write_spec(*this));
}

void check_term(const TermPtr& term, const Model& model) {
  auto undeclared = [](const std::string& id) {
    throw Error(ErrorKind::UndeclaredAction, "'" + id + "' is not declared");
  };
  for_each_node(term, [&](const TermPtr& t) {
    switch (t->kind()) {
      case TermKind::QuantumAction:
        if (!model.is_quantum(t->name())) undeclared(t->name());
        break;
      case TermKind::ClassicalAction:
        if (!model.is_classical(t->name())) undeclared(t->name());
        break;
      case TermKind::RecVar:
        if (!model.is_variable(t->name())) {
          throw Error(ErrorKind::UnboundVariable, "variable '" + t->name() + "' is not defined");
        }
        break;
      case TermKind::Encap:
      case TermKind::Abstract:
        for (const auto& a : t->actions()) {
          if (!model.is_action(a)) undeclared(a);
        }
        break;
      case TermKind::Rename:
        for (const auto& [from, to] : t->renaming()) {
          if (!model.is_action(from)) undeclared(from);
          if (!model.is_action(to)) undeclared(to);
          if (model.is_quantum(from) != model.is_quantum(to)) {
            throw Error(ErrorKind::InvalidArgument,
                        "renaming '" + from + " -> " + to + "' changes the action kind");
          }
        }
        break;
      default: break;
    }
  });
}

void check_guarded(const Model& model) {
  std::map<std::string, std::set<std::string>> edges;
  for (const auto& spec : model.specs) {
    for (const auto& eq : spec.equations) unguarded_vars(eq.body, edges[eq.variable]);
  }
  std::map<std::string, int> color;  // 0 white, 1 on stack, 2 done
  std::function<void(const std::string&, std::vector<std::string>&)> visit =
      [&](const std::string& v, std::vector<std::string>& path) {
        color[v] = 1;
        path.push_back(v);
        for (const auto& w : edges[v]) {
          if (color[w] == 1) {
            std::string cycle;
            auto start = std::find(path.begin(), path.end(), w);
            for (auto it = start; it != path.end(); ++it) cycle += *it + " -> ";
            throw Error(ErrorKind::UnguardedRecursion, "unguarded recursion: " + cycle + w);
          }
          if (color[w] == 0) visit(w, path);
        }
        path.pop_back();
        color[v] = 2;
      };
  for (const auto& [v, _] : edges) {
    std::vector<std::string> path;
    if (color[v] == 0) visit(v, path);
  }
}

}  // namespace qacp
