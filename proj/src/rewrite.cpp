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
#include "qacp/rewrite.hpp"

#include <algorithm>
#include <functional>

#include "qacp/error.hpp"
#include "qacp/syntax.hpp"

namespace qacp {
namespace {

bool is_prefix(const TermPtr& t) {
  return t->kind() == TermKind::Seq && is_atomic(t->left()->kind());
}

TermPtr rest_sum(const std::vector<TermPtr>& parts) {
  return make_sum(std::vector<TermPtr>(parts.begin() + 1, parts.end()));
}

bool same_operation(const QuantumOperation& a, const QuantumOperation& b) {
  if (a.stages.size() != b.stages.size()) return false;
  for (std::size_t i = 0; i < a.stages.size(); ++i) {
    const auto& x = a.stages[i];
    const auto& y = b.stages[i];
    if (x.acts_on != y.acts_on || x.operators.size() != y.operators.size()) return false;
    for (std::size_t k = 0; k < x.operators.size(); ++k) {
      if (x.operators[k].rows() != y.operators[k].rows()) return false;
      if ((x.operators[k] - y.operators[k]).cwiseAbs().maxCoeff() > kPhysicalTolerance) return false;
    }
  }
  return true;
}

TermPtr same_kind_atom(const TermPtr& like, const std::string& name) {
  return like->kind() == TermKind::QuantumAction ? Term::quantum(name) : Term::classical(name);
}

}  // namespace

std::string_view system_name(System system) {
  switch (system) {
    case System::Bqpa: return "bqpa";
    case System::Qpap: return "qpap";
    case System::Aqcp: return "aqcp";
    case System::AqcpTau: return "aqcp-tau";
  }
  return "bqpa";
}

std::optional<System> parse_system(std::string_view text) {
  if (text == "bqpa") return System::Bqpa;
  if (text == "qpap") return System::Qpap;
  if (text == "aqcp") return System::Aqcp;
  if (text == "aqcp-tau") return System::AqcpTau;
  return std::nullopt;
}

TermPtr ac_canonical(const TermPtr& t) {
  switch (t->kind()) {
    case TermKind::Alt: {
      std::vector<TermPtr> parts;
      for (const auto& s : summands(t)) {
        for (const auto& inner : summands(ac_canonical(s))) parts.push_back(inner);
      }
      std::stable_sort(parts.begin(), parts.end(), TermPtrLess{});
      return make_sum(parts);
    }
    case TermKind::Seq:
    case TermKind::Merge:
    case TermKind::LeftMerge:
    case TermKind::CommMerge: {
      TermPtr l = ac_canonical(t->left());
      TermPtr r = ac_canonical(t->right());
      if (l == t->left() && r == t->right()) return t;
      return Term::binary(t->kind(), l, r);
    }
    case TermKind::Encap:
    case TermKind::Abstract:
    case TermKind::Rename: {
      TermPtr b = ac_canonical(t->body());
      if (b == t->body()) return t;
      if (t->kind() == TermKind::Encap) return Term::encap(t->actions(), b);
      if (t->kind() == TermKind::Abstract) return Term::abstract(t->actions(), b);
      return Term::rename(t->renaming(), b);
    }
    default: return t;
  }
}

bool is_basic_term(const TermPtr& term) {
  bool basic = true;
  for_each_node(term, [&](const TermPtr& t) {
    const TermKind k = t->kind();
    if (!(is_atomic(k) || k == TermKind::Deadlock || k == TermKind::Alt || k == TermKind::Seq)) {
      basic = false;
    }
  });
  return basic;
}

TermPtr unfold_rdp(const TermPtr& term, const Model& model, std::size_t depth) {
  if (depth == 0) return term;
  std::function<TermPtr(const TermPtr&)> once = [&](const TermPtr& t) -> TermPtr {
    switch (t->kind()) {
      case TermKind::RecVar: {
        const TermPtr* body = model.definition(t->name());
        if (!body) throw Error(ErrorKind::UnboundVariable, "variable '" + t->name() + "' is not defined");
        return *body;
      }
      case TermKind::Encap: return Term::encap(t->actions(), once(t->body()));
      case TermKind::Abstract: return Term::abstract(t->actions(), once(t->body()));
      case TermKind::Rename: return Term::rename(t->renaming(), once(t->body()));
      default:
        if (is_binary(t->kind())) return Term::binary(t->kind(), once(t->left()), once(t->right()));
        return t;
    }
  };
  return unfold_rdp(once(term), model, depth - 1);
}

Rewriter::Rewriter(const Model& model, System system) : model_(model), system_(system) {}

void Rewriter::check_operators(const TermPtr& term) const {
  for_each_node(term, [&](const TermPtr& t) {
    auto need = [&](System min, const char* what) {
      if (!has(min)) {
        throw Error(ErrorKind::OperatorNotEliminable,
                    std::string(what) + " has no axioms in system '" +
                        std::string(system_name(system_)) + "'");
      }
    };
    switch (t->kind()) {
      case TermKind::RecVar:
        throw Error(ErrorKind::OperatorNotEliminable,
                    "recursion variable '" + t->name() +
                        "' cannot be normalized; build its graph instead");
      case TermKind::Merge:
      case TermKind::LeftMerge:
      case TermKind::CommMerge: need(System::Qpap, "parallel composition"); break;
      case TermKind::Encap: need(System::Aqcp, "encapsulation"); break;
      case TermKind::Abstract: need(System::AqcpTau, "abstraction"); break;
      case TermKind::Rename: need(System::AqcpTau, "renaming"); break;
      default: break;
    }
  });
}

std::optional<std::pair<TermPtr, std::string>> Rewriter::root_rule(const TermPtr& t) const {
  using R = std::pair<TermPtr, std::string>;
  const bool deltas = has(System::Qpap);
  switch (t->kind()) {
    case TermKind::Alt: {
      std::vector<TermPtr> parts = summands(t);
      if (deltas) {
        for (std::size_t i = 0; i < parts.size(); ++i) {
          if (parts[i]->kind() == TermKind::Deadlock) {
            parts.erase(parts.begin() + static_cast<std::ptrdiff_t>(i));
            return R{make_sum(parts), "QA6"};
          }
        }
      }
      for (std::size_t i = 0; i < parts.size(); ++i) {
        for (std::size_t j = i + 1; j < parts.size(); ++j) {
          if (structurally_equal(parts[i], parts[j])) {
            parts.erase(parts.begin() + static_cast<std::ptrdiff_t>(j));
            return R{make_sum(parts), "QA3"};
          }
        }
      }
      return std::nullopt;
    }
    case TermKind::Seq: {
      const TermPtr& x = t->left();
      const TermPtr& z = t->right();
      if (deltas && x->kind() == TermKind::Deadlock) return R{x, "QA7"};
      if (x->kind() == TermKind::Seq) {
        return R{Term::seq(x->left(), Term::seq(x->right(), z)), "QA5"};
      }
      if (x->kind() == TermKind::Alt) {
        const auto parts = summands(x);
        return R{Term::alt(Term::seq(parts.front(), z), Term::seq(rest_sum(parts), z)), "QA4"};
      }
      if (has(System::AqcpTau) && is_atomic(x->kind())) {
        if (z->kind() == TermKind::Silent) return R{x, "QB1"};
        if (z->kind() == TermKind::Seq && z->left()->kind() == TermKind::Silent) {
          // QB1 under the context . y once QA5 has right-nested the product.
          return R{Term::seq(x, z->right()), "QB1"};
        }
        if (z->kind() == TermKind::Alt) {
          const auto parts = summands(z);
          for (std::size_t i = 0; i < parts.size(); ++i) {
            const TermPtr& p = parts[i];
            if (p->kind() != TermKind::Seq || p->left()->kind() != TermKind::Silent) continue;
            const auto inner = summands(p->right());
            bool covered = true;
            for (std::size_t j = 0; j < parts.size() && covered; ++j) {
              if (j == i) continue;
              bool found = false;
              for (const auto& q : inner) found = found || structurally_equal(q, parts[j]);
              covered = found;
            }
            if (covered) return R{Term::seq(x, p->right()), "QB2"};
          }
        }
      }
      return std::nullopt;
    }
    case TermKind::Merge:
      if (!has(System::Qpap)) return std::nullopt;
      return R{Term::alt(Term::alt(Term::left_merge(t->left(), t->right()),
                                   Term::left_merge(t->right(), t->left())),
                         Term::comm_merge(t->left(), t->right())),
               "QM1"};
    case TermKind::LeftMerge: {
      if (!has(System::Qpap)) return std::nullopt;
      const TermPtr& x = t->left();
      const TermPtr& y = t->right();
      if (x->kind() == TermKind::Deadlock) return R{x, "QLM11"};
      if (is_atomic(x->kind())) return R{Term::seq(x, y), "QLM2"};
      if (is_prefix(x)) return R{Term::seq(x->left(), Term::merge(x->right(), y)), "QLM3"};
      if (x->kind() == TermKind::Alt) {
        const auto parts = summands(x);
        return R{Term::alt(Term::left_merge(parts.front(), y), Term::left_merge(rest_sum(parts), y)),
                 "QLM4"};
      }
      return std::nullopt;
    }
    case TermKind::CommMerge: {
      if (!has(System::Qpap)) return std::nullopt;
      const TermPtr& x = t->left();
      const TermPtr& y = t->right();
      if (x->kind() == TermKind::Deadlock) return R{x, "QCM12"};
      if (y->kind() == TermKind::Deadlock) return R{y, "QCM13"};
      if (x->kind() == TermKind::Alt) {
        const auto parts = summands(x);
        return R{Term::alt(Term::comm_merge(parts.front(), y), Term::comm_merge(rest_sum(parts), y)),
                 "QCM9"};
      }
      if (y->kind() == TermKind::Alt) {
        const auto parts = summands(y);
        return R{Term::alt(Term::comm_merge(x, parts.front()), Term::comm_merge(x, rest_sum(parts))),
                 "QCM10"};
      }
      const bool xa = is_atomic(x->kind());
      const bool ya = is_atomic(y->kind());
      if (!(xa || is_prefix(x)) || !(ya || is_prefix(y))) return std::nullopt;
      const TermPtr hx = xa ? x : x->left();
      const TermPtr hy = ya ? y : y->left();
      std::optional<std::string> c;
      if (hx->kind() == TermKind::ClassicalAction && hy->kind() == TermKind::ClassicalAction) {
        c = model_.communicate(hx->name(), hy->name());
      }
      const char* rule = xa && ya ? "QCM5" : xa ? "QCM6" : ya ? "QCM7" : "QCM8";
      if (!c) return R{Term::deadlock(), rule};
      TermPtr head = Term::classical(*c);
      if (xa && ya) return R{head, rule};
      if (xa) return R{Term::seq(head, y->right()), rule};
      if (ya) return R{Term::seq(head, x->right()), rule};
      return R{Term::seq(head, Term::merge(x->right(), y->right())), rule};
    }
    case TermKind::Encap: {
      if (!has(System::Aqcp)) return std::nullopt;
      const TermPtr& b = t->body();
      const ActionSet& h = t->actions();
      if (b->kind() == TermKind::Deadlock) return R{b, "QD3"};
      if (is_atomic(b->kind())) {
        if (b->kind() != TermKind::Silent && contains(h, b->name())) return R{Term::deadlock(), "QD2"};
        return R{b, "QD1"};
      }
      if (b->kind() == TermKind::Alt) {
        const auto parts = summands(b);
        return R{Term::alt(Term::encap(h, parts.front()), Term::encap(h, rest_sum(parts))), "QD4"};
      }
      if (b->kind() == TermKind::Seq) {
        return R{Term::seq(Term::encap(h, b->left()), Term::encap(h, b->right())), "QD5"};
      }
      return std::nullopt;
    }
    case TermKind::Abstract: {
      if (!has(System::AqcpTau)) return std::nullopt;
      const TermPtr& b = t->body();
      const ActionSet& i = t->actions();
      if (b->kind() == TermKind::Deadlock) return R{b, "QTI3"};
      if (is_atomic(b->kind())) {
        if (b->kind() != TermKind::Silent && contains(i, b->name())) return R{Term::silent(), "QTI2"};
        return R{b, "QTI1"};
      }
      if (b->kind() == TermKind::Alt) {
        const auto parts = summands(b);
        return R{Term::alt(Term::abstract(i, parts.front()), Term::abstract(i, rest_sum(parts))),
                 "QTI4"};
      }
      if (b->kind() == TermKind::Seq) {
        return R{Term::seq(Term::abstract(i, b->left()), Term::abstract(i, b->right())), "QTI5"};
      }
      return std::nullopt;
    }
    case TermKind::Rename: {
      if (!has(System::AqcpTau)) return std::nullopt;
      const TermPtr& b = t->body();
      const RenameMap& f = t->renaming();
      if (b->kind() == TermKind::Deadlock) return R{b, "QRN2"};
      if (b->kind() == TermKind::Silent) return R{b, "QRN1"};
      if (is_action(b->kind())) {
        auto to = lookup(f, b->name());
        if (!to || *to == b->name()) return R{b, "QRN1"};
        if (b->kind() == TermKind::QuantumAction &&
            !same_operation(model_.quantum.at(b->name()), model_.quantum.at(*to))) {
          throw Error(ErrorKind::OperatorNotEliminable,
                      "renaming quantum action '" + b->name() + "' to '" + *to +
                          "' keeps the original operation, which no plain action expresses");
        }
        return R{same_kind_atom(b, *to), "QRN1"};
      }
      if (b->kind() == TermKind::Alt) {
        const auto parts = summands(b);
        return R{Term::alt(Term::rename(f, parts.front()), Term::rename(f, rest_sum(parts))), "QRN3"};
      }
      if (b->kind() == TermKind::Seq) {
        return R{Term::seq(Term::rename(f, b->left()), Term::rename(f, b->right())), "QRN4"};
      }
      return std::nullopt;
    }
    default: return std::nullopt;
  }
}

std::optional<RewriteStep> Rewriter::find(const TermPtr& t, Strategy strategy) const {
  if (strategy == Strategy::Outermost) {
    if (auto r = root_rule(t)) return RewriteStep{r->first, r->second, {}};
  }
  if (t->kind() == TermKind::Alt) {
    std::vector<TermPtr> parts = summands(t);
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (auto s = find(parts[i], strategy)) {
        parts[i] = s->result;
        s->position.insert(s->position.begin(), i);
        s->result = make_sum(parts);
        return s;
      }
    }
  } else if (is_binary(t->kind())) {
    if (auto s = find(t->left(), strategy)) {
      s->position.insert(s->position.begin(), 0);
      s->result = Term::binary(t->kind(), s->result, t->right());
      return s;
    }
    if (auto s = find(t->right(), strategy)) {
      s->position.insert(s->position.begin(), 1);
      s->result = Term::binary(t->kind(), t->left(), s->result);
      return s;
    }
  } else if (is_unary(t->kind())) {
    if (auto s = find(t->body(), strategy)) {
      s->position.insert(s->position.begin(), 0);
      if (t->kind() == TermKind::Encap) {
        s->result = Term::encap(t->actions(), s->result);
      } else if (t->kind() == TermKind::Abstract) {
        s->result = Term::abstract(t->actions(), s->result);
      } else {
        s->result = Term::rename(t->renaming(), s->result);
      }
      return s;
    }
  }
  if (strategy == Strategy::Innermost) {
    if (auto r = root_rule(t)) return RewriteStep{r->first, r->second, {}};
  }
  return std::nullopt;
}

std::optional<RewriteStep> Rewriter::rewrite_step(const TermPtr& term, Strategy strategy) const {
  auto s = find(ac_canonical(term), strategy);
  if (s) s->result = ac_canonical(s->result);
  return s;
}

TermPtr Rewriter::normalize_traced(const TermPtr& term, Strategy strategy, std::size_t budget,
                                   std::vector<RewriteStep>* trace) const {
  check_operators(term);
  TermPtr cur = ac_canonical(term);
  std::size_t steps = 0;
  while (auto s = find(cur, strategy)) {
    if (++steps > budget) {
      throw Error(ErrorKind::BudgetExceeded,
                  "no normal form within " + std::to_string(budget) + " rewrite steps");
    }
    cur = ac_canonical(s->result);
    if (trace) {
      s->result = cur;
      trace->push_back(std::move(*s));
    }
  }
  return cur;
}

TermPtr Rewriter::normalize(const TermPtr& term, std::size_t budget) const {
  check_operators(term);
  std::size_t steps = 0;
  return nf(term, steps, budget);
}

TermPtr Rewriter::nf(const TermPtr& t, std::size_t& steps, std::size_t budget) const {
  auto count = [&] {
    if (++steps > budget) {
      throw Error(ErrorKind::BudgetExceeded,
                  "no normal form within " + std::to_string(budget) + " rewrite steps");
    }
  };
  switch (t->kind()) {
    case TermKind::Alt: {
      std::vector<TermPtr> parts;
      for (const auto& s : summands(t)) {
        for (const auto& inner : summands(nf(s, steps, budget))) parts.push_back(inner);
      }
      std::stable_sort(parts.begin(), parts.end(), TermPtrLess{});
      // Sorted, so duplicates and deadlocks are adjacent or leading.
      std::vector<TermPtr> kept;
      for (const auto& p : parts) {
        if (!kept.empty() && structurally_equal(kept.back(), p)) {
          count();
          continue;
        }
        kept.push_back(p);
      }
      if (has(System::Qpap)) {
        while (kept.size() > 1 && kept.front()->kind() == TermKind::Deadlock) {
          count();
          kept.erase(kept.begin());
        }
      }
      return make_sum(kept);
    }
    case TermKind::Seq:
    case TermKind::Merge:
    case TermKind::LeftMerge:
    case TermKind::CommMerge:
    case TermKind::Encap:
    case TermKind::Abstract:
    case TermKind::Rename: {
      TermPtr node;
      if (is_binary(t->kind())) {
        TermPtr l = nf(t->left(), steps, budget);
        TermPtr r = nf(t->right(), steps, budget);
        node = (l == t->left() && r == t->right()) ? t : Term::binary(t->kind(), l, r);
      } else {
        TermPtr b = nf(t->body(), steps, budget);
        if (b == t->body()) {
          node = t;
        } else if (t->kind() == TermKind::Encap) {
          node = Term::encap(t->actions(), b);
        } else if (t->kind() == TermKind::Abstract) {
          node = Term::abstract(t->actions(), b);
        } else {
          node = Term::rename(t->renaming(), b);
        }
      }
      auto r = root_rule(node);
      if (!r) return node;
      count();
      return nf(r->first, steps, budget);
    }
    default: return t;
  }
}

}  // namespace qacp
