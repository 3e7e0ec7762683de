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
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qacp {

/// Operator tags. The declaration order is the primary key of the total
/// term order used for AC-canonical sums.
enum class TermKind : std::uint8_t {
  Deadlock,
  Silent,
  QuantumAction,
  ClassicalAction,
  RecVar,
  Seq,
  Alt,
  Merge,
  LeftMerge,
  CommMerge,
  Encap,
  Abstract,
  Rename,
};

class Term;
using TermPtr = std::shared_ptr<const Term>;

/// Sorted, duplicate-free list of action ids.
using ActionSet = std::vector<std::string>;
/// Sorted by source id, one entry per source.
using RenameMap = std::vector<std::pair<std::string, std::string>>;

ActionSet make_action_set(std::vector<std::string> ids);
RenameMap make_rename_map(std::vector<std::pair<std::string, std::string>> entries);
bool contains(const ActionSet& set, const std::string& id);
std::optional<std::string> lookup(const RenameMap& map, const std::string& id);

/// Immutable process term node. Children are shared, so sub-terms may be
/// referenced from many parents and many configurations at once.
class Term {
  struct Key {};

 public:
  Term(Key, TermKind kind, std::string name, TermPtr left, TermPtr right, ActionSet actions,
       RenameMap renaming);

  static TermPtr deadlock();
  static TermPtr silent();
  static TermPtr quantum(std::string name);
  static TermPtr classical(std::string name);
  static TermPtr var(std::string name);
  static TermPtr alt(TermPtr left, TermPtr right);
  static TermPtr seq(TermPtr left, TermPtr right);
  static TermPtr merge(TermPtr left, TermPtr right);
  static TermPtr left_merge(TermPtr left, TermPtr right);
  static TermPtr comm_merge(TermPtr left, TermPtr right);
  static TermPtr encap(ActionSet hide, TermPtr body);
  static TermPtr abstract(ActionSet internal, TermPtr body);
  static TermPtr rename(RenameMap map, TermPtr body);
  static TermPtr binary(TermKind kind, TermPtr left, TermPtr right);

  TermKind kind() const noexcept { return kind_; }
  /// Action id or recursion variable name; empty for operators.
  const std::string& name() const noexcept { return name_; }
  const TermPtr& left() const noexcept { return left_; }
  const TermPtr& right() const noexcept { return right_; }
  /// Operand of a unary operator.
  const TermPtr& body() const noexcept { return left_; }
  const ActionSet& actions() const noexcept { return actions_; }
  const RenameMap& renaming() const noexcept { return renaming_; }
  std::size_t hash() const noexcept { return hash_; }
  std::size_t size() const noexcept { return size_; }
  std::size_t depth() const noexcept { return depth_; }

 private:
  TermKind kind_;
  std::string name_;
  TermPtr left_;
  TermPtr right_;
  ActionSet actions_;
  RenameMap renaming_;
  std::size_t hash_ = 0;
  std::size_t size_ = 1;
  std::size_t depth_ = 1;
};

inline bool is_action(TermKind k) {
  return k == TermKind::QuantumAction || k == TermKind::ClassicalAction;
}
/// Actions and the silent step: the things that label a transition.
inline bool is_atomic(TermKind k) { return is_action(k) || k == TermKind::Silent; }
inline bool is_binary(TermKind k) { return k >= TermKind::Seq && k <= TermKind::CommMerge; }
inline bool is_unary(TermKind k) { return k >= TermKind::Encap; }

bool structurally_equal(const Term& a, const Term& b);
bool structurally_equal(const TermPtr& a, const TermPtr& b);
/// Total order: operator tag, then id, then operator sets, then children.
int compare_terms(const Term& a, const Term& b);

struct TermPtrHash {
  std::size_t operator()(const TermPtr& t) const noexcept { return t ? t->hash() : 0; }
};
struct TermPtrEqual {
  bool operator()(const TermPtr& a, const TermPtr& b) const { return structurally_equal(a, b); }
};
struct TermPtrLess {
  bool operator()(const TermPtr& a, const TermPtr& b) const { return compare_terms(*a, *b) < 0; }
};

/// Flattens nested Alt nodes left to right.
std::vector<TermPtr> summands(const TermPtr& t);
/// Right-nested Alt over the given summands; deadlock when empty.
TermPtr make_sum(const std::vector<TermPtr>& parts);

/// Visits every node in pre-order.
template <typename F>
void for_each_node(const TermPtr& t, F&& f) {
  if (!t) return;
  f(t);
  for_each_node(t->left(), f);
  for_each_node(t->right(), f);
}

}  // namespace qacp
