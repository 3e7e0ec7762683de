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
#include "qacp/term.hpp"

#include <algorithm>
#include <functional>

namespace qacp {
namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

ActionSet make_action_set(std::vector<std::string> ids) {
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

RenameMap make_rename_map(std::vector<std::pair<std::string, std::string>> entries) {
  std::stable_sort(entries.begin(), entries.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  entries.erase(std::unique(entries.begin(), entries.end(),
                            [](const auto& a, const auto& b) { return a.first == b.first; }),
                entries.end());
  return entries;
}

bool contains(const ActionSet& set, const std::string& id) {
  return std::binary_search(set.begin(), set.end(), id);
}

std::optional<std::string> lookup(const RenameMap& map, const std::string& id) {
  auto it = std::lower_bound(map.begin(), map.end(), id,
                             [](const auto& entry, const std::string& key) { return entry.first < key; });
  if (it != map.end() && it->first == id) return it->second;
  return std::nullopt;
}

Term::Term(Key, TermKind kind, std::string name, TermPtr left, TermPtr right, ActionSet actions,
           RenameMap renaming)
    : kind_(kind),
      name_(std::move(name)),
      left_(std::move(left)),
      right_(std::move(right)),
      actions_(std::move(actions)),
      renaming_(std::move(renaming)) {
  std::hash<std::string> hs;
  hash_ = mix(static_cast<std::size_t>(kind_) * 1315423911ULL, hs(name_));
  for (const auto& a : actions_) hash_ = mix(hash_, hs(a));
  for (const auto& [from, to] : renaming_) hash_ = mix(mix(hash_, hs(from)), hs(to));
  std::size_t child_depth = 0;
  if (left_) {
    hash_ = mix(hash_, left_->hash());
    size_ += left_->size();
    child_depth = left_->depth();
  }
  if (right_) {
    hash_ = mix(hash_, right_->hash() * 31);
    size_ += right_->size();
    child_depth = std::max(child_depth, right_->depth());
  }
  depth_ = child_depth + 1;
}

TermPtr Term::deadlock() {
  static const TermPtr d = std::make_shared<const Term>(Key{}, TermKind::Deadlock, "", nullptr,
                                                        nullptr, ActionSet{}, RenameMap{});
  return d;
}

TermPtr Term::silent() {
  static const TermPtr t = std::make_shared<const Term>(Key{}, TermKind::Silent, "", nullptr,
                                                        nullptr, ActionSet{}, RenameMap{});
  return t;
}

TermPtr Term::quantum(std::string name) {
  return std::make_shared<const Term>(Key{}, TermKind::QuantumAction, std::move(name), nullptr,
                                      nullptr, ActionSet{}, RenameMap{});
}

TermPtr Term::classical(std::string name) {
  return std::make_shared<const Term>(Key{}, TermKind::ClassicalAction, std::move(name), nullptr,
                                      nullptr, ActionSet{}, RenameMap{});
}

TermPtr Term::var(std::string name) {
  return std::make_shared<const Term>(Key{}, TermKind::RecVar, std::move(name), nullptr, nullptr,
                                      ActionSet{}, RenameMap{});
}

TermPtr Term::binary(TermKind kind, TermPtr left, TermPtr right) {
  return std::make_shared<const Term>(Key{}, kind, "", std::move(left), std::move(right),
                                      ActionSet{}, RenameMap{});
}

TermPtr Term::alt(TermPtr l, TermPtr r) { return binary(TermKind::Alt, std::move(l), std::move(r)); }
TermPtr Term::seq(TermPtr l, TermPtr r) { return binary(TermKind::Seq, std::move(l), std::move(r)); }
TermPtr Term::merge(TermPtr l, TermPtr r) {
  return binary(TermKind::Merge, std::move(l), std::move(r));
}
TermPtr Term::left_merge(TermPtr l, TermPtr r) {
  return binary(TermKind::LeftMerge, std::move(l), std::move(r));
}
TermPtr Term::comm_merge(TermPtr l, TermPtr r) {
  return binary(TermKind::CommMerge, std::move(l), std::move(r));
}

TermPtr Term::encap(ActionSet hide, TermPtr body) {
  return std::make_shared<const Term>(Key{}, TermKind::Encap, "", std::move(body), nullptr,
                                      make_action_set(std::move(hide)), RenameMap{});
}

TermPtr Term::abstract(ActionSet internal, TermPtr body) {
  return std::make_shared<const Term>(Key{}, TermKind::Abstract, "", std::move(body), nullptr,
                                      make_action_set(std::move(internal)), RenameMap{});
}

TermPtr Term::rename(RenameMap map, TermPtr body) {
  return std::make_shared<const Term>(Key{}, TermKind::Rename, "", std::move(body), nullptr,
                                      ActionSet{}, make_rename_map(std::move(map)));
}

bool structurally_equal(const Term& a, const Term& b) {
  if (&a == &b) return true;
  if (a.hash() != b.hash() || a.kind() != b.kind() || a.size() != b.size()) return false;
  if (a.name() != b.name() || a.actions() != b.actions() || a.renaming() != b.renaming()) {
    return false;
  }
  if (static_cast<bool>(a.left()) != static_cast<bool>(b.left())) return false;
  if (static_cast<bool>(a.right()) != static_cast<bool>(b.right())) return false;
  if (a.left() && !structurally_equal(*a.left(), *b.left())) return false;
  if (a.right() && !structurally_equal(*a.right(), *b.right())) return false;
  return true;
}

bool structurally_equal(const TermPtr& a, const TermPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return structurally_equal(*a, *b);
}

int compare_terms(const Term& a, const Term& b) {
  if (&a == &b) return 0;
  if (a.kind() != b.kind()) return a.kind() < b.kind() ? -1 : 1;
  if (int c = a.name().compare(b.name()); c != 0) return c < 0 ? -1 : 1;
  if (a.actions() != b.actions()) return a.actions() < b.actions() ? -1 : 1;
  if (a.renaming() != b.renaming()) return a.renaming() < b.renaming() ? -1 : 1;
  if (a.left() && b.left()) {
    if (int c = compare_terms(*a.left(), *b.left()); c != 0) return c;
  }
  if (a.right() && b.right()) {
    if (int c = compare_terms(*a.right(), *b.right()); c != 0) return c;
  }
  return 0;
}

std::vector<TermPtr> summands(const TermPtr& t) {
  std::vector<TermPtr> out;
  std::vector<TermPtr> stack{t};
  while (!stack.empty()) {
    TermPtr cur = stack.back();
    stack.pop_back();
    if (cur->kind() == TermKind::Alt) {
      stack.push_back(cur->right());
      stack.push_back(cur->left());
    } else {
      out.push_back(cur);
    }
  }
  return out;
}

TermPtr make_sum(const std::vector<TermPtr>& parts) {
  if (parts.empty()) return Term::deadlock();
  TermPtr acc = parts.back();
  for (std::size_t i = parts.size() - 1; i-- > 0;) acc = Term::alt(parts[i], acc);
  return acc;
}

}  // namespace qacp
