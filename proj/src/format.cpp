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
#include <string>

#include "qacp/syntax.hpp"

namespace qacp {
namespace {

int level(TermKind k) {
  switch (k) {
    case TermKind::Alt: return 1;
    case TermKind::Merge:
    case TermKind::LeftMerge:
    case TermKind::CommMerge: return 2;
    case TermKind::Seq: return 3;
    default: return 4;
  }
}

const char* op_text(TermKind k) {
  switch (k) {
    case TermKind::Alt: return " + ";
    case TermKind::Seq: return " . ";
    case TermKind::Merge: return " || ";
    case TermKind::LeftMerge: return " |_ ";
    case TermKind::CommMerge: return " | ";
    default: return "";
  }
}

void write_set(std::string& out, const ActionSet& set) {
  out += '{';
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (i) out += ", ";
    out += set[i];
  }
  out += '}';
}

void write(std::string& out, const Term& t) {
  switch (t.kind()) {
    case TermKind::Deadlock: out += "delta"; return;
    case TermKind::Silent: out += "tau"; return;
    case TermKind::QuantumAction:
    case TermKind::ClassicalAction:
    case TermKind::RecVar: out += t.name(); return;
    case TermKind::Encap:
    case TermKind::Abstract:
      out += t.kind() == TermKind::Encap ? "encap" : "tau";
      write_set(out, t.actions());
      out += '(';
      write(out, *t.body());
      out += ')';
      return;
    case TermKind::Rename:
      out += "rename{";
      for (std::size_t i = 0; i < t.renaming().size(); ++i) {
        if (i) out += ", ";
        out += t.renaming()[i].first;
        out += " -> ";
        out += t.renaming()[i].second;
      }
      out += "}(";
      write(out, *t.body());
      out += ')';
      return;
    default: break;
  }
  const int lv = level(t.kind());
  const Term& l = *t.left();
  const Term& r = *t.right();
  const bool wrap_left = level(l.kind()) <= lv;
  const bool wrap_right =
      level(r.kind()) < lv || (level(r.kind()) == lv && r.kind() != t.kind());
  if (wrap_left) out += '(';
  write(out, l);
  if (wrap_left) out += ')';
  out += op_text(t.kind());
  if (wrap_right) out += '(';
  write(out, r);
  if (wrap_right) out += ')';
}

}  // namespace

std::string format_term(const TermPtr& term) {
  std::string out;
  if (term) write(out, *term);
  return out;
}

}  // namespace qacp
