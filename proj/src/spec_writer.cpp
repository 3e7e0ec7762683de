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
#include <cmath>
#include <cstdio>
#include <string>

#include "qacp/syntax.hpp"

namespace qacp {
namespace {

std::string number(double v) {
  if (v == 0.0) return "0";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string complex_text(const Complex& c) {
  const double re = c.real();
  const double im = c.imag();
  if (im == 0.0) return number(re);
  std::string imag = number(std::abs(im)) + "i";
  if (re == 0.0) return (im < 0 ? "-" : "") + imag;
  return number(re) + (im < 0 ? "-" : "+") + imag;
}

void write_matrix(std::string& out, const Matrix& m) {
  out += '[';
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    if (i) out += ", ";
    out += '[';
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) out += ", ";
      out += complex_text(m(i, j));
    }
    out += ']';
  }
  out += ']';
}

void write_stage(std::string& out, const KrausSet& k) {
  if (!k.origin.empty()) {
    out += k.origin;
  } else if (k.operators.size() == 1) {
    write_matrix(out, k.operators.front());
  } else {
    out += "kraus {";
    for (std::size_t i = 0; i < k.operators.size(); ++i) {
      out += i ? ", " : " ";
      write_matrix(out, k.operators[i]);
    }
    out += " }";
  }
  out += " on ";
  for (std::size_t i = 0; i < k.acts_on.size(); ++i) {
    if (i) out += ", ";
    out += k.acts_on[i];
  }
}

}  // namespace

std::string write_spec(const Model& model) {
  std::string out;
  if (!model.registers.empty()) {
    out += "registers {\n";
    for (const auto& r : model.registers) {
      out += "  " + r.name;
      if (r.dim != 2) out += " : " + std::to_string(r.dim);
      if (!r.is_public) out += " private";
      out += ";\n";
    }
    out += "}\n\n";
  }
  if (!model.quantum.empty() || !model.classical.empty()) {
    out += "actions {\n";
    for (const auto& [name, op] : model.quantum) {
      out += "  quantum " + name + " = ";
      for (std::size_t i = 0; i < op.stages.size(); ++i) {
        if (i) out += "\n      then ";
        write_stage(out, op.stages[i]);
      }
      out += ";\n";
    }
    if (!model.classical.empty()) {
      out += "  classical ";
      bool first = true;
      for (const auto& c : model.classical) {
        if (!first) out += ",\n            ";
        out += c;
        first = false;
      }
      out += ";\n";
    }
    out += "}\n\n";
  }
  if (!model.gamma.empty()) {
    out += "gamma {\n";
    for (const auto& [key, result] : model.gamma) {
      if (key.first > key.second) continue;
      out += "  " + key.first + " | " + key.second + " -> " + result + ";\n";
    }
    out += "}\n\n";
  }
  for (const auto& [name, members] : model.action_sets) {
    out += "set " + name + " = {";
    for (std::size_t i = 0; i < members.size(); ++i) out += (i ? ", " : "") + members[i];
    out += "};\n";
  }
  if (!model.action_sets.empty()) out += "\n";
  for (const auto& spec : model.specs) {
    out += "spec " + spec.name + " {\n";
    for (const auto& eq : spec.equations) {
      out += "  " + eq.variable + " = " + format_term(eq.body) + ";\n";
    }
    out += "}\n\n";
  }
  for (const auto& [name, t] : model.named_terms) {
    out += "term " + name + " = " + format_term(t) + ";\n";
  }
  if (!model.named_terms.empty()) out += "\n";
  if (model.init.explicit_matrix) {
    out += "init = ";
    write_matrix(out, *model.init.explicit_matrix);
    out += ";\n";
  } else if (!model.init.digits.empty() || !model.init.apply.empty()) {
    out += "init {\n";
    for (const auto& [reg, d] : model.init.digits) {
      out += "  " + reg + " = " + std::to_string(d) + ";\n";
    }
    for (const auto& a : model.init.apply) out += "  apply " + a + ";\n";
    out += "}\n";
  }
  return out;
}

}  // namespace qacp
