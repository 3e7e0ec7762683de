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
#include "qacp/bb84.hpp"

#include "qacp/error.hpp"
#include "qacp/syntax.hpp"

namespace qacp {
namespace {

std::string reg(const char* base, std::size_t i, std::size_t n) {
  return n == 1 ? std::string(base) : std::string(base) + std::to_string(i + 1);
}

// One stage per qubit, chained with "then".
std::string per_qubit(std::size_t n, const std::vector<std::pair<std::string, std::vector<const char*>>>& steps) {
  std::string out;
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& [gate, regs] : steps) {
      if (!out.empty()) out += "\n      then ";
      out += gate + " on ";
      for (std::size_t k = 0; k < regs.size(); ++k) out += (k ? ", " : "") + reg(regs[k], i, n);
    }
  }
  return out;
}

std::string sum_of(const char* channel, const std::vector<std::string>& data, const std::string& next) {
  std::string out;
  for (std::size_t i = 0; i < data.size(); ++i) {
    out += (i ? " + " : "") + std::string(channel) + "(" + data[i] + ") . " + next;
  }
  return out;
}

}  // namespace

std::string bb84_source(std::size_t n, const Bb84Options& options) {
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "BB84 needs at least one qubit");
  if (options.inputs.empty() || options.outputs.empty()) {
    throw Error(ErrorKind::InvalidArgument, "BB84 data sets must not be empty");
  }
  std::string s = "# BB84 key distribution, " + std::to_string(n) + " qubit(s)\n\n";
  s += "registers {\n";
  for (std::size_t i = 0; i < n; ++i) {
    for (const char* r : {"q", "Ba", "Ka", "Bb", "Kb"}) s += "  " + reg(r, i, n) + " private;\n";
  }
  s += "}\n\nactions {\n";
  const std::vector<std::pair<std::string, std::string>> quantum = {
      {"Rand[q;B_a]", per_qubit(n, {{"randomize", {"Ba"}}})},
      {"Rand[q;K_a]", per_qubit(n, {{"randomize", {"Ka"}}})},
      {"Set_{K_a}[q]", per_qubit(n, {{"reset", {"q"}}, {"CNOT", {"Ka", "q"}}})},
      {"H_{B_a}[q]", per_qubit(n, {{"CH", {"Ba", "q"}}})},
      {"Rand[q';B_b]", per_qubit(n, {{"randomize", {"Bb"}}})},
      {"M[q;K_b]", per_qubit(n, {{"CH", {"Bb", "q"}}, {"reset", {"Kb"}}, {"CNOT", {"q", "Kb"}},
                                 {"measure", {"q"}}})},
  };
  for (const auto& [name, body] : quantum) s += "  quantum " + name + " = " + body + ";\n";
  s += "  classical ";
  std::vector<std::string> classical;
  for (const auto& d : options.inputs) classical.push_back("receive_A(" + d + ")");
  for (const auto& d : options.outputs) classical.push_back("send_B(" + d + ")");
  for (const char* c : {"send_Q(q)", "receive_Q(q)", "c_Q(q)", "send_P(B_b)", "receive_P(B_b)",
                        "c_P(B_b)", "send_P(B_a)", "receive_P(B_a)", "c_P(B_a)",
                        "cmp(K_{a,b},K_a,K_b,B_a,B_b)"}) {
    classical.emplace_back(c);
  }
  for (std::size_t i = 0; i < classical.size(); ++i) {
    s += (i ? ",\n            " : "") + classical[i];
  }
  s += ";\n}\n\n";
  s += "gamma {\n"
       "  send_Q(q) | receive_Q(q) -> c_Q(q);\n"
       "  send_P(B_b) | receive_P(B_b) -> c_P(B_b);\n"
       "  send_P(B_a) | receive_P(B_a) -> c_P(B_a);\n"
       "}\n\n";
  s += "set H = {send_Q(q), receive_Q(q), send_P(B_b), receive_P(B_b), send_P(B_a), "
       "receive_P(B_a)};\n";
  s += "set I = {Rand[q;B_a], Rand[q;K_a], Set_{K_a}[q], H_{B_a}[q], Rand[q';B_b], M[q;K_b],\n"
       "         c_Q(q), c_P(B_b), c_P(B_a), cmp(K_{a,b},K_a,K_b,B_a,B_b)};\n\n";
  s += "spec Alice {\n";
  s += "  A = " + sum_of("receive_A", options.inputs, "A1") + ";\n";
  s += "  A1 = Rand[q;B_a] . A2;\n"
       "  A2 = Rand[q;K_a] . A3;\n"
       "  A3 = Set_{K_a}[q] . A4;\n"
       "  A4 = H_{B_a}[q] . A5;\n"
       "  A5 = send_Q(q) . A6;\n"
       "  A6 = receive_P(B_b) . A7;\n"
       "  A7 = send_P(B_a) . A8;\n"
       "  A8 = cmp(K_{a,b},K_a,K_b,B_a,B_b) . A;\n"
       "}\n\n";
  s += "spec Bob {\n"
       "  B = receive_Q(q) . B1;\n"
       "  B1 = Rand[q';B_b] . B2;\n"
       "  B2 = M[q;K_b] . B3;\n"
       "  B3 = send_P(B_b) . B4;\n"
       "  B4 = receive_P(B_a) . B5;\n"
       "  B5 = cmp(K_{a,b},K_a,K_b,B_a,B_b) . B6;\n";
  s += "  B6 = " + sum_of("send_B", options.outputs, "B") + ";\n}\n\n";
  s += "spec External {\n";
  s += "  X = " + sum_of("receive_A", options.inputs, "Y") + ";\n";
  s += "  Y = " + sum_of("send_B", options.outputs, "X") + ";\n}\n\n";
  s += "term impl = encap{H}(A || B);\n";
  s += "term system = tau{I}(encap{H}(A || B));\n\n";
  // Start from the state one full round leaves behind, which every later
  // round reproduces.
  s += "init {\n";
  for (const auto& [name, body] : quantum) s += "  apply " + name + ";\n";
  s += "}\n";
  return s;
}

Model build_bb84(std::size_t n, const Bb84Options& options) {
  return parse_spec(bb84_source(n, options));
}

VerificationJob bb84_job(const Model& model) {
  VerificationJob job;
  job.impl = Term::merge(Term::var("A"), Term::var("B"));
  job.spec = Term::var("X");
  job.hide = model.resolve_action_set({"H"});
  job.internal = model.resolve_action_set({"I"});
  job.mode = Mode::RootedBranching;
  return job;
}

}  // namespace qacp
