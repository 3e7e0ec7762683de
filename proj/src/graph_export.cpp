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
#include "qacp/graph_export.hpp"

#include <json.hpp>

#include "qacp/syntax.hpp"

namespace qacp {
namespace {

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

std::string_view kind_name(LabelKind k) {
  switch (k) {
    case LabelKind::Quantum: return "quantum";
    case LabelKind::Classical: return "classical";
    case LabelKind::Silent: return "silent";
  }
  return "classical";
}

}  // namespace

std::string to_aut(const Lts& lts) {
  std::size_t ticks = 0;
  for (const auto& t : lts.termination) ticks += t ? 1 : 0;
  const std::size_t states = lts.size + (ticks ? 1 : 0);
  std::string out = "des (" + std::to_string(lts.root) + ", " +
                    std::to_string(lts.edges.size() + ticks) + ", " + std::to_string(states) +
                    ")\n";
  for (const auto& e : lts.edges) {
    out += "(" + std::to_string(e.from) + ",\"" + escape(e.label) + "\"," + std::to_string(e.to) +
           ")\n";
  }
  for (std::size_t i = 0; i < lts.size; ++i) {
    if (lts.termination[i]) {
      out += "(" + std::to_string(i) + ",\"tick\"," + std::to_string(lts.size) + ")\n";
    }
  }
  return out;
}

std::string to_dot(const Lts& lts) {
  std::string out = "digraph lts {\n  rankdir=LR;\n";
  for (std::size_t i = 0; i < lts.size; ++i) {
    out += "  n" + std::to_string(i) + " [label=\"" + std::to_string(i) + "\"";
    if (lts.termination[i]) out += ", shape=doublecircle";
    if (i == lts.root) out += ", style=bold";
    out += "];\n";
  }
  for (const auto& e : lts.edges) {
    out += "  n" + std::to_string(e.from) + " -> n" + std::to_string(e.to) + " [label=\"" +
           escape(e.label) + "\"];\n";
  }
  out += "}\n";
  return out;
}

std::string to_json(const ConfigGraph& graph, bool dump_states) {
  nlohmann::ordered_json j;
  j["model"] = graph.model_id;
  j["root"] = graph.root;
  auto nodes = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < graph.nodes.size(); ++i) {
    const auto& n = graph.nodes[i];
    nlohmann::ordered_json node;
    node["id"] = i;
    node["term"] = n.term ? format_term(n.term) : std::string("tick");
    node["terminated"] = !n.term;
    if (dump_states) {
      const Matrix& m = n.state->matrix();
      auto entries = nlohmann::ordered_json::array();
      for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
          entries.push_back({m(r, c).real(), m(r, c).imag()});
        }
      }
      node["dimension"] = m.rows();
      node["state"] = std::move(entries);
    }
    nodes.push_back(std::move(node));
  }
  j["nodes"] = std::move(nodes);
  auto edges = nlohmann::ordered_json::array();
  for (const auto& e : graph.edges) {
    edges.push_back({{"from", e.from}, {"label", e.label}, {"kind", kind_name(e.kind)}, {"to", e.to}});
  }
  j["edges"] = std::move(edges);
  return j.dump(2) + "\n";
}

}  // namespace qacp
