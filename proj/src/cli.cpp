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
#include "qacp/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <optional>
#include <sstream>

#include "qacp/bb84.hpp"
#include "qacp/equivalence.hpp"
#include "qacp/error.hpp"
#include "qacp/graph_export.hpp"
#include "qacp/lts.hpp"
#include "qacp/rewrite.hpp"
#include "qacp/semantics.hpp"
#include "qacp/syntax.hpp"
#include "qacp/verify.hpp"

namespace qacp::cli {
namespace {

using json = nlohmann::ordered_json;

struct Options {
  double tolerance = kPublicStateTolerance;
  std::string file;
  std::string term;
  std::string out_path;
  std::string format = "aut";
  bool dump_states = false;
  std::size_t max_states = GraphLimits{}.max_states;
  std::string system = "aqcp-tau";
  std::string strategy = "innermost";
  bool trace = false;
  std::string left;
  std::string right;
  std::string mode = "strong";
  std::string verify_mode = "rooted-branching";
  std::string impl;
  std::string spec;
  std::string hide;
  std::string internal;
  std::size_t qubits = 1;
  bool emit_model = false;
};

// A named term, or else term syntax.
TermPtr resolve_term(const std::string& text, const Model& model) {
  if (auto named = model.named_term(text)) return *named;
  return parse_term(text, model);
}

// A spec name stands for its first variable.
TermPtr resolve_spec(const std::string& text, const Model& model) {
  if (const RecursiveSpec* s = model.find_spec(text)) {
    if (s->equations.empty()) throw Error(ErrorKind::InvalidJob, "spec '" + text + "' is empty");
    return Term::var(s->equations.front().variable);
  }
  return resolve_term(text, model);
}

ActionSet resolve_set(const std::string& list, const Model& model) {
  std::vector<std::string> ids;
  std::string cur;
  int depth = 0;
  for (char c : list) {
    if (c == '(' || c == '[' || c == '{') ++depth;
    if (c == ')' || c == ']' || c == '}') --depth;
    if (c == ',' && depth == 0) {
      ids.push_back(cur);
      cur.clear();
    } else if (c != ' ') {
      cur += c;
    }
  }
  if (!cur.empty()) ids.push_back(cur);
  return model.resolve_action_set(ids);
}

json verdict_json(const Verdict& v) {
  json j;
  j["related"] = v.related;
  j["mode"] = std::string(mode_name(v.mode));
  j["witness_size"] = v.witness.size();
  j["counterexample"] = v.counterexample;
  if (!v.related) j["obligation"] = v.obligation;
  return j;
}

Mode need_mode(const std::string& text) {
  auto m = parse_mode(text);
  if (!m) throw Error(ErrorKind::InvalidArgument, "unknown mode '" + text + "'");
  return *m;
}

int cmd_parse(const Options& o, std::ostream& out) {
  const Model model = load_spec_file(o.file);
  json j;
  j["model"] = model.fingerprint();
  json regs = json::array();
  std::size_t dim = 1;
  for (const auto& r : model.registers) {
    regs.push_back({{"name", r.name}, {"dim", r.dim}, {"public", r.is_public}});
    dim *= r.dim;
  }
  j["registers"] = regs;
  j["dimension"] = dim;
  json q = json::array();
  for (const auto& [name, op] : model.quantum) q.push_back(name);
  j["quantum"] = q;
  j["classical"] = model.classical;
  json specs = json::object();
  for (const auto& s : model.specs) {
    json eqs = json::array();
    for (const auto& eq : s.equations) eqs.push_back(eq.variable + " = " + format_term(eq.body));
    specs[s.name] = eqs;
  }
  j["specs"] = specs;
  json terms = json::object();
  for (const auto& [name, t] : model.named_terms) terms[name] = format_term(t);
  j["terms"] = terms;
  if (!o.term.empty()) j["term"] = format_term(resolve_term(o.term, model));
  out << j.dump(2) << "\n";
  return 0;
}

int cmd_lts(const Options& o, std::ostream& out) {
  if (o.dump_states && o.format != "json") {
    throw Error(ErrorKind::InvalidArgument, "--dump-states needs --format json");
  }
  const Model model = load_spec_file(o.file);
  const TermPtr t = resolve_term(o.term, model);
  GraphLimits limits;
  limits.max_states = o.max_states;
  const ConfigGraph g = build_graph(t, model, limits, kRulesAll, o.tolerance);
  std::string text;
  if (o.format == "aut") {
    text = to_aut(to_lts(g));
  } else if (o.format == "dot") {
    text = to_dot(to_lts(g));
  } else {
    text = to_json(g, o.dump_states) + "\n";
  }
  if (o.out_path.empty()) {
    out << text;
    return 0;
  }
  std::ofstream f(o.out_path, std::ios::binary);
  if (!f) throw Error(ErrorKind::IoError, "cannot write '" + o.out_path + "'");
  f << text;
  json j;
  j["out"] = o.out_path;
  j["format"] = o.format;
  j["states"] = g.nodes.size();
  j["structural_states"] = g.structural_size();
  j["edges"] = g.edges.size();
  out << j.dump(2) << "\n";
  return 0;
}

int cmd_normalize(const Options& o, std::ostream& out) {
  const Model model = load_spec_file(o.file);
  const TermPtr t = resolve_term(o.term, model);
  auto system = parse_system(o.system);
  if (!system) throw Error(ErrorKind::InvalidArgument, "unknown system '" + o.system + "'");
  const Rewriter rw(model, *system);
  if (!o.trace) {
    json j;
    j["normal_form"] = format_term(rw.normalize(t));
    out << j.dump() << "\n";
    return 0;
  }
  const Strategy strategy = o.strategy == "outermost" ? Strategy::Outermost : Strategy::Innermost;
  std::vector<RewriteStep> steps;
  const TermPtr nf = rw.normalize_traced(t, strategy, kDefaultBudget, &steps);
  for (const auto& s : steps) {
    json line;
    line["rule"] = s.rule;
    line["position"] = s.position;
    line["term"] = format_term(s.result);
    out << line.dump() << "\n";
  }
  json j;
  j["normal_form"] = format_term(nf);
  out << j.dump() << "\n";
  return 0;
}

int cmd_bisim(const Options& o, std::ostream& out) {
  const Model model = load_spec_file(o.file);
  const TermPtr p = resolve_term(o.left, model);
  const TermPtr q = resolve_term(o.right, model);
  GraphLimits limits;
  limits.max_states = o.max_states;
  const TermVerdict tv = quantum_bisim_terms(p, q, model, need_mode(o.mode), limits);
  json j = verdict_json(tv.verdict);
  if (tv.reduction.applicable) {
    j["reduction"] = {{"structural_related", tv.reduction.structural_related},
                      {"final_states_equal", tv.reduction.final_states_equal},
                      {"agrees", tv.reduction.agrees}};
  }
  out << j.dump(2) << "\n";
  return tv.verdict.related ? 0 : 1;
}

json verification_json(const VerificationResult& r) {
  json j = verdict_json(r.verdict);
  j["explored_states"] = r.explored_states;
  j["minimized_states"] = r.implementation.size;
  j["minimized_aut"] = to_aut(r.implementation);
  return j;
}

int cmd_verify(const Options& o, std::ostream& out) {
  const Model model = load_spec_file(o.file);
  VerificationJob job;
  job.impl = resolve_term(o.impl, model);
  job.spec = resolve_spec(o.spec, model);
  job.hide = resolve_set(o.hide, model);
  job.internal = resolve_set(o.internal, model);
  job.mode = need_mode(o.verify_mode);
  job.limits.max_states = o.max_states;
  job.public_tolerance = o.tolerance;
  const VerificationResult r = check_external_behavior(job, model);
  out << verification_json(r).dump(2) << "\n";
  return r.verdict.related ? 0 : 1;
}

int cmd_bb84(const Options& o, std::ostream& out) {
  if (o.emit_model) {
    out << bb84_source(o.qubits);
    return 0;
  }
  const Model model = build_bb84(o.qubits);
  VerificationJob job = bb84_job(model);
  job.limits.max_states = o.max_states;
  job.public_tolerance = o.tolerance;
  const VerificationResult r = check_external_behavior(job, model);
  json j = verification_json(r);
  j["qubits"] = o.qubits;
  out << j.dump(2) << "\n";
  return r.verdict.related ? 0 : 1;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Quantum process algebra toolkit: graphs, bisimulation, normal forms."};
  app.name("qacp");
  app.require_subcommand(1);
  app.add_option("--tolerance", o.tolerance,
                 "Trace-distance bound for the public state under hidden actions")
      ->check(CLI::PositiveNumber);

  auto* parse = app.add_subcommand("parse", "Load a model and print its summary");
  parse->add_option("file", o.file, "Model file")->required();
  parse->add_option("--term", o.term, "Also parse this term (or named term)");

  auto* lts = app.add_subcommand("lts", "Build the configuration graph of a term");
  lts->add_option("file", o.file, "Model file")->required();
  lts->add_option("--term", o.term, "Term or named term")->required();
  lts->add_option("--out", o.out_path, "Write the graph here instead of stdout");
  lts->add_option("--format", o.format, "aut, dot or json")
      ->check(CLI::IsMember({"aut", "dot", "json"}));
  lts->add_flag("--dump-states", o.dump_states, "Include density matrices (json only)");
  lts->add_option("--max-states", o.max_states, "Configuration limit");

  auto* norm = app.add_subcommand("normalize", "Rewrite a closed term to normal form");
  norm->add_option("file", o.file, "Model file")->required();
  norm->add_option("--term", o.term, "Term or named term")->required();
  norm->add_option("--system", o.system, "bqpa, qpap, aqcp or aqcp-tau")
      ->check(CLI::IsMember({"bqpa", "qpap", "aqcp", "aqcp-tau"}));
  norm->add_option("--strategy", o.strategy, "Redex order for --trace-rewrites")
      ->check(CLI::IsMember({"innermost", "outermost"}));
  norm->add_flag("--trace-rewrites", o.trace, "Emit one JSON line per rewrite step");

  auto* bisim = app.add_subcommand("bisim", "Compare two terms");
  bisim->add_option("file", o.file, "Model file")->required();
  bisim->add_option("--left", o.left, "Term or named term")->required();
  bisim->add_option("--right", o.right, "Term or named term")->required();
  bisim->add_option("--mode", o.mode, "strong, branching or rooted-branching")
      ->check(CLI::IsMember({"strong", "branching", "rooted-branching", "rooted"}));
  bisim->add_option("--max-states", o.max_states, "Configuration limit per graph");

  auto* verify = app.add_subcommand("verify", "Check tau{I}(encap{H}(impl)) against a spec");
  verify->add_option("file", o.file, "Model file")->required();
  verify->add_option("--impl", o.impl, "Implementation term or named term")->required();
  verify->add_option("--spec", o.spec, "Spec name, variable or term")->required();
  verify->add_option("--hide", o.hide, "Comma-separated actions or set names for H");
  verify->add_option("--internal", o.internal, "Comma-separated actions or set names for I");
  verify->add_option("--mode", o.verify_mode, "strong, branching or rooted-branching")
      ->check(CLI::IsMember({"strong", "branching", "rooted-branching", "rooted"}));
  verify->add_option("--max-states", o.max_states, "Configuration limit");

  auto* bb84 = app.add_subcommand("bb84", "Verify the built-in BB84 model");
  bb84->add_option("--qubits", o.qubits, "Qubits per round")->check(CLI::PositiveNumber);
  bb84->add_flag("--emit-model", o.emit_model, "Print the model file instead");
  bb84->add_option("--max-states", o.max_states, "Configuration limit");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    if (code == 0) return 0;
    out << json{{"error", "InvalidArgument"}, {"message", e.what()}}.dump() << "\n";
    return 2;
  }

  try {
    if (*parse) return cmd_parse(o, out);
    if (*lts) return cmd_lts(o, out);
    if (*norm) return cmd_normalize(o, out);
    if (*bisim) return cmd_bisim(o, out);
    if (*verify) return cmd_verify(o, out);
    return cmd_bb84(o, out);
  } catch (const Error& e) {
    out << json{{"error", std::string(e.name())}, {"message", e.what()}}.dump() << "\n";
    err << "qacp: " << e.name() << ": " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    out << json{{"error", "InternalError"}, {"message", e.what()}}.dump() << "\n";
    err << "qacp: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace qacp::cli
