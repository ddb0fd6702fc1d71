#pragma once

#include <cctype>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "gfk/entanglement.hpp"
#include "gfk/fission.hpp"
#include "gfk/graph_state.hpp"
#include "gfk/orbit.hpp"
#include "gfk/statevector.hpp"

namespace gfk {

using json = nlohmann::ordered_json;

inline json graph_to_json(const GraphState& g) {
  json j;
  j["n"] = g.vertex_count();
  json edges = json::array();
  for (const Edge& e : g.edges()) edges.push_back(json::array({e.first, e.second}));
  j["edges"] = std::move(edges);
  bool any_measured = false;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    if (g.measured(static_cast<VertexId>(v))) any_measured = true;
  }
  if (g.has_labels() || any_measured) {
    json labels = json::array();
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
      labels.push_back(g.display_label(static_cast<VertexId>(v)));
    }
    j["labels"] = std::move(labels);
  }
  return j;
}

inline GraphState graph_from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("graph json: expected an object");
  if (!j.contains("n") || !j["n"].is_number_unsigned()) {
    throw std::invalid_argument("graph json: missing or invalid field \"n\"");
  }
  if (!j.contains("edges") || !j["edges"].is_array()) {
    throw std::invalid_argument("graph json: missing or invalid field \"edges\"");
  }
  const std::size_t n = j["n"].get<std::size_t>();
  std::vector<Edge> edges;
  for (const json& e : j["edges"]) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_unsigned() ||
        !e[1].is_number_unsigned()) {
      throw std::invalid_argument("graph json: field \"edges\" must hold [a,b] pairs");
    }
    edges.emplace_back(e[0].get<VertexId>(), e[1].get<VertexId>());
  }
  GraphState g = new_graph(n, edges);
  if (j.contains("labels")) {
    if (!j["labels"].is_array() || j["labels"].size() != n) {
      throw std::invalid_argument("graph json: field \"labels\" must list one name per vertex");
    }
    std::vector<bool> measured(n, false);
    std::vector<std::string> names;
    names.reserve(n);
    for (std::size_t v = 0; v < n; ++v) {
      if (!j["labels"][v].is_string()) {
        throw std::invalid_argument("graph json: field \"labels\" must hold strings");
      }
      std::string name = j["labels"][v].get<std::string>();
      if (!name.empty() && name.back() == '*') {  // trailing '*' marks a measured vertex
        measured[v] = true;
        name.pop_back();
      }
      if (name.empty()) {
        throw std::invalid_argument("graph json: field \"labels\" holds an empty name");
      }
      names.push_back(std::move(name));
    }
    g.set_labels(std::move(names));
    for (std::size_t v = 0; v < n; ++v) {
      if (!measured[v]) continue;
      if (g.degree(static_cast<VertexId>(v)) != 0) {
        throw std::invalid_argument("graph json: measured vertex " + std::to_string(v) +
                                    " has edges");
      }
      g.measure_z_inplace(static_cast<VertexId>(v), 0);
    }
  }
  return g;
}

// Plain-text format: first token is the vertex count, then one "a b" pair per
// edge. '#' starts a comment.
inline GraphState parse_edge_list(const std::string& text) {
  std::string cleaned;
  cleaned.reserve(text.size());
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    cleaned += line;
    cleaned += '\n';
  }
  std::istringstream in(cleaned);
  std::size_t n = 0;
  if (!(in >> n)) throw std::invalid_argument("edge list: missing vertex count");
  std::vector<Edge> edges;
  VertexId a = 0;
  while (in >> a) {
    VertexId b = 0;
    if (!(in >> b)) throw std::invalid_argument("edge list: dangling edge endpoint");
    edges.emplace_back(a, b);
  }
  if (!in.eof()) throw std::invalid_argument("edge list: unexpected token");
  return new_graph(n, edges);
}

inline GraphState graph_from_dot(const std::string& text);

// Accepts the JSON schema, the edge-list format, or DOT produced by
// export_dot, sniffed by the first non-whitespace character. DOT output
// round-trips through its own reader this way.
inline GraphState parse_graph_text(const std::string& text) {
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    if (c == '{') return graph_from_json(json::parse(text));
    if (text.compare(i, 5, "graph") == 0 || c == '/') return graph_from_dot(text);
    return parse_edge_list(text);
  }
  throw std::invalid_argument("graph input: empty input");
}

inline std::string ancilla_kind_name(AncillaKind k) {
  return k == AncillaKind::Bell ? "bell" : "ghz";
}

inline AncillaKind ancilla_kind_from_name(const std::string& s) {
  if (s == "bell") return AncillaKind::Bell;
  if (s == "ghz") return AncillaKind::GHZ;
  throw std::invalid_argument("transcript json: unknown ancilla kind \"" + s + "\"");
}

inline json transcript_to_json(const Transcript& t) {
  json arr = json::array();
  for (const TranscriptStep& s : t.steps) {
    json step;
    switch (s.op) {
      case StepOp::AttachAncilla:
        step["op"] = "attach_ancilla";
        step["args"] = s.hosts;
        step["kind"] = ancilla_kind_name(s.kind);
        step["created"] = s.created;
        break;
      case StepOp::Cz:
        step["op"] = "cz";
        step["args"] = json::array({s.a, s.b});
        break;
      case StepOp::LocalComplement:
        step["op"] = "local_complement";
        step["args"] = json::array({s.a});
        break;
      case StepOp::MeasureZ:
        step["op"] = "measure_z";
        step["args"] = json::array({s.a});
        step["outcome"] = s.outcome;
        step["corrections"] = s.corrections.pauli_z_targets;
        break;
      case StepOp::Correction:
        step["op"] = "correction";
        step["args"] = s.corrections.pauli_z_targets;
        break;
    }
    arr.push_back(std::move(step));
  }
  return arr;
}

inline Transcript transcript_from_json(const json& arr, VertexId new_vertex,
                                       VertexId residual_vertex) {
  if (!arr.is_array()) throw std::invalid_argument("transcript json: expected an array");
  Transcript t;
  t.new_vertex = new_vertex;
  t.residual_vertex = residual_vertex;
  for (const json& step : arr) {
    if (!step.is_object() || !step.contains("op") || !step["op"].is_string()) {
      throw std::invalid_argument("transcript json: step missing field \"op\"");
    }
    if (!step.contains("args") || !step["args"].is_array()) {
      throw std::invalid_argument("transcript json: step missing field \"args\"");
    }
    const std::string op = step["op"].get<std::string>();
    const auto args = step["args"].get<std::vector<VertexId>>();
    TranscriptStep s;
    if (op == "attach_ancilla") {
      if (!step.contains("kind") || !step.contains("created")) {
        throw std::invalid_argument("transcript json: attach_ancilla needs \"kind\" and \"created\"");
      }
      s = step_attach(ancilla_kind_from_name(step["kind"].get<std::string>()), args,
                      step["created"].get<std::vector<VertexId>>());
    } else if (op == "cz") {
      if (args.size() != 2) throw std::invalid_argument("transcript json: cz needs 2 args");
      s = step_cz(args[0], args[1]);
    } else if (op == "local_complement") {
      if (args.size() != 1) {
        throw std::invalid_argument("transcript json: local_complement needs 1 arg");
      }
      s = step_lc(args[0]);
    } else if (op == "measure_z") {
      if (args.size() != 1 || !step.contains("outcome") || !step.contains("corrections")) {
        throw std::invalid_argument(
            "transcript json: measure_z needs 1 arg plus \"outcome\" and \"corrections\"");
      }
      s = step_measure(args[0], step["outcome"].get<int>(),
                       CorrectionSet{step["corrections"].get<std::vector<VertexId>>()});
    } else if (op == "correction") {
      s.op = StepOp::Correction;
      s.corrections.pauli_z_targets = args;
    } else {
      throw std::invalid_argument("transcript json: unknown op \"" + op + "\"");
    }
    t.steps.push_back(std::move(s));
  }
  return t;
}

inline json audit_to_json(const FissionAudit& a) {
  json j;
  j["pre"] = a.pre_ebits_target;
  j["post"] = a.post_ebits_node;
  j["ancilla"] = a.ancilla_ebits_supplied;
  j["satisfied"] = a.satisfied;
  return j;
}

inline json orbit_to_json(const OrbitResult& r) {
  json j;
  j["representative"] = graph_to_json(r.representative);
  j["lc_sequence"] = r.lc_sequence;
  j["cost_before"] = r.ancilla_cost_before;
  j["cost_after"] = r.ancilla_cost_after;
  j["nodes_explored"] = r.nodes_explored;
  j["exhausted"] = r.exhausted;
  return j;
}

// Debug dump: one [re, im] pair per amplitude.
inline json statevector_to_json(const StateVector& psi) {
  json arr = json::array();
  for (const auto& a : psi.amplitudes) arr.push_back(json::array({a.real(), a.imag()}));
  return arr;
}

enum class Role { Target, Kept, Complement, Split, Ancilla, Measured };

namespace detail {

inline std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

inline std::string role_attrs(Role r) {
  switch (r) {
    case Role::Target:
      return ", style=filled, fillcolor=yellow";
    case Role::Kept:
      return ", style=filled, fillcolor=lightblue";
    case Role::Complement:
      return ", style=filled, fillcolor=lightgreen";
    case Role::Split:
      return ", style=filled, fillcolor=orange";
    case Role::Ancilla:
      return ", style=\"filled,dashed\", fillcolor=gray90";
    case Role::Measured:
      return ", style=\"filled,dotted\", fillcolor=gray90";
  }
  return "";
}

}  // namespace detail

// DOT rendering. The embedded gfk-json comment carries the exact JSON schema
// so the structure survives a round trip through the drawing.
inline std::string export_dot(const GraphState& g, const std::map<VertexId, Role>& roles = {}) {
  std::string out = "graph gfk {\n";
  out += "  // gfk-json: " + graph_to_json(g).dump() + "\n";
  out += "  node [shape=circle];\n";
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    const VertexId id = static_cast<VertexId>(v);
    out += "  " + std::to_string(v) + " [label=\"" + detail::dot_escape(g.display_label(id)) +
           "\"";
    const auto it = roles.find(id);
    if (it != roles.end()) {
      out += detail::role_attrs(it->second);
    } else if (g.measured(id)) {
      out += detail::role_attrs(Role::Measured);
    }
    out += "];\n";
  }
  for (const Edge& e : g.edges()) {
    out += "  " + std::to_string(e.first) + " -- " + std::to_string(e.second) + ";\n";
  }
  out += "}\n";
  return out;
}

inline GraphState graph_from_dot(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  const std::string tag = "// gfk-json: ";
  while (std::getline(in, line)) {
    const std::size_t start = line.find_first_not_of(" \t");
    if (start == std::string::npos) continue;
    if (line.compare(start, tag.size(), tag) == 0) {
      return graph_from_json(json::parse(line.substr(start + tag.size())));
    }
  }
  throw std::invalid_argument("dot input: missing gfk-json comment");
}

}  // namespace gfk
