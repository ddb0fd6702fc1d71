#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "gfk/fission.hpp"
#include "gfk/gf2.hpp"
#include "gfk/graph_state.hpp"

namespace gfk {

// Vertex subset A; side B is the implicit complement. Either side may be empty.
struct Bipartition {
  std::vector<VertexId> side_a;

  static Bipartition of(std::vector<VertexId> vs) {
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    return Bipartition{std::move(vs)};
  }
};

// GF(2) rank of the adjacency block between A and its complement: the number
// of ebits the graph state holds across that bipartition.
inline std::size_t cut_rank(const GraphState& g, const Bipartition& p) {
  const std::size_t n = g.vertex_count();
  std::vector<bool> in_a(n, false);
  for (VertexId v : p.side_a) {
    if (v >= n) {
      throw std::out_of_range("cut_rank: vertex " + std::to_string(v) + " out of range");
    }
    in_a[v] = true;
  }
  std::vector<VertexId> a_side, b_side;
  for (std::size_t v = 0; v < n; ++v) {
    (in_a[v] ? a_side : b_side).push_back(static_cast<VertexId>(v));
  }
  if (a_side.empty() || b_side.empty()) return 0;

  BitMatrix block(a_side.size(), b_side.size());
  for (std::size_t i = 0; i < a_side.size(); ++i) {
    for (std::size_t j = 0; j < b_side.size(); ++j) {
      if (g.has_edge(a_side[i], b_side[j])) block.set(i, j, true);
    }
  }
  return block.rank_destructive();
}

// A connected graph state has exactly one ebit across every single-vertex cut.
inline bool check_one_uniform(const GraphState& g) {
  if (!is_connected(g)) return false;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    if (cut_rank(g, Bipartition{{static_cast<VertexId>(v)}}) != 1) return false;
  }
  return true;
}

// Entanglement balance for one fission run: the co-located split party may
// gain at most one ebit per ancilla round over what the target held before.
struct FissionAudit {
  std::size_t pre_ebits_target = 0;
  std::size_t post_ebits_node = 0;
  std::size_t ancilla_ebits_supplied = 0;
  bool satisfied = false;
};

inline FissionAudit audit_fission(const GraphState& g_pre, const FissionOutcome& outcome,
                                  VertexId target) {
  if (target >= g_pre.vertex_count()) {
    throw std::out_of_range("audit_fission: target out of range for the pre graph");
  }
  if (outcome.graph.vertex_count() < g_pre.vertex_count() || outcome.node_vertices.empty()) {
    throw std::invalid_argument("audit_fission: outcome does not extend the pre graph");
  }
  for (VertexId v : outcome.node_vertices) {
    if (v >= outcome.graph.vertex_count()) {
      throw std::invalid_argument("audit_fission: outcome node vertex out of range");
    }
  }
  FissionAudit audit;
  audit.pre_ebits_target = cut_rank(g_pre, Bipartition{{target}});
  audit.post_ebits_node = cut_rank(outcome.graph, Bipartition::of(outcome.node_vertices));
  audit.ancilla_ebits_supplied = outcome.rounds;
  const long long gain = static_cast<long long>(audit.post_ebits_node) -
                         static_cast<long long>(audit.pre_ebits_target);
  audit.satisfied = gain <= static_cast<long long>(audit.ancilla_ebits_supplied);
  return audit;
}

}  // namespace gfk
