#pragma once

#include <algorithm>
#include <cstddef>
#include <deque>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "gfk/graph_state.hpp"

namespace gfk {

struct OrbitResult {
  GraphState representative;
  std::vector<VertexId> lc_sequence;     // complementation sites, in order
  std::size_t ancilla_cost_before = 0;   // GHZ qubit count for the input graph
  std::size_t ancilla_cost_after = 0;    // for the representative
  std::size_t nodes_explored = 0;
  bool exhausted = false;                // whole restricted orbit enumerated within budget
};

namespace detail {

// The caller's kept set keeps its vertex identities while complementations
// reshuffle the neighborhood; the side that must travel is its surviving
// image W ∩ N(target).
inline std::size_t surviving_kept(const GraphState& g, VertexId target,
                                  const std::vector<bool>& in_kept) {
  std::size_t k = 0;
  for (VertexId b : g.neighbors(target)) {
    if (in_kept[b]) ++k;
  }
  return k;
}

// GHZ size needed to split the surviving kept image off the target, or 0 when
// either side is empty (no proper split available in this frame).
inline std::size_t split_cost(const GraphState& g, VertexId target,
                              const std::vector<bool>& in_kept) {
  const std::size_t deg = g.degree(target);
  const std::size_t k = surviving_kept(g, target, in_kept);
  if (k == 0 || k == deg) return 0;
  return std::min(k, deg - k) + 1;
}

}  // namespace detail

// Bounded breadth-first search over the local-complementation orbit for a
// frame where splitting the kept set off the target needs a smaller ancilla.
// Complementation sites exclude the target unless include_target is set.
// When the budget trips, a greedy descent continues from the best frame found
// and exhausted stays false.
inline OrbitResult minimize_resources(const GraphState& g, VertexId target,
                                      const std::vector<VertexId>& kept_in, std::size_t budget,
                                      bool include_target = false) {
  if (target >= g.vertex_count()) {
    throw std::out_of_range("minimize_resources: target out of range");
  }
  if (g.measured(target)) {
    throw std::invalid_argument("minimize_resources: target is already measured");
  }
  if (budget < 1) {
    throw std::invalid_argument("minimize_resources: budget must be at least 1");
  }
  std::vector<VertexId> kept = kept_in;
  std::sort(kept.begin(), kept.end());
  kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
  const std::vector<VertexId> nbhd = g.neighbors(target);
  if (!std::includes(nbhd.begin(), nbhd.end(), kept.begin(), kept.end())) {
    throw std::invalid_argument(
        "minimize_resources: kept set is not a subset of the target's neighborhood");
  }
  if (kept.empty() || kept.size() == nbhd.size()) {
    throw std::invalid_argument("minimize_resources: kept set does not split the neighborhood");
  }

  std::vector<bool> in_kept(g.vertex_count(), false);
  for (VertexId v : kept) in_kept[v] = true;

  OrbitResult best;
  best.representative = g;
  best.ancilla_cost_before = detail::split_cost(g, target, in_kept);
  best.ancilla_cost_after = best.ancilla_cost_before;

  struct Node {
    GraphState graph;
    std::vector<VertexId> lc_sequence;
  };
  std::deque<Node> queue;
  std::unordered_set<std::string> seen;
  seen.insert(canonical_key(g));
  queue.push_back(Node{g, {}});

  std::size_t best_cost = best.ancilla_cost_after;
  bool budget_hit = false;
  while (!queue.empty()) {
    if (best.nodes_explored >= budget) {
      budget_hit = true;
      break;
    }
    Node node = std::move(queue.front());
    queue.pop_front();
    ++best.nodes_explored;
    for (std::size_t v = 0; v < node.graph.vertex_count(); ++v) {
      const VertexId site = static_cast<VertexId>(v);
      if (!include_target && site == target) continue;
      if (node.graph.degree(site) <= 1) continue;  // complementation is a no-op
      GraphState next = local_complement(node.graph, site);
      if (!seen.insert(canonical_key(next)).second) continue;
      std::vector<VertexId> seq = node.lc_sequence;
      seq.push_back(site);
      const std::size_t cost = detail::split_cost(next, target, in_kept);
      if (cost != 0 && cost < best_cost) {  // BFS order makes first hit the tie-break winner
        best_cost = cost;
        best.representative = next;
        best.lc_sequence = seq;
        best.ancilla_cost_after = cost;
      }
      queue.push_back(Node{std::move(next), std::move(seq)});
    }
  }
  best.exhausted = !budget_hit;

  if (budget_hit) {
    // Greedy descent: keep taking the single complementation that most
    // reduces the cost. Strict decrease bounds the loop.
    bool improved = true;
    while (improved) {
      improved = false;
      GraphState pick;
      VertexId pick_site = 0;
      std::size_t pick_cost = best_cost;
      for (std::size_t v = 0; v < best.representative.vertex_count(); ++v) {
        const VertexId site = static_cast<VertexId>(v);
        if (!include_target && site == target) continue;
        if (best.representative.degree(site) <= 1) continue;
        GraphState next = local_complement(best.representative, site);
        const std::size_t cost = detail::split_cost(next, target, in_kept);
        if (cost != 0 && cost < pick_cost) {
          pick = std::move(next);
          pick_site = site;
          pick_cost = cost;
          improved = true;
        }
      }
      if (improved) {
        best.representative = std::move(pick);
        best.lc_sequence.push_back(pick_site);
        best.ancilla_cost_after = pick_cost;
        best_cost = pick_cost;
      }
    }
  }
  return best;
}

}  // namespace gfk
