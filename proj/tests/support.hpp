#pragma once

#include <algorithm>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include <gfk/graph_state.hpp>

// Independent reference models and generators for the test suite. Everything
// here is deliberately naive: set-based graphs, O(n^3) rank, brute-force
// complementation.
namespace support {

using gfk::Edge;
using gfk::GraphState;
using gfk::VertexId;

inline std::pair<VertexId, VertexId> norm_pair(VertexId a, VertexId b) {
  return a < b ? std::make_pair(a, b) : std::make_pair(b, a);
}

// Set-of-edges reference model.
struct SetGraph {
  std::size_t n = 0;
  std::set<std::pair<VertexId, VertexId>> edges;

  static SetGraph from(const GraphState& g) {
    SetGraph s;
    s.n = g.vertex_count();
    for (const Edge& e : g.edges()) s.edges.insert(norm_pair(e.first, e.second));
    return s;
  }

  void toggle(VertexId a, VertexId b) {
    const auto e = norm_pair(a, b);
    if (!edges.insert(e).second) edges.erase(e);
  }

  std::vector<VertexId> neighbors(VertexId a) const {
    std::vector<VertexId> out;
    for (const auto& e : edges) {
      if (e.first == a) out.push_back(e.second);
      if (e.second == a) out.push_back(e.first);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  void local_complement(VertexId a) {
    const std::vector<VertexId> nb = neighbors(a);
    for (std::size_t i = 0; i < nb.size(); ++i) {
      for (std::size_t j = i + 1; j < nb.size(); ++j) toggle(nb[i], nb[j]);
    }
  }

  void measure_z(VertexId a) {
    for (VertexId b : neighbors(a)) toggle(a, b);
  }

  bool operator==(const SetGraph&) const = default;
};

inline bool same_structure(const GraphState& g, const SetGraph& s) {
  return SetGraph::from(g) == s;
}

// Textbook Gaussian elimination over GF(2) on a bool matrix.
inline std::size_t naive_rank(std::vector<std::vector<bool>> m) {
  if (m.empty()) return 0;
  const std::size_t rows = m.size();
  const std::size_t cols = m[0].size();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t pivot = rows;
    for (std::size_t r = rank; r < rows; ++r) {
      if (m[r][c]) {
        pivot = r;
        break;
      }
    }
    if (pivot == rows) continue;
    std::swap(m[rank], m[pivot]);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r != rank && m[r][c]) {
        for (std::size_t k = 0; k < cols; ++k) m[r][k] = m[r][k] != m[rank][k];
      }
    }
    ++rank;
  }
  return rank;
}

inline std::vector<Edge> pair_order(std::size_t n) {
  std::vector<Edge> pairs;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      pairs.emplace_back(static_cast<VertexId>(a), static_cast<VertexId>(b));
    }
  }
  return pairs;
}

// Every labeled graph on n vertices; callers keep n tiny.
inline std::vector<GraphState> all_graphs(std::size_t n) {
  const std::vector<Edge> pairs = pair_order(n);
  std::vector<GraphState> out;
  const std::size_t total = std::size_t{1} << pairs.size();
  out.reserve(total);
  for (std::size_t mask = 0; mask < total; ++mask) {
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      if (mask & (std::size_t{1} << i)) edges.push_back(pairs[i]);
    }
    out.push_back(gfk::new_graph(n, edges));
  }
  return out;
}

inline std::vector<GraphState> all_connected_graphs(std::size_t n) {
  std::vector<GraphState> out;
  for (GraphState& g : all_graphs(n)) {
    if (gfk::is_connected(g)) out.push_back(std::move(g));
  }
  return out;
}

inline GraphState random_graph(std::mt19937_64& rng, std::size_t n, double p = 0.5) {
  std::bernoulli_distribution coin(p);
  std::vector<Edge> edges;
  for (const Edge& e : pair_order(n)) {
    if (coin(rng)) edges.push_back(e);
  }
  return gfk::new_graph(n, edges);
}

// Random graph patched into one component by linking unreached vertices to
// random reached ones.
inline GraphState random_connected_graph(std::mt19937_64& rng, std::size_t n, double p = 0.5) {
  GraphState g = random_graph(rng, n, p);
  if (n <= 1) return g;
  std::vector<bool> seen(n, false);
  std::vector<VertexId> reached;
  const auto expand = [&](VertexId start) {
    std::vector<VertexId> stack{start};
    seen[start] = true;
    while (!stack.empty()) {
      const VertexId v = stack.back();
      stack.pop_back();
      reached.push_back(v);
      for (VertexId w : g.neighbors(v)) {
        if (!seen[w]) {
          seen[w] = true;
          stack.push_back(w);
        }
      }
    }
  };
  expand(0);
  for (std::size_t v = 1; v < n; ++v) {
    if (seen[v]) continue;
    std::uniform_int_distribution<std::size_t> pick(0, reached.size() - 1);
    g.toggle_edge(static_cast<VertexId>(v), reached[pick(rng)]);
    expand(static_cast<VertexId>(v));
  }
  return g;
}

inline GraphState star_graph(std::size_t leaves) {
  std::vector<Edge> edges;
  for (std::size_t i = 1; i <= leaves; ++i) edges.emplace_back(0, static_cast<VertexId>(i));
  return gfk::new_graph(leaves + 1, edges);
}

inline std::vector<VertexId> sorted_ids(std::vector<VertexId> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace support
