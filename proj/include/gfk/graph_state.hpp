#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gfk {

using VertexId = std::uint32_t;
using Edge = std::pair<VertexId, VertexId>;

// Pauli-Z byproducts owed after a measurement with outcome 1.
struct CorrectionSet {
  std::vector<VertexId> pauli_z_targets;  // sorted ascending

  bool empty() const { return pauli_z_targets.empty(); }
  bool operator==(const CorrectionSet&) const = default;
};

enum class AncillaKind { Bell, GHZ };

// Simple undirected graph encoding a stabilizer graph state.
// Invariants: adjacency symmetric, zero diagonal, measured vertices isolated,
// labels (when assigned) unique.
class GraphState {
 public:
  GraphState() = default;

  explicit GraphState(std::size_t n)
      : n_(n), words_((n + 63) / 64), adj_(n * words_, 0), measured_(n, false) {}

  std::size_t vertex_count() const { return n_; }

  bool has_edge(VertexId a, VertexId b) const {
    require_valid(a);
    require_valid(b);
    if (a == b) return false;
    return bit(a, b);
  }

  // CZ primitive. Measured vertices must stay isolated.
  void toggle_edge(VertexId a, VertexId b) {
    require_active(a);
    require_active(b);
    if (a == b) throw std::invalid_argument("toggle_edge: self-loop on vertex " + std::to_string(a));
    flip(a, b);
    flip(b, a);
  }

  std::size_t degree(VertexId a) const {
    require_valid(a);
    std::size_t d = 0;
    for (std::size_t k = 0; k < words_; ++k) d += std::popcount(adj_[a * words_ + k]);
    return d;
  }

  std::vector<VertexId> neighbors(VertexId a) const {
    require_valid(a);
    std::vector<VertexId> out;
    for (std::size_t k = 0; k < words_; ++k) {
      std::uint64_t w = adj_[a * words_ + k];
      while (w) {
        const int tz = std::countr_zero(w);
        out.push_back(static_cast<VertexId>(k * 64 + tz));
        w &= w - 1;
      }
    }
    return out;  // ascending by construction
  }

  // Local complementation: toggles every edge among N(a), leaves edges at a alone.
  void local_complement_inplace(VertexId a) {
    require_active(a);
    const std::vector<VertexId> nb = neighbors(a);
    for (VertexId b : nb) {
      for (std::size_t k = 0; k < words_; ++k) {
        adj_[b * words_ + k] ^= adj_[a * words_ + k];
      }
      clear_bit(b, b);  // row_a carries bit b, which would become a self-loop
    }
  }

  // Z measurement: drops every edge at a, marks a measured; a stays as an
  // isolated vertex so ids remain stable across a transcript.
  CorrectionSet measure_z_inplace(VertexId a, int outcome) {
    require_valid(a);
    if (outcome != 0 && outcome != 1) {
      throw std::invalid_argument("measure_z: outcome must be 0 or 1");
    }
    CorrectionSet cs;
    if (measured_[a]) return cs;  // re-measuring an isolated measured vertex: no-op
    const std::vector<VertexId> nb = neighbors(a);
    if (outcome == 1) cs.pauli_z_targets = nb;
    for (VertexId b : nb) clear_bit(b, a);
    for (std::size_t k = 0; k < words_; ++k) adj_[a * words_ + k] = 0;
    measured_[a] = true;
    return cs;
  }

  bool measured(VertexId a) const {
    require_valid(a);
    return measured_[a];
  }

  // Appends m fresh isolated vertices, returns the id of the first.
  VertexId add_vertices(std::size_t m) {
    const std::size_t n2 = n_ + m;
    const std::size_t w2 = (n2 + 63) / 64;
    std::vector<std::uint64_t> adj2(n2 * w2, 0);
    for (std::size_t r = 0; r < n_; ++r) {
      for (std::size_t k = 0; k < words_; ++k) adj2[r * w2 + k] = adj_[r * words_ + k];
    }
    adj_ = std::move(adj2);
    const VertexId first = static_cast<VertexId>(n_);
    n_ = n2;
    words_ = w2;
    measured_.resize(n_, false);
    if (!labels_.empty()) {
      for (std::size_t v = n_ - m; v < n_; ++v) labels_.push_back(default_label(v));
    }
    return first;
  }

  bool has_labels() const { return !labels_.empty(); }

  // Base label, without the measured mark.
  std::string label(VertexId a) const {
    require_valid(a);
    return labels_.empty() ? default_label(a) : labels_[a];
  }

  // Label as rendered externally; a trailing '*' marks a measured vertex.
  std::string display_label(VertexId a) const {
    std::string s = label(a);
    if (measured_[a]) s += '*';
    return s;
  }

  void set_label(VertexId a, const std::string& name) {
    require_valid(a);
    materialize_labels();
    for (std::size_t v = 0; v < n_; ++v) {
      if (v != a && labels_[v] == name) {
        throw std::invalid_argument("set_label: duplicate label \"" + name + "\"");
      }
    }
    labels_[a] = name;
  }

  // Bulk assignment, validated as a whole set; unlike repeated set_label
  // calls this accepts permutations of the current names.
  void set_labels(std::vector<std::string> names) {
    if (names.size() != n_) {
      throw std::invalid_argument("set_labels: expected " + std::to_string(n_) + " names, got " +
                                  std::to_string(names.size()));
    }
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (names[i].empty()) throw std::invalid_argument("set_labels: empty label");
      for (std::size_t j = i + 1; j < names.size(); ++j) {
        if (names[i] == names[j]) {
          throw std::invalid_argument("set_labels: duplicate label \"" + names[i] + "\"");
        }
      }
    }
    labels_ = std::move(names);
  }

  bool has_label(const std::string& name) const {
    for (std::size_t v = 0; v < n_; ++v) {
      if (label(static_cast<VertexId>(v)) == name) return true;
    }
    return false;
  }

  // Edges with a < b, sorted lexicographically.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    for (std::size_t a = 0; a < n_; ++a) {
      for (VertexId b : neighbors(static_cast<VertexId>(a))) {
        if (b > a) out.emplace_back(static_cast<VertexId>(a), b);
      }
    }
    return out;
  }

  std::size_t edge_count() const {
    std::size_t total = 0;
    for (std::size_t a = 0; a < n_; ++a) total += degree(static_cast<VertexId>(a));
    return total / 2;
  }

  bool operator==(const GraphState& o) const {
    if (n_ != o.n_ || adj_ != o.adj_ || measured_ != o.measured_) return false;
    if (labels_.empty() && o.labels_.empty()) return true;
    for (std::size_t v = 0; v < n_; ++v) {
      if (label(static_cast<VertexId>(v)) != o.label(static_cast<VertexId>(v))) return false;
    }
    return true;
  }

  // Structural fingerprint: vertex count plus adjacency bits. Deterministic
  // across runs; ignores labels and measured marks.
  std::string structural_key() const {
    static const char* hexd = "0123456789abcdef";
    std::string key = std::to_string(n_);
    key += ':';
    for (std::uint64_t w : adj_) {
      for (int shift = 60; shift >= 0; shift -= 4) key += hexd[(w >> shift) & 0xf];
    }
    return key;
  }

 private:
  static std::string default_label(std::size_t v) { return "q" + std::to_string(v); }

  void materialize_labels() {
    if (labels_.empty()) {
      labels_.reserve(n_);
      for (std::size_t v = 0; v < n_; ++v) labels_.push_back(default_label(v));
    }
  }

  void require_valid(VertexId a) const {
    if (a >= n_) {
      throw std::out_of_range("vertex " + std::to_string(a) + " out of range (n=" +
                              std::to_string(n_) + ")");
    }
  }

  void require_active(VertexId a) const {
    require_valid(a);
    if (measured_[a]) {
      throw std::invalid_argument("vertex " + std::to_string(a) + " is already measured");
    }
  }

  bool bit(VertexId r, VertexId c) const {
    return (adj_[static_cast<std::size_t>(r) * words_ + c / 64] >> (c % 64)) & 1u;
  }

  void flip(VertexId r, VertexId c) {
    adj_[static_cast<std::size_t>(r) * words_ + c / 64] ^= std::uint64_t{1} << (c % 64);
  }

  void clear_bit(VertexId r, VertexId c) {
    adj_[static_cast<std::size_t>(r) * words_ + c / 64] &= ~(std::uint64_t{1} << (c % 64));
  }

  std::size_t n_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> adj_;
  std::vector<bool> measured_;
  std::vector<std::string> labels_;  // empty means default labels q0..q{n-1}
};

// ---- pure-value operation layer ----

inline GraphState new_graph(std::size_t n, std::span<const Edge> edges) {
  GraphState g(n);
  for (const Edge& e : edges) {
    if (e.first >= n || e.second >= n) {
      throw std::out_of_range("new_graph: edge (" + std::to_string(e.first) + "," +
                              std::to_string(e.second) + ") out of range");
    }
    if (e.first == e.second) {
      throw std::invalid_argument("new_graph: self-loop on vertex " + std::to_string(e.first));
    }
    g.toggle_edge(e.first, e.second);  // duplicates toggle by parity
  }
  return g;
}

inline GraphState new_graph(std::size_t n, std::initializer_list<Edge> edges) {
  return new_graph(n, std::span<const Edge>(edges.begin(), edges.size()));
}

inline GraphState new_graph(std::size_t n, const std::vector<Edge>& edges) {
  return new_graph(n, std::span<const Edge>(edges.data(), edges.size()));
}

inline GraphState apply_cz(const GraphState& g, VertexId a, VertexId b) {
  GraphState out = g;
  out.toggle_edge(a, b);
  return out;
}

inline GraphState local_complement(const GraphState& g, VertexId a) {
  GraphState out = g;
  out.local_complement_inplace(a);
  return out;
}

inline std::pair<GraphState, CorrectionSet> measure_z(const GraphState& g, VertexId a,
                                                      int outcome) {
  GraphState out = g;
  CorrectionSet cs = out.measure_z_inplace(a, outcome);
  return {std::move(out), std::move(cs)};
}

inline std::vector<VertexId> neighborhood(const GraphState& g, VertexId a) {
  return g.neighbors(a);
}

// Adds the ancilla resource as fresh vertices: Bell as a single edge, GHZ(m)
// as a star whose center is the first new vertex (co-located with hosts[0]).
// GHZ(1) is a lone unentangled vertex. New vertices take primed host labels.
inline std::pair<GraphState, std::vector<VertexId>> attach_ancilla(
    const GraphState& g, AncillaKind kind, std::span<const VertexId> hosts) {
  const std::size_t m = hosts.size();
  if (kind == AncillaKind::Bell && m != 2) {
    throw std::invalid_argument("attach_ancilla: Bell requires exactly 2 host vertices");
  }
  if (kind == AncillaKind::GHZ && m < 1) {
    throw std::invalid_argument("attach_ancilla: GHZ requires at least 1 host vertex");
  }
  for (std::size_t i = 0; i < m; ++i) {
    if (hosts[i] >= g.vertex_count()) {
      throw std::out_of_range("attach_ancilla: host " + std::to_string(hosts[i]) +
                              " out of range");
    }
    for (std::size_t j = i + 1; j < m; ++j) {
      if (hosts[i] == hosts[j]) {
        throw std::invalid_argument("attach_ancilla: duplicate host " +
                                    std::to_string(hosts[i]));
      }
    }
  }
  GraphState out = g;
  const VertexId first = out.add_vertices(m);
  std::vector<VertexId> fresh(m);
  for (std::size_t i = 0; i < m; ++i) {
    fresh[i] = first + static_cast<VertexId>(i);
    std::string name = g.label(hosts[i]) + "'";
    while (out.has_label(name)) name += "'";
    out.set_label(fresh[i], name);
  }
  for (std::size_t i = 1; i < m; ++i) out.toggle_edge(fresh[0], fresh[i]);
  return {std::move(out), std::move(fresh)};
}

inline std::pair<GraphState, std::vector<VertexId>> attach_ancilla(
    const GraphState& g, AncillaKind kind, std::initializer_list<VertexId> hosts) {
  return attach_ancilla(g, kind, std::span<const VertexId>(hosts.begin(), hosts.size()));
}

inline std::pair<GraphState, std::vector<VertexId>> attach_ancilla(
    const GraphState& g, AncillaKind kind, const std::vector<VertexId>& hosts) {
  return attach_ancilla(g, kind, std::span<const VertexId>(hosts.data(), hosts.size()));
}

inline std::string canonical_key(const GraphState& g) { return g.structural_key(); }

inline bool is_connected(const GraphState& g) {
  const std::size_t n = g.vertex_count();
  if (n <= 1) return true;
  std::vector<bool> seen(n, false);
  std::vector<VertexId> stack{0};
  seen[0] = true;
  std::size_t count = 1;
  while (!stack.empty()) {
    const VertexId v = stack.back();
    stack.pop_back();
    for (VertexId w : g.neighbors(v)) {
      if (!seen[w]) {
        seen[w] = true;
        ++count;
        stack.push_back(w);
      }
    }
  }
  return count == n;
}

// Drops measured vertices (isolated by invariant) and reindexes the rest.
inline GraphState compact_measured(const GraphState& g) {
  std::vector<VertexId> keep;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    if (!g.measured(static_cast<VertexId>(v))) keep.push_back(static_cast<VertexId>(v));
  }
  GraphState out(keep.size());
  for (std::size_t i = 0; i < keep.size(); ++i) {
    for (std::size_t j = i + 1; j < keep.size(); ++j) {
      if (g.has_edge(keep[i], keep[j])) {
        out.toggle_edge(static_cast<VertexId>(i), static_cast<VertexId>(j));
      }
    }
  }
  if (g.has_labels()) {
    std::vector<std::string> names;
    names.reserve(keep.size());
    for (VertexId v : keep) names.push_back(g.label(v));
    out.set_labels(std::move(names));
  }
  return out;
}

}  // namespace gfk
