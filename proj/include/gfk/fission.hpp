#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gfk/graph_state.hpp"

namespace gfk {

enum class StepOp { AttachAncilla, Cz, LocalComplement, MeasureZ, Correction };

struct TranscriptStep {
  StepOp op{};
  AncillaKind kind = AncillaKind::GHZ;  // attach_ancilla only
  std::vector<VertexId> hosts;          // attach_ancilla: existing vertices the ancilla maps onto
  std::vector<VertexId> created;        // attach_ancilla: fresh vertex ids
  VertexId a = 0;                       // cz / local_complement / measure_z
  VertexId b = 0;                       // cz only
  int outcome = -1;                     // measure_z only
  CorrectionSet corrections;            // measure_z / correction

  bool operator==(const TranscriptStep&) const = default;
};

inline TranscriptStep step_attach(AncillaKind kind, std::vector<VertexId> hosts,
                                  std::vector<VertexId> created) {
  TranscriptStep s;
  s.op = StepOp::AttachAncilla;
  s.kind = kind;
  s.hosts = std::move(hosts);
  s.created = std::move(created);
  return s;
}

inline TranscriptStep step_cz(VertexId a, VertexId b) {
  TranscriptStep s;
  s.op = StepOp::Cz;
  s.a = a;
  s.b = b;
  return s;
}

inline TranscriptStep step_lc(VertexId a) {
  TranscriptStep s;
  s.op = StepOp::LocalComplement;
  s.a = a;
  return s;
}

inline TranscriptStep step_measure(VertexId a, int outcome, CorrectionSet corrections) {
  TranscriptStep s;
  s.op = StepOp::MeasureZ;
  s.a = a;
  s.outcome = outcome;
  s.corrections = std::move(corrections);
  return s;
}

// Replayable record of one or more fission runs. new_vertex ends adjacent to
// exactly the caller's kept set; residual_vertex keeps the remaining
// neighbors. The two together are the co-located split pair of the last round.
struct Transcript {
  std::vector<TranscriptStep> steps;
  VertexId new_vertex = 0;
  VertexId residual_vertex = 0;

  bool operator==(const Transcript&) const = default;
};

// Plan for one fission round. travel is the side that physically rides with
// the attached ancilla center: the caller's kept set, or its complement when
// that is smaller (swapped = true, roles reported back accordingly).
struct FissionSpec {
  VertexId target = 0;
  std::vector<VertexId> kept;    // sorted; ends on the reported new vertex
  std::vector<VertexId> travel;  // sorted; min(kept, complement) side
  AncillaKind ancilla_kind = AncillaKind::GHZ;
  bool swapped = false;
  bool degenerate = false;  // kept empty, or kept = whole neighborhood
};

struct FissionOutcome {
  GraphState graph;
  Transcript transcript;
  std::size_t ancilla_qubits_used = 0;
  std::size_t ancilla_ebits_used = 0;  // 1 per round spending real entanglement, 0 for a lone-vertex ancilla
  std::size_t rounds = 0;
  bool degenerate = false;
  std::vector<VertexId> node_vertices;  // all co-located split qubits; for iterate, aligned with partition blocks
};

namespace detail {

inline std::vector<VertexId> sorted_unique(std::vector<VertexId> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

inline bool is_subset(const std::vector<VertexId>& sub, const std::vector<VertexId>& super) {
  return std::includes(super.begin(), super.end(), sub.begin(), sub.end());
}

inline std::vector<VertexId> difference(const std::vector<VertexId>& a,
                                        const std::vector<VertexId>& b) {
  std::vector<VertexId> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace detail

// Chooses the cheaper side to split off: the ancilla is sized by
// min(|kept|, |complement|) + 1, Bell when that minimum is 1.
inline FissionSpec plan_fission(const GraphState& g, VertexId target,
                                const std::vector<VertexId>& kept_in) {
  if (target >= g.vertex_count()) {
    throw std::out_of_range("plan_fission: target " + std::to_string(target) + " out of range");
  }
  if (g.measured(target)) {
    throw std::invalid_argument("plan_fission: target " + std::to_string(target) +
                                " is already measured");
  }
  const std::vector<VertexId> nbhd = g.neighbors(target);
  const std::vector<VertexId> kept = detail::sorted_unique(kept_in);
  if (!detail::is_subset(kept, nbhd)) {
    throw std::invalid_argument("plan_fission: kept set is not a subset of the target's neighborhood");
  }
  const std::vector<VertexId> complement = detail::difference(nbhd, kept);

  FissionSpec spec;
  spec.target = target;
  spec.kept = kept;
  spec.swapped = complement.size() < kept.size();
  spec.travel = spec.swapped ? complement : kept;
  spec.ancilla_kind = spec.travel.size() == 1 ? AncillaKind::Bell : AncillaKind::GHZ;
  spec.degenerate = kept.empty() || complement.empty();
  return spec;
}

// Runs one fission round. outcomes supplies one bit per ancilla-leaf
// measurement, in travel order. Postconditions: the ancilla center ends
// adjacent to exactly spec.travel, the target to the rest of its old
// neighborhood, and every edge not incident to either is unchanged.
inline FissionOutcome execute_fission(const GraphState& g, const FissionSpec& spec,
                                      std::span<const int> outcomes) {
  if (spec.target >= g.vertex_count()) {
    throw std::out_of_range("execute_fission: target out of range");
  }
  if (g.measured(spec.target)) {
    throw std::invalid_argument("execute_fission: target is already measured");
  }
  const std::vector<VertexId> nbhd = g.neighbors(spec.target);
  if (!detail::is_subset(spec.travel, nbhd)) {
    throw std::invalid_argument("execute_fission: spec does not match graph (travel side)");
  }
  const std::vector<VertexId> expect_kept =
      spec.swapped ? detail::difference(nbhd, spec.travel) : spec.travel;
  if (spec.kept != expect_kept) {
    throw std::invalid_argument("execute_fission: spec does not match graph (kept side)");
  }
  const std::size_t s = spec.travel.size();
  if (outcomes.size() != s) {
    throw std::invalid_argument("execute_fission: outcome arity mismatch (expected " +
                                std::to_string(s) + ", got " + std::to_string(outcomes.size()) +
                                ")");
  }
  for (int o : outcomes) {
    if (o != 0 && o != 1) throw std::invalid_argument("execute_fission: outcomes must be bits");
  }

  const VertexId v = spec.target;
  std::vector<VertexId> hosts{v};
  hosts.insert(hosts.end(), spec.travel.begin(), spec.travel.end());
  const AncillaKind kind = (s == 1) ? AncillaKind::Bell : AncillaKind::GHZ;

  FissionOutcome out;
  auto [attached, fresh] = attach_ancilla(g, kind, hosts);
  out.graph = std::move(attached);
  out.transcript.steps.push_back(step_attach(kind, hosts, fresh));

  const VertexId vprime = fresh[0];
  for (std::size_t i = 0; i < s; ++i) {
    out.graph.toggle_edge(spec.travel[i], fresh[i + 1]);
    out.transcript.steps.push_back(step_cz(spec.travel[i], fresh[i + 1]));
  }
  for (std::size_t i = 0; i < s; ++i) {
    out.graph.local_complement_inplace(fresh[i + 1]);
    out.transcript.steps.push_back(step_lc(fresh[i + 1]));
  }
  for (std::size_t i = 0; i < s; ++i) {
    CorrectionSet cs = out.graph.measure_z_inplace(fresh[i + 1], outcomes[i]);
    out.transcript.steps.push_back(step_measure(fresh[i + 1], outcomes[i], std::move(cs)));
  }
  out.graph.toggle_edge(v, vprime);
  out.transcript.steps.push_back(step_cz(v, vprime));
  out.graph.local_complement_inplace(vprime);
  out.transcript.steps.push_back(step_lc(vprime));
  out.graph.toggle_edge(v, vprime);
  out.transcript.steps.push_back(step_cz(v, vprime));
  out.graph.local_complement_inplace(vprime);
  out.transcript.steps.push_back(step_lc(vprime));

  out.transcript.new_vertex = spec.swapped ? v : vprime;
  out.transcript.residual_vertex = spec.swapped ? vprime : v;
  out.ancilla_qubits_used = s + 1;
  out.ancilla_ebits_used = s >= 1 ? 1 : 0;
  out.rounds = 1;
  out.degenerate = spec.degenerate;
  out.node_vertices = {out.transcript.new_vertex, out.transcript.residual_vertex};
  return out;
}

inline FissionOutcome execute_fission(const GraphState& g, const FissionSpec& spec,
                                      const std::vector<int>& outcomes) {
  return execute_fission(g, spec, std::span<const int>(outcomes.data(), outcomes.size()));
}

// Single kept neighbor, Bell ancilla. Empty outcomes means all zeros.
inline FissionOutcome fission_one_neighbor(const GraphState& g, VertexId target, VertexId keep,
                                           std::span<const int> outcomes = {}) {
  const std::vector<VertexId> nbhd = g.neighbors(target);
  if (std::find(nbhd.begin(), nbhd.end(), keep) == nbhd.end()) {
    throw std::invalid_argument("fission_one_neighbor: keep vertex " + std::to_string(keep) +
                                " is not a neighbor of the target");
  }
  const FissionSpec spec = plan_fission(g, target, {keep});
  if (outcomes.empty()) {
    const std::vector<int> zeros(spec.travel.size(), 0);
    return execute_fission(g, spec, zeros);
  }
  return execute_fission(g, spec, outcomes);
}

// Splits the target into one qubit per partition block over blocks-1 rounds.
// outcomes, when nonempty, supplies every measurement bit across all rounds
// in execution order; empty means all zeros.
inline FissionOutcome iterate_fission(const GraphState& g, VertexId target,
                                      const std::vector<std::vector<VertexId>>& partition,
                                      std::span<const int> outcomes = {}) {
  if (partition.size() < 2) {
    throw std::invalid_argument("iterate_fission: partition needs at least 2 blocks");
  }
  if (target >= g.vertex_count()) {
    throw std::out_of_range("iterate_fission: target out of range");
  }
  std::vector<VertexId> all;
  for (const auto& block : partition) {
    std::vector<VertexId> b = detail::sorted_unique(block);
    if (b.size() != block.size()) {
      throw std::invalid_argument("iterate_fission: duplicate vertex within a partition block");
    }
    all.insert(all.end(), b.begin(), b.end());
  }
  std::sort(all.begin(), all.end());
  if (std::adjacent_find(all.begin(), all.end()) != all.end()) {
    throw std::invalid_argument("iterate_fission: partition blocks are not disjoint");
  }
  if (all != g.neighbors(target)) {
    throw std::invalid_argument("iterate_fission: partition does not cover the target's neighborhood");
  }

  FissionOutcome total;
  total.graph = g;
  VertexId hub = target;
  std::size_t consumed = 0;
  const bool zero_fill = outcomes.empty();

  for (std::size_t i = 0; i + 1 < partition.size(); ++i) {
    const FissionSpec spec = plan_fission(total.graph, hub, partition[i]);
    const std::size_t arity = spec.travel.size();
    std::vector<int> outs;
    if (zero_fill) {
      outs.assign(arity, 0);
    } else {
      if (consumed + arity > outcomes.size()) {
        throw std::invalid_argument("iterate_fission: outcome arity mismatch (too few bits)");
      }
      outs.assign(outcomes.begin() + consumed, outcomes.begin() + consumed + arity);
    }
    FissionOutcome round = execute_fission(total.graph, spec, outs);
    consumed += arity;
    total.graph = std::move(round.graph);
    for (TranscriptStep& st : round.transcript.steps) {
      total.transcript.steps.push_back(std::move(st));
    }
    total.node_vertices.push_back(round.transcript.new_vertex);
    hub = round.transcript.residual_vertex;
    total.ancilla_qubits_used += round.ancilla_qubits_used;
    total.ancilla_ebits_used += round.ancilla_ebits_used;
    total.rounds += 1;
    total.degenerate = total.degenerate || round.degenerate;
    total.transcript.new_vertex = round.transcript.new_vertex;
  }
  if (!zero_fill && consumed != outcomes.size()) {
    throw std::invalid_argument("iterate_fission: outcome arity mismatch (too many bits)");
  }
  total.node_vertices.push_back(hub);
  total.transcript.residual_vertex = hub;
  return total;
}

// Number of measurement bits iterate_fission will consume for this partition.
inline std::size_t iterate_outcome_arity(const GraphState& g, VertexId target,
                                         const std::vector<std::vector<VertexId>>& partition) {
  const FissionOutcome out = iterate_fission(g, target, partition);
  std::size_t n = 0;
  for (const TranscriptStep& s : out.transcript.steps) {
    if (s.op == StepOp::MeasureZ) ++n;
  }
  return n;
}

// Replays transcript steps on a graph. Throws when the transcript does not
// fit the graph (wrong ancilla ids or corrections), so a successful replay
// certifies the transcript against its input.
inline GraphState replay_graph(const GraphState& g0, const Transcript& t) {
  GraphState g = g0;
  for (const TranscriptStep& s : t.steps) {
    switch (s.op) {
      case StepOp::AttachAncilla: {
        auto [g2, fresh] = attach_ancilla(g, s.kind, s.hosts);
        if (fresh != s.created) {
          throw std::invalid_argument("replay_graph: ancilla ids do not match transcript");
        }
        g = std::move(g2);
        break;
      }
      case StepOp::Cz:
        g.toggle_edge(s.a, s.b);
        break;
      case StepOp::LocalComplement:
        g.local_complement_inplace(s.a);
        break;
      case StepOp::MeasureZ: {
        const CorrectionSet cs = g.measure_z_inplace(s.a, s.outcome);
        if (cs != s.corrections) {
          throw std::invalid_argument("replay_graph: corrections do not match transcript");
        }
        break;
      }
      case StepOp::Correction:
        break;  // Pauli frame only; no graph effect
    }
  }
  return g;
}

}  // namespace gfk
