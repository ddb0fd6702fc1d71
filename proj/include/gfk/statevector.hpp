#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "gfk/entanglement.hpp"
#include "gfk/fission.hpp"
#include "gfk/graph_state.hpp"

namespace gfk {

inline constexpr std::size_t kDefaultMaxQubits = 14;

// Dense amplitude vector. Vertex order matches qubit order with vertex 0 as
// the most significant index bit.
struct StateVector {
  std::size_t qubit_count = 0;
  std::vector<std::complex<double>> amplitudes;

  std::size_t dim() const { return amplitudes.size(); }

  std::uint64_t mask(VertexId v) const {
    if (v >= qubit_count) {
      throw std::out_of_range("StateVector: qubit " + std::to_string(v) + " out of range");
    }
    return std::uint64_t{1} << (qubit_count - 1 - v);
  }
};

inline double l2_norm(const StateVector& psi) {
  double s = 0.0;
  for (const auto& a : psi.amplitudes) s += std::norm(a);
  return std::sqrt(s);
}

inline StateVector uniform_state(std::size_t n, std::size_t max_qubits = kDefaultMaxQubits) {
  if (n > max_qubits) {
    throw std::invalid_argument("uniform_state: " + std::to_string(n) +
                                " qubits exceeds the cap of " + std::to_string(max_qubits));
  }
  StateVector psi;
  psi.qubit_count = n;
  const std::size_t dim = std::size_t{1} << n;
  psi.amplitudes.assign(dim, std::complex<double>(1.0 / std::sqrt(static_cast<double>(dim)), 0.0));
  return psi;
}

inline StateVector apply_cz_state(const StateVector& psi, VertexId a, VertexId b) {
  if (a == b) throw std::invalid_argument("apply_cz_state: identical qubits");
  StateVector out = psi;
  const std::uint64_t ma = psi.mask(a), mb = psi.mask(b);
  for (std::size_t i = 0; i < out.dim(); ++i) {
    if ((i & ma) && (i & mb)) out.amplitudes[i] = -out.amplitudes[i];
  }
  return out;
}

inline StateVector apply_pauli_z(const StateVector& psi, VertexId a) {
  StateVector out = psi;
  const std::uint64_t ma = psi.mask(a);
  for (std::size_t i = 0; i < out.dim(); ++i) {
    if (i & ma) out.amplitudes[i] = -out.amplitudes[i];
  }
  return out;
}

inline StateVector apply_pauli_x(const StateVector& psi, VertexId a) {
  StateVector out = psi;
  const std::uint64_t ma = psi.mask(a);
  for (std::size_t i = 0; i < out.dim(); ++i) out.amplitudes[i] = psi.amplitudes[i ^ ma];
  return out;
}

inline StateVector apply_hadamard(const StateVector& psi, VertexId a) {
  StateVector out = psi;
  const std::uint64_t ma = psi.mask(a);
  const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
  for (std::size_t i = 0; i < out.dim(); ++i) {
    if (i & ma) continue;
    const auto lo = psi.amplitudes[i];
    const auto hi = psi.amplitudes[i | ma];
    out.amplitudes[i] = (lo + hi) * inv_sqrt2;
    out.amplitudes[i | ma] = (lo - hi) * inv_sqrt2;
  }
  return out;
}

// Local-complementation unitary: sqrt(-iX) on the vertex, sqrt(iZ) on each
// neighbor. Maps the graph state of G to the graph state of the complemented
// graph up to a global phase.
inline StateVector apply_lc_unitary(const StateVector& psi, VertexId a,
                                    const std::vector<VertexId>& neighbors) {
  StateVector out = psi;
  const std::complex<double> phase_plus = std::polar(1.0, std::numbers::pi / 4.0);
  const std::complex<double> phase_minus = std::conj(phase_plus);
  for (VertexId b : neighbors) {
    if (b == a) throw std::invalid_argument("apply_lc_unitary: vertex listed as its own neighbor");
    const std::uint64_t mb = psi.mask(b);
    for (std::size_t i = 0; i < out.dim(); ++i) {
      out.amplitudes[i] *= (i & mb) ? phase_minus : phase_plus;
    }
  }
  const std::uint64_t ma = psi.mask(a);
  const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
  const std::complex<double> minus_i(0.0, -1.0);
  for (std::size_t i = 0; i < out.dim(); ++i) {
    if (i & ma) continue;
    const auto lo = out.amplitudes[i];
    const auto hi = out.amplitudes[i | ma];
    out.amplitudes[i] = (lo + minus_i * hi) * inv_sqrt2;
    out.amplitudes[i | ma] = (hi + minus_i * lo) * inv_sqrt2;
  }
  return out;
}

inline StateVector build_graph_state(const GraphState& g,
                                     std::size_t max_qubits = kDefaultMaxQubits) {
  StateVector psi = uniform_state(g.vertex_count(), max_qubits);
  for (const Edge& e : g.edges()) psi = apply_cz_state(psi, e.first, e.second);
  return psi;
}

// True iff psi is a +1 eigenstate of every stabilizer K_a = X_a prod Z_{N(a)}.
inline bool stabilizer_check(const StateVector& psi, const GraphState& g, double tol = 1e-10) {
  if (psi.qubit_count != g.vertex_count()) {
    throw std::invalid_argument("stabilizer_check: qubit/vertex count mismatch");
  }
  for (std::size_t a = 0; a < g.vertex_count(); ++a) {
    StateVector phi = apply_pauli_x(psi, static_cast<VertexId>(a));
    for (VertexId b : g.neighbors(static_cast<VertexId>(a))) phi = apply_pauli_z(phi, b);
    for (std::size_t i = 0; i < psi.dim(); ++i) {
      if (std::abs(phi.amplitudes[i] - psi.amplitudes[i]) > tol) return false;
    }
  }
  return true;
}

inline std::pair<StateVector, double> project_z(const StateVector& psi, VertexId a, int outcome) {
  if (outcome != 0 && outcome != 1) {
    throw std::invalid_argument("project_z: outcome must be 0 or 1");
  }
  const std::uint64_t ma = psi.mask(a);
  double prob = 0.0;
  for (std::size_t i = 0; i < psi.dim(); ++i) {
    const bool bit = (i & ma) != 0;
    if (bit == (outcome == 1)) prob += std::norm(psi.amplitudes[i]);
  }
  if (prob < 1e-12) {
    throw std::runtime_error("project_z: zero-probability branch requested");
  }
  StateVector out = psi;
  const double scale = 1.0 / std::sqrt(prob);
  for (std::size_t i = 0; i < out.dim(); ++i) {
    const bool bit = (i & ma) != 0;
    out.amplitudes[i] = bit == (outcome == 1) ? out.amplitudes[i] * scale
                                              : std::complex<double>(0.0, 0.0);
  }
  return {std::move(out), prob};
}

// Von Neumann entropy of the reduced state on side_a, in bits.
inline double entanglement_entropy(const StateVector& psi, const Bipartition& p) {
  const std::size_t n = psi.qubit_count;
  std::vector<bool> in_a(n, false);
  for (VertexId v : p.side_a) {
    if (v >= n) throw std::out_of_range("entanglement_entropy: vertex out of range");
    in_a[v] = true;
  }
  std::vector<std::uint64_t> a_masks, b_masks;
  for (std::size_t v = 0; v < n; ++v) {
    (in_a[v] ? a_masks : b_masks).push_back(psi.mask(static_cast<VertexId>(v)));
  }
  const std::size_t rows = std::size_t{1} << a_masks.size();
  const std::size_t cols = std::size_t{1} << b_masks.size();
  Eigen::MatrixXcd m(rows, cols);
  for (std::size_t i = 0; i < psi.dim(); ++i) {
    std::size_t r = 0, c = 0;
    for (std::size_t j = 0; j < a_masks.size(); ++j) {
      if (i & a_masks[j]) r |= std::size_t{1} << j;
    }
    for (std::size_t j = 0; j < b_masks.size(); ++j) {
      if (i & b_masks[j]) c |= std::size_t{1} << j;
    }
    m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = psi.amplitudes[i];
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  double entropy = 0.0;
  for (Eigen::Index k = 0; k < svd.singularValues().size(); ++k) {
    const double p2 = svd.singularValues()(k) * svd.singularValues()(k);
    if (p2 > 1e-15) entropy -= p2 * std::log2(p2);
  }
  return entropy;
}

inline bool equal_up_to_global_phase(const StateVector& psi, const StateVector& phi,
                                     double tol = 1e-10) {
  if (psi.dim() != phi.dim()) {
    throw std::invalid_argument("equal_up_to_global_phase: dimension mismatch");
  }
  std::complex<double> overlap(0.0, 0.0);
  for (std::size_t i = 0; i < psi.dim(); ++i) {
    overlap += std::conj(psi.amplitudes[i]) * phi.amplitudes[i];
  }
  return std::abs(overlap) >= 1.0 - tol;
}

// Tensors m fresh |+> qubits onto the end of the register.
inline StateVector extend_plus(const StateVector& psi, std::size_t m,
                               std::size_t max_qubits = kDefaultMaxQubits) {
  if (psi.qubit_count + m > max_qubits) {
    throw std::invalid_argument("extend_plus: " + std::to_string(psi.qubit_count + m) +
                                " qubits exceeds the cap of " + std::to_string(max_qubits));
  }
  StateVector out;
  out.qubit_count = psi.qubit_count + m;
  out.amplitudes.resize(psi.dim() << m);
  const double scale = std::pow(1.0 / std::numbers::sqrt2, static_cast<double>(m));
  for (std::size_t i = 0; i < out.dim(); ++i) {
    out.amplitudes[i] = psi.amplitudes[i >> m] * scale;
  }
  return out;
}

// Replays a transcript at the amplitude level, applying recorded byproduct
// corrections and resetting each measured qubit to |+> so the result can be
// compared directly against build_graph_state of the final graph. A parallel
// graph replay supplies neighborhoods for the complementation unitaries.
inline StateVector execute_transcript_state(const StateVector& psi0, const GraphState& g0,
                                            const Transcript& t,
                                            std::size_t max_qubits = kDefaultMaxQubits) {
  if (psi0.qubit_count != g0.vertex_count()) {
    throw std::invalid_argument("execute_transcript_state: state does not match initial graph");
  }
  StateVector psi = psi0;
  GraphState g = g0;
  for (const TranscriptStep& s : t.steps) {
    switch (s.op) {
      case StepOp::AttachAncilla: {
        auto [g2, fresh] = attach_ancilla(g, s.kind, s.hosts);
        if (fresh != s.created) {
          throw std::invalid_argument("execute_transcript_state: ancilla ids do not match");
        }
        psi = extend_plus(psi, fresh.size(), max_qubits);
        for (std::size_t i = 1; i < fresh.size(); ++i) {
          psi = apply_cz_state(psi, fresh[0], fresh[i]);
        }
        g = std::move(g2);
        break;
      }
      case StepOp::Cz:
        psi = apply_cz_state(psi, s.a, s.b);
        g.toggle_edge(s.a, s.b);
        break;
      case StepOp::LocalComplement:
        psi = apply_lc_unitary(psi, s.a, g.neighbors(s.a));
        g.local_complement_inplace(s.a);
        break;
      case StepOp::MeasureZ: {
        psi = project_z(psi, s.a, s.outcome).first;
        for (VertexId v : s.corrections.pauli_z_targets) psi = apply_pauli_z(psi, v);
        if (s.outcome == 1) psi = apply_pauli_x(psi, s.a);
        psi = apply_hadamard(psi, s.a);
        const CorrectionSet cs = g.measure_z_inplace(s.a, s.outcome);
        if (cs != s.corrections) {
          throw std::invalid_argument("execute_transcript_state: corrections do not match");
        }
        break;
      }
      case StepOp::Correction:
        for (VertexId v : s.corrections.pauli_z_targets) psi = apply_pauli_z(psi, v);
        break;
    }
  }
  return psi;
}

}  // namespace gfk
