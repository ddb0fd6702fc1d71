#include <catch_amalgamated.hpp>

#include <random>
#include <stdexcept>
#include <vector>

#include <gfk/entanglement.hpp>

#include "support.hpp"

using gfk::Bipartition;
using gfk::Edge;
using gfk::FissionAudit;
using gfk::GraphState;
using gfk::VertexId;

namespace {

std::size_t reference_cut_rank(const GraphState& g, const std::vector<VertexId>& side_a) {
  std::vector<bool> in_a(g.vertex_count(), false);
  for (VertexId v : side_a) in_a[v] = true;
  std::vector<VertexId> a_list, b_list;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    (in_a[v] ? a_list : b_list).push_back(static_cast<VertexId>(v));
  }
  std::vector<std::vector<bool>> m(a_list.size(), std::vector<bool>(b_list.size(), false));
  for (std::size_t i = 0; i < a_list.size(); ++i) {
    for (std::size_t j = 0; j < b_list.size(); ++j) {
      m[i][j] = g.has_edge(a_list[i], b_list[j]);
    }
  }
  if (m.empty() || b_list.empty()) return 0;
  return support::naive_rank(m);
}

std::vector<VertexId> random_side(std::mt19937_64& rng, std::size_t n) {
  std::vector<VertexId> side;
  for (std::size_t v = 0; v < n; ++v) {
    if (rng() % 2) side.push_back(static_cast<VertexId>(v));
  }
  return side;
}

}  // namespace

TEST_CASE("cut_rank fixed values") {
  const GraphState p4 = gfk::new_graph(4, {{0, 1}, {1, 2}, {2, 3}});
  CHECK(gfk::cut_rank(p4, Bipartition{{0, 1}}) == 1);
  CHECK(gfk::cut_rank(p4, Bipartition{{0, 2}}) == 2);
  CHECK(gfk::cut_rank(p4, Bipartition{{}}) == 0);
  CHECK(gfk::cut_rank(p4, Bipartition{{0, 1, 2, 3}}) == 0);
  CHECK_THROWS_AS(gfk::cut_rank(p4, Bipartition{{7}}), std::out_of_range);

  const GraphState star = support::star_graph(4);
  for (std::size_t mask = 1; mask < 31; ++mask) {  // proper bipartitions of 5 vertices
    std::vector<VertexId> side;
    for (std::size_t v = 0; v < 5; ++v) {
      if (mask & (std::size_t{1} << v)) side.push_back(static_cast<VertexId>(v));
    }
    const std::size_t r = gfk::cut_rank(star, Bipartition{side});
    CHECK(r == 1);  // star graphs hold one ebit across every separating cut
  }
}

TEST_CASE("every single vertex of a connected graph holds one ebit") {
  std::mt19937_64 rng(7);
  for (int it = 0; it < 50; ++it) {
    const std::size_t n = 2 + static_cast<std::size_t>(rng() % 7);
    const GraphState g = support::random_connected_graph(rng, n);
    for (std::size_t v = 0; v < n; ++v) {
      CHECK(gfk::cut_rank(g, Bipartition{{static_cast<VertexId>(v)}}) == 1);
    }
  }
}

TEST_CASE("cut_rank agrees with the naive eliminator") {
  std::mt19937_64 rng(23);
  for (int it = 0; it < 300; ++it) {
    const std::size_t n = 1 + static_cast<std::size_t>(rng() % 10);
    const GraphState g = support::random_graph(rng, n);
    const std::vector<VertexId> side = random_side(rng, n);
    CHECK(gfk::cut_rank(g, Bipartition{side}) == reference_cut_rank(g, side));
  }
}

TEST_CASE("cut_rank is symmetric in the two sides") {
  std::mt19937_64 rng(29);
  for (int it = 0; it < 200; ++it) {
    const std::size_t n = 1 + static_cast<std::size_t>(rng() % 9);
    const GraphState g = support::random_graph(rng, n);
    const std::vector<VertexId> side = random_side(rng, n);
    std::vector<bool> in_a(n, false);
    for (VertexId v : side) in_a[v] = true;
    std::vector<VertexId> other;
    for (std::size_t v = 0; v < n; ++v) {
      if (!in_a[v]) other.push_back(static_cast<VertexId>(v));
    }
    CHECK(gfk::cut_rank(g, Bipartition{side}) == gfk::cut_rank(g, Bipartition{other}));
  }
}

TEST_CASE("cut_rank is invariant under local complementation") {
  std::mt19937_64 rng(41);
  for (int it = 0; it < 150; ++it) {
    const std::size_t n = 2 + static_cast<std::size_t>(rng() % 7);
    const GraphState g = support::random_graph(rng, n);
    const VertexId a = static_cast<VertexId>(rng() % n);
    const GraphState h = gfk::local_complement(g, a);
    for (int trial = 0; trial < 20; ++trial) {
      const std::vector<VertexId> side = random_side(rng, n);
      CHECK(gfk::cut_rank(g, Bipartition{side}) == gfk::cut_rank(h, Bipartition{side}));
    }
  }
}

TEST_CASE("check_one_uniform") {
  CHECK(gfk::check_one_uniform(gfk::new_graph(3, {{0, 1}, {1, 2}})));
  CHECK(gfk::check_one_uniform(support::star_graph(5)));
  CHECK_FALSE(gfk::check_one_uniform(gfk::new_graph(3, {{0, 1}})));       // isolated vertex
  CHECK_FALSE(gfk::check_one_uniform(gfk::new_graph(4, {{0, 1}, {2, 3}})));  // disconnected
  CHECK_FALSE(gfk::check_one_uniform(gfk::new_graph(1, std::vector<Edge>{})));
  CHECK(gfk::check_one_uniform(gfk::new_graph(0, std::vector<Edge>{})));  // vacuous

  std::mt19937_64 rng(43);
  for (int it = 0; it < 60; ++it) {
    const std::size_t n = 2 + static_cast<std::size_t>(rng() % 9);
    CHECK(gfk::check_one_uniform(support::random_connected_graph(rng, n)));
  }
}

TEST_CASE("audit of a proper split meets the one-ebit bound with equality") {
  const GraphState g = gfk::new_graph(6, {{0, 1}, {1, 2}, {2, 3}, {2, 4}, {2, 5}, {4, 5}});
  const gfk::FissionOutcome out = gfk::fission_one_neighbor(g, 2, 1);
  const FissionAudit audit = gfk::audit_fission(g, out, 2);
  CHECK(audit.pre_ebits_target == 1);
  CHECK(audit.post_ebits_node == 2);
  CHECK(audit.ancilla_ebits_supplied == 1);
  CHECK(audit.satisfied);
}

TEST_CASE("audit of a degenerate empty-kept split is satisfied with slack") {
  const GraphState g = support::star_graph(3);
  const gfk::FissionSpec spec = gfk::plan_fission(g, 0, {});
  const gfk::FissionOutcome out = gfk::execute_fission(g, spec, std::vector<int>{});
  const FissionAudit audit = gfk::audit_fission(g, out, 0);
  CHECK(audit.pre_ebits_target == 1);
  CHECK(audit.post_ebits_node == 1);
  CHECK(audit.ancilla_ebits_supplied == 1);
  CHECK(audit.satisfied);
}

TEST_CASE("k-round audits gain exactly one ebit per round on stars") {
  for (std::size_t k : {2u, 3u}) {
    const GraphState star = support::star_graph(k + 1);
    std::vector<std::vector<VertexId>> part;
    for (std::size_t i = 1; i <= k + 1; ++i) part.push_back({static_cast<VertexId>(i)});
    const gfk::FissionOutcome out = gfk::iterate_fission(star, 0, part);
    const FissionAudit audit = gfk::audit_fission(star, out, 0);
    CHECK(audit.pre_ebits_target == 1);
    CHECK(audit.post_ebits_node == 1 + k);
    CHECK(audit.ancilla_ebits_supplied == k);
    CHECK(audit.satisfied);
    CHECK(out.ancilla_ebits_used == k);
  }
}

TEST_CASE("audit input validation") {
  const GraphState g = support::star_graph(2);
  const gfk::FissionOutcome out = gfk::fission_one_neighbor(g, 0, 1);
  CHECK_THROWS_AS(gfk::audit_fission(g, out, 9), std::out_of_range);
  gfk::FissionOutcome broken = out;
  broken.node_vertices = {99};
  CHECK_THROWS_AS(gfk::audit_fission(g, broken, 0), std::invalid_argument);
}
