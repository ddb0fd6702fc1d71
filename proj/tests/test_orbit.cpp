#include <catch_amalgamated.hpp>

#include <random>
#include <stdexcept>
#include <vector>

#include <gfk/orbit.hpp>

#include "support.hpp"

using gfk::GraphState;
using gfk::OrbitResult;
using gfk::VertexId;

namespace {

// Hub 0 with a kept triangle {1,2,3} and three plain neighbors {4,5,6}. A
// single complementation inside the triangle funnels the whole kept cluster
// through one vertex, dropping the ancilla from GHZ(4) to a Bell pair.
GraphState witness_graph() {
  return gfk::new_graph(
      7, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}, {0, 4}, {0, 5}, {0, 6}});
}

GraphState replay_sequence(const GraphState& g, const std::vector<VertexId>& seq) {
  GraphState out = g;
  for (VertexId v : seq) out.local_complement_inplace(v);
  return out;
}

}  // namespace

TEST_CASE("orbit search collapses a kept triangle to a single effective neighbor") {
  const GraphState g = witness_graph();
  const OrbitResult r = gfk::minimize_resources(g, 0, {1, 2, 3}, 100000);
  CHECK(r.ancilla_cost_before == 4);
  CHECK(r.ancilla_cost_after == 2);
  CHECK(r.exhausted);
  CHECK_FALSE(r.lc_sequence.empty());
  CHECK(replay_sequence(g, r.lc_sequence) == r.representative);

  // the surviving kept image in the found frame really is a single neighbor
  std::size_t survivors = 0;
  for (VertexId b : r.representative.neighbors(0)) {
    if (b == 1 || b == 2 || b == 3) ++survivors;
  }
  CHECK(survivors == 1);
}

TEST_CASE("an already minimal plan keeps its cost and an empty sequence") {
  const GraphState g = gfk::new_graph(4, {{0, 1}, {0, 2}, {0, 3}, {2, 3}});
  const OrbitResult r = gfk::minimize_resources(g, 0, {1}, 10000);
  CHECK(r.ancilla_cost_before == 2);
  CHECK(r.ancilla_cost_after == 2);
  CHECK(r.lc_sequence.empty());
  CHECK(r.representative == g);
  CHECK(r.exhausted);
}

TEST_CASE("leaf complementations fix a star, so its cost never moves") {
  const GraphState star = support::star_graph(4);
  const OrbitResult r = gfk::minimize_resources(star, 0, {1, 2}, 10000);
  CHECK(r.ancilla_cost_before == 3);
  CHECK(r.ancilla_cost_after == 3);
  CHECK(r.exhausted);
  CHECK(r.nodes_explored == 1);  // no generator applies anywhere
}

TEST_CASE("a tripped budget falls back to greedy descent") {
  const GraphState g = witness_graph();
  const OrbitResult r = gfk::minimize_resources(g, 0, {1, 2, 3}, 1);
  CHECK_FALSE(r.exhausted);
  CHECK(r.ancilla_cost_after == 2);  // greedy finds the same single move
  CHECK(replay_sequence(g, r.lc_sequence) == r.representative);
}

TEST_CASE("degenerate kept sets are rejected") {
  const GraphState g = witness_graph();
  CHECK_THROWS_AS(gfk::minimize_resources(g, 0, {}, 100), std::invalid_argument);
  CHECK_THROWS_AS(gfk::minimize_resources(g, 0, {1, 2, 3, 4, 5, 6}, 100),
                  std::invalid_argument);
  CHECK_THROWS_AS(gfk::minimize_resources(g, 0, {1, 2, 3}, 0), std::invalid_argument);
  CHECK_THROWS_AS(gfk::minimize_resources(g, 9, {1}, 100), std::out_of_range);
  CHECK_THROWS_AS(gfk::minimize_resources(g, 0, {4, 9}, 100), std::invalid_argument);
}

TEST_CASE("search never raises the cost and always replays") {
  std::mt19937_64 rng(83);
  for (int it = 0; it < 50; ++it) {
    const std::size_t n = 4 + static_cast<std::size_t>(rng() % 4);
    const GraphState g = support::random_connected_graph(rng, n);
    VertexId target = static_cast<VertexId>(rng() % n);
    const std::vector<VertexId> nbhd = g.neighbors(target);
    if (nbhd.size() < 2) continue;
    std::vector<VertexId> kept(nbhd.begin(), nbhd.begin() + 1 + (rng() % (nbhd.size() - 1)));

    const OrbitResult r = gfk::minimize_resources(g, target, kept, 20000);
    CHECK(r.ancilla_cost_after <= r.ancilla_cost_before);
    CHECK(replay_sequence(g, r.lc_sequence) == r.representative);
    CHECK(r.nodes_explored >= 1);
  }
}

TEST_CASE("widening the generator set to the target cannot do worse") {
  const GraphState g = witness_graph();
  const OrbitResult restricted = gfk::minimize_resources(g, 0, {1, 2, 3}, 200000);
  const OrbitResult widened = gfk::minimize_resources(g, 0, {1, 2, 3}, 200000, true);
  REQUIRE(restricted.exhausted);
  REQUIRE(widened.exhausted);
  CHECK(widened.ancilla_cost_after <= restricted.ancilla_cost_after);
  CHECK(replay_sequence(g, widened.lc_sequence) == widened.representative);
}
