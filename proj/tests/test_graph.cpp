#include "isr/graph.hpp"

#include <algorithm>
#include <set>

#include "doctest.h"

using namespace isr;

namespace {

Graph path_graph(int n) {
  Graph g(n);
  for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
  return g;
}

Graph cycle_graph(int n) {
  Graph g = path_graph(n);
  g.add_edge(n - 1, 0);
  return g;
}

Graph petersen() {
  Graph g(10);
  for (int i = 0; i < 5; ++i) g.add_edge(i, (i + 1) % 5);       // outer C5
  for (int i = 0; i < 5; ++i) g.add_edge(5 + i, 5 + (i + 2) % 5);  // inner star
  for (int i = 0; i < 5; ++i) g.add_edge(i, 5 + i);             // spokes
  return g;
}

}  // namespace

TEST_CASE("parse collapses duplicate edges") {
  Graph g = parse_graph("c a path\np edge 3 2\ne 1 2\ne 1 2\ne 2 3\n");
  CHECK(g.n == 3);
  CHECK(g.m == 2);
  CHECK(g.adjacent(0, 1));
  CHECK(g.adjacent(1, 2));
  CHECK_FALSE(g.adjacent(0, 2));
}

TEST_CASE("parse errors name the offending line") {
  CHECK_THROWS_AS(parse_graph("p edge 2 1\ne 1 3\n"), parse_error);
  CHECK_THROWS_AS(parse_graph("p edge 2 1\ne 1 1\n"), parse_error);
  CHECK_THROWS_AS(parse_graph("e 1 2\n"), parse_error);
  CHECK_THROWS_AS(parse_graph("p edge x 1\n"), parse_error);
  try {
    parse_graph("p edge 3 1\nc ok\ne 0 2\n");
    CHECK(false);
  } catch (const parse_error& e) {
    CHECK(e.line == 3);
  }
}

TEST_CASE("serialize emits edges sorted by (min,max) and round-trips") {
  Graph g(4);
  g.add_edge(3, 1);
  g.add_edge(2, 0);
  g.add_edge(0, 1);
  std::string text = serialize_graph(g);
  CHECK(text == "p edge 4 3\ne 1 2\ne 1 3\ne 2 4\n");
  Graph h = parse_graph(text);
  CHECK(serialize_graph(h) == text);
}

TEST_CASE("bipartition puts the lowest vertex of each component in L") {
  Graph g(3);  // edgeless
  auto b = bipartition(g);
  REQUIRE(b.has_value());
  CHECK(b->left == std::vector<int>{0, 1, 2});
  CHECK(b->right.empty());

  Graph p4 = path_graph(4);
  auto bp = bipartition(p4);
  REQUIRE(bp.has_value());
  CHECK(bp->left == std::vector<int>{0, 2});
  CHECK(bp->right == std::vector<int>{1, 3});

  CHECK_FALSE(bipartition(cycle_graph(5)).has_value());
  CHECK(bipartition(cycle_graph(6)).has_value());
}

TEST_CASE("components are numbered by lowest contained vertex") {
  Graph g(5);
  g.add_edge(3, 4);
  g.add_edge(1, 2);
  auto c = connected_components(g);
  CHECK(c.count == 3);
  CHECK(c.comp[0] == 0);
  CHECK(c.comp[1] == 1);
  CHECK(c.comp[2] == 1);
  CHECK(c.comp[3] == 2);
  CHECK(c.comp[4] == 2);
}

TEST_CASE("ball and layers") {
  Graph g = path_graph(7);
  CHECK(ball(g, 3, 2) == std::vector<int>{1, 2, 3, 4, 5});
  auto layers = ball_layers(g, 0, 3);
  REQUIRE(layers.size() == 4);
  CHECK(layers[0] == std::vector<int>{0});
  CHECK(layers[3] == std::vector<int>{3});
}

TEST_CASE("r-independence is pairwise distance > r") {
  Graph g = path_graph(7);
  CHECK(is_r_independent(g, {0, 3, 6}, 2));
  CHECK_FALSE(is_r_independent(g, {0, 2}, 2));
  CHECK(is_r_independent(g, {0, 2}, 1));
  CHECK_FALSE(is_r_independent(g, {0, 0}, 1));
  CHECK(is_r_independent(g, {}, 5));
}

TEST_CASE("induced cycle search") {
  CHECK_FALSE(find_induced_cycle(path_graph(6), 3).has_value());
  auto c6 = find_induced_cycle(cycle_graph(6), 6);
  REQUIRE(c6.has_value());
  CHECK(c6->size() == 6);
  CHECK_FALSE(find_induced_cycle(cycle_graph(6), 4).has_value());

  // Petersen graph: girth 5, no induced C3/C4, has induced C5 and C6.
  Graph p = petersen();
  CHECK_FALSE(find_induced_cycle(p, 3).has_value());
  CHECK_FALSE(find_induced_cycle(p, 4).has_value());
  auto c5 = find_induced_cycle(p, 5);
  REQUIRE(c5.has_value());
  CHECK(is_independent_set(p, {}));  // sanity of helper linkage
  // verify the cycle is genuinely induced
  const auto& cyc = *c5;
  for (size_t i = 0; i < cyc.size(); ++i)
    for (size_t j = i + 1; j < cyc.size(); ++j) {
      bool consecutive = (j == i + 1) || (i == 0 && j + 1 == cyc.size());
      CHECK(p.adjacent(cyc[i], cyc[j]) == consecutive);
    }

  // K4 has triangles but no induced C4.
  Graph k4(4);
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) k4.add_edge(i, j);
  CHECK(find_induced_cycle(k4, 3).has_value());
  CHECK_FALSE(find_induced_cycle(k4, 4).has_value());
}

TEST_CASE("girth") {
  CHECK_FALSE(girth(path_graph(5)).has_value());
  CHECK(girth(cycle_graph(5)) == 5);
  CHECK(girth(petersen()) == 5);
  Graph g = cycle_graph(8);
  g.add_edge(0, 4);  // chord splits C8 into two C5s
  CHECK(girth(g) == 5);
  Graph k4(4);
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) k4.add_edge(i, j);
  CHECK(girth(k4) == 3);
}

TEST_CASE("sparsity threshold") {
  // n = 16, eps = 0.5: bound n^1.5 = 64.
  Graph g(16);
  int added = 0;
  for (int u = 0; u < 16 && added < 64; ++u)
    for (int v = u + 1; v < 16 && added < 64; ++v) {
      g.add_edge(u, v);
      ++added;
    }
  CHECK(g.m == 64);
  CHECK(is_eps_sparse(g, 0.5));
  g.add_edge(14, 15);
  CHECK(g.m == 65);
  CHECK_FALSE(is_eps_sparse(g, 0.5));
}

TEST_CASE("classify bundles the certificates") {
  Graph p = petersen();
  auto r = classify(p, 6, {0.5, 1.0});
  CHECK(r.n == 10);
  CHECK(r.m == 15);
  CHECK(r.max_degree == 3);
  CHECK(r.connected);
  CHECK_FALSE(r.bipartite);
  CHECK(r.girth == 5);
  REQUIRE(r.induced_cycle_free.size() == 4);
  CHECK(r.induced_cycle_free[0]);        // C3-free
  CHECK(r.induced_cycle_free[1]);        // C4-free
  CHECK_FALSE(r.induced_cycle_free[2]);  // has C5
  CHECK_FALSE(r.induced_cycle_free[3]);  // has C6
  CHECK(r.sparsity[0].second);           // 15 <= 10^1.5
  CHECK_FALSE(r.sparsity[1].second);     // 15 > 10
}

TEST_CASE("induced subgraph keeps sorted ids and drops outside edges") {
  Graph g = cycle_graph(6);
  auto s = induced_subgraph(g, {5, 0, 1, 3});
  CHECK(s.to_old == std::vector<int>{0, 1, 3, 5});
  CHECK(s.g.n == 4);
  CHECK(s.g.adjacent(0, 1));                    // 0-1
  CHECK(s.g.adjacent(s.to_new[5], s.to_new[0]));  // 5-0
  CHECK(s.g.m == 2);
  CHECK(s.to_new[2] == -1);

  auto h = remove_closed_neighborhood(g, {0});
  CHECK(h.to_old == std::vector<int>{2, 3, 4});
  CHECK(h.g.m == 2);
}
