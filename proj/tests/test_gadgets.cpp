#include <algorithm>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "doctest.h"
#include "isr/gadgets.hpp"

using namespace isr;

namespace {

Graph make_graph(int n, const std::vector<std::pair<int, int>>& edges) {
  Graph g(n);
  for (auto [u, v] : edges) g.add_edge(u, v);
  return g;
}

Graph drop_edge(const Graph& g, int a, int b) {
  Graph out(g.n);
  for (int u = 0; u < g.n; ++u) {
    for (int v : g.neighbors(u)) {
      if (u < v && !(u == std::min(a, b) && v == std::max(a, b)))
        out.add_edge(u, v);
    }
  }
  return out;
}

Graph petersen_graph() {
  Graph g(10);
  for (int i = 0; i < 5; ++i) {
    g.add_edge(i, (i + 1) % 5);
    g.add_edge(i, i + 5);
    g.add_edge(5 + i, 5 + (i + 2) % 5);
  }
  return g;
}

size_t brute_max_is_size(const Graph& g) {
  REQUIRE(g.n <= 20);
  size_t best = 0;
  for (uint32_t mask = 0; mask < (1u << g.n); ++mask) {
    Config c;
    for (int v = 0; v < g.n; ++v) {
      if (mask >> v & 1) c.push_back(v);
    }
    if (c.size() > best && is_independent_set(g, c)) best = c.size();
  }
  return best;
}

std::vector<Config> configs_along(const Instance& inst,
                                  const MoveSequence& ms) {
  std::vector<Config> out{inst.src};
  for (Move m : ms) {
    out.push_back(apply_move(inst.g, out.back(), m, inst.variant));
  }
  return out;
}

CliquePartitionInput two_triangles(
    const std::vector<std::pair<int, int>>& cross = {}) {
  std::vector<std::pair<int, int>> e = {{0, 1}, {0, 2}, {1, 2},
                                        {3, 4}, {3, 5}, {4, 5}};
  e.insert(e.end(), cross.begin(), cross.end());
  return {make_graph(6, e), {{0, 1, 2}, {3, 4, 5}}};
}

bool has_multicolored_is(const Graph& g,
                         const std::vector<std::vector<int>>& parts,
                         std::vector<int>* found = nullptr) {
  std::vector<int> pick;
  auto search = [&](auto&& self, size_t at) -> bool {
    if (at == parts.size()) return true;
    for (int v : parts[at]) {
      bool clear = true;
      for (int u : pick) {
        if (g.adjacent(u, v)) clear = false;
      }
      if (!clear) continue;
      pick.push_back(v);
      if (self(self, at + 1)) return true;
      pick.pop_back();
    }
    return false;
  };
  if (!search(search, 0)) return false;
  if (found) *found = pick;
  return true;
}

bool row_free(const MisGadget& mg, const Config& c) {
  for (int v : mg.a_end) {
    if (std::binary_search(c.begin(), c.end(), v)) return false;
  }
  for (int v : mg.b_end) {
    if (std::binary_search(c.begin(), c.end(), v)) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("maximum independent set matches brute force") {
  CHECK(max_independent_set(Graph(0)).empty());
  CHECK(max_independent_set(Graph(5)).size() == 5);

  Graph k5(5);
  for (int u = 0; u < 5; ++u) {
    for (int v = u + 1; v < 5; ++v) k5.add_edge(u, v);
  }
  CHECK(max_independent_set(k5).size() == 1);

  Graph p4 = make_graph(4, {{0, 1}, {1, 2}, {2, 3}});
  CHECK(max_independent_set(p4).size() == 2);

  Graph c5 = make_graph(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}});
  CHECK(max_independent_set(c5).size() == 2);

  CHECK(max_independent_set(petersen_graph()).size() == 4);

  Graph k33(6);
  for (int u = 0; u < 3; ++u) {
    for (int v = 3; v < 6; ++v) k33.add_edge(u, v);
  }
  CHECK(max_independent_set(k33).size() == 3);

  Graph star(9);
  for (int i = 1; i <= 8; ++i) star.add_edge(0, i);
  CHECK(max_independent_set(star).size() == 8);

  CHECK(max_independent_set(p4) == max_independent_set(p4));

  std::mt19937_64 rng(20240819);
  for (int rep = 0; rep < 40; ++rep) {
    int n = 1 + static_cast<int>(rng() % 11);
    Graph g(n);
    double prob = 0.1 + 0.08 * static_cast<double>(rep % 10);
    for (int u = 0; u < n; ++u) {
      for (int v = u + 1; v < n; ++v) {
        if (std::uniform_real_distribution<>(0, 1)(rng) < prob)
          g.add_edge(u, v);
      }
    }
    auto got = max_independent_set(g);
    CHECK(is_independent_set(g, got));
    CHECK(got.size() == brute_max_is_size(g));
  }
}

TEST_CASE("independent transversal picks the lexicographically first choice") {
  auto in = two_triangles();
  auto tr = independent_transversal(in.g, in.parts);
  REQUIRE(tr.has_value());
  CHECK(*tr == std::vector<int>{0, 3});

  auto forced = two_triangles({{0, 3}, {0, 4}, {0, 5}, {1, 3}, {1, 4},
                               {1, 5}, {2, 3}, {2, 4}});
  tr = independent_transversal(forced.g, forced.parts);
  REQUIRE(tr.has_value());
  CHECK(*tr == std::vector<int>{2, 5});

  std::vector<std::pair<int, int>> all_cross;
  for (int u = 0; u < 3; ++u) {
    for (int v = 3; v < 6; ++v) all_cross.push_back({u, v});
  }
  auto blocked = two_triangles(all_cross);
  CHECK_FALSE(independent_transversal(blocked.g, blocked.parts).has_value());

  Graph plain(4);
  auto lex = independent_transversal(plain, {{2, 0}, {3, 1}});
  REQUIRE(lex.has_value());
  CHECK(*lex == std::vector<int>{0, 1});

  CHECK_THROWS_AS(independent_transversal(plain, {{0}, {7}}),
                  std::invalid_argument);

  Graph k2 = make_graph(2, {{0, 1}});
  auto single = independent_transversal(k2, {{1}});
  REQUIRE(single.has_value());
  CHECK(*single == std::vector<int>{1});
}

TEST_CASE("role maps serialize and parse") {
  RoleMap rm;
  rm.roles = {{6, "g_1"}, {0, "v_1"}};
  CHECK(serialize_roles(rm) == "role 7 g_1\nrole 1 v_1\n");

  RoleMap back = parse_roles(serialize_roles(rm));
  CHECK(back.roles == rm.roles);

  CHECK(parse_roles("").roles.empty());
  CHECK(parse_roles("\n\nrole 3 s_A\n").roles ==
        std::vector<std::pair<int, std::string>>{{2, "s_A"}});

  CHECK_THROWS_AS(parse_roles("edge 1 x\n"), parse_error);
  CHECK_THROWS_AS(parse_roles("role zero g\n"), parse_error);
  CHECK_THROWS_AS(parse_roles("role 0 g\n"), parse_error);
  CHECK_THROWS_AS(parse_roles("role 2\n"), parse_error);
  CHECK_THROWS_AS(parse_roles("role 2 a b\n"), parse_error);
}

TEST_CASE("clique partition validation rejects bad partitions") {
  CHECK_NOTHROW(validate_clique_partition(two_triangles()));

  Graph p3 = make_graph(3, {{0, 1}, {1, 2}});
  CHECK_THROWS_AS(validate_clique_partition({p3, {{0, 1, 2}}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(validate_clique_partition({p3, {}}), std::invalid_argument);
  CHECK_THROWS_AS(validate_clique_partition({p3, {{0, 1}, {}}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(validate_clique_partition({p3, {{0, 1}, {1, 2}}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(validate_clique_partition({p3, {{0, 1}}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(validate_clique_partition({p3, {{0, 1}, {2}, {5}}}),
                  std::invalid_argument);
}

TEST_CASE("guard gadget wiring and numbering") {
  CliquePartitionInput k1{Graph(1), {{0}}};
  GuardGadget gg = build_guard_gadget(k1, 4);
  CHECK(gg.inst.g.n == 19);
  CHECK(gg.inst.g.m == 20);
  CHECK(gg.kprime == 1);
  CHECK(gg.p == 4);
  CHECK(gg.token_count == 9);
  CHECK(gg.x == std::vector<int>{1});
  CHECK(gg.y == std::vector<int>{2});
  REQUIRE(gg.guard_paths.size() == 4);
  CHECK(gg.guard_paths[0] == std::vector<int>{3, 4, 5, 6});
  CHECK(gg.guard_paths[1] == std::vector<int>{7, 8, 9, 10});
  CHECK(gg.guard_paths[2] == std::vector<int>{11, 12, 13, 14});
  CHECK(gg.guard_paths[3] == std::vector<int>{15, 16, 17, 18});
  CHECK(gg.inst.src == Config{1, 3, 5, 7, 9, 11, 13, 15, 17});
  CHECK(gg.inst.tgt == Config{2, 4, 6, 8, 10, 12, 14, 16, 18});
  CHECK(gg.inst.variant == Variant::TS);
  REQUIRE(gg.w_sets.size() == 1);
  CHECK(gg.w_sets[0] == std::vector<int>{0, 1, 2});

  REQUIRE(gg.roles.roles.size() == 19);
  CHECK(gg.roles.roles[0] == std::pair<int, std::string>{0, "v_1"});
  CHECK(gg.roles.roles[1] == std::pair<int, std::string>{1, "x_1"});
  CHECK(gg.roles.roles[3] == std::pair<int, std::string>{3, "g_1"});
  CHECK(gg.roles.roles[7] == std::pair<int, std::string>{7, "x_11"});
  CHECK(gg.roles.roles[14] == std::pair<int, std::string>{14, "y_14"});
  CHECK(gg.roles.roles[18] == std::pair<int, std::string>{18, "z_14"});
  CHECK(serialize_roles(gg.roles).find("role 4 g_1\n") != std::string::npos);

  GuardGadget big = build_guard_gadget(two_triangles(), 4);
  CHECK(big.inst.g.n == 38);
  CHECK(big.inst.g.m == 51);
  CHECK(big.token_count == 16);
  CHECK(big.inst.src.size() == 16);
  CHECK(is_independent_set(big.inst.g, big.inst.src));
  CHECK(is_independent_set(big.inst.g, big.inst.tgt));
  const auto& shared = big.guard_paths[0];
  const auto& px = big.guard_paths[1];
  const auto& py = big.guard_paths[2];
  const auto& pz = big.guard_paths[3];
  for (int v : big.input.parts[0]) {
    CHECK(big.inst.g.adjacent(big.x[0], v));
    CHECK(big.inst.g.adjacent(big.y[0], v));
  }
  CHECK(big.inst.g.adjacent(big.x[0], px[3]));
  CHECK(big.inst.g.adjacent(big.x[0], pz[3]));
  CHECK(big.inst.g.adjacent(big.y[0], py[0]));
  CHECK(big.inst.g.adjacent(big.y[0], pz[0]));
  CHECK(big.inst.g.adjacent(shared[3], px[0]));
  CHECK(big.inst.g.adjacent(shared[0], py[3]));
  CHECK_FALSE(big.inst.g.adjacent(big.x[0], big.y[0]));
  CHECK_FALSE(big.inst.g.adjacent(big.x[0], 3));
  CHECK_FALSE(big.inst.g.adjacent(big.x[0], px[0]));

  CHECK_THROWS_AS(build_guard_gadget(k1, 5), std::invalid_argument);
  CHECK_THROWS_AS(build_guard_gadget(k1, 2), std::invalid_argument);
  CliquePartitionInput bad{make_graph(3, {{0, 1}, {1, 2}}), {{0, 1, 2}}};
  CHECK_THROWS_AS(build_guard_gadget(bad, 4), std::invalid_argument);
}

TEST_CASE("guard yes witness shifts families in dependency order") {
  CliquePartitionInput k1{Graph(1), {{0}}};
  GuardGadget gg = build_guard_gadget(k1, 4);
  MoveSequence ms = guard_yes_witness(gg, {0});
  MoveSequence want = {{1, 0},   {17, 18}, {15, 16}, {9, 10}, {7, 8},
                       {5, 6},   {3, 4},   {13, 14}, {11, 12}, {0, 2}};
  CHECK(ms == want);
  CHECK_FALSE(verify_sequence(gg.inst, ms).has_value());

  CliquePartitionInput pair{Graph(2), {{0}, {1}}};
  GuardGadget two = build_guard_gadget(pair, 4);
  MoveSequence wit = guard_yes_witness(two, {0, 1});
  CHECK(wit.size() == 18);
  CHECK_FALSE(verify_sequence(two.inst, wit).has_value());

  GuardGadget tri = build_guard_gadget(two_triangles(), 4);
  MoveSequence cross = guard_yes_witness(tri, {0, 3});
  CHECK(cross.size() == 18);
  CHECK_FALSE(verify_sequence(tri.inst, cross).has_value());

  GuardGadget six = build_guard_gadget(k1, 6);
  CHECK(guard_yes_witness(six, {0}).size() == 14);

  CHECK_THROWS_AS(guard_yes_witness(gg, {}), std::invalid_argument);
  CHECK_THROWS_AS(guard_yes_witness(tri, {0, 0}), std::invalid_argument);
  GuardGadget bridged = build_guard_gadget(two_triangles({{0, 3}}), 4);
  CHECK_THROWS_AS(guard_yes_witness(bridged, {0, 3}), std::invalid_argument);
}

TEST_CASE("guard config invariants track tokens") {
  CliquePartitionInput k1{Graph(1), {{0}}};
  GuardGadget gg = build_guard_gadget(k1, 4);
  CHECK(guard_config_invariants(gg, gg.inst.src));
  CHECK(guard_config_invariants(gg, gg.inst.tgt));

  CHECK(guard_config_invariants(gg, {2, 3, 5, 7, 9, 11, 13, 15, 17}));
  CHECK_FALSE(guard_config_invariants(gg, {1, 2, 5, 7, 9, 11, 13, 15, 17}));
  CHECK_FALSE(guard_config_invariants(gg, {3, 4, 5, 7, 9, 11, 13, 15, 17}));

  for (const Config& c : configs_along(gg.inst, guard_yes_witness(gg, {0}))) {
    CHECK(guard_config_invariants(gg, c));
  }
  GuardGadget tri = build_guard_gadget(two_triangles(), 4);
  for (const Config& c :
       configs_along(tri.inst, guard_yes_witness(tri, {0, 3}))) {
    CHECK(guard_config_invariants(tri, c));
  }
}

TEST_CASE("guard structure report flags breakage") {
  CliquePartitionInput pair{Graph(2), {{0}, {1}}};
  GuardGadget two = build_guard_gadget(pair, 4);
  GuardStructureReport rep = check_guard_structure(two);
  CHECK(rep.input_cycle_free);
  CHECK(rep.gadget_cycle_free);
  CHECK(rep.max_is_matches);
  CHECK(rep.ok);

  Graph c4 = make_graph(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
  GuardGadget square = build_guard_gadget({c4, {{0, 1}, {2, 3}}}, 4);
  rep = check_guard_structure(square);
  CHECK_FALSE(rep.input_cycle_free);
  CHECK_FALSE(rep.gadget_cycle_free);
  CHECK(rep.max_is_matches);
  CHECK(rep.ok);

  GuardGadget broken = two;
  broken.inst.g = drop_edge(two.inst.g, 0, two.x[0]);
  rep = check_guard_structure(broken);
  CHECK_FALSE(rep.max_is_matches);
  CHECK_FALSE(rep.ok);

  GuardGadget cut = two;
  cut.inst.g =
      drop_edge(two.inst.g, two.guard_paths[0][0], two.guard_paths[0][1]);
  cut.inst.g =
      drop_edge(cut.inst.g, two.guard_paths[0][1], two.guard_paths[0][2]);
  rep = check_guard_structure(cut);
  CHECK_FALSE(rep.max_is_matches);
  CHECK_FALSE(rep.ok);
}

TEST_CASE("guard reachability matches transversal existence") {
  std::mt19937_64 rng(20240821);
  int cases = 0, reachable = 0;
  auto run_case = [&](int s1, int s2, uint64_t mask) {
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < s1; ++u) {
      for (int v = u + 1; v < s1; ++v) edges.push_back({u, v});
    }
    for (int u = s1; u < s1 + s2; ++u) {
      for (int v = u + 1; v < s1 + s2; ++v) edges.push_back({u, v});
    }
    int bit = 0;
    for (int u = 0; u < s1; ++u) {
      for (int v = s1; v < s1 + s2; ++v, ++bit) {
        if (mask >> bit & 1) edges.push_back({u, v});
      }
    }
    std::vector<int> left(s1), right(s2);
    for (int u = 0; u < s1; ++u) left[u] = u;
    for (int v = 0; v < s2; ++v) right[v] = s1 + v;
    CliquePartitionInput in{make_graph(s1 + s2, edges), {left, right}};
    GuardGadget gg = build_guard_gadget(in, 4);
    auto tr = independent_transversal(in.g, in.parts);
    ReachResult res = bfs_reach(gg.inst);
    REQUIRE(res.status != ReachStatus::LimitExceeded);
    CHECK((res.status == ReachStatus::Reachable) == tr.has_value());
    ++cases;
    if (tr) {
      ++reachable;
      MoveSequence wit = guard_yes_witness(gg, *tr);
      CHECK(wit.size() == gg.token_count + gg.kprime);
      REQUIRE(res.witness.has_value());
      CHECK_FALSE(verify_sequence(gg.inst, *res.witness).has_value());
    }
    ReachableSet rs = reachable_set(gg.inst.g, gg.inst.src, Variant::TS);
    for (const Config& c : rs.configs) {
      if (!guard_config_invariants(gg, c)) {
        CAPTURE(s1);
        CAPTURE(s2);
        CAPTURE(mask);
        REQUIRE(false);
      }
    }
  };
  for (uint64_t mask = 0; mask < 2; ++mask) run_case(1, 1, mask);
  for (uint64_t mask = 0; mask < 4; ++mask) run_case(1, 2, mask);
  for (uint64_t mask = 0; mask < 16; ++mask) run_case(2, 2, mask);
  run_case(2, 3, 0);
  run_case(2, 3, (1u << 6) - 1);
  for (int rep = 0; rep < 8; ++rep) run_case(2, 3, rng() % (1u << 6));
  CHECK(cases == 32);
  CHECK(reachable >= 10);
  CHECK(reachable < cases);
}

TEST_CASE("mis gadget wiring and numbering") {
  MisGadget mg = build_mis_gadget(Graph(1), {{0}});
  CHECK(mg.inst.g.n == 16);
  CHECK(mg.inst.g.m == 30);
  CHECK(mg.k == 1);
  CHECK(mg.a_copies == std::vector<std::vector<int>>{{0}, {1}});
  CHECK(mg.b_copies == std::vector<std::vector<int>>{{2}, {3}});
  CHECK(mg.a_start == std::vector<int>{4, 5});
  CHECK(mg.a_end == std::vector<int>{6, 7});
  CHECK(mg.b_start == std::vector<int>{8, 9});
  CHECK(mg.b_end == std::vector<int>{10, 11});
  CHECK(mg.s_a == 12);
  CHECK(mg.e_a == 13);
  CHECK(mg.s_b == 14);
  CHECK(mg.e_b == 15);
  CHECK(mg.copy_source[0] == 0);
  CHECK(mg.copy_source[3] == 0);
  CHECK(mg.copy_source[4] == -1);
  CHECK(mg.inst.src == Config{4, 5, 8, 9, 12, 14});
  CHECK(mg.inst.tgt == Config{6, 7, 10, 11, 13, 15});
  CHECK(mg.inst.variant == Variant::TS);

  const Graph& g = mg.inst.g;
  CHECK_FALSE(g.adjacent(0, 2));
  CHECK_FALSE(g.adjacent(0, 3));
  CHECK_FALSE(g.adjacent(1, 2));
  CHECK(g.adjacent(4, 2));
  CHECK(g.adjacent(4, 3));
  CHECK_FALSE(g.adjacent(5, 2));
  CHECK(g.adjacent(5, 3));
  CHECK(g.adjacent(8, 0));
  CHECK_FALSE(g.adjacent(9, 0));
  CHECK(g.adjacent(12, 10));
  CHECK(g.adjacent(12, 11));
  CHECK(g.adjacent(12, 15));
  CHECK(g.adjacent(13, 8));
  CHECK(g.adjacent(13, 14));
  CHECK(g.degree(12) == 3);
  CHECK(g.degree(14) == 3);

  CHECK(mg.roles.roles[0] == std::pair<int, std::string>{0, "A1_1"});
  CHECK(mg.roles.roles[2] == std::pair<int, std::string>{2, "B1_1"});
  CHECK(mg.roles.roles[4] == std::pair<int, std::string>{4, "a_s1"});
  CHECK(mg.roles.roles[10] == std::pair<int, std::string>{10, "b_e1"});
  CHECK(mg.roles.roles[12] == std::pair<int, std::string>{12, "s_A"});
  CHECK(mg.roles.roles[15] == std::pair<int, std::string>{15, "e_B"});
  CHECK(bipartition(mg.inst.g).has_value());

  MisGadget big = build_mis_gadget(make_graph(4, {{0, 2}}), {{0, 1}, {2, 3}});
  CHECK(big.inst.g.n == 36);
  CHECK(big.inst.src.size() == 10);
  const Graph& h = big.inst.g;
  CHECK(h.adjacent(0, 9));
  CHECK_FALSE(h.adjacent(0, 8));
  CHECK(h.adjacent(0, 11));
  CHECK_FALSE(h.adjacent(0, 10));
  CHECK(h.adjacent(0, 12));
  CHECK_FALSE(h.adjacent(0, 13));
  CHECK_FALSE(h.adjacent(1, 12));
  CHECK(h.adjacent(4, 8));
  CHECK(bipartition(h).has_value());

  MisGadget shuffled = build_mis_gadget(Graph(4), {{1, 0}, {3, 2}});
  CHECK(shuffled.parts ==
        std::vector<std::vector<int>>{{0, 1}, {2, 3}});
  CHECK(shuffled.copy_source[0] == 0);
  CHECK(shuffled.copy_source[1] == 1);

  CHECK_THROWS_AS(build_mis_gadget(Graph(2), {}), std::invalid_argument);
  CHECK_THROWS_AS(build_mis_gadget(Graph(2), {{0, 1}, {}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(build_mis_gadget(Graph(2), {{0}, {0, 1}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(build_mis_gadget(Graph(2), {{0}}), std::invalid_argument);
  CHECK_THROWS_AS(build_mis_gadget(Graph(2), {{0}, {5}}),
                  std::invalid_argument);
}

TEST_CASE("mis yes witness drains rows in column order") {
  MisGadget mg = build_mis_gadget(Graph(1), {{0}});
  MoveSequence ms = mis_yes_witness(mg, {0});
  MoveSequence want = {{4, 2},   {5, 3},  {8, 0},  {9, 1},  {12, 15},
                       {14, 13}, {3, 7},  {2, 6},  {1, 11}, {0, 10}};
  CHECK(ms == want);
  CHECK_FALSE(verify_sequence(mg.inst, ms).has_value());

  MisGadget big = build_mis_gadget(make_graph(4, {{0, 2}}), {{0, 1}, {2, 3}});
  MoveSequence wit = mis_yes_witness(big, {0, 3});
  CHECK(wit.size() == 18);
  CHECK_FALSE(verify_sequence(big.inst, wit).has_value());
  ReachResult res = bfs_reach(big.inst);
  CHECK(res.status == ReachStatus::Reachable);
  REQUIRE(res.witness.has_value());
  CHECK(res.witness->size() == 18);

  MisGadget loose = build_mis_gadget(make_graph(2, {{0, 1}}), {{0, 1}});
  CHECK(mis_yes_witness(loose, {0}).size() == 10);
  CHECK(mis_yes_witness(loose, {1}).size() == 10);

  CHECK_THROWS_AS(mis_yes_witness(big, {0}), std::invalid_argument);
  CHECK_THROWS_AS(mis_yes_witness(big, {2, 3}), std::invalid_argument);
  CHECK_THROWS_AS(mis_yes_witness(big, {0, 2}), std::invalid_argument);
}

TEST_CASE("well organized predicate pins") {
  MisGadget mg = build_mis_gadget(Graph(1), {{0}});
  CHECK(is_well_organized(mg, mg.inst.src));
  CHECK(is_well_organized(mg, {2, 5, 8, 9, 12, 14}));
  CHECK_FALSE(is_well_organized(mg, {3, 5, 8, 9, 12, 14}));
  CHECK_FALSE(is_well_organized(mg, mg.inst.tgt));

  auto configs = configs_along(mg.inst, mis_yes_witness(mg, {0}));
  REQUIRE(configs.size() == 11);
  for (size_t i = 0; i < configs.size(); ++i) {
    if (row_free(mg, configs[i])) {
      CHECK(i <= 6);
      CHECK(is_well_organized(mg, configs[i]));
    } else {
      CHECK(i >= 7);
      CHECK_FALSE(is_well_organized(mg, configs[i]));
    }
  }

  MisGadget big = build_mis_gadget(Graph(4), {{0, 1}, {2, 3}});
  CHECK(is_well_organized(big, big.inst.src));
  Config step = big.inst.src;
  step.erase(std::find(step.begin(), step.end(), big.a_start[0]));
  step.push_back(big.b_copies[0][0]);
  std::sort(step.begin(), step.end());
  CHECK(is_well_organized(big, step));
  Config skip = big.inst.src;
  skip.erase(std::find(skip.begin(), skip.end(), big.a_start[0]));
  skip.push_back(big.b_copies[1][0]);
  std::sort(skip.begin(), skip.end());
  CHECK_FALSE(is_well_organized(big, skip));
}

TEST_CASE("mis reachability matches multicolored independence") {
  CHECK(bfs_reach(build_mis_gadget(Graph(1), {{0}}).inst).status ==
        ReachStatus::Reachable);
  CHECK(bfs_reach(build_mis_gadget(make_graph(2, {{0, 1}}), {{0, 1}}).inst)
            .status == ReachStatus::Reachable);

  auto run_case = [&](int s1, int s2, uint64_t mask, bool intra1,
                      bool intra2) {
    std::vector<std::pair<int, int>> edges;
    if (intra1 && s1 == 2) edges.push_back({0, 1});
    if (intra2 && s2 == 2) edges.push_back({s1, s1 + 1});
    int bit = 0;
    for (int u = 0; u < s1; ++u) {
      for (int v = s1; v < s1 + s2; ++v, ++bit) {
        if (mask >> bit & 1) edges.push_back({u, v});
      }
    }
    std::vector<int> left(s1), right(s2);
    for (int u = 0; u < s1; ++u) left[u] = u;
    for (int v = 0; v < s2; ++v) right[v] = s1 + v;
    Graph g = make_graph(s1 + s2, edges);
    std::vector<std::vector<int>> parts{left, right};
    MisGadget mg = build_mis_gadget(g, parts);
    CHECK(bipartition(mg.inst.g).has_value());
    std::vector<int> mis;
    bool expect = has_multicolored_is(g, parts, &mis);
    ReachResult res = bfs_reach(mg.inst);
    REQUIRE(res.status != ReachStatus::LimitExceeded);
    CHECK((res.status == ReachStatus::Reachable) == expect);
    if (expect) {
      MoveSequence wit = mis_yes_witness(mg, mis);
      CHECK(wit.size() == static_cast<size_t>(8 * mg.k + 2));
      REQUIRE(res.witness.has_value());
      for (const Config& c : configs_along(mg.inst, *res.witness)) {
        if (row_free(mg, c)) {
          if (!is_well_organized(mg, c)) {
            CAPTURE(s1);
            CAPTURE(s2);
            CAPTURE(mask);
            REQUIRE(false);
          }
        }
      }
    }
  };
  for (uint64_t mask = 0; mask < 16; ++mask) run_case(2, 2, mask, false, false);
  for (uint64_t mask : {uint64_t{5}, uint64_t{10}, uint64_t{15}}) {
    run_case(2, 2, mask, true, false);
    run_case(2, 2, mask, true, true);
  }
  for (uint64_t mask = 0; mask < 4; ++mask) run_case(1, 2, mask, false, false);

  std::vector<std::pair<int, int>> full;
  for (int u = 0; u < 2; ++u) {
    for (int v = 2; v < 4; ++v) full.push_back({u, v});
  }
  MisGadget blocked = build_mis_gadget(make_graph(4, full), {{0, 1}, {2, 3}});
  CHECK(bfs_reach(blocked.inst).status == ReachStatus::Unreachable);
}
