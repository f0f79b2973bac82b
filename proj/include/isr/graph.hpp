#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace isr {

// Simple undirected graph on vertices 0..n-1.
// Neighbor lists are kept sorted and duplicate-free; a bitmask row per
// vertex backs O(n/64) adjacency and independence tests.
struct Graph {
  int n = 0;
  int m = 0;
  std::vector<std::vector<int>> adj;
  std::vector<std::vector<uint64_t>> bits;

  Graph() = default;
  explicit Graph(int num_vertices);

  int words() const { return static_cast<int>((n + 63) / 64); }

  // Ignores duplicate edges, throws std::invalid_argument on self-loops
  // or out-of-range endpoints.
  void add_edge(int u, int v);

  bool adjacent(int u, int v) const {
    return v >= 0 && v < n && (bits[u][v >> 6] >> (v & 63)) & 1;
  }
  int degree(int v) const { return static_cast<int>(adj[v].size()); }
  const std::vector<int>& neighbors(int v) const { return adj[v]; }
};

struct parse_error : std::runtime_error {
  int line;
  parse_error(int line_no, const std::string& what)
      : std::runtime_error("line " + std::to_string(line_no) + ": " + what),
        line(line_no) {}
};

// Text format: "c" comment lines, one "p edge <n> <m>" header, then
// "e <u> <v>" lines with 1-based endpoints. Duplicate edges collapse.
Graph parse_graph(const std::string& text);
// Header followed by edges sorted by (min endpoint, max endpoint).
std::string serialize_graph(const Graph& g);

struct Bipartition {
  std::vector<int> side;  // 0 = L, 1 = R
  std::vector<int> left;
  std::vector<int> right;
};

// The lowest-indexed vertex of every connected component lands in L.
std::optional<Bipartition> bipartition(const Graph& g);

// comp[v] = component id, numbered by lowest contained vertex, ascending.
struct Components {
  std::vector<int> comp;
  int count = 0;
};
Components connected_components(const Graph& g);
bool is_connected(const Graph& g);

// Distances from v (-1 where unreachable).
std::vector<int> bfs_distances(const Graph& g, int v);
std::vector<int> bfs_distances(const Graph& g, const std::vector<int>& sources);

// Closed ball around v, sorted; layers[i] holds the vertices at distance
// exactly i, each sorted.
std::vector<int> ball(const Graph& g, int v, int radius);
std::vector<std::vector<int>> ball_layers(const Graph& g, int v, int radius);

bool is_independent_set(const Graph& g, const std::vector<int>& s);
// True when every pairwise distance within s exceeds r.
bool is_r_independent(const Graph& g, const std::vector<int>& s, int r);

// Lexicographically first induced cycle of exactly the given length, if any.
std::optional<std::vector<int>> find_induced_cycle(const Graph& g, int length);

// Length of a shortest cycle; nullopt for forests.
std::optional<int> girth(const Graph& g);

// m <= n^(2-eps), evaluated in long double with a small tolerance.
bool is_eps_sparse(const Graph& g, double eps);

struct ClassReport {
  int n = 0;
  int m = 0;
  int max_degree = 0;
  bool connected = false;
  bool bipartite = false;
  std::vector<int> left, right;          // populated when bipartite
  std::optional<int> girth;              // nullopt: acyclic
  std::vector<bool> induced_cycle_free;  // index i: C_{i+3}-free, i <= p-3
  std::vector<std::pair<double, bool>> sparsity;
};

ClassReport classify(const Graph& g, int p,
                     const std::vector<double>& eps_values = {});

// Induced subgraph on `keep` (sorted ascending); to_new[v] = -1 for
// dropped vertices.
struct Subgraph {
  Graph g;
  std::vector<int> to_old;
  std::vector<int> to_new;
};
Subgraph induced_subgraph(const Graph& g, const std::vector<int>& keep);
// Convenience: drop the closed neighborhood of `removed` and keep the rest.
Subgraph remove_closed_neighborhood(const Graph& g,
                                    const std::vector<int>& removed);

}  // namespace isr
