#include "isr/graph.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <sstream>

namespace isr {

Graph::Graph(int num_vertices) : n(num_vertices) {
  if (num_vertices < 0) throw std::invalid_argument("negative vertex count");
  adj.resize(n);
  bits.assign(n, std::vector<uint64_t>(words(), 0));
}

void Graph::add_edge(int u, int v) {
  if (u < 0 || u >= n || v < 0 || v >= n)
    throw std::invalid_argument("edge endpoint out of range");
  if (u == v) throw std::invalid_argument("self-loop");
  if (adjacent(u, v)) return;
  auto insert_sorted = [](std::vector<int>& vec, int x) {
    vec.insert(std::lower_bound(vec.begin(), vec.end(), x), x);
  };
  insert_sorted(adj[u], v);
  insert_sorted(adj[v], u);
  bits[u][v >> 6] |= uint64_t(1) << (v & 63);
  bits[v][u >> 6] |= uint64_t(1) << (u & 63);
  ++m;
}

Graph parse_graph(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  bool have_header = false;
  int declared_n = 0;
  Graph g;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag)) continue;  // blank line
    if (tag == "c") continue;
    if (tag == "p") {
      if (have_header) throw parse_error(line_no, "duplicate problem header");
      std::string kind;
      long long n = -1, m = -1;
      if (!(ls >> kind >> n >> m) || kind != "edge" || n < 0 || m < 0)
        throw parse_error(line_no, "malformed header, expected 'p edge <n> <m>'");
      declared_n = static_cast<int>(n);
      g = Graph(declared_n);
      have_header = true;
      continue;
    }
    if (tag == "e") {
      if (!have_header) throw parse_error(line_no, "edge before header");
      long long u = 0, v = 0;
      if (!(ls >> u >> v)) throw parse_error(line_no, "malformed edge line");
      if (u < 1 || u > declared_n || v < 1 || v > declared_n)
        throw parse_error(line_no, "vertex index out of range");
      if (u == v) throw parse_error(line_no, "self-loop");
      g.add_edge(static_cast<int>(u - 1), static_cast<int>(v - 1));
      continue;
    }
    throw parse_error(line_no, "unrecognized line tag '" + tag + "'");
  }
  if (!have_header) throw parse_error(line_no, "missing problem header");
  return g;
}

std::string serialize_graph(const Graph& g) {
  std::vector<std::pair<int, int>> edges;
  edges.reserve(g.m);
  for (int u = 0; u < g.n; ++u)
    for (int v : g.adj[u])
      if (u < v) edges.push_back({u, v});
  std::sort(edges.begin(), edges.end());
  std::ostringstream out;
  out << "p edge " << g.n << " " << edges.size() << "\n";
  for (auto [u, v] : edges) out << "e " << u + 1 << " " << v + 1 << "\n";
  return out.str();
}

std::optional<Bipartition> bipartition(const Graph& g) {
  Bipartition b;
  b.side.assign(g.n, -1);
  for (int start = 0; start < g.n; ++start) {
    if (b.side[start] != -1) continue;
    b.side[start] = 0;
    std::queue<int> q;
    q.push(start);
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (int w : g.adj[u]) {
        if (b.side[w] == -1) {
          b.side[w] = 1 - b.side[u];
          q.push(w);
        } else if (b.side[w] == b.side[u]) {
          return std::nullopt;
        }
      }
    }
  }
  for (int v = 0; v < g.n; ++v)
    (b.side[v] == 0 ? b.left : b.right).push_back(v);
  return b;
}

Components connected_components(const Graph& g) {
  Components c;
  c.comp.assign(g.n, -1);
  for (int start = 0; start < g.n; ++start) {
    if (c.comp[start] != -1) continue;
    int id = c.count++;
    c.comp[start] = id;
    std::queue<int> q;
    q.push(start);
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (int w : g.adj[u])
        if (c.comp[w] == -1) {
          c.comp[w] = id;
          q.push(w);
        }
    }
  }
  return c;
}

bool is_connected(const Graph& g) {
  return g.n <= 1 || connected_components(g).count == 1;
}

std::vector<int> bfs_distances(const Graph& g, int v) {
  return bfs_distances(g, std::vector<int>{v});
}

std::vector<int> bfs_distances(const Graph& g, const std::vector<int>& sources) {
  std::vector<int> dist(g.n, -1);
  std::queue<int> q;
  for (int s : sources) {
    if (s < 0 || s >= g.n) throw std::invalid_argument("bfs source out of range");
    if (dist[s] == 0) continue;
    dist[s] = 0;
    q.push(s);
  }
  while (!q.empty()) {
    int u = q.front();
    q.pop();
    for (int w : g.adj[u])
      if (dist[w] == -1) {
        dist[w] = dist[u] + 1;
        q.push(w);
      }
  }
  return dist;
}

std::vector<int> ball(const Graph& g, int v, int radius) {
  auto dist = bfs_distances(g, v);
  std::vector<int> out;
  for (int u = 0; u < g.n; ++u)
    if (dist[u] != -1 && dist[u] <= radius) out.push_back(u);
  return out;
}

std::vector<std::vector<int>> ball_layers(const Graph& g, int v, int radius) {
  auto dist = bfs_distances(g, v);
  std::vector<std::vector<int>> layers(radius + 1);
  for (int u = 0; u < g.n; ++u)
    if (dist[u] != -1 && dist[u] <= radius) layers[dist[u]].push_back(u);
  return layers;
}

bool is_independent_set(const Graph& g, const std::vector<int>& s) {
  for (size_t i = 0; i < s.size(); ++i)
    for (size_t j = i + 1; j < s.size(); ++j) {
      if (s[i] == s[j]) return false;
      if (g.adjacent(s[i], s[j])) return false;
    }
  return true;
}

bool is_r_independent(const Graph& g, const std::vector<int>& s, int r) {
  for (size_t i = 0; i < s.size(); ++i)
    for (size_t j = 0; j < s.size(); ++j)
      if (i != j && s[i] == s[j]) return false;
  for (int v : s) {
    // truncated BFS to depth r
    std::vector<int> dist(g.n, -1);
    std::queue<int> q;
    dist[v] = 0;
    q.push(v);
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      if (dist[u] == r) continue;
      for (int w : g.adj[u])
        if (dist[w] == -1) {
          dist[w] = dist[u] + 1;
          q.push(w);
        }
    }
    for (int u : s)
      if (u != v && dist[u] != -1) return false;
  }
  return true;
}

namespace {

// Grows a path start=p0 < p1,...,p_{L-1} whose only adjacencies are the
// consecutive ones plus the closing edge. Reflection is broken at closure
// by keeping the direction with p1 < p_{L-1}.
bool induced_cycle_dfs(const Graph& g, int length, std::vector<int>& path,
                       std::vector<char>& used) {
  int depth = static_cast<int>(path.size());
  if (depth == length) return path[1] < path.back();
  int start = path.front();
  bool closing = depth + 1 == length;
  for (int w : g.adj[path[depth - 1]]) {
    if (w <= start || used[w]) continue;
    if (closing && !g.adjacent(w, start)) continue;
    bool ok = true;
    for (int i = closing ? 1 : 0; i + 1 < depth && ok; ++i)
      if (g.adjacent(w, path[i])) ok = false;
    if (!ok) continue;
    path.push_back(w);
    used[w] = 1;
    if (induced_cycle_dfs(g, length, path, used)) return true;
    used[w] = 0;
    path.pop_back();
  }
  return false;
}

}  // namespace

std::optional<std::vector<int>> find_induced_cycle(const Graph& g, int length) {
  if (length < 3) throw std::invalid_argument("cycle length below 3");
  std::vector<char> used(g.n, 0);
  for (int s = 0; s < g.n; ++s) {
    std::vector<int> path{s};
    used[s] = 1;
    if (induced_cycle_dfs(g, length, path, used)) return path;
    used[s] = 0;
  }
  return std::nullopt;
}

std::optional<int> girth(const Graph& g) {
  int best = -1;
  std::vector<int> dist(g.n), parent(g.n);
  for (int v = 0; v < g.n; ++v) {
    std::fill(dist.begin(), dist.end(), -1);
    std::fill(parent.begin(), parent.end(), -1);
    dist[v] = 0;
    std::queue<int> q;
    q.push(v);
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (int w : g.adj[u]) {
        if (dist[w] == -1) {
          dist[w] = dist[u] + 1;
          parent[w] = u;
          q.push(w);
        } else if (w != parent[u]) {
          int len = dist[u] + dist[w] + 1;
          if (best == -1 || len < best) best = len;
        }
      }
    }
  }
  if (best == -1) return std::nullopt;
  return best;
}

bool is_eps_sparse(const Graph& g, double eps) {
  if (g.n == 0) return true;
  long double bound = powl(static_cast<long double>(g.n), 2.0L - (long double)eps);
  return static_cast<long double>(g.m) <= bound + 1e-9L;
}

ClassReport classify(const Graph& g, int p, const std::vector<double>& eps_values) {
  ClassReport r;
  r.n = g.n;
  r.m = g.m;
  for (int v = 0; v < g.n; ++v) r.max_degree = std::max(r.max_degree, g.degree(v));
  r.connected = is_connected(g);
  if (auto b = bipartition(g)) {
    r.bipartite = true;
    r.left = b->left;
    r.right = b->right;
  }
  r.girth = girth(g);
  for (int len = 3; len <= p; ++len)
    r.induced_cycle_free.push_back(!find_induced_cycle(g, len).has_value());
  for (double eps : eps_values) r.sparsity.push_back({eps, is_eps_sparse(g, eps)});
  return r;
}

Subgraph induced_subgraph(const Graph& g, const std::vector<int>& keep) {
  Subgraph s;
  s.to_old = keep;
  std::sort(s.to_old.begin(), s.to_old.end());
  s.to_old.erase(std::unique(s.to_old.begin(), s.to_old.end()), s.to_old.end());
  s.to_new.assign(g.n, -1);
  for (size_t i = 0; i < s.to_old.size(); ++i) s.to_new[s.to_old[i]] = static_cast<int>(i);
  s.g = Graph(static_cast<int>(s.to_old.size()));
  for (int u : s.to_old)
    for (int v : g.adj[u])
      if (u < v && s.to_new[v] != -1) s.g.add_edge(s.to_new[u], s.to_new[v]);
  return s;
}

Subgraph remove_closed_neighborhood(const Graph& g, const std::vector<int>& removed) {
  std::vector<char> drop(g.n, 0);
  for (int v : removed) {
    drop[v] = 1;
    for (int w : g.adj[v]) drop[w] = 1;
  }
  std::vector<int> keep;
  for (int v = 0; v < g.n; ++v)
    if (!drop[v]) keep.push_back(v);
  return induced_subgraph(g, keep);
}

}  // namespace isr
