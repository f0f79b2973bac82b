#include "isr/bipartite_slides.hpp"

#include <algorithm>
#include <utility>

namespace isr {

namespace {

bool has_vertex(const Config& c, int v) {
  return std::binary_search(c.begin(), c.end(), v);
}

void shift_token(Config& c, int from, int to) {
  c.erase(std::find(c.begin(), c.end(), from));
  c.insert(std::lower_bound(c.begin(), c.end(), to), to);
}

bool slide_legal(const Graph& g, const Config& c, int from, int to) {
  if (!g.adjacent(from, to) || has_vertex(c, to)) return false;
  for (int w : g.adj[to])
    if (w != from && has_vertex(c, w)) return false;
  return true;
}

Config checked_config(const Graph& g, const Config& s, const char* what) {
  Config c = s;
  std::sort(c.begin(), c.end());
  for (int v : c)
    if (v < 0 || v >= g.n)
      throw std::invalid_argument(std::string(what) + ": vertex out of range");
  if (std::adjacent_find(c.begin(), c.end()) != c.end())
    throw std::invalid_argument(std::string(what) + ": duplicate vertex");
  if (!is_independent_set(g, c))
    throw std::invalid_argument(std::string(what) + ": not an independent set");
  return c;
}

void check_bipartition(const Graph& g, const Bipartition& bip) {
  if (static_cast<int>(bip.side.size()) != g.n)
    throw std::invalid_argument("bipartition does not match the graph");
}

}  // namespace

MoveSequence switch_side(const Graph& g, const Bipartition& bip,
                         const Config& s, int from_side) {
  if (from_side != 0 && from_side != 1)
    throw std::invalid_argument("from_side must be 0 or 1");
  check_bipartition(g, bip);
  Config cur = checked_config(g, s, "config");
  MoveSequence out;
  while (true) {
    int from = -1, to = -1;
    for (int u : cur) {
      if (bip.side[u] != from_side) continue;
      for (int w : g.adj[u]) {
        if (slide_legal(g, cur, u, w)) {
          from = u;
          to = w;
          break;
        }
      }
      if (from != -1) break;
    }
    if (from == -1) break;
    out.push_back({from, to});
    shift_token(cur, from, to);
  }
  for (int u : cur)
    if (bip.side[u] == from_side)
      throw slide_error("switch_side stuck; configuration is not unlocked");
  return out;
}

TokenPull move_token_far(const Graph& g, const Bipartition& bip,
                         const Config& s, int v) {
  check_bipartition(g, bip);
  if (v < 0 || v >= g.n) throw std::invalid_argument("vertex out of range");
  Config cur = checked_config(g, s, "config");
  if (has_vertex(cur, v))
    throw slide_error("target vertex already holds a token");
  for (int w : g.adj[v])
    if (has_vertex(cur, w))
      throw slide_error("target neighborhood is not token-free");

  auto closest = closest_tokens(g, cur, v);
  if (closest.tokens.empty())
    throw slide_error("no token can reach the target");
  int side = bip.side[closest.tokens.front()];
  for (int u : closest.tokens)
    if (bip.side[u] != side)
      throw slide_error("closest tokens span both sides");

  const int d = closest.distance;
  auto dist_v = bfs_distances(g, v);
  MoveSequence out;

  // once a token is uniquely closest, every step toward v is safe
  auto walk = [&](int x) {
    while (x != v) {
      int next = -1;
      for (int w : g.adj[x]) {
        if (dist_v[w] == dist_v[x] - 1 && slide_legal(g, cur, x, w)) {
          next = w;
          break;
        }
      }
      if (next == -1) throw slide_error("walk toward the target stalled");
      out.push_back({x, next});
      shift_token(cur, x, next);
      x = next;
    }
  };

  if (closest.tokens.size() == 1) {
    int u = closest.tokens.front();
    walk(u);
    return {out, u};
  }

  // several closest tokens; if one of them can legally step closer it
  // becomes uniquely closest and the plain walk finishes the job
  for (int u : closest.tokens) {
    for (int w : g.adj[u]) {
      if (dist_v[w] == d - 1 && slide_legal(g, cur, u, w)) {
        out.push_back({u, w});
        shift_token(cur, u, w);
        walk(w);
        return {out, u};
      }
    }
  }

  // frozen: dance tokens off the closest side until one stands alone,
  // walk it to v, then undo the dance
  MoveSequence alpha = switch_side(g, bip, cur, side);
  MoveSequence prefix;
  int unique_tok = -1;
  for (const Move& m : alpha) {
    shift_token(cur, m.from, m.to);
    prefix.push_back(m);
    auto dd = closest_tokens(g, cur, v);
    if (dd.tokens.size() == 1) {
      unique_tok = dd.tokens.front();
      break;
    }
  }
  if (unique_tok == -1)
    throw slide_error("no unique closest token emerged during the dance");

  size_t undo = prefix.size();
  int displaced = unique_tok;
  if (unique_tok == prefix.back().to) {
    // the dance move itself stepped a token closer; fold it into the walk
    displaced = prefix.back().from;
    --undo;
  }
  out = prefix;
  walk(unique_tok);
  for (size_t i = undo; i-- > 0;) {
    Move m = prefix[i];
    if (!slide_legal(g, cur, m.to, m.from))
      throw slide_error("dance reversal stalled");
    out.push_back({m.to, m.from});
    shift_token(cur, m.to, m.from);
  }

  Config expect = checked_config(g, s, "config");
  shift_token(expect, displaced, v);
  if (cur != expect) throw slide_error("token pull missed its postcondition");
  return {out, displaced};
}

MoveSequence transform_2independent(const Graph& g, const Config& s,
                                    const Config& t) {
  if (!is_connected(g)) throw std::invalid_argument("graph is not connected");
  Config cur = checked_config(g, s, "s");
  Config tgt = checked_config(g, t, "t");
  if (cur.size() != tgt.size())
    throw std::invalid_argument("configurations differ in size");
  Config uni;
  std::set_union(cur.begin(), cur.end(), tgt.begin(), tgt.end(),
                 std::back_inserter(uni));
  if (!is_r_independent(g, uni, 2))
    throw std::invalid_argument("union is not 2-independent");

  MoveSequence out;
  auto emit = [&](int from, int to) {
    if (!slide_legal(g, cur, from, to))
      throw slide_error("relay produced an illegal slide");
    out.push_back({from, to});
    shift_token(cur, from, to);
  };
  auto lex_walk = [&](int src, int dst) {
    auto dist = bfs_distances(g, dst);
    int x = src;
    while (x != dst) {
      int next = -1;
      for (int w : g.adj[x]) {
        if (dist[w] == dist[x] - 1 && slide_legal(g, cur, x, w)) {
          next = w;
          break;
        }
      }
      if (next == -1) throw slide_error("relay walk stalled");
      emit(x, next);
      x = next;
    }
  };

  while (cur != tgt) {
    Config from_only, to_only, shared;
    std::set_difference(cur.begin(), cur.end(), tgt.begin(), tgt.end(),
                        std::back_inserter(from_only));
    std::set_difference(tgt.begin(), tgt.end(), cur.begin(), cur.end(),
                        std::back_inserter(to_only));
    std::set_intersection(cur.begin(), cur.end(), tgt.begin(), tgt.end(),
                          std::back_inserter(shared));

    int bu = -1, bv = -1, bd = -1;
    for (int v2 : to_only) {
      auto dist = bfs_distances(g, v2);
      for (int u2 : from_only) {
        if (dist[u2] < 0) continue;
        if (bd == -1 || dist[u2] < bd || (dist[u2] == bd && u2 < bu) ||
            (dist[u2] == bd && u2 == bu && v2 < bv)) {
          bd = dist[u2];
          bu = u2;
          bv = v2;
        }
      }
    }
    if (bd == -1) throw slide_error("no pair is connected");

    // lexicographically smallest shortest path bu -> bv
    std::vector<int> path{bu};
    {
      auto dist = bfs_distances(g, bv);
      int x = bu;
      while (x != bv) {
        for (int w : g.adj[x]) {
          if (dist[w] == dist[x] - 1) {
            x = w;
            break;
          }
        }
        path.push_back(x);
      }
    }

    // a shared vertex with three neighbors on the path absorbs the middle one
    std::vector<int> pos(g.n, -1);
    auto reindex = [&]() {
      std::fill(pos.begin(), pos.end(), -1);
      for (size_t q = 0; q < path.size(); ++q) pos[path[q]] = static_cast<int>(q);
    };
    reindex();
    for (bool changed = true; changed;) {
      changed = false;
      for (int x : shared) {
        if (pos[x] != -1) continue;
        std::vector<int> touch;
        for (size_t q = 0; q < path.size(); ++q)
          if (g.adjacent(x, path[q])) touch.push_back(static_cast<int>(q));
        if (touch.size() < 3) continue;
        if (touch.size() > 3 || touch[2] - touch[0] != 2)
          throw slide_error("path normalization failed");
        path[touch[1]] = x;
        reindex();
        changed = true;
        break;
      }
    }

    // affected shared vertices in visit order
    std::vector<int> chain{bu};
    {
      std::vector<char> seen(g.n, 0);
      for (int p : path) {
        if (has_vertex(shared, p) && !seen[p]) {
          seen[p] = 1;
          chain.push_back(p);
          continue;
        }
        for (int y : g.adj[p])
          if (has_vertex(shared, y) && !seen[y]) {
            seen[y] = 1;
            chain.push_back(y);
          }
      }
      chain.push_back(bv);
    }

    // relay each chain link, vacating the target end first
    auto run_leg = [&](int src, int dst) {
      int a, b;
      if (pos[src] != -1) {
        a = pos[src];
      } else {
        a = -1;
        for (size_t q = 0; q < path.size(); ++q)
          if (g.adjacent(src, path[q])) a = static_cast<int>(q);
      }
      if (pos[dst] != -1) {
        b = pos[dst];
      } else {
        b = -1;
        for (size_t q = 0; q < path.size(); ++q)
          if (g.adjacent(dst, path[q])) {
            b = static_cast<int>(q);
            break;
          }
      }
      if (a == -1 || b == -1 || a > b) {
        lex_walk(src, dst);
        return;
      }
      int x = src;
      if (pos[src] == -1) {
        emit(src, path[a]);
        x = path[a];
      }
      for (int q = a; q < b; ++q) {
        emit(x, path[q + 1]);
        x = path[q + 1];
      }
      if (pos[dst] == -1) emit(x, dst);
    };

    for (size_t i = chain.size() - 1; i-- > 0;) run_leg(chain[i], chain[i + 1]);
  }
  return out;
}

std::optional<FatSetWitness> find_fat_ball(const Graph& g, int k,
                                           const std::vector<int>& forbidden) {
  if (k < 1) throw std::invalid_argument("k must be positive");
  if (g.n == 0) return std::nullopt;
  std::vector<char> blocked(g.n, 0);
  for (int v : forbidden) {
    if (v < 0 || v >= g.n)
      throw std::invalid_argument("forbidden vertex out of range");
    blocked[v] = 1;
  }

  int delta = 0;
  for (int v = 0; v < g.n; ++v) delta = std::max(delta, g.degree(v));
  long long s1 = 1 + static_cast<long long>(delta) +
                 static_cast<long long>(delta) * delta;
  if (static_cast<long double>(2.0L) * k * s1 * s1 >=
      static_cast<long double>(g.n))
    return std::nullopt;  // no ball can exceed the bound
  long long threshold = 2 * k * s1 * s1;

  std::vector<int> dist_forbidden = bfs_distances(g, forbidden);

  std::vector<int> dist(g.n);
  std::vector<int> order;
  order.reserve(g.n);
  for (int c = 0; c < g.n; ++c) {
    if (blocked[c]) continue;
    // layered search of the component of c inside g - forbidden
    std::fill(dist.begin(), dist.end(), -1);
    order.clear();
    dist[c] = 0;
    order.push_back(c);
    for (size_t head = 0; head < order.size(); ++head) {
      int u = order[head];
      for (int w : g.adj[u]) {
        if (blocked[w] || dist[w] != -1) continue;
        dist[w] = dist[u] + 1;
        order.push_back(w);
      }
    }
    int max_d = dist[order.back()];
    std::vector<long long> cum(max_d + 1, 0);
    for (int x : order) ++cum[dist[x]];
    for (int r = 1; r <= max_d; ++r) cum[r] += cum[r - 1];

    for (int r = 2; r <= max_d; ++r) {
      if (cum[r] <= threshold) continue;
      // greedy 2-independent extraction from the interior, discovery order
      std::vector<char> near_chosen(g.n, 0);
      std::vector<int> chosen;
      for (int x : order) {
        if (dist[x] > r - 2) continue;
        if (dist_forbidden[x] >= 0 && dist_forbidden[x] < 3) continue;
        if (near_chosen[x]) continue;
        chosen.push_back(x);
        if (static_cast<int>(chosen.size()) == 2 * k) break;
        for (int y : ball(g, x, 2)) near_chosen[y] = 1;
      }
      if (static_cast<int>(chosen.size()) < 2 * k) continue;
      FatSetWitness fat;
      fat.center = c;
      fat.radius = r;
      for (int x : order)
        if (dist[x] <= r) fat.set.push_back(x);
      for (int x : order)
        if (dist[x] <= r - 2) fat.interior.push_back(x);
      std::sort(fat.set.begin(), fat.set.end());
      std::sort(fat.interior.begin(), fat.interior.end());
      std::sort(chosen.begin(), chosen.end());
      fat.two_independent = chosen;
      return fat;
    }
  }
  return std::nullopt;
}

MoveSequence route_via_fat(const Instance& inst, const FatSetWitness& fat) {
  validate_instance(inst);
  if (inst.variant != Variant::TS)
    throw std::invalid_argument("routing requires the sliding variant");
  Config src = inst.src, tgt = inst.tgt;
  std::sort(src.begin(), src.end());
  std::sort(tgt.begin(), tgt.end());
  const Graph& g = inst.g;
  const size_t k = src.size();

  Config endpoints;
  std::set_union(src.begin(), src.end(), tgt.begin(), tgt.end(),
                 std::back_inserter(endpoints));
  for (int v : fat.set)
    if (has_vertex(endpoints, v))
      throw std::invalid_argument("fat set touches an endpoint configuration");

  Config slots = fat.two_independent;
  std::sort(slots.begin(), slots.end());
  if (slots.size() < 2 * k)
    throw std::invalid_argument("fat witness offers too few slots");
  if (!is_r_independent(g, slots, 2))
    throw std::invalid_argument("fat witness slots are not 2-independent");
  Config interior_sorted = fat.interior;
  std::sort(interior_sorted.begin(), interior_sorted.end());
  for (int v : slots)
    if (!has_vertex(interior_sorted, v))
      throw std::invalid_argument("fat witness slots leave the interior");

  Subgraph inner = induced_subgraph(g, fat.interior);
  auto to_inner = [&](const Config& c) {
    Config m;
    for (int v : c) m.push_back(inner.to_new[v]);
    std::sort(m.begin(), m.end());
    return m;
  };

  // builds a parking sequence for one endpoint configuration
  auto migrate = [&](Config cur) {
    MoveSequence moves;
    auto emit = [&](int from, int to) {
      if (!slide_legal(g, cur, from, to))
        throw slide_error("migration produced an illegal slide");
      moves.push_back({from, to});
      shift_token(cur, from, to);
    };
    while (true) {
      Config parked, outside;
      std::set_intersection(cur.begin(), cur.end(), slots.begin(), slots.end(),
                            std::back_inserter(parked));
      std::set_difference(cur.begin(), cur.end(), slots.begin(), slots.end(),
                          std::back_inserter(outside));
      if (outside.empty()) break;

      struct Cand {
        int d, u, v;
      };
      std::vector<Cand> cands;
      for (int slot : slots) {
        auto dist = bfs_distances(g, slot);
        for (int u : outside)
          if (dist[u] >= 0) cands.push_back({dist[u], u, slot});
      }
      std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
        if (a.d != b.d) return a.d < b.d;
        if (a.u != b.u) return a.u < b.u;
        return a.v < b.v;
      });
      if (cands.empty())
        throw slide_error("no token can reach the fat set");

      bool acted = false;
      for (const Cand& cand : cands) {
        if (has_vertex(parked, cand.v)) {
          // nearest slot is taken: shuffle its token deeper inside
          int fresh = -1;
          for (int w : slots)
            if (!has_vertex(cur, w)) {
              fresh = w;
              break;
            }
          if (fresh == -1) throw slide_error("no free slot for the shuffle");
          Config c_now = parked, c_next = parked;
          shift_token(c_next, cand.v, fresh);
          auto shuffle =
              transform_2independent(inner.g, to_inner(c_now), to_inner(c_next));
          for (const Move& m : shuffle)
            emit(inner.to_old[m.from], inner.to_old[m.to]);
          acted = true;
          break;
        }
        if (cand.d == 1) {
          if (slide_legal(g, cur, cand.u, cand.v)) {
            emit(cand.u, cand.v);
            acted = true;
            break;
          }
          continue;
        }
        bool clear = true;
        for (int w : g.adj[cand.v])
          if (has_vertex(cur, w)) clear = false;
        if (!clear) continue;

        Subgraph carved = remove_closed_neighborhood(g, parked);
        Config carved_cfg;
        for (int u : outside) {
          if (carved.to_new[u] == -1)
            throw slide_error("token vanished while carving");
          carved_cfg.push_back(carved.to_new[u]);
        }
        std::sort(carved_cfg.begin(), carved_cfg.end());
        if (carved.to_new[cand.v] == -1)
          throw slide_error("slot vanished while carving");
        auto bipc = bipartition(carved.g);
        if (!bipc) throw slide_error("carved graph lost bipartiteness");
        TokenPull pull =
            move_token_far(carved.g, *bipc, carved_cfg, carved.to_new[cand.v]);
        for (const Move& m : pull.moves)
          emit(carved.to_old[m.from], carved.to_old[m.to]);
        acted = true;
        break;
      }
      if (!acted) throw slide_error("migration into the fat set stalled");
    }
    return std::pair<MoveSequence, Config>{moves, cur};
  };

  auto [src_moves, src_parked] = migrate(src);
  auto [tgt_moves, tgt_parked] = migrate(tgt);
  auto mid = transform_2independent(inner.g, to_inner(src_parked),
                                    to_inner(tgt_parked));

  Config cur = src;
  MoveSequence out;
  auto emit = [&](int from, int to) {
    if (!slide_legal(g, cur, from, to))
      throw slide_error("assembled route became illegal");
    out.push_back({from, to});
    shift_token(cur, from, to);
  };
  for (const Move& m : src_moves) emit(m.from, m.to);
  for (const Move& m : mid) emit(inner.to_old[m.from], inner.to_old[m.to]);
  for (size_t i = tgt_moves.size(); i-- > 0;)
    emit(tgt_moves[i].to, tgt_moves[i].from);
  if (cur != tgt) throw slide_error("route missed the target configuration");
  return out;
}

}  // namespace isr
