#include "isr/ts_kernel.hpp"

#include <algorithm>
#include <climits>
#include <cstddef>
#include <iterator>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace isr {

namespace {

bool contains(const std::vector<int>& xs, int v) {
  return std::binary_search(xs.begin(), xs.end(), v);
}

void check_sides(const Graph& g, const Bipartition& bip, const char* caller) {
  if (static_cast<int>(bip.side.size()) != g.n)
    throw std::invalid_argument(std::string(caller) +
                                ": bipartition size mismatch");
  for (int u = 0; u < g.n; ++u)
    for (int w : g.neighbors(u))
      if (u < w && bip.side[u] == bip.side[w])
        throw std::invalid_argument(
            std::string(caller) + ": bipartition does not two-color the graph");
}

// Replays every planned slide against the live configuration, so a procedure
// that plans an illegal move fails loudly instead of emitting garbage.
struct Emitter {
  const Graph& g;
  Config cur;
  MoveSequence out;

  Emitter(const Graph& graph, Config start) : g(graph), cur(std::move(start)) {}

  bool has(int v) const {
    return std::binary_search(cur.begin(), cur.end(), v);
  }

  bool legal(int from, int to) const {
    if (!has(from) || has(to) || !g.adjacent(from, to)) return false;
    for (int nb : g.neighbors(to))
      if (nb != from && has(nb)) return false;
    return true;
  }

  void slide(int from, int to, const char* stage) {
    if (!legal(from, to))
      throw slide_error(std::string(stage) + ": illegal slide " +
                        std::to_string(from) + " -> " + std::to_string(to));
    cur.erase(std::lower_bound(cur.begin(), cur.end(), from));
    cur.insert(std::upper_bound(cur.begin(), cur.end(), to), to);
    out.push_back({from, to});
  }

  void replay(const MoveSequence& ms, const char* stage) {
    for (const Move& m : ms) slide(m.from, m.to, stage);
  }
};

struct StageCtx {
  const Graph& g;
  const Bipartition& bip;
  const HighDegDecomposition& dec;
  std::vector<int> distv;
};

// A landing slot must have a free closed neighborhood and at least one
// neighborhood vertex of its own, so the token parked there can move later.
bool landing_slot(const Emitter& em, const StageCtx& cx, int x) {
  if (!cx.dec.in_n1[x] || cx.g.degree(x) < 2 || em.has(x)) return false;
  for (int nb : cx.g.neighbors(x))
    if (em.has(nb)) return false;
  return true;
}

int pick_slot(const Emitter& em, const StageCtx& cx,
              const std::vector<char>* avoid, const char* stage) {
  for (int x : cx.dec.n1) {
    if (avoid && (*avoid)[x]) continue;
    if (landing_slot(em, cx, x)) return x;
  }
  throw slide_error(std::string(stage) + ": no free landing slot");
}

// Parks every neighborhood token not marked skip into its own free safe
// second-layer slot; callers reverse the returned moves afterwards.
MoveSequence park_n1(Emitter& em, const StageCtx& cx,
                     const std::vector<char>* skip, const char* stage) {
  std::vector<int> movers;
  for (int t : em.cur)
    if (cx.dec.in_n1[t] && !(skip && (*skip)[t])) movers.push_back(t);
  MoveSequence parks;
  for (int t : movers) {
    int slot = -1;
    for (int z : cx.g.neighbors(t)) {
      if (z == cx.dec.v || em.has(z)) continue;
      bool clear = true;
      for (int nb : cx.g.neighbors(z))
        if (nb != t && em.has(nb)) {
          clear = false;
          break;
        }
      if (clear) {
        slot = z;
        break;
      }
    }
    if (slot < 0) throw slide_error(std::string(stage) + ": parking stuck");
    em.slide(t, slot, stage);
    parks.push_back({t, slot});
  }
  return parks;
}

void unpark(Emitter& em, const MoveSequence& parks, const char* stage) {
  for (auto it = parks.rbegin(); it != parks.rend(); ++it)
    em.slide(it->to, it->from, stage);
}

// Routes one neighborhood token to another neighborhood slot through the
// center, parking everything else out of the way first.
void relay_n1(Emitter& em, const StageCtx& cx, int from, int to,
              const char* stage) {
  std::vector<char> skip(cx.g.n, 0);
  skip[from] = 1;
  auto parks = park_n1(em, cx, &skip, stage);
  em.slide(from, cx.dec.v, stage);
  em.slide(cx.dec.v, to, stage);
  unpark(em, parks, stage);
}

// Slides the lowest token off a crowded third-layer vertex into the
// neighborhood along a hop whose surroundings are token-free.
bool evict_crowded_once(Emitter& em, const StageCtx& cx, const char* stage) {
  int w = -1;
  for (int t : em.cur)
    if (cx.dec.in_m_big[t]) {
      w = t;
      break;
    }
  if (w < 0) return false;
  std::vector<std::pair<int, int>> hops;  // (owner, via)
  for (int z : cx.g.neighbors(w))
    if (cx.dec.in_n2[z]) hops.push_back({cx.dec.owner[z], z});
  std::sort(hops.begin(), hops.end());
  for (auto [u, z] : hops) {
    if (em.has(z) || em.has(u)) continue;
    bool clear = true;
    for (int nb : cx.g.neighbors(z))
      if (nb != w && em.has(nb)) {
        clear = false;
        break;
      }
    if (clear)
      for (int nb : cx.g.neighbors(u))
        if (nb != z && em.has(nb)) {
          clear = false;
          break;
        }
    if (!clear) continue;
    em.slide(w, z, stage);
    em.slide(z, u, stage);
    return true;
  }
  throw slide_error(std::string(stage) + ": no clear eviction hop");
}

// One progress step for stragglers in the sparse third layer: either clears
// an occupied owner slot or pulls one straggler onto a free owner.
bool pull_sparse_once(Emitter& em, const StageCtx& cx, const char* stage) {
  std::vector<int> strag;
  for (int t : em.cur)
    if (cx.dec.in_n3[t] && !cx.dec.in_m_big[t]) strag.push_back(t);
  if (strag.empty()) return false;
  std::vector<char> owners(cx.g.n, 0);
  for (int t : strag)
    for (int z : cx.g.neighbors(t))
      if (cx.dec.in_n2[z]) owners[cx.dec.owner[z]] = 1;
  bool owner_occupied = false;
  for (int t : em.cur)
    if (cx.dec.in_n1[t] && owners[t]) {
      owner_occupied = true;
      break;
    }
  if (owner_occupied) {
    auto parks = park_n1(em, cx, &owners, stage);
    int u = pick_slot(em, cx, &owners, stage);
    auto pull = move_token_far(cx.g, cx.bip, em.cur, u);
    em.replay(pull.moves, stage);
    unpark(em, parks, stage);
    return true;
  }
  auto parks = park_n1(em, cx, nullptr, stage);
  int c = -1;
  for (int x : cx.dec.n1) {
    if (!owners[x] || em.has(x)) continue;
    bool clear = true;
    for (int nb : cx.g.neighbors(x))
      if (em.has(nb)) {
        clear = false;
        break;
      }
    if (clear) {
      c = x;
      break;
    }
  }
  if (c < 0) throw slide_error(std::string(stage) + ": no free owner slot");
  auto pull = move_token_far(cx.g, cx.bip, em.cur, c);
  em.replay(pull.moves, stage);
  unpark(em, parks, stage);
  return true;
}

// Walks a distant token along the lex-first shortest path into the
// neighborhood. A single parked neighborhood token may block the approach;
// it swaps into the waiting slot and the walker takes its place.
void walk_far_in(Emitter& em, const StageCtx& cx, int u, int w,
                 const char* stage) {
  auto dw = bfs_distances(cx.g, w);
  if (dw[u] < 0) throw slide_error(std::string(stage) + ": unreachable token");
  std::vector<int> path{u};
  while (path.back() != w) {
    int curp = path.back(), next = -1;
    for (int nb : cx.g.neighbors(curp))
      if (dw[nb] == dw[curp] - 1) {
        next = nb;
        break;
      }
    if (next < 0) throw slide_error(std::string(stage) + ": broken path");
    path.push_back(next);
  }
  for (int q = static_cast<int>(path.size()) - 2; q >= 0; --q) {
    int at = path[q + 1], to = path[q];
    if (em.legal(at, to)) {
      em.slide(at, to, stage);
      if (cx.dec.in_n1[to]) return;
      continue;
    }
    std::vector<int> blockers;
    for (int t : em.cur)
      if (cx.dec.in_n1[t] && (t == to || cx.g.adjacent(t, to)))
        blockers.push_back(t);
    if (blockers.size() != 1)
      throw slide_error(std::string(stage) + ": walk blocked");
    relay_n1(em, cx, blockers[0], u, stage);
    em.slide(at, to, stage);
    if (cx.dec.in_n1[to]) return;
    em.slide(to, blockers[0], stage);
    return;
  }
}

enum class DanceOut { Ball, Unique };

// Tied distant tokens: dance them to the other side inside the graph minus
// the center, its neighborhood, and the second layer, stopping as soon as a
// token lands in the third layer or a unique closest token emerges.
DanceOut straggler_dance(Emitter& em, const StageCtx& cx, int u,
                         const std::vector<int>& du, const char* stage) {
  std::vector<int> keep;
  for (int x = 0; x < cx.g.n; ++x)
    if (x != cx.dec.v && !cx.dec.in_n1[x] && !cx.dec.in_n2[x])
      keep.push_back(x);
  auto sub = induced_subgraph(cx.g, keep);
  auto bp = bipartition(sub.g);
  if (!bp)
    throw slide_error(std::string(stage) + ": remainder is not bipartite");
  int side = -1, best = INT_MAX;
  for (int t : em.cur)
    if (!cx.dec.in_n1[t] && du[t] >= 0 && du[t] < best) {
      best = du[t];
      side = bp->side[sub.to_new[t]];
    }
  while (true) {
    int from = -1, to = -1;
    for (int t : em.cur) {
      if (cx.dec.in_n1[t]) continue;
      int ts = sub.to_new[t];
      if (bp->side[ts] != side) continue;
      for (int nb : sub.g.neighbors(ts)) {
        int old = sub.to_old[nb];
        if (em.legal(t, old)) {
          from = t;
          to = old;
          break;
        }
      }
      if (from >= 0) break;
    }
    if (from < 0)
      throw slide_error(std::string(stage) + ": dance found no opening");
    em.slide(from, to, stage);
    for (int t : em.cur)
      if (cx.dec.in_n3[t]) return DanceOut::Ball;
    int low = INT_MAX, cnt = 0;
    for (int t : em.cur) {
      if (cx.dec.in_n1[t] || du[t] < 0) continue;
      if (du[t] < low) {
        low = du[t];
        cnt = 1;
      } else if (du[t] == low) {
        ++cnt;
      }
    }
    if (cnt == 1) return DanceOut::Unique;
  }
}

void check_containment(const Emitter& em, const StageCtx& cx, int stage_idx) {
  for (int t : em.cur) {
    int d = cx.distv[t];
    bool ok = true;
    switch (stage_idx) {
      case 0:
        ok = d < 0 || d > 3 || cx.dec.in_n2[t];
        break;
      case 1:
        ok = d < 0 || d > 3 || cx.dec.in_n1[t] || cx.dec.in_n3[t];
        break;
      case 2:
        ok = d < 0 || d > 3 || cx.dec.in_n1[t] ||
             (cx.dec.in_n3[t] && !cx.dec.in_m_big[t]);
        break;
      case 3:
        ok = d < 0 || d > 3 || cx.dec.in_n1[t];
        break;
      case 4:
        ok = cx.dec.in_n1[t];
        break;
    }
    if (!ok)
      throw slide_error("stage " + std::to_string(stage_idx + 1) +
                        ": containment failed at " + std::to_string(t));
  }
}

MoveSequence lift_moves(const MoveSequence& ms, const std::vector<int>& to_old) {
  MoveSequence out;
  out.reserve(ms.size());
  for (const Move& m : ms) out.push_back({to_old[m.from], to_old[m.to]});
  return out;
}

void check_config(const Graph& g, const Config& c, const char* caller) {
  for (size_t i = 0; i < c.size(); ++i) {
    if (c[i] < 0 || c[i] >= g.n)
      throw std::invalid_argument(std::string(caller) +
                                  ": vertex out of range");
    if (i > 0 && c[i] <= c[i - 1])
      throw std::invalid_argument(std::string(caller) +
                                  ": configuration not strictly ascending");
  }
  if (!is_independent_set(g, c))
    throw std::invalid_argument(std::string(caller) +
                                ": configuration is not independent");
}

}  // namespace

TsPreprocess preprocess_rigid(const Instance& inst, const OracleLimits& limits) {
  validate_instance(inst);
  if (inst.variant != Variant::TS)
    throw std::invalid_argument("preprocess_rigid: sliding instances only");
  TsPreprocess res;
  auto rs = rigid_tokens(inst.g, inst.src, limits).rigid;
  auto rt = rigid_tokens(inst.g, inst.tgt, limits).rigid;
  std::sort(rs.begin(), rs.end());
  std::sort(rt.begin(), rt.end());
  if (rs != rt) {
    res.decided_no = true;
    res.reason = "rigid tokens differ between the endpoints";
    return res;
  }
  res.rigid = std::move(rs);
  res.reduced = remove_closed_neighborhood(inst.g, res.rigid);
  for (int v : inst.src)
    if (!contains(res.rigid, v)) res.src.push_back(res.reduced.to_new[v]);
  for (int v : inst.tgt)
    if (!contains(res.rigid, v)) res.tgt.push_back(res.reduced.to_new[v]);
  auto comps = connected_components(res.reduced.g);
  std::vector<int> balance(comps.count, 0);
  for (int v : res.src) ++balance[comps.comp[v]];
  for (int v : res.tgt) --balance[comps.comp[v]];
  for (int b : balance)
    if (b != 0) {
      res.decided_no = true;
      res.reason = "token counts differ in a component";
      return res;
    }
  return res;
}

PendantReduction normalize_pendants(const Graph& g, const Config& src,
                                    const Config& tgt) {
  check_config(g, src, "normalize_pendants");
  check_config(g, tgt, "normalize_pendants");
  auto in_any = [&](int v) { return contains(src, v) || contains(tgt, v); };
  std::vector<char> drop(g.n, 0);
  for (int h = 0; h < g.n; ++h) {
    std::vector<int> pend;
    for (int u : g.neighbors(h))
      if (g.degree(u) == 1) pend.push_back(u);
    if (pend.size() < 2) continue;
    bool used = false;
    for (int u : pend) used = used || in_any(u);
    for (int u : pend)
      if (used ? !in_any(u) : u != pend[0]) drop[u] = 1;
  }
  std::vector<int> keep;
  for (int v = 0; v < g.n; ++v)
    if (!drop[v]) keep.push_back(v);
  PendantReduction res;
  res.reduced = induced_subgraph(g, keep);
  for (int v : src) res.src.push_back(res.reduced.to_new[v]);
  for (int v : tgt) res.tgt.push_back(res.reduced.to_new[v]);
  return res;
}

TsKernelOutcome kernelize_ts_bounded_degree(const Instance& inst,
                                            const Bipartition& bip) {
  validate_instance(inst);
  if (inst.variant != Variant::TS)
    throw std::invalid_argument(
        "kernelize_ts_bounded_degree: sliding instances only");
  check_sides(inst.g, bip, "kernelize_ts_bounded_degree");
  if (!is_connected(inst.g))
    throw std::invalid_argument(
        "kernelize_ts_bounded_degree: graph must be connected");
  TsKernelOutcome out;
  int k = static_cast<int>(inst.src.size());
  if (k == 0) {
    out.status = KernelStatus::DecidedYes;
    return out;
  }
  std::vector<int> forbidden;
  std::set_union(inst.src.begin(), inst.src.end(), inst.tgt.begin(),
                 inst.tgt.end(), std::back_inserter(forbidden));
  if (auto fat = find_fat_ball(inst.g, k, forbidden)) {
    out.status = KernelStatus::DecidedYes;
    out.witness = route_via_fat(inst, *fat);
    out.fat = std::move(*fat);
    return out;
  }
  out.status = KernelStatus::Reduced;
  unsigned long long dd = 0;
  for (int v = 0; v < inst.g.n; ++v)
    dd = std::max(dd, static_cast<unsigned long long>(inst.g.degree(v)));
  long double s1 = 1.0L + dd + static_cast<long double>(dd) * dd;
  long double wide = 2.0L * k + (2.0L * k * dd) * (2.0L * k) * s1 * s1;
  constexpr auto cap = std::numeric_limits<size_t>::max();
  out.size_bound = wide >= static_cast<long double>(cap)
                       ? cap
                       : static_cast<size_t>(wide + 0.5L);
  return out;
}

HighDegDecomposition build_highdeg_decomposition(const Graph& g,
                                                 const Bipartition& bip,
                                                 int v, int k) {
  if (v < 0 || v >= g.n)
    throw std::invalid_argument(
        "build_highdeg_decomposition: vertex out of range");
  if (k < 1)
    throw std::invalid_argument(
        "build_highdeg_decomposition: k must be positive");
  check_sides(g, bip, "build_highdeg_decomposition");
  if (static_cast<long long>(g.degree(v)) <
      static_cast<long long>(k) * k + k + 1)
    throw std::invalid_argument(
        "build_highdeg_decomposition: degree below k^2+k+1");
  HighDegDecomposition dec;
  dec.v = v;
  dec.k = k;
  for (int u : g.neighbors(v))
    if (g.degree(u) == 1) {
      dec.u_p = u;
      break;
    }
  auto dist = bfs_distances(g, v);
  for (int x = 0; x < g.n; ++x) {
    if (dist[x] < 0 || dist[x] > 3) continue;
    for (int y : g.neighbors(x))
      if (y > x && dist[y] >= 0 && dist[y] <= 3 && dist[y] == dist[x])
        throw std::invalid_argument(
            "build_highdeg_decomposition: odd cycle inside the ball");
  }
  dec.in_n1.assign(g.n, 0);
  dec.in_n2.assign(g.n, 0);
  dec.in_n3.assign(g.n, 0);
  dec.in_m_big.assign(g.n, 0);
  dec.owner.assign(g.n, -1);
  for (int x = 0; x < g.n; ++x) {
    if (x == dec.u_p) continue;
    if (dist[x] == 1) {
      dec.n1.push_back(x);
      dec.in_n1[x] = 1;
    } else if (dist[x] == 2) {
      dec.n2.push_back(x);
      dec.in_n2[x] = 1;
    } else if (dist[x] == 3) {
      dec.n3.push_back(x);
      dec.in_n3[x] = 1;
    }
  }
  for (int x : dec.n2)
    for (int y : g.neighbors(x))
      if (dec.in_n1[y]) {
        if (dec.owner[x] >= 0)
          throw std::invalid_argument(
              "build_highdeg_decomposition: C4 through two owners");
        dec.owner[x] = y;
      }
  for (int w : dec.n3) {
    std::vector<int> touched;
    for (int z : g.neighbors(w))
      if (dec.in_n2[z]) touched.push_back(dec.owner[z]);
    std::sort(touched.begin(), touched.end());
    if (std::adjacent_find(touched.begin(), touched.end()) != touched.end())
      throw std::invalid_argument(
          "build_highdeg_decomposition: C4 into one owner set");
    if (static_cast<int>(touched.size()) >= k + 1) {
      dec.m_big.push_back(w);
      dec.in_m_big[w] = 1;
    } else {
      dec.m_small.push_back(w);
    }
  }
  return dec;
}

NormalizeResult highdeg_normalize(const Graph& g, const Bipartition& bip,
                                  const HighDegDecomposition& dec,
                                  const Config& s) {
  check_sides(g, bip, "highdeg_normalize");
  check_config(g, s, "highdeg_normalize");
  if (static_cast<int>(s.size()) != dec.k)
    throw std::invalid_argument("highdeg_normalize: configuration size != k");
  StageCtx cx{g, bip, dec, bfs_distances(g, dec.v)};
  Emitter em(g, s);
  NormalizeResult res;
  const int vside = bip.side[dec.v];

  // stage 1: everything onto the center's side, then off the center
  em.replay(switch_side(g, bip, em.cur, 1 - vside), "stage 1");
  if (em.has(dec.v)) {
    int ex = -1, ey = -1;
    for (int x : g.neighbors(dec.v)) {
      if (g.degree(x) < 2 || em.has(x)) continue;
      bool clear = true;
      for (int nb : g.neighbors(x))
        if (nb != dec.v && em.has(nb)) {
          clear = false;
          break;
        }
      if (!clear) continue;
      for (int y : g.neighbors(x))
        if (y != dec.v && !em.has(y)) {
          ey = y;
          break;
        }
      if (ey >= 0) {
        ex = x;
        break;
      }
    }
    if (ex < 0) throw slide_error("stage 1: no clear exit path");
    em.slide(dec.v, ex, "stage 1");
    em.slide(ex, ey, "stage 1");
  }
  res.stage_ends[0] = em.out.size();
  check_containment(em, cx, 0);

  // stage 2: everything back to the other side; the pendant stays empty
  em.replay(switch_side(g, bip, em.cur, vside), "stage 2");
  res.stage_ends[1] = em.out.size();
  check_containment(em, cx, 1);

  // stage 3: evict tokens sitting on crowded third-layer vertices
  while (evict_crowded_once(em, cx, "stage 3")) {
  }
  res.stage_ends[2] = em.out.size();
  check_containment(em, cx, 2);

  // stage 4: pull the remaining third-layer tokens onto owner slots
  while (pull_sparse_once(em, cx, "stage 4")) {
  }
  res.stage_ends[3] = em.out.size();
  check_containment(em, cx, 3);

  // stage 5: walk distant tokens in, dancing ties apart first
  while (true) {
    bool ball3 = false;
    for (int t : em.cur)
      if (cx.dec.in_n3[t]) {
        ball3 = true;
        break;
      }
    if (ball3) {
      if (!evict_crowded_once(em, cx, "stage 5"))
        pull_sparse_once(em, cx, "stage 5");
      continue;
    }
    std::vector<int> far;
    for (int t : em.cur)
      if (!cx.dec.in_n1[t]) far.push_back(t);
    if (far.empty()) break;
    int bu = -1, bw = -1, bd = INT_MAX;
    std::vector<int> bdu;
    for (int x : cx.dec.n1) {
      if (!landing_slot(em, cx, x)) continue;
      auto du = bfs_distances(g, x);
      for (int t : far)
        if (du[t] >= 0 && du[t] < bd) {
          bd = du[t];
          bu = x;
          bw = t;
          bdu = du;
        }
    }
    if (bu < 0) throw slide_error("stage 5: no free landing slot");
    int ties = 0;
    for (int t : far)
      if (bdu[t] == bd) ++ties;
    if (ties == 1) {
      walk_far_in(em, cx, bu, bw, "stage 5");
      continue;
    }
    if (straggler_dance(em, cx, bu, bdu, "stage 5") == DanceOut::Unique) {
      int w2 = -1, d2 = INT_MAX;
      for (int t : em.cur)
        if (!cx.dec.in_n1[t] && bdu[t] >= 0 && bdu[t] < d2) {
          d2 = bdu[t];
          w2 = t;
        }
      walk_far_in(em, cx, bu, w2, "stage 5");
    }
  }
  res.stage_ends[4] = em.out.size();
  check_containment(em, cx, 4);

  res.final_config = std::move(em.cur);
  res.moves = std::move(em.out);
  return res;
}

MoveSequence highdeg_connect(const Graph& g, const HighDegDecomposition& dec,
                             const Config& s5, const Config& t5) {
  check_config(g, s5, "highdeg_connect");
  check_config(g, t5, "highdeg_connect");
  if (s5.size() != t5.size())
    throw std::invalid_argument("highdeg_connect: size mismatch");
  for (int x : s5)
    if (!dec.in_n1[x])
      throw std::invalid_argument(
          "highdeg_connect: configuration leaves the neighborhood");
  for (int x : t5)
    if (!dec.in_n1[x])
      throw std::invalid_argument(
          "highdeg_connect: configuration leaves the neighborhood");
  Bipartition dummy;  // relays never consult sides
  StageCtx cx{g, dummy, dec, {}};
  Emitter em(g, s5);
  while (em.cur != t5) {
    std::vector<int> sd, td;
    std::set_difference(em.cur.begin(), em.cur.end(), t5.begin(), t5.end(),
                        std::back_inserter(sd));
    std::set_difference(t5.begin(), t5.end(), em.cur.begin(), em.cur.end(),
                        std::back_inserter(td));
    int from = sd[0];
    for (int x : sd)
      if (g.degree(x) == 1) {
        from = x;  // a stuck pendant token must ride first
        break;
      }
    relay_n1(em, cx, from, td[0], "connect");
  }
  return em.out;
}

HighDegOutcome highdeg_yes_rule(const Instance& inst, const Bipartition& bip) {
  validate_instance(inst);
  if (inst.variant != Variant::TS)
    throw std::invalid_argument("highdeg_yes_rule: sliding instances only");
  check_sides(inst.g, bip, "highdeg_yes_rule");
  HighDegOutcome out;
  int k = static_cast<int>(inst.src.size());
  if (k < 1) return out;
  long long need = static_cast<long long>(k) * k + k + 1;
  int v = -1;
  for (int x = 0; x < inst.g.n; ++x)
    if (inst.g.degree(x) >= need) {
      v = x;
      break;
    }
  if (v < 0) return out;
  if (!is_connected(inst.g))
    throw std::invalid_argument("highdeg_yes_rule: graph must be connected");
  auto dec = build_highdeg_decomposition(inst.g, bip, v, k);
  auto ns = highdeg_normalize(inst.g, bip, dec, inst.src);
  auto nt = highdeg_normalize(inst.g, bip, dec, inst.tgt);
  MoveSequence w = ns.moves;
  auto mid = highdeg_connect(inst.g, dec, ns.final_config, nt.final_config);
  w.insert(w.end(), mid.begin(), mid.end());
  for (auto it = nt.moves.rbegin(); it != nt.moves.rend(); ++it)
    w.push_back({it->to, it->from});
  if (auto bad = verify_sequence(inst, w))
    throw std::logic_error("highdeg_yes_rule: witness broke at move " +
                           std::to_string(bad->index) + ": " + bad->reason);
  out.applied = true;
  out.witness = std::move(w);
  return out;
}

SolveResult solve_ts(const Instance& inst, const ClassReport& report,
                     const OracleLimits& limits) {
  validate_instance(inst);
  if (inst.variant != Variant::TS)
    throw std::invalid_argument("solve_ts: sliding instances only");
  SolveResult res;
  TsPreprocess pre;
  try {
    pre = preprocess_rigid(inst, limits);
  } catch (const limit_error&) {
    // rigidity unknown: keep every vertex and let the oracle enforce caps
    std::vector<int> all(inst.g.n);
    for (int i = 0; i < inst.g.n; ++i) all[i] = i;
    pre.reduced = induced_subgraph(inst.g, all);
    pre.src = inst.src;
    pre.tgt = inst.tgt;
    res.rule_trace.push_back("rigid-limit");
  }
  if (pre.decided_no) {
    res.answer = SolveAnswer::No;
    res.rule_trace.push_back(pre.reason.find("rigid") != std::string::npos
                                 ? "rigid-mismatch"
                                 : "component-mismatch");
    return res;
  }
  if (!pre.rigid.empty()) res.rule_trace.push_back("rigid-strip");
  if (pre.src == pre.tgt) {
    res.answer = SolveAnswer::Yes;
    res.witness = MoveSequence{};
    res.rule_trace.push_back("identical-endpoints");
    return res;
  }
  bool c4_free = report.bipartite && report.induced_cycle_free.size() >= 2 &&
                 report.induced_cycle_free[1];
  auto comps = connected_components(pre.reduced.g);
  MoveSequence total;
  bool undecided = false;
  for (int ci = 0; ci < comps.count; ++ci) {
    Config sc, tc;
    for (int t : pre.src)
      if (comps.comp[t] == ci) sc.push_back(t);
    for (int t : pre.tgt)
      if (comps.comp[t] == ci) tc.push_back(t);
    if (sc.empty() || sc == tc) continue;
    std::vector<int> keep;
    for (int x = 0; x < pre.reduced.g.n; ++x)
      if (comps.comp[x] == ci) keep.push_back(x);
    auto sub = induced_subgraph(pre.reduced.g, keep);
    Config scm, tcm;
    for (int t : sc) scm.push_back(sub.to_new[t]);
    for (int t : tc) tcm.push_back(sub.to_new[t]);
    auto pend = normalize_pendants(sub.g, scm, tcm);
    if (pend.reduced.g.n != sub.g.n) res.rule_trace.push_back("pendant-prune");
    Instance ic{pend.reduced.g, pend.src, pend.tgt, Variant::TS};
    MoveSequence wc;
    bool got = false;
    std::optional<Bipartition> bp;
    if (report.bipartite) bp = bipartition(ic.g);
    if (bp) {
      if (c4_free) {
        try {
          auto hd = highdeg_yes_rule(ic, *bp);
          if (hd.applied) {
            wc = std::move(hd.witness);
            got = true;
            res.rule_trace.push_back("high-degree-yes");
          }
        } catch (const slide_error&) {
          res.rule_trace.push_back("high-degree-bailed");
        }
      }
      if (!got) {
        try {
          auto ker = kernelize_ts_bounded_degree(ic, *bp);
          if (ker.status == KernelStatus::DecidedYes) {
            wc = std::move(ker.witness);
            got = true;
            res.rule_trace.push_back("fat-ball-yes");
          } else {
            res.rule_trace.push_back("bounded-degree-kernel");
          }
        } catch (const slide_error&) {
          res.rule_trace.push_back("fat-ball-bailed");
        }
      }
    } else {
      res.heuristic_fallback = true;
      res.rule_trace.push_back("oracle-fallback");
    }
    if (!got) {
      auto r = bfs_reach(ic, limits);
      if (r.status == ReachStatus::Reachable) {
        wc = std::move(*r.witness);
        got = true;
        res.rule_trace.push_back("oracle-yes");
      } else if (r.status == ReachStatus::Unreachable) {
        res.answer = SolveAnswer::No;
        res.rule_trace.push_back("oracle-no");
        return res;
      } else {
        undecided = true;
        res.rule_trace.push_back("oracle-limit");
        continue;
      }
    }
    auto lifted = lift_moves(
        lift_moves(lift_moves(wc, pend.reduced.to_old), sub.to_old),
        pre.reduced.to_old);
    total.insert(total.end(), lifted.begin(), lifted.end());
  }
  if (undecided) {
    res.answer = SolveAnswer::Undecided;
    return res;
  }
  if (auto bad = verify_sequence(inst, total))
    throw std::logic_error("solve_ts: assembled witness broke at move " +
                           std::to_string(bad->index) + ": " + bad->reason);
  res.answer = SolveAnswer::Yes;
  res.witness = std::move(total);
  return res;
}

}  // namespace isr
