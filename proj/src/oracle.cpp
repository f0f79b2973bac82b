#include "isr/oracle.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>
#include <unordered_map>

namespace isr {

std::string variant_name(Variant v) { return v == Variant::TS ? "TS" : "TJ"; }

namespace {

Config sorted_copy(Config c) {
  std::sort(c.begin(), c.end());
  return c;
}

void check_token_set(const Graph& g, const Config& c, const char* what) {
  for (int v : c)
    if (v < 0 || v >= g.n)
      throw std::invalid_argument(std::string(what) + ": vertex out of range");
  Config s = sorted_copy(c);
  if (std::adjacent_find(s.begin(), s.end()) != s.end())
    throw std::invalid_argument(std::string(what) + ": duplicate vertex");
  if (!is_independent_set(g, s))
    throw std::invalid_argument(std::string(what) + ": not an independent set");
}

std::vector<uint64_t> config_mask(int words, const Config& c) {
  std::vector<uint64_t> m(words, 0);
  for (int v : c) m[v >> 6] |= uint64_t(1) << (v & 63);
  return m;
}

bool mask_test(const std::vector<uint64_t>& m, int v) {
  return (m[v >> 6] >> (v & 63)) & 1;
}

// May the token on `from` land on `to` given the other tokens in `mask`?
bool placement_ok(const Graph& g, const std::vector<uint64_t>& mask, int from,
                  int to) {
  const auto& row = g.bits[to];
  for (size_t w = 0; w < row.size(); ++w) {
    uint64_t overlap = row[w] & mask[w];
    if (from >= 0 && static_cast<size_t>(from >> 6) == w)
      overlap &= ~(uint64_t(1) << (from & 63));
    if (overlap) return false;
  }
  return true;
}

struct ConfigHash {
  size_t operator()(const Config& c) const {
    size_t h = 1469598103934665603ull;
    for (int v : c) {
      h ^= static_cast<size_t>(v) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
      h *= 1099511628211ull;
    }
    return h;
  }
};

struct BfsCore {
  std::vector<Config> order;  // discovery order; order[0] = start
  std::vector<int> parent;
  std::vector<Move> via;
  bool limit_hit = false;
  int target_index = -1;
};

BfsCore bfs_core(const Graph& g, const Config& start, Variant var,
                 const OracleLimits& lim, const Config* target,
                 bool stop_when_rigid_empty = false,
                 std::vector<uint64_t>* rigid_mask = nullptr) {
  BfsCore core;
  const int words = g.words();
  std::unordered_map<Config, int, ConfigHash> seen;
  core.order.push_back(start);
  core.parent.push_back(-1);
  core.via.push_back({-1, -1});
  seen.emplace(start, 0);
  if (target && start == *target) {
    core.target_index = 0;
    return core;
  }
  if (rigid_mask) *rigid_mask = config_mask(words, start);
  auto t0 = std::chrono::steady_clock::now();
  auto mask_empty = [&](const std::vector<uint64_t>& m) {
    for (uint64_t w : m)
      if (w) return false;
    return true;
  };
  for (size_t head = 0; head < core.order.size(); ++head) {
    if ((head & 255) == 0) {
      auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                    std::chrono::steady_clock::now() - t0)
                    .count();
      if (ms > lim.max_millis) {
        core.limit_hit = true;
        return core;
      }
    }
    Config cur = core.order[head];  // copy: order grows while we expand
    auto mask = config_mask(words, cur);
    for (int from : cur) {
      auto try_to = [&](int to) -> bool {
        if (mask_test(mask, to)) return false;
        if (!placement_ok(g, mask, from, to)) return false;
        Config next;
        next.reserve(cur.size());
        for (int x : cur)
          if (x != from) next.push_back(x);
        next.insert(std::lower_bound(next.begin(), next.end(), to), to);
        auto [it, fresh] = seen.emplace(std::move(next), static_cast<int>(core.order.size()));
        if (!fresh) return false;
        core.order.push_back(it->first);
        core.parent.push_back(static_cast<int>(head));
        core.via.push_back({from, to});
        if (target && it->first == *target) {
          core.target_index = static_cast<int>(core.order.size()) - 1;
          return true;
        }
        if (rigid_mask) {
          auto nm = config_mask(words, it->first);
          for (int w = 0; w < words; ++w) (*rigid_mask)[w] &= nm[w];
          if (stop_when_rigid_empty && mask_empty(*rigid_mask)) return true;
        }
        if (core.order.size() > lim.max_configs) {
          core.limit_hit = true;
          return true;
        }
        return false;
      };
      bool stop = false;
      if (var == Variant::TS) {
        for (int to : g.adj[from])
          if ((stop = try_to(to))) break;
      } else {
        for (int to = 0; to < g.n && !stop; ++to) stop = try_to(to);
      }
      if (stop) return core;
    }
  }
  return core;
}

MoveSequence unwind(const BfsCore& core, int idx) {
  MoveSequence seq;
  for (int i = idx; core.parent[i] != -1; i = core.parent[i])
    seq.push_back(core.via[i]);
  std::reverse(seq.begin(), seq.end());
  return seq;
}

}  // namespace

void validate_instance(const Instance& inst) {
  check_token_set(inst.g, inst.src, "src");
  check_token_set(inst.g, inst.tgt, "tgt");
  if (inst.src.size() != inst.tgt.size())
    throw std::invalid_argument("src and tgt sizes differ");
}

std::vector<Move> legal_moves(const Graph& g, const Config& c, Variant v) {
  check_token_set(g, c, "config");
  Config cur = sorted_copy(c);
  auto mask = config_mask(g.words(), cur);
  std::vector<Move> out;
  for (int from : cur) {
    auto consider = [&](int to) {
      if (mask_test(mask, to)) return;
      if (placement_ok(g, mask, from, to)) out.push_back({from, to});
    };
    if (v == Variant::TS) {
      for (int to : g.adj[from]) consider(to);
    } else {
      for (int to = 0; to < g.n; ++to) consider(to);
    }
  }
  return out;
}

Config apply_move(const Graph& g, const Config& c, Move m, Variant v) {
  Config cur = sorted_copy(c);
  if (!std::binary_search(cur.begin(), cur.end(), m.from))
    throw std::invalid_argument("no token on move source");
  if (m.to < 0 || m.to >= g.n)
    throw std::invalid_argument("move target out of range");
  if (std::binary_search(cur.begin(), cur.end(), m.to))
    throw std::invalid_argument("move target occupied");
  if (v == Variant::TS && !g.adjacent(m.from, m.to))
    throw std::invalid_argument("sliding move endpoints not adjacent");
  auto mask = config_mask(g.words(), cur);
  if (!placement_ok(g, mask, m.from, m.to))
    throw std::invalid_argument("move target adjacent to another token");
  cur.erase(std::find(cur.begin(), cur.end(), m.from));
  cur.insert(std::lower_bound(cur.begin(), cur.end(), m.to), m.to);
  return cur;
}

ReachResult bfs_reach(const Instance& inst, const OracleLimits& limits) {
  validate_instance(inst);
  Config s = sorted_copy(inst.src), t = sorted_copy(inst.tgt);
  auto core = bfs_core(inst.g, s, inst.variant, limits, &t);
  ReachResult r;
  r.explored = core.order.size();
  if (core.target_index != -1) {
    r.status = ReachStatus::Reachable;
    r.witness = unwind(core, core.target_index);
  } else if (core.limit_hit) {
    r.status = ReachStatus::LimitExceeded;
  } else {
    r.status = ReachStatus::Unreachable;
  }
  return r;
}

ReachableSet reachable_set(const Graph& g, const Config& s, Variant v,
                           const OracleLimits& limits) {
  check_token_set(g, s, "config");
  auto core = bfs_core(g, sorted_copy(s), v, limits, nullptr);
  if (core.limit_hit) throw limit_error("reachable set exceeds configured cap");
  return {std::move(core.order)};
}

RigidReport rigid_tokens(const Graph& g, const Config& s,
                         const OracleLimits& limits) {
  check_token_set(g, s, "config");
  RigidReport rep;
  if (s.empty()) {
    rep.unlocked = true;
    rep.explored = 1;
    return rep;
  }
  std::vector<uint64_t> rigid_mask;
  auto core = bfs_core(g, sorted_copy(s), Variant::TS, limits, nullptr, true,
                       &rigid_mask);
  rep.explored = core.order.size();
  bool empty = true;
  for (uint64_t w : rigid_mask)
    if (w) empty = false;
  if (core.limit_hit && !empty)
    throw limit_error("reachable set exceeds configured cap");
  for (int v = 0; v < g.n; ++v)
    if (mask_test(rigid_mask, v)) rep.rigid.push_back(v);
  rep.unlocked = rep.rigid.empty();
  return rep;
}

ClosestTokens closest_tokens(const Graph& g, const Config& s, int v) {
  if (v < 0 || v >= g.n) throw std::invalid_argument("vertex out of range");
  auto dist = bfs_distances(g, v);
  ClosestTokens d;
  for (int u : sorted_copy(s)) {
    if (dist[u] == -1) continue;
    if (d.distance == -1 || dist[u] < d.distance) {
      d.distance = dist[u];
      d.tokens.clear();
    }
    if (dist[u] == d.distance) d.tokens.push_back(u);
  }
  return d;
}

bool is_frozen(const Graph& g, const Config& s, int v) {
  auto d = closest_tokens(g, s, v);
  if (static_cast<int>(d.tokens.size()) < 2) return false;
  Config cur = sorted_copy(s);
  auto mask = config_mask(g.words(), cur);
  for (int u : d.tokens) {
    for (int w : g.adj[u]) {
      if (mask_test(mask, w)) continue;
      if (!placement_ok(g, mask, u, w)) continue;
      if (w == v) return false;
      Config next = cur;
      next.erase(std::find(next.begin(), next.end(), u));
      next.insert(std::lower_bound(next.begin(), next.end(), w), w);
      if (closest_tokens(g, next, v).tokens.size() == 1) return false;
    }
  }
  return true;
}

std::optional<SequenceViolation> verify_sequence(const Instance& inst,
                                                 const MoveSequence& seq) {
  validate_instance(inst);
  Config c = sorted_copy(inst.src);
  for (size_t i = 0; i < seq.size(); ++i) {
    const Move m = seq[i];
    if (m.from < 0 || m.from >= inst.g.n || m.to < 0 || m.to >= inst.g.n)
      return SequenceViolation{i, "move endpoint out of range"};
    if (!std::binary_search(c.begin(), c.end(), m.from))
      return SequenceViolation{i, "no token on move source"};
    if (std::binary_search(c.begin(), c.end(), m.to))
      return SequenceViolation{i, "move target occupied"};
    if (inst.variant == Variant::TS && !inst.g.adjacent(m.from, m.to))
      return SequenceViolation{i, "sliding move endpoints not adjacent"};
    auto mask = config_mask(inst.g.words(), c);
    if (!placement_ok(inst.g, mask, m.from, m.to))
      return SequenceViolation{i, "move target adjacent to another token"};
    c.erase(std::find(c.begin(), c.end(), m.from));
    c.insert(std::lower_bound(c.begin(), c.end(), m.to), m.to);
  }
  if (c != sorted_copy(inst.tgt))
    return SequenceViolation{seq.size(), "final configuration differs from target"};
  return std::nullopt;
}

namespace {

Config parse_vertex_list(std::istringstream& ls, int n, int line_no) {
  Config out;
  long long v;
  while (ls >> v) {
    if (v < 1 || v > n) throw parse_error(line_no, "vertex index out of range");
    out.push_back(static_cast<int>(v - 1));
  }
  if (!ls.eof()) throw parse_error(line_no, "malformed vertex list");
  Config s = out;
  std::sort(s.begin(), s.end());
  if (std::adjacent_find(s.begin(), s.end()) != s.end())
    throw parse_error(line_no, "duplicate vertex in list");
  return s;
}

}  // namespace

Instance parse_instance(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  Instance inst;
  bool have_header = false, have_src = false, have_tgt = false, have_variant = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag)) continue;
    if (tag == "c") continue;
    if (tag == "p") {
      if (have_header) throw parse_error(line_no, "duplicate problem header");
      std::string kind;
      long long n = -1, m = -1;
      if (!(ls >> kind >> n >> m) || kind != "edge" || n < 0 || m < 0)
        throw parse_error(line_no, "malformed header, expected 'p edge <n> <m>'");
      inst.g = Graph(static_cast<int>(n));
      have_header = true;
    } else if (tag == "e") {
      if (!have_header) throw parse_error(line_no, "edge before header");
      long long u = 0, v = 0;
      if (!(ls >> u >> v)) throw parse_error(line_no, "malformed edge line");
      if (u < 1 || u > inst.g.n || v < 1 || v > inst.g.n)
        throw parse_error(line_no, "vertex index out of range");
      if (u == v) throw parse_error(line_no, "self-loop");
      inst.g.add_edge(static_cast<int>(u - 1), static_cast<int>(v - 1));
    } else if (tag == "src") {
      if (!have_header) throw parse_error(line_no, "src before header");
      if (have_src) throw parse_error(line_no, "duplicate src line");
      inst.src = parse_vertex_list(ls, inst.g.n, line_no);
      have_src = true;
    } else if (tag == "tgt") {
      if (!have_header) throw parse_error(line_no, "tgt before header");
      if (have_tgt) throw parse_error(line_no, "duplicate tgt line");
      inst.tgt = parse_vertex_list(ls, inst.g.n, line_no);
      have_tgt = true;
    } else if (tag == "variant") {
      if (have_variant) throw parse_error(line_no, "duplicate variant line");
      std::string name;
      if (!(ls >> name) || (name != "TS" && name != "TJ"))
        throw parse_error(line_no, "variant must be TS or TJ");
      inst.variant = name == "TS" ? Variant::TS : Variant::TJ;
      have_variant = true;
    } else {
      throw parse_error(line_no, "unrecognized line tag '" + tag + "'");
    }
  }
  if (!have_header) throw parse_error(line_no, "missing problem header");
  if (!have_src) throw parse_error(line_no, "missing src line");
  if (!have_tgt) throw parse_error(line_no, "missing tgt line");
  if (!have_variant) throw parse_error(line_no, "missing variant line");
  validate_instance(inst);
  return inst;
}

std::string serialize_instance(const Instance& inst) {
  std::ostringstream out;
  out << serialize_graph(inst.g);
  auto emit = [&](const char* tag, const Config& c) {
    out << tag;
    for (int v : sorted_copy(c)) out << " " << v + 1;
    out << "\n";
  };
  emit("src", inst.src);
  emit("tgt", inst.tgt);
  out << "variant " << variant_name(inst.variant) << "\n";
  return out.str();
}

SequenceFile parse_sequence(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  SequenceFile sf;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag)) continue;
    if (tag == "c") continue;
    if (tag == "s") {
      if (have_header) throw parse_error(line_no, "duplicate sequence header");
      std::string name;
      if (!(ls >> sf.k >> name) || sf.k < 0 || (name != "TS" && name != "TJ"))
        throw parse_error(line_no, "malformed header, expected 's <k> <TS|TJ>'");
      sf.variant = name == "TS" ? Variant::TS : Variant::TJ;
      have_header = true;
    } else if (tag == "m") {
      if (!have_header) throw parse_error(line_no, "move before header");
      long long u = 0, v = 0;
      if (!(ls >> u >> v) || u < 1 || v < 1)
        throw parse_error(line_no, "malformed move line");
      sf.moves.push_back({static_cast<int>(u - 1), static_cast<int>(v - 1)});
    } else {
      throw parse_error(line_no, "unrecognized line tag '" + tag + "'");
    }
  }
  if (!have_header) throw parse_error(line_no, "missing sequence header");
  return sf;
}

std::string serialize_sequence(int k, Variant v, const MoveSequence& moves) {
  std::ostringstream out;
  out << "s " << k << " " << variant_name(v) << "\n";
  for (const Move& m : moves) out << "m " << m.from + 1 << " " << m.to + 1 << "\n";
  return out.str();
}

}  // namespace isr
