#include "isr/gadgets.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace isr {

namespace {

// Greedy clique cover of cand; its size bounds how many independent
// vertices the set can still contribute.
int clique_cover_bound(const Graph& g, const std::vector<int>& cand) {
  std::vector<std::vector<int>> cover;
  for (int v : cand) {
    bool placed = false;
    for (auto& cl : cover) {
      bool fits = true;
      for (int u : cl) {
        if (!g.adjacent(u, v)) {
          fits = false;
          break;
        }
      }
      if (fits) {
        cl.push_back(v);
        placed = true;
        break;
      }
    }
    if (!placed) cover.push_back({v});
  }
  return static_cast<int>(cover.size());
}

void mis_branch(const Graph& g, const std::vector<int>& cand,
                std::vector<int>& cur, std::vector<int>& best) {
  if (cur.size() + cand.size() <= best.size()) return;
  std::vector<int> deg(cand.size(), 0);
  int pivot = -1;
  for (size_t i = 0; i < cand.size(); ++i) {
    for (int u : cand) {
      if (u != cand[i] && g.adjacent(cand[i], u)) ++deg[i];
    }
    if (pivot < 0 || deg[i] > deg[pivot]) pivot = static_cast<int>(i);
  }
  if (pivot < 0 || deg[pivot] <= 1) {
    // Isolated vertices plus a matching: take everything isolated and the
    // lower endpoint of each edge.
    std::vector<int> take = cur;
    for (size_t i = 0; i < cand.size(); ++i) {
      bool lowest = true;
      for (int u : cand) {
        if (u < cand[i] && g.adjacent(cand[i], u)) lowest = false;
      }
      if (lowest) take.push_back(cand[i]);
    }
    if (take.size() > best.size()) best = std::move(take);
    return;
  }
  if (cur.size() + clique_cover_bound(g, cand) <= best.size()) return;
  int v = cand[pivot];
  std::vector<int> rest;
  for (int u : cand) {
    if (u != v && !g.adjacent(u, v)) rest.push_back(u);
  }
  cur.push_back(v);
  mis_branch(g, rest, cur, best);
  cur.pop_back();
  rest.clear();
  for (int u : cand) {
    if (u != v) rest.push_back(u);
  }
  mis_branch(g, rest, cur, best);
}

}  // namespace

std::vector<int> max_independent_set(const Graph& g) {
  std::vector<int> cand(g.n);
  std::iota(cand.begin(), cand.end(), 0);
  std::vector<int> cur, best;
  mis_branch(g, cand, cur, best);
  std::sort(best.begin(), best.end());
  return best;
}

std::optional<std::vector<int>> independent_transversal(
    const Graph& g, const std::vector<std::vector<int>>& parts) {
  std::vector<std::vector<int>> pool = parts;
  for (auto& part : pool) {
    for (int v : part) {
      if (v < 0 || v >= g.n)
        throw std::invalid_argument("transversal: vertex out of range");
    }
    std::sort(part.begin(), part.end());
  }
  std::vector<int> pick;
  auto search = [&](auto&& self, size_t at) -> bool {
    if (at == pool.size()) return true;
    for (int v : pool[at]) {
      bool clear = true;
      for (int u : pick) {
        if (u == v || g.adjacent(u, v)) {
          clear = false;
          break;
        }
      }
      if (!clear) continue;
      pick.push_back(v);
      if (self(self, at + 1)) return true;
      pick.pop_back();
    }
    return false;
  };
  if (!search(search, 0)) return std::nullopt;
  return pick;
}

std::string serialize_roles(const RoleMap& rm) {
  std::string out;
  for (const auto& [v, name] : rm.roles) {
    out += "role " + std::to_string(v + 1) + " " + name + "\n";
  }
  return out;
}

RoleMap parse_roles(const std::string& text) {
  RoleMap rm;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag)) continue;
    if (tag != "role") throw parse_error(line_no, "expected a role line");
    long long v = 0;
    std::string name;
    if (!(ls >> v) || v < 1) throw parse_error(line_no, "bad vertex id");
    if (!(ls >> name)) throw parse_error(line_no, "missing role name");
    std::string extra;
    if (ls >> extra) throw parse_error(line_no, "trailing tokens");
    rm.roles.emplace_back(static_cast<int>(v) - 1, name);
  }
  return rm;
}

void validate_clique_partition(const CliquePartitionInput& in) {
  if (in.parts.empty()) throw std::invalid_argument("clique partition: no parts");
  std::vector<char> seen(in.g.n, 0);
  for (size_t i = 0; i < in.parts.size(); ++i) {
    const auto& part = in.parts[i];
    const std::string label = "clique partition: part " + std::to_string(i + 1);
    if (part.empty()) throw std::invalid_argument(label + " is empty");
    for (int v : part) {
      if (v < 0 || v >= in.g.n)
        throw std::invalid_argument(label + " has an out-of-range vertex");
      if (seen[v])
        throw std::invalid_argument("clique partition: vertex " +
                                    std::to_string(v) + " appears twice");
      seen[v] = 1;
    }
    for (size_t a = 0; a < part.size(); ++a) {
      for (size_t b = a + 1; b < part.size(); ++b) {
        if (!in.g.adjacent(part[a], part[b]))
          throw std::invalid_argument(label + " is not a clique");
      }
    }
  }
  for (int v = 0; v < in.g.n; ++v) {
    if (!seen[v])
      throw std::invalid_argument("clique partition: vertex " +
                                  std::to_string(v) + " is not covered");
  }
}

GuardGadget build_guard_gadget(const CliquePartitionInput& in, int p) {
  validate_clique_partition(in);
  if (p < 4 || p % 2 != 0)
    throw std::invalid_argument("guard gadget: p must be even and at least 4");
  const int kp = static_cast<int>(in.parts.size());
  const int n0 = in.g.n;
  GuardGadget gg;
  gg.input = in;
  gg.kprime = kp;
  gg.p = p;
  Graph g(n0 + 2 * kp + (3 * kp + 1) * p);
  gg.x.resize(kp);
  gg.y.resize(kp);
  for (int i = 0; i < kp; ++i) {
    gg.x[i] = n0 + 2 * i;
    gg.y[i] = n0 + 2 * i + 1;
  }
  int next = n0 + 2 * kp;
  auto fresh_path = [&]() {
    std::vector<int> pv(p);
    for (int j = 0; j < p; ++j) pv[j] = next++;
    for (int j = 0; j + 1 < p; ++j) g.add_edge(pv[j], pv[j + 1]);
    return pv;
  };
  gg.guard_paths.push_back(fresh_path());
  for (int i = 0; i < kp; ++i) {
    gg.guard_paths.push_back(fresh_path());
    gg.guard_paths.push_back(fresh_path());
    gg.guard_paths.push_back(fresh_path());
  }
  for (int u = 0; u < n0; ++u) {
    for (int v : in.g.neighbors(u)) {
      if (u < v) g.add_edge(u, v);
    }
  }
  const auto& shared = gg.guard_paths[0];
  for (int i = 0; i < kp; ++i) {
    const auto& px = gg.guard_paths[1 + 3 * i];
    const auto& py = gg.guard_paths[2 + 3 * i];
    const auto& pz = gg.guard_paths[3 + 3 * i];
    for (int v : in.parts[i]) {
      g.add_edge(gg.x[i], v);
      g.add_edge(gg.y[i], v);
    }
    g.add_edge(gg.x[i], px[p - 1]);
    g.add_edge(gg.x[i], pz[p - 1]);
    g.add_edge(gg.y[i], py[0]);
    g.add_edge(gg.y[i], pz[0]);
    g.add_edge(shared[p - 1], px[0]);
    g.add_edge(shared[0], py[p - 1]);
  }
  Config src, tgt;
  for (int i = 0; i < kp; ++i) {
    src.push_back(gg.x[i]);
    tgt.push_back(gg.y[i]);
  }
  for (const auto& pv : gg.guard_paths) {
    for (int j = 0; j < p; ++j) (j % 2 == 0 ? src : tgt).push_back(pv[j]);
  }
  std::sort(src.begin(), src.end());
  std::sort(tgt.begin(), tgt.end());
  gg.token_count = src.size();
  gg.inst = Instance{std::move(g), std::move(src), std::move(tgt), Variant::TS};
  validate_instance(gg.inst);
  for (int i = 0; i < kp; ++i) {
    std::vector<int> w = in.parts[i];
    w.push_back(gg.x[i]);
    w.push_back(gg.y[i]);
    std::sort(w.begin(), w.end());
    gg.w_sets.push_back(std::move(w));
  }
  auto& roles = gg.roles.roles;
  for (int v = 0; v < n0; ++v) {
    roles.emplace_back(v, "v_" + std::to_string(v + 1));
  }
  for (int i = 0; i < kp; ++i) {
    roles.emplace_back(gg.x[i], "x_" + std::to_string(i + 1));
    roles.emplace_back(gg.y[i], "y_" + std::to_string(i + 1));
  }
  for (int j = 0; j < p; ++j) {
    roles.emplace_back(gg.guard_paths[0][j], "g_" + std::to_string(j + 1));
  }
  for (int i = 0; i < kp; ++i) {
    for (int j = 0; j < p; ++j) {
      const std::string at = std::to_string(i + 1) + std::to_string(j + 1);
      roles.emplace_back(gg.guard_paths[1 + 3 * i][j], "x_" + at);
      roles.emplace_back(gg.guard_paths[2 + 3 * i][j], "y_" + at);
      roles.emplace_back(gg.guard_paths[3 + 3 * i][j], "z_" + at);
    }
  }
  std::sort(roles.begin(), roles.end());
  return gg;
}

MoveSequence guard_yes_witness(const GuardGadget& gg,
                               const std::vector<int>& transversal) {
  if (static_cast<int>(transversal.size()) != gg.kprime)
    throw std::invalid_argument("guard witness: one vertex per part required");
  for (int i = 0; i < gg.kprime; ++i) {
    const auto& part = gg.input.parts[i];
    if (std::find(part.begin(), part.end(), transversal[i]) == part.end())
      throw std::invalid_argument(
          "guard witness: vertex " + std::to_string(transversal[i]) +
          " is not in part " + std::to_string(i + 1));
  }
  for (size_t a = 0; a < transversal.size(); ++a) {
    for (size_t b = a + 1; b < transversal.size(); ++b) {
      if (gg.input.g.adjacent(transversal[a], transversal[b]))
        throw std::invalid_argument(
            "guard witness: transversal is not independent");
    }
  }
  MoveSequence ms;
  for (int i = 0; i < gg.kprime; ++i) ms.push_back({gg.x[i], transversal[i]});
  // Shift every path token one step, family by family; x paths must empty
  // their first cells before the shared path parks next to them, and the
  // shared path in turn before the y paths.
  auto rounds = [&](const std::vector<int>& path_ids) {
    for (int j = gg.p - 2; j >= 0; j -= 2) {
      for (int id : path_ids) {
        const auto& pv = gg.guard_paths[id];
        ms.push_back({pv[j], pv[j + 1]});
      }
    }
  };
  std::vector<int> zs, xs, ys;
  for (int i = 0; i < gg.kprime; ++i) {
    xs.push_back(1 + 3 * i);
    ys.push_back(2 + 3 * i);
    zs.push_back(3 + 3 * i);
  }
  rounds(zs);
  rounds(xs);
  rounds({0});
  rounds(ys);
  for (int i = 0; i < gg.kprime; ++i) ms.push_back({transversal[i], gg.y[i]});
  if (auto bad = verify_sequence(gg.inst, ms))
    throw std::logic_error("guard witness broke at move " +
                           std::to_string(bad->index) + ": " + bad->reason);
  return ms;
}

bool guard_config_invariants(const GuardGadget& gg, const Config& c) {
  auto count_in = [&](const std::vector<int>& set) {
    int cnt = 0;
    for (int v : set) {
      if (std::binary_search(c.begin(), c.end(), v)) ++cnt;
    }
    return cnt;
  };
  for (const auto& w : gg.w_sets) {
    if (count_in(w) != 1) return false;
  }
  for (const auto& pv : gg.guard_paths) {
    if (count_in(pv) != gg.p / 2) return false;
  }
  return true;
}

GuardStructureReport check_guard_structure(const GuardGadget& gg) {
  GuardStructureReport report;
  auto cycle_free = [&](const Graph& g) {
    for (int len = 4; len <= gg.p; ++len) {
      if (find_induced_cycle(g, len)) return false;
    }
    return true;
  };
  report.input_cycle_free = cycle_free(gg.input.g);
  report.gadget_cycle_free = cycle_free(gg.inst.g);
  report.max_is_matches =
      max_independent_set(gg.inst.g).size() == gg.token_count;
  report.ok = report.max_is_matches &&
              (!report.input_cycle_free || report.gadget_cycle_free);
  return report;
}

MisGadget build_mis_gadget(const Graph& g,
                           const std::vector<std::vector<int>>& parts) {
  if (parts.empty()) throw std::invalid_argument("mis gadget: no parts");
  std::vector<std::vector<int>> ps = parts;
  std::vector<char> seen(g.n, 0);
  for (size_t i = 0; i < ps.size(); ++i) {
    auto& part = ps[i];
    const std::string label = "mis gadget: part " + std::to_string(i + 1);
    if (part.empty()) throw std::invalid_argument(label + " is empty");
    std::sort(part.begin(), part.end());
    for (int v : part) {
      if (v < 0 || v >= g.n)
        throw std::invalid_argument(label + " has an out-of-range vertex");
      if (seen[v])
        throw std::invalid_argument("mis gadget: vertex " + std::to_string(v) +
                                    " appears twice");
      seen[v] = 1;
    }
  }
  for (int v = 0; v < g.n; ++v) {
    if (!seen[v])
      throw std::invalid_argument("mis gadget: vertex " + std::to_string(v) +
                                  " is not covered");
  }
  const int k = static_cast<int>(ps.size());
  const int cols = 2 * k;
  MisGadget mg;
  mg.input = g;
  mg.parts = std::move(ps);
  mg.k = k;
  const int total = 4 * g.n + 8 * k + 4;
  mg.copy_source.assign(total, -1);
  int next = 0;
  auto copy_column = [&](int part_idx) {
    std::vector<int> col;
    for (int v : mg.parts[part_idx]) {
      mg.copy_source[next] = v;
      col.push_back(next++);
    }
    return col;
  };
  mg.a_copies.resize(cols);
  mg.b_copies.resize(cols);
  for (int c = 0; c < cols; ++c) mg.a_copies[c] = copy_column(c / 2);
  for (int c = 0; c < cols; ++c) mg.b_copies[c] = copy_column(c / 2);
  auto fresh_row = [&]() {
    std::vector<int> row(cols);
    for (int i = 0; i < cols; ++i) row[i] = next++;
    return row;
  };
  mg.a_start = fresh_row();
  mg.a_end = fresh_row();
  mg.b_start = fresh_row();
  mg.b_end = fresh_row();
  mg.s_a = next++;
  mg.e_a = next++;
  mg.s_b = next++;
  mg.e_b = next++;
  Graph gp(total);
  // Copy columns: complete bipartite minus the equivalence matching between
  // columns of the same part, the input edges everywhere else.
  for (int ca = 0; ca < cols; ++ca) {
    for (int cb = 0; cb < cols; ++cb) {
      const bool same_part = ca / 2 == cb / 2;
      for (int up : mg.a_copies[ca]) {
        for (int vp : mg.b_copies[cb]) {
          const bool edge =
              same_part
                  ? mg.copy_source[up] != mg.copy_source[vp]
                  : g.adjacent(mg.copy_source[up], mg.copy_source[vp]);
          if (edge) gp.add_edge(up, vp);
        }
      }
    }
  }
  // Row vertex p reaches every copy column from p upward.
  for (int p0 = 0; p0 < cols; ++p0) {
    for (int c = p0; c < cols; ++c) {
      for (int vp : mg.b_copies[c]) {
        gp.add_edge(mg.a_start[p0], vp);
        gp.add_edge(mg.a_end[p0], vp);
      }
      for (int up : mg.a_copies[c]) {
        gp.add_edge(mg.b_start[p0], up);
        gp.add_edge(mg.b_end[p0], up);
      }
    }
  }
  auto complete_block = [&](std::vector<int> left, int extra_left,
                            std::vector<int> right, int extra_right) {
    left.push_back(extra_left);
    right.push_back(extra_right);
    for (int u : left) {
      for (int w : right) gp.add_edge(u, w);
    }
  };
  complete_block(mg.a_start, mg.s_a, mg.b_end, mg.e_b);
  complete_block(mg.a_end, mg.e_a, mg.b_start, mg.s_b);
  Config src = mg.a_start, tgt = mg.a_end;
  src.insert(src.end(), mg.b_start.begin(), mg.b_start.end());
  src.push_back(mg.s_a);
  src.push_back(mg.s_b);
  tgt.insert(tgt.end(), mg.b_end.begin(), mg.b_end.end());
  tgt.push_back(mg.e_a);
  tgt.push_back(mg.e_b);
  std::sort(src.begin(), src.end());
  std::sort(tgt.begin(), tgt.end());
  mg.inst = Instance{std::move(gp), std::move(src), std::move(tgt), Variant::TS};
  validate_instance(mg.inst);
  if (!bipartition(mg.inst.g))
    throw std::logic_error("mis gadget: construction is not bipartite");
  auto& roles = mg.roles.roles;
  for (int c = 0; c < cols; ++c) {
    for (int up : mg.a_copies[c]) {
      roles.emplace_back(up, "A" + std::to_string(c + 1) + "_" +
                                 std::to_string(mg.copy_source[up] + 1));
    }
    for (int vp : mg.b_copies[c]) {
      roles.emplace_back(vp, "B" + std::to_string(c + 1) + "_" +
                                 std::to_string(mg.copy_source[vp] + 1));
    }
  }
  for (int i = 0; i < cols; ++i) {
    roles.emplace_back(mg.a_start[i], "a_s" + std::to_string(i + 1));
    roles.emplace_back(mg.a_end[i], "a_e" + std::to_string(i + 1));
    roles.emplace_back(mg.b_start[i], "b_s" + std::to_string(i + 1));
    roles.emplace_back(mg.b_end[i], "b_e" + std::to_string(i + 1));
  }
  roles.emplace_back(mg.s_a, "s_A");
  roles.emplace_back(mg.e_a, "e_A");
  roles.emplace_back(mg.s_b, "s_B");
  roles.emplace_back(mg.e_b, "e_B");
  std::sort(roles.begin(), roles.end());
  return mg;
}

MoveSequence mis_yes_witness(const MisGadget& mg,
                             const std::vector<int>& chosen) {
  if (static_cast<int>(chosen.size()) != mg.k)
    throw std::invalid_argument("mis witness: one vertex per part required");
  for (int p = 0; p < mg.k; ++p) {
    if (!std::binary_search(mg.parts[p].begin(), mg.parts[p].end(), chosen[p]))
      throw std::invalid_argument("mis witness: vertex " +
                                  std::to_string(chosen[p]) +
                                  " is not in part " + std::to_string(p + 1));
  }
  for (int a = 0; a < mg.k; ++a) {
    for (int b = a + 1; b < mg.k; ++b) {
      if (mg.input.adjacent(chosen[a], chosen[b]))
        throw std::invalid_argument("mis witness: chosen set is not independent");
    }
  }
  auto copy_at = [&](const std::vector<std::vector<int>>& side, int col,
                     int v) {
    const auto& part = mg.parts[col / 2];
    const auto at = std::lower_bound(part.begin(), part.end(), v) - part.begin();
    return side[col][at];
  };
  // Start rows drain into the far-side copy columns in column order, the two
  // locks swap, then the copies drain into the end rows in reverse order.
  MoveSequence ms;
  for (int p = 0; p < mg.k; ++p) {
    const int c1 = 2 * p, c2 = 2 * p + 1;
    ms.push_back({mg.a_start[c1], copy_at(mg.b_copies, c1, chosen[p])});
    ms.push_back({mg.a_start[c2], copy_at(mg.b_copies, c2, chosen[p])});
    ms.push_back({mg.b_start[c1], copy_at(mg.a_copies, c1, chosen[p])});
    ms.push_back({mg.b_start[c2], copy_at(mg.a_copies, c2, chosen[p])});
  }
  ms.push_back({mg.s_a, mg.e_b});
  ms.push_back({mg.s_b, mg.e_a});
  for (int p = mg.k - 1; p >= 0; --p) {
    const int c1 = 2 * p, c2 = 2 * p + 1;
    ms.push_back({copy_at(mg.b_copies, c2, chosen[p]), mg.a_end[c2]});
    ms.push_back({copy_at(mg.b_copies, c1, chosen[p]), mg.a_end[c1]});
    ms.push_back({copy_at(mg.a_copies, c2, chosen[p]), mg.b_end[c2]});
    ms.push_back({copy_at(mg.a_copies, c1, chosen[p]), mg.b_end[c1]});
  }
  if (auto bad = verify_sequence(mg.inst, ms))
    throw std::logic_error("mis witness broke at move " +
                           std::to_string(bad->index) + ": " + bad->reason);
  return ms;
}

bool is_well_organized(const MisGadget& mg, const Config& c) {
  auto has = [&](int v) { return std::binary_search(c.begin(), c.end(), v); };
  if (!(has(mg.s_a) || has(mg.e_b))) return false;
  if (!(has(mg.s_b) || has(mg.e_a))) return false;
  const int cols = 2 * mg.k;
  auto count_in = [&](const std::vector<int>& set) {
    int cnt = 0;
    for (int v : set) cnt += has(v);
    return cnt;
  };
  // The column counters may pair with the start rows straight or crossed;
  // either orientation qualifies.
  auto oriented = [&](const std::vector<std::vector<int>>& cols_a,
                      const std::vector<std::vector<int>>& cols_b) {
    std::vector<int> ca(cols), cb(cols);
    int ma = 0, mb = 0;
    for (int i = 0; i < cols; ++i) {
      ca[i] = count_in(cols_a[i]);
      cb[i] = count_in(cols_b[i]);
      if (ca[i] > 0) ma = i + 1;
      if (cb[i] > 0) mb = i + 1;
    }
    for (int p = 0; p < ma; ++p) {
      if (ca[p] != 1) return false;
    }
    for (int q = 0; q < mb; ++q) {
      if (cb[q] != 1) return false;
    }
    for (int p = ma; p < cols; ++p) {
      if (!has(mg.a_start[p])) return false;
    }
    for (int q = mb; q < cols; ++q) {
      if (!has(mg.b_start[q])) return false;
    }
    return true;
  };
  return oriented(mg.a_copies, mg.b_copies) ||
         oriented(mg.b_copies, mg.a_copies);
}

}  // namespace isr
