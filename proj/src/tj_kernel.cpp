#include "isr/tj_kernel.hpp"

#include <algorithm>
#include <cmath>

namespace isr {

namespace {

bool contains(const std::vector<int>& sorted, int v) {
  return std::binary_search(sorted.begin(), sorted.end(), v);
}

Config sorted_union(const Config& a, const Config& b) {
  Config sa = a, sb = b, out;
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  std::set_union(sa.begin(), sa.end(), sb.begin(), sb.end(),
                 std::back_inserter(out));
  return out;
}

std::vector<int> closed_neighborhood(const Graph& g,
                                     const std::vector<int>& core) {
  std::vector<char> in(g.n, 0);
  for (int v : core) {
    in[v] = 1;
    for (int w : g.adj[v]) in[w] = 1;
  }
  std::vector<int> out;
  for (int v = 0; v < g.n; ++v)
    if (in[v]) out.push_back(v);
  return out;
}

// jump src onto parks pairwise, then parks onto tgt; parks lie outside
// N[src ∪ tgt], so every jump is independent of the rest
MoveSequence park_witness(const Config& src, const Config& tgt,
                          const Config& parks) {
  MoveSequence out;
  for (size_t i = 0; i < src.size(); ++i) out.push_back({src[i], parks[i]});
  for (size_t i = 0; i < tgt.size(); ++i) out.push_back({parks[i], tgt[i]});
  return out;
}

TjRuleOutcome remainder_rule(const Instance& inst,
                             std::optional<Config> park_set) {
  TjRuleOutcome outcome;
  if (!park_set || park_set->size() < inst.src.size()) return outcome;
  Config src = inst.src, tgt = inst.tgt, parks = *park_set;
  std::sort(src.begin(), src.end());
  std::sort(tgt.begin(), tgt.end());
  std::sort(parks.begin(), parks.end());
  parks.resize(src.size());
  outcome.fired = true;
  outcome.witness = park_witness(src, tgt, parks);
  return outcome;
}

}  // namespace

std::optional<Config> greedy_sparse_independent_set(const Graph& h, int k,
                                                    double eps) {
  if (k < 1) throw std::invalid_argument("k must be positive");
  if (eps <= 0.0 || eps > 1.0)
    throw std::invalid_argument("eps must lie in (0, 1]");
  std::vector<char> alive(h.n, 1);
  std::vector<int> deg(h.n);
  for (int v = 0; v < h.n; ++v) deg[v] = h.degree(v);
  int remaining = h.n;
  Config out;
  while (remaining > 0 && static_cast<int>(out.size()) < k) {
    int z = -1;
    for (int v = 0; v < h.n; ++v)
      if (alive[v] && (z == -1 || deg[v] < deg[z])) z = v;
    out.push_back(z);
    std::vector<int> drop{z};
    for (int w : h.adj[z])
      if (alive[w]) drop.push_back(w);
    for (int d : drop) {
      alive[d] = 0;
      --remaining;
      for (int w : h.adj[d])
        if (alive[w]) --deg[w];
    }
  }
  if (static_cast<int>(out.size()) < k) return std::nullopt;
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<Config> triangle_free_independent_set(const Graph& h, int k) {
  if (k < 1) throw std::invalid_argument("k must be positive");
  for (int v = 0; v < h.n; ++v) {
    if (h.degree(v) >= k) {
      Config out(h.adj[v].begin(), h.adj[v].begin() + k);
      return out;
    }
  }
  // all degrees < k: closed neighborhoods eat at most k vertices per round
  std::vector<char> alive(h.n, 1);
  Config out;
  for (int v = 0; v < h.n; ++v) {
    if (!alive[v]) continue;
    out.push_back(v);
    alive[v] = 0;
    for (int w : h.adj[v]) alive[w] = 0;
    if (static_cast<int>(out.size()) == k) break;
  }
  if (out.empty()) return std::nullopt;
  return out;
}

TjRuleOutcome sparse_part_rule(const Instance& inst, double eps) {
  if (eps <= 0.0 || eps > 1.0)
    throw std::invalid_argument("eps must lie in (0, 1]");
  const int k = static_cast<int>(inst.src.size());
  Config endpoints = sorted_union(inst.src, inst.tgt);
  Subgraph h = remove_closed_neighborhood(inst.g, endpoints);
  double threshold = k * std::pow(2.0 * k, 1.0 / eps);
  if (static_cast<double>(h.g.n) <= threshold + 1e-9) return {};

  auto found = greedy_sparse_independent_set(h.g, k, eps);
  if (!found) return {};
  Config parks;
  for (int v : *found) parks.push_back(h.to_old[v]);
  return remainder_rule(inst, parks);
}

TjRuleOutcome large_remainder_rule(const Instance& inst) {
  const int k = static_cast<int>(inst.src.size());
  Config endpoints = sorted_union(inst.src, inst.tgt);
  Subgraph h = remove_closed_neighborhood(inst.g, endpoints);
  if (h.g.n < k * (k - 1) + 1) return {};

  auto found = triangle_free_independent_set(h.g, k);
  if (!found || static_cast<int>(found->size()) < k) return {};
  Config parks;
  for (int v : *found) parks.push_back(h.to_old[v]);
  return remainder_rule(inst, parks);
}

TjRuleOutcome neighborhood_degree_rule(const Instance& inst) {
  const int k = static_cast<int>(inst.src.size());
  Config src = inst.src, tgt = inst.tgt;
  std::sort(src.begin(), src.end());
  std::sort(tgt.begin(), tgt.end());
  Config endpoints = sorted_union(src, tgt);

  Subgraph j = induced_subgraph(inst.g, closed_neighborhood(inst.g, endpoints));
  if (find_induced_cycle(j.g, 3) || find_induced_cycle(j.g, 4))
    throw std::invalid_argument("neighborhood graph is not {C3,C4}-free");

  int w = -1;
  for (int v : endpoints)
    if (inst.g.degree(v) >= 3 * k) {
      w = v;
      break;
    }
  if (w == -1) {
    for (int v = 0; v < j.g.n; ++v)
      if (j.g.degree(v) >= 3 * k && !contains(endpoints, j.to_old[v]))
        throw std::invalid_argument(
            "degree bound violated outside the endpoint sets");
    return {};
  }

  if (!contains(src, w)) {
    // the high-degree vertex sits in the target: build the reverse pull
    Instance rev = inst;
    rev.src = inst.tgt;
    rev.tgt = inst.src;
    TjRuleOutcome sub = neighborhood_degree_rule(rev);
    std::reverse(sub.witness.begin(), sub.witness.end());
    for (Move& m : sub.witness) std::swap(m.from, m.to);
    return sub;
  }

  // private neighbors: adjacent to w and to nothing else of src ∪ tgt
  Config parks;
  for (int u : inst.g.adj[w]) {
    if (contains(src, u)) continue;
    bool priv = true;
    for (int x : inst.g.adj[u])
      if (x != w && contains(endpoints, x)) priv = false;
    if (priv) parks.push_back(u);
    if (static_cast<int>(parks.size()) == k) break;
  }
  if (static_cast<int>(parks.size()) < k)
    throw std::logic_error("private neighbor shortfall in a {C3,C4}-free graph");

  TjRuleOutcome outcome;
  outcome.fired = true;
  size_t pi = 0;
  outcome.witness.push_back({w, parks[pi++]});
  for (int s : src)
    if (s != w) outcome.witness.push_back({s, parks[pi++]});

  Config movers, slots;
  std::set_difference(parks.begin(), parks.end(), tgt.begin(), tgt.end(),
                      std::back_inserter(movers));
  std::set_difference(tgt.begin(), tgt.end(), parks.begin(), parks.end(),
                      std::back_inserter(slots));
  if (contains(slots, w)) {
    // w's own slot goes last: its parked neighbors must vacate N(w) first
    slots.erase(std::find(slots.begin(), slots.end(), w));
    slots.push_back(w);
  }
  for (size_t i = 0; i < movers.size(); ++i)
    outcome.witness.push_back({movers[i], slots[i]});
  return outcome;
}

TjKernelOutcome kernelize_tj(const Instance& inst, const ClassReport& report,
                             double eps) {
  validate_instance(inst);
  if (inst.variant != Variant::TJ)
    throw std::invalid_argument("kernelization requires the jumping variant");
  if (eps <= 0.0 || eps > 1.0)
    throw std::invalid_argument("eps must lie in (0, 1]");
  const int k = static_cast<int>(inst.src.size());
  Config src = inst.src, tgt = inst.tgt;
  std::sort(src.begin(), src.end());
  std::sort(tgt.begin(), tgt.end());

  TjKernelOutcome out;
  if (src == tgt) {
    out.status = KernelStatus::DecidedYes;
    out.rule_trace = "identical-endpoints";
    return out;
  }
  if (k == 1) {
    // a lone token jumps anywhere in one move
    out.status = KernelStatus::DecidedYes;
    out.witness = {{src[0], tgt[0]}};
    out.rule_trace = "k1-direct";
    return out;
  }

  bool c3_free = report.induced_cycle_free.size() > 0 &&
                 report.induced_cycle_free[0];
  bool c4_free = report.induced_cycle_free.size() > 1 &&
                 report.induced_cycle_free[1];
  bool global_route = c4_free && (c3_free || report.bipartite);

  bool sparse_route = false;
  if (!global_route) {
    Config endpoints = sorted_union(src, tgt);
    Subgraph h = remove_closed_neighborhood(inst.g, endpoints);
    Subgraph j =
        induced_subgraph(inst.g, closed_neighborhood(inst.g, endpoints));
    sparse_route = is_eps_sparse(h.g, eps) && !find_induced_cycle(j.g, 3) &&
                   !find_induced_cycle(j.g, 4);
    if (!sparse_route)
      throw std::invalid_argument(
          "class route mismatch: need {C3,C4}-free g, or eps-sparse "
          "remainder with a {C3,C4}-free neighborhood");
  }

  TjRuleOutcome deg = neighborhood_degree_rule(inst);
  out.rule_trace = "neighborhood-degree";
  if (deg.fired) {
    out.status = KernelStatus::DecidedYes;
    out.witness = deg.witness;
    return out;
  }

  TjRuleOutcome rem;
  size_t h_cap = 0;
  if (global_route) {
    rem = large_remainder_rule(inst);
    out.rule_trace += ",large-remainder";
    h_cap = static_cast<size_t>(k) * (k - 1);
  } else {
    rem = sparse_part_rule(inst, eps);
    out.rule_trace += ",sparse-part";
    h_cap = static_cast<size_t>(
        std::floor(k * std::pow(2.0 * k, 1.0 / eps) + 1e-9));
  }
  if (rem.fired) {
    out.status = KernelStatus::DecidedYes;
    out.witness = rem.witness;
    return out;
  }

  out.status = KernelStatus::Reduced;
  out.size_bound = 2 * k + static_cast<size_t>(2 * k) * (3 * k - 1) + h_cap;
  return out;
}

}  // namespace isr
