#pragma once

#include "isr/oracle.hpp"

namespace isr {

enum class KernelStatus { DecidedYes, DecidedNo, Reduced };

// Min-degree greedy independent set in h, deleting closed neighborhoods.
// Guaranteed to find k vertices when h is eps-sparse with
// |V(h)| > k(2k)^(1/eps); absent only when that hypothesis fails.
std::optional<Config> greedy_sparse_independent_set(const Graph& h, int k,
                                                    double eps);

// Triangle-free h with |V(h)| >= k(k-1)+1 always yields one: either some
// vertex has k independent neighbors or greedy closed-neighborhood removal
// survives k rounds.
std::optional<Config> triangle_free_independent_set(const Graph& h, int k);

struct TjRuleOutcome {
  bool fired = false;
  MoveSequence witness;  // at most 2k jumps when fired
};

// H = g - N[src ∪ tgt] route: when H is large enough, jump everything into
// an independent set inside H and out again.
TjRuleOutcome sparse_part_rule(const Instance& inst, double eps);
// Same rule driven by the triangle-free bound k(k-1)+1 on |V(H)|.
TjRuleOutcome large_remainder_rule(const Instance& inst);

// J = g[N[src ∪ tgt]] {C3,C4}-free route: a vertex of J-degree >= 3k in
// src ∪ tgt has k private neighbors to park on. Throws
// std::invalid_argument when J is not {C3,C4}-free.
TjRuleOutcome neighborhood_degree_rule(const Instance& inst);

struct TjKernelOutcome {
  KernelStatus status = KernelStatus::Reduced;
  MoveSequence witness;     // DecidedYes only
  std::string rule_trace;   // rules tried, comma separated
  size_t size_bound = 0;    // certified bound when Reduced
};

// Applies neighborhood_degree_rule then the remainder rule for the route
// the report certifies (eps-sparse H + {C3,C4}-free J, or {C3,C4}-free g).
// k = 1 instances are decided directly.
TjKernelOutcome kernelize_tj(const Instance& inst, const ClassReport& report,
                             double eps);

}  // namespace isr
