#pragma once

#include "isr/oracle.hpp"

namespace isr {

// Raised when a sliding procedure cannot make progress; signals a violated
// precondition such as a locked configuration.
struct slide_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Moves every token off from_side (0 = L, 1 = R) by repeatedly sliding the
// lowest-indexed movable token to its lowest free safe neighbor. Succeeds
// with exactly |s ∩ from_side| moves on unlocked configurations.
MoveSequence switch_side(const Graph& g, const Bipartition& bip,
                         const Config& s, int from_side);

struct TokenPull {
  MoveSequence moves;
  int displaced = -1;  // the vertex of s whose token ended on the target
};

// Brings one closest token onto v. Requires s unlocked, N[v] and s
// disjoint, and D(v,s) nonempty (its tokens share a side automatically).
// Final configuration is (s \ {displaced}) ∪ {v}; length <= 2(|s|-1) + d.
TokenPull move_token_far(const Graph& g, const Bipartition& bip,
                         const Config& s, int v);

// Transforms s into t along relay chains when s ∪ t is 2-independent and
// the graph is connected.
MoveSequence transform_2independent(const Graph& g, const Config& s,
                                    const Config& t);

struct FatSetWitness {
  int center = -1;
  int radius = 0;
  std::vector<int> set;              // ball in its component of g - forbidden
  std::vector<int> interior;         // same ball with radius - 2
  std::vector<int> two_independent;  // 2k vertices, 2-independent in g
};

// Scans components of g - forbidden for a ball exceeding
// 2k(1 + Δ + Δ²)² vertices, Δ taken from g.
std::optional<FatSetWitness> find_fat_ball(const Graph& g, int k,
                                           const std::vector<int>& forbidden);

// Routes src through the fat set to tgt: migrate src in, shuffle inside,
// reverse the migration of tgt.
MoveSequence route_via_fat(const Instance& inst, const FatSetWitness& fat);

}  // namespace isr
