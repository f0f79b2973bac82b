#pragma once

#include <array>

#include "isr/bipartite_slides.hpp"
#include "isr/tj_kernel.hpp"

namespace isr {

struct TsPreprocess {
  bool decided_no = false;
  std::string reason;       // set when decided_no
  Subgraph reduced;         // g minus N[rigid], when not decided
  Config src, tgt;          // reduced ids
  std::vector<int> rigid;   // original ids, common rigid set
};

// Compares rigid sets of src and tgt, strips them, and rejects instances
// whose sides spread tokens differently across components.
TsPreprocess preprocess_rigid(const Instance& inst,
                              const OracleLimits& limits = {});

// Drops pendant co-neighbors beyond one retained representative per vertex,
// preferring representatives in src ∪ tgt (both kept when src and tgt pick
// two distinct pendants of the same vertex).
struct PendantReduction {
  Subgraph reduced;
  Config src, tgt;  // reduced ids
};
PendantReduction normalize_pendants(const Graph& g, const Config& src,
                                    const Config& tgt);

struct TsKernelOutcome {
  KernelStatus status = KernelStatus::Reduced;
  MoveSequence witness;  // DecidedYes
  std::optional<FatSetWitness> fat;
  size_t size_bound = 0;  // Reduced: 2k + 2kΔ * 2k(1+Δ+Δ²)²
};

// Bounded-degree bipartite kernel: a fat ball decides yes, otherwise the
// instance is already small.
TsKernelOutcome kernelize_ts_bounded_degree(const Instance& inst,
                                            const Bipartition& bip);

// Ball decomposition around a high-degree vertex of a {C4}-free bipartite
// graph: N1 = N(v) minus one retained pendant, N2 owned by unique N1
// vertices, N3 split by how many owner sets each vertex touches.
struct HighDegDecomposition {
  int v = -1;
  int k = 0;
  int u_p = -1;  // retained pendant neighbor, -1 when none
  std::vector<int> n1, n2, n3;
  std::vector<int> owner;  // for N2 members: the owning N1 vertex, else -1
  std::vector<int> m_big, m_small;
  std::vector<char> in_n1, in_n2, in_n3, in_m_big;
};
HighDegDecomposition build_highdeg_decomposition(const Graph& g,
                                                 const Bipartition& bip,
                                                 int v, int k);

// Five stages: tokens to v's side and off v, tokens off N2, M_big evicted,
// M_small pulled into N1, stragglers walked in. stage_ends[i] = move count
// after stage i+1.
struct NormalizeResult {
  MoveSequence moves;
  Config final_config;  // subset of N1
  std::array<size_t, 5> stage_ends{};
};
NormalizeResult highdeg_normalize(const Graph& g, const Bipartition& bip,
                                  const HighDegDecomposition& dec,
                                  const Config& s);

// Connects two configurations inside N1 by parking everything else in N2
// and routing one token at a time through v.
MoveSequence highdeg_connect(const Graph& g, const HighDegDecomposition& dec,
                             const Config& s5, const Config& t5);

struct HighDegOutcome {
  bool applied = false;  // no vertex of degree >= k²+k+1 when false
  MoveSequence witness;
};

// Normalize both sides toward N1 and connect them.
HighDegOutcome highdeg_yes_rule(const Instance& inst, const Bipartition& bip);

enum class SolveAnswer { Yes, No, Undecided };

struct SolveResult {
  SolveAnswer answer = SolveAnswer::Undecided;
  std::optional<MoveSequence> witness;
  std::vector<std::string> rule_trace;
  bool heuristic_fallback = false;  // plain oracle run outside certified routes
};

// Full sliding pipeline: rigid preproc(), per-component pendant
// normalization, high-degree rule on {C4}-free bipartite components,
// bounded-degree kernel, oracle on what remains.
SolveResult solve_ts(const Instance& inst, const ClassReport& report,
                     const OracleLimits& limits = {});

}  // namespace isr
