#pragma once

#include <string>

#include "isr/graph.hpp"

namespace isr {

enum class Variant { TS, TJ };

std::string variant_name(Variant v);

// A configuration is a sorted set of token positions.
using Config = std::vector<int>;

struct Move {
  int from = -1;
  int to = -1;
  bool operator==(const Move&) const = default;
};
using MoveSequence = std::vector<Move>;

struct Instance {
  Graph g;
  Config src;
  Config tgt;
  Variant variant = Variant::TS;
};

// Throws std::invalid_argument unless src and tgt are equal-size
// independent sets of g with in-range, duplicate-free vertices.
void validate_instance(const Instance& inst);

// All single-token moves legal from c, ascending by (from, to).
std::vector<Move> legal_moves(const Graph& g, const Config& c, Variant v);

// Applies one move, throwing std::invalid_argument when it is illegal.
Config apply_move(const Graph& g, const Config& c, Move m, Variant v);

struct OracleLimits {
  size_t max_configs = 5000000;
  long long max_millis = 120000;
};

struct limit_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class ReachStatus { Reachable, Unreachable, LimitExceeded };

struct ReachResult {
  ReachStatus status = ReachStatus::Unreachable;
  // Shortest witness; ties broken by expanding moves in (from, to) order
  // within breadth-first layers, so reruns reproduce it exactly.
  std::optional<MoveSequence> witness;
  size_t explored = 0;
};

ReachResult bfs_reach(const Instance& inst, const OracleLimits& limits = {});

// Every configuration reachable from s, in discovery order.
struct ReachableSet {
  std::vector<Config> configs;
};
ReachableSet reachable_set(const Graph& g, const Config& s, Variant v,
                           const OracleLimits& limits = {});

struct RigidReport {
  std::vector<int> rigid;  // tokens present in every reachable configuration
  bool unlocked = false;
  size_t explored = 0;
};

// Exact, by exhausting the reachable set under token sliding; returns as
// soon as the running intersection empties. Throws limit_error when the
// caps are exceeded before the answer is known.
RigidReport rigid_tokens(const Graph& g, const Config& s,
                         const OracleLimits& limits = {});

struct ClosestTokens {
  std::vector<int> tokens;  // sorted
  int distance = -1;        // -1 when no token is reachable from v
};
ClosestTokens closest_tokens(const Graph& g, const Config& s, int v);

// True iff |D(v,s)| >= 2 and no single slide of a token in D(v,s) yields a
// configuration s' with v in s' or |D(v,s')| = 1.
bool is_frozen(const Graph& g, const Config& s, int v);

struct SequenceViolation {
  size_t index = 0;  // move index; equals moves.size() for a final mismatch
  std::string reason;
};

// Replays seq from inst.src; nullopt means it is valid and ends at inst.tgt.
std::optional<SequenceViolation> verify_sequence(const Instance& inst,
                                                 const MoveSequence& seq);

// Instance file: graph lines followed by "src", "tgt" (1-based vertex
// lists) and "variant TS|TJ".
Instance parse_instance(const std::string& text);
std::string serialize_instance(const Instance& inst);

// Sequence file: header "s <k> <variant>" then "m <from> <to>" per move.
struct SequenceFile {
  int k = 0;
  Variant variant = Variant::TS;
  MoveSequence moves;
};
SequenceFile parse_sequence(const std::string& text);
std::string serialize_sequence(int k, Variant v, const MoveSequence& moves);

}  // namespace isr
