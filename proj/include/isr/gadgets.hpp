#pragma once

#include "isr/oracle.hpp"

namespace isr {

// Brute-force maximum independent set (branch and bound), for small graphs.
std::vector<int> max_independent_set(const Graph& g);

// Lexicographically first independent set picking one vertex per part.
std::optional<std::vector<int>> independent_transversal(
    const Graph& g, const std::vector<std::vector<int>>& parts);

struct RoleMap {
  std::vector<std::pair<int, std::string>> roles;  // vertex (0-based), name
};
std::string serialize_roles(const RoleMap& rm);  // "role <1-based> <name>"
RoleMap parse_roles(const std::string& text);

struct CliquePartitionInput {
  Graph g;
  std::vector<std::vector<int>> parts;
};
// Parts must cover every vertex exactly once and each induce a clique.
void validate_clique_partition(const CliquePartitionInput& in);

// Sliding gadget wrapping a clique-partitioned graph in guard paths: one
// shared path, and per part an x-path, a y-path and a z-path of length p.
struct GuardGadget {
  CliquePartitionInput input;
  Instance inst;  // variant TS
  RoleMap roles;
  int kprime = 0;
  int p = 0;
  size_t token_count = 0;
  std::vector<int> x, y;                      // x_i, y_i per part
  std::vector<std::vector<int>> w_sets;       // W_i = {x_i, y_i} ∪ V_i
  std::vector<std::vector<int>> guard_paths;  // P_G, then P_x, P_y, P_z per part
};
GuardGadget build_guard_gadget(const CliquePartitionInput& in, int p);

// Independent transversal of the parts -> sliding witness from src to tgt.
MoveSequence guard_yes_witness(const GuardGadget& gg,
                               const std::vector<int>& transversal);

// |W_i ∩ c| = 1 for every part and p/2 tokens on every guard path.
bool guard_config_invariants(const GuardGadget& gg, const Config& c);

struct GuardStructureReport {
  bool input_cycle_free = false;   // input had no C4..Cp
  bool gadget_cycle_free = false;  // gadget preserves that
  bool max_is_matches = false;     // brute max IS == token_count
  bool ok = false;
};
GuardStructureReport check_guard_structure(const GuardGadget& gg);

// Sliding gadget for multicolored independent set on 4k copy columns per
// side plus start/end rows and four lock vertices.
struct MisGadget {
  Graph input;
  std::vector<std::vector<int>> parts;
  Instance inst;  // variant TS
  RoleMap roles;
  int k = 0;
  std::vector<std::vector<int>> a_copies, b_copies;  // 2k sets each
  std::vector<int> copy_source;  // gadget vertex -> input vertex, else -1
  std::vector<int> a_start, a_end, b_start, b_end;
  int s_a = -1, e_a = -1, s_b = -1, e_b = -1;
};
MisGadget build_mis_gadget(const Graph& g,
                           const std::vector<std::vector<int>>& parts);

// Multicolored independent set (one vertex per part) -> witness of exactly
// 8k+2 slides.
MoveSequence mis_yes_witness(const MisGadget& mg,
                             const std::vector<int>& chosen);

// Prefix counters M_A/M_B pair with the start rows under either the
// straight or the crossed orientation.
bool is_well_organized(const MisGadget& mg, const Config& c);

}  // namespace isr
