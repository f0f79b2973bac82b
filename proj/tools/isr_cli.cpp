#include <algorithm>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "isr/gadgets.hpp"
#include "isr/ts_kernel.hpp"

using namespace isr;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

class Timer {
  std::chrono::steady_clock::time_point start_ =
      std::chrono::steady_clock::now();

 public:
  long long millis() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }
};

// Trace tokens end in -yes/-no when they carry the decision; the reason
// shown next to NO drops that suffix.
std::string reason_from(const std::string& token) {
  std::string t = token;
  for (const std::string& suffix : {"-yes", "-no"}) {
    if (t.size() > suffix.size() &&
        t.compare(t.size() - suffix.size(), suffix.size(), suffix) == 0) {
      t.resize(t.size() - suffix.size());
    }
  }
  for (char& c : t) {
    if (c == '-') c = ' ';
  }
  return t;
}

std::vector<std::string> split_trace(const std::string& csv) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : csv) {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (const std::string& p : parts) {
    if (!out.empty()) out += ' ';
    out += p;
  }
  return out;
}

void emit_witness(const std::string& path, const Instance& inst,
                  const MoveSequence& moves) {
  write_file(path, serialize_sequence(static_cast<int>(inst.src.size()),
                                      inst.variant, moves));
  std::cout << "witness: " << path << " (" << moves.size()
            << (moves.size() == 1 ? " move)\n" : " moves)\n");
}

int run_classify(const std::string& in, int p,
                 const std::vector<double>& eps) {
  Graph g = parse_graph(read_file(in));
  ClassReport rep = classify(g, p, eps);
  std::cout << "n: " << rep.n << ", m: " << rep.m
            << ", max degree: " << rep.max_degree
            << ", connected: " << yes_no(rep.connected) << "\n";
  std::cout << "bipartite: " << yes_no(rep.bipartite) << ", girth: ";
  if (rep.girth)
    std::cout << *rep.girth;
  else
    std::cout << "infinity";
  for (int len = 4; len <= p; ++len) {
    std::cout << ", C" << len
              << "-free: " << yes_no(rep.induced_cycle_free[len - 3]);
  }
  std::cout << "\n";
  for (auto [e, sparse] : rep.sparsity) {
    std::ostringstream fmt;
    fmt.setf(std::ios::fixed);
    fmt.precision(2);
    fmt << e;
    std::cout << "eps " << fmt.str() << ": " << (sparse ? "sparse" : "dense")
              << "\n";
  }
  return 0;
}

int run_solve(const std::string& in, const std::string& strategy, double eps,
              const OracleLimits& lim, std::string out_seq) {
  Timer timer;
  Instance inst = parse_instance(read_file(in));
  if (out_seq.empty()) out_seq = in + ".seq";
  std::cout << "command: solve " << in << " strategy=" << strategy << "\n";

  std::vector<std::string> trace;
  std::optional<bool> decision;
  std::optional<MoveSequence> witness;
  std::optional<size_t> explored;

  auto run_oracle = [&](const Instance& i) {
    ReachResult res = bfs_reach(i, lim);
    explored = res.explored;
    if (res.status == ReachStatus::Reachable) {
      decision = true;
      witness = res.witness;
      trace.push_back("oracle-yes");
    } else if (res.status == ReachStatus::Unreachable) {
      decision = false;
      trace.push_back("oracle-no");
    } else {
      trace.push_back("oracle-limit");
    }
  };

  if (strategy == "oracle") {
    run_oracle(inst);
  } else {
    ClassReport rep = classify(inst.g, 4, {eps});
    bool c34_free = !rep.girth || *rep.girth >= 5;
    if (inst.variant == Variant::TJ && c34_free) {
      TjKernelOutcome out = kernelize_tj(inst, rep, eps);
      trace = split_trace(out.rule_trace);
      if (out.status == KernelStatus::DecidedYes) {
        decision = true;
        witness = out.witness;
      } else if (out.status == KernelStatus::DecidedNo) {
        decision = false;
      } else {
        run_oracle(inst);
      }
    } else if (inst.variant == Variant::TS) {
      SolveResult res = solve_ts(inst, rep, lim);
      trace = res.rule_trace;
      if (res.answer == SolveAnswer::Yes) {
        decision = true;
        witness = res.witness;
      } else if (res.answer == SolveAnswer::No) {
        decision = false;
      }
    } else {
      run_oracle(inst);
    }
  }

  if (!decision) {
    std::cout << "decision: UNDECIDED (limits)\n";
    std::cout << "trace: " << join(trace) << "\n";
    std::cout << "stats: millis=" << timer.millis() << "\n";
    return 1;
  }
  if (*decision) {
    std::cout << "decision: YES\n";
    if (witness) emit_witness(out_seq, inst, *witness);
  } else {
    std::string why = trace.empty() ? "oracle" : reason_from(trace.back());
    std::cout << "decision: NO (" << why << ")\n";
  }
  std::cout << "trace: " << join(trace) << "\n";
  std::cout << "stats: ";
  if (explored) std::cout << "explored=" << *explored << " ";
  std::cout << "millis=" << timer.millis() << "\n";
  return 0;
}

int run_kernelize(const std::string& in, double eps, std::string out_inst,
                  std::string out_seq) {
  Timer timer;
  Instance inst = parse_instance(read_file(in));
  if (out_inst.empty()) out_inst = in + ".kernel";
  if (out_seq.empty()) out_seq = in + ".seq";
  std::cout << "command: kernelize " << in << "\n";

  TjKernelOutcome out;
  try {
    ClassReport rep = classify(inst.g, 4, {eps});
    out = kernelize_tj(inst, rep, eps);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what()
              << "; route this instance through solve --strategy auto\n";
    return 2;
  }
  std::cout << "trace: " << join(split_trace(out.rule_trace)) << "\n";
  if (out.status == KernelStatus::DecidedYes) {
    std::cout << "decision: YES\n";
    emit_witness(out_seq, inst, out.witness);
  } else if (out.status == KernelStatus::DecidedNo) {
    std::cout << "decision: NO\n";
  } else {
    write_file(out_inst, serialize_instance(inst));
    std::cout << "kernel: " << out_inst << " (n=" << inst.g.n
              << ", certified bound " << out.size_bound << ")\n";
  }
  std::cout << "stats: millis=" << timer.millis() << "\n";
  return 0;
}

struct PartitionedGraph {
  Graph g;
  std::vector<std::vector<int>> parts;
};

// Graph file with extra "part <v...>" lines (1-based vertex lists).
PartitionedGraph parse_partitioned(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::ostringstream graph_text;
  std::vector<std::vector<int>> parts;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag) || tag != "part") {
      graph_text << line << "\n";
      continue;
    }
    std::vector<int> part;
    long long v = 0;
    while (ls >> v) {
      if (v < 1) throw parse_error(line_no, "bad vertex id in part line");
      part.push_back(static_cast<int>(v - 1));
    }
    if (!ls.eof()) throw parse_error(line_no, "bad vertex id in part line");
    if (part.empty()) throw parse_error(line_no, "empty part line");
    parts.push_back(part);
  }
  return {parse_graph(graph_text.str()), parts};
}

int run_gadget(const std::string& in, const std::string& kind, int p,
               std::string out) {
  PartitionedGraph pg = parse_partitioned(read_file(in));
  if (out.empty()) out = in + "." + kind + ".isr";
  std::cout << "command: gadget " << in << " kind=" << kind << " p=" << p
            << "\n";
  Instance inst;
  RoleMap roles;
  size_t tokens = 0;
  if (kind == "grid") {
    if (p < 4 || p % 2 != 0) {
      std::cerr << "error: p must be even and at least 4\n";
      return 2;
    }
    GuardGadget gg = build_guard_gadget({pg.g, pg.parts}, p);
    inst = gg.inst;
    roles = gg.roles;
    tokens = gg.token_count;
  } else {
    MisGadget mg = build_mis_gadget(pg.g, pg.parts);
    inst = mg.inst;
    roles = mg.roles;
    tokens = mg.inst.src.size();
  }
  write_file(out, serialize_instance(inst));
  write_file(out + ".roles", serialize_roles(roles));
  std::cout << "gadget: " << kind << " n=" << inst.g.n << " m=" << inst.g.m
            << " tokens=" << tokens << "\n";
  std::cout << "instance: " << out << "\n";
  std::cout << "roles: " << out << ".roles\n";
  return 0;
}

int run_verify(const std::string& in, const std::string& seq_path) {
  Instance inst = parse_instance(read_file(in));
  SequenceFile sf = parse_sequence(read_file(seq_path));
  if (sf.k != static_cast<int>(inst.src.size())) {
    std::cerr << "error: sequence is for k=" << sf.k << ", instance has k="
              << inst.src.size() << "\n";
    return 2;
  }
  if (sf.variant != inst.variant) {
    std::cerr << "error: sequence variant " << variant_name(sf.variant)
              << " does not match instance variant "
              << variant_name(inst.variant) << "\n";
    return 2;
  }
  auto violation = verify_sequence(inst, sf.moves);
  if (violation) {
    std::cout << "violation at move " << violation->index << ": "
              << violation->reason << "\n";
    return 2;
  }
  std::cout << "ok: " << sf.moves.size() << " moves\n";
  return 0;
}

uint64_t pick(std::mt19937_64& rng, uint64_t n) { return rng() % n; }

void shuffle_pairs(std::vector<std::pair<int, int>>& pairs,
                   std::mt19937_64& rng) {
  for (size_t i = pairs.size(); i > 1; --i) {
    std::swap(pairs[i - 1], pairs[pick(rng, i)]);
  }
}

Graph random_tree(int n, std::mt19937_64& rng) {
  Graph g(n);
  for (int v = 1; v < n; ++v) {
    g.add_edge(static_cast<int>(pick(rng, v)), v);
  }
  return g;
}

Graph grid_two_rows(int n) {
  int cols = n / 2;
  Graph g(n);
  for (int c = 0; c < cols; ++c) {
    g.add_edge(c, cols + c);
    if (c + 1 < cols) {
      g.add_edge(c, c + 1);
      g.add_edge(cols + c, cols + c + 1);
    }
  }
  return g;
}

Graph random_girth5(int n, std::mt19937_64& rng) {
  std::vector<std::pair<int, int>> pairs;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) pairs.push_back({u, v});
  }
  shuffle_pairs(pairs, rng);
  Graph g(n);
  for (auto [u, v] : pairs) {
    int d = bfs_distances(g, u)[v];
    if (d < 0 || d >= 4) g.add_edge(u, v);
  }
  return g;
}

Graph random_bipartite_c4free(int n, std::mt19937_64& rng) {
  int left = (n + 1) / 2;
  std::vector<std::pair<int, int>> pairs;
  for (int u = 0; u < left; ++u) {
    for (int v = left; v < n; ++v) pairs.push_back({u, v});
  }
  shuffle_pairs(pairs, rng);
  Graph g(n);
  for (auto [u, v] : pairs) {
    bool creates_c4 = false;
    for (int u2 : g.neighbors(v)) {
      for (int x : g.neighbors(u)) {
        if (g.adjacent(u2, x)) creates_c4 = true;
      }
    }
    if (!creates_c4) g.add_edge(u, v);
  }
  return g;
}

std::optional<Config> sample_independent(const Graph& g, int k,
                                         std::mt19937_64& rng) {
  if (k > g.n) return std::nullopt;
  std::vector<int> perm(g.n);
  for (int i = 0; i < g.n; ++i) perm[i] = i;
  for (int attempt = 0; attempt < 10000; ++attempt) {
    for (int i = 0; i < k; ++i) {
      std::swap(perm[i], perm[i + pick(rng, g.n - i)]);
    }
    Config c(perm.begin(), perm.begin() + k);
    std::sort(c.begin(), c.end());
    if (is_independent_set(g, c)) return c;
  }
  return std::nullopt;
}

int run_random(const std::string& family, int n, int k, uint64_t seed,
               const std::string& variant, std::string out) {
  if (n < 1 || k < 1) {
    std::cerr << "error: n and k must be positive\n";
    return 2;
  }
  std::mt19937_64 rng(seed);
  Graph g;
  if (family == "tree") {
    g = random_tree(n, rng);
  } else if (family == "grid") {
    if (n < 2 || n % 2 != 0) {
      std::cerr << "error: grid family needs an even n of at least 2\n";
      return 2;
    }
    g = grid_two_rows(n);
  } else if (family == "girth5") {
    g = random_girth5(n, rng);
  } else {
    g = random_bipartite_c4free(n, rng);
  }
  auto src = sample_independent(g, k, rng);
  auto tgt = src ? sample_independent(g, k, rng) : std::nullopt;
  if (!src || !tgt) {
    std::cerr << "error: no independent set of size " << k
              << " found after 10000 attempts\n";
    return 2;
  }
  Instance inst{g, *src, *tgt,
                variant == "TJ" ? Variant::TJ : Variant::TS};
  validate_instance(inst);
  if (out.empty()) {
    out = family + "_n" + std::to_string(n) + "_k" + std::to_string(k) +
          "_seed" + std::to_string(seed) + ".isr";
  }
  write_file(out, serialize_instance(inst));
  std::cout << "command: random family=" << family << " n=" << n
            << " k=" << k << " seed=" << seed << " variant="
            << variant << "\n";
  std::cout << "instance: " << out << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"independent-set reconfiguration toolkit"};
  app.require_subcommand(1);

  auto* classify_cmd =
      app.add_subcommand("classify", "print structural facts about a graph");
  std::string classify_in;
  int classify_p = 4;
  std::vector<double> classify_eps;
  classify_cmd->add_option("graph", classify_in, "graph file")->required();
  classify_cmd->add_option("--p", classify_p, "largest induced cycle length to test")
      ->check(CLI::Range(3, 64));
  classify_cmd->add_option("--eps", classify_eps, "sparsity exponents to test");

  auto* solve_cmd =
      app.add_subcommand("solve", "decide reachability for an instance");
  std::string solve_in, solve_strategy = "auto", solve_out;
  double solve_eps = 0.5;
  OracleLimits solve_lim;
  solve_cmd->add_option("instance", solve_in, "instance file")->required();
  solve_cmd->add_option("--strategy", solve_strategy, "auto or oracle")
      ->check(CLI::IsMember({"auto", "oracle"}));
  solve_cmd->add_option("--eps", solve_eps, "sparsity exponent for the jump kernel");
  solve_cmd->add_option("--max-configs", solve_lim.max_configs,
                        "oracle configuration cap");
  solve_cmd->add_option("--max-millis", solve_lim.max_millis,
                        "oracle time cap in milliseconds");
  solve_cmd->add_option("--out", solve_out, "witness sequence path");

  auto* kernel_cmd = app.add_subcommand(
      "kernelize", "apply the jump kernel rules to an instance");
  std::string kernel_in, kernel_out_inst, kernel_out_seq;
  double kernel_eps = 0.5;
  kernel_cmd->add_option("instance", kernel_in, "instance file")->required();
  kernel_cmd->add_option("--eps", kernel_eps, "sparsity exponent");
  kernel_cmd->add_option("--out-instance", kernel_out_inst,
                         "reduced instance path");
  kernel_cmd->add_option("--out-seq", kernel_out_seq, "witness sequence path");

  auto* gadget_cmd = app.add_subcommand(
      "gadget", "build a hardness gadget from a partitioned graph");
  std::string gadget_in, gadget_kind, gadget_out;
  int gadget_p = 4;
  gadget_cmd->add_option("input", gadget_in, "graph file with part lines")
      ->required();
  gadget_cmd->add_option("--kind", gadget_kind, "grid or mis")
      ->required()
      ->check(CLI::IsMember({"grid", "mis"}));
  gadget_cmd->add_option("--p", gadget_p, "guard path length");
  gadget_cmd->add_option("--out", gadget_out, "instance output path");

  auto* verify_cmd =
      app.add_subcommand("verify", "replay a sequence against an instance");
  std::string verify_in, verify_seq;
  verify_cmd->add_option("instance", verify_in, "instance file")->required();
  verify_cmd->add_option("sequence", verify_seq, "sequence file")->required();

  auto* random_cmd =
      app.add_subcommand("random", "emit a seeded random instance");
  std::string random_family, random_variant = "TS", random_out;
  int random_n = 0, random_k = 0;
  uint64_t random_seed = 0;
  random_cmd->add_option("--family", random_family, "graph family")
      ->required()
      ->check(CLI::IsMember({"tree", "grid", "girth5", "bipartite-c4free"}));
  random_cmd->add_option("--n", random_n, "vertex count")->required();
  random_cmd->add_option("--k", random_k, "token count")->required();
  random_cmd->add_option("--seed", random_seed, "rng seed")->required();
  random_cmd->add_option("--variant", random_variant, "TS or TJ")
      ->check(CLI::IsMember({"TS", "TJ"}));
  random_cmd->add_option("--out", random_out, "instance output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (classify_cmd->parsed())
      return run_classify(classify_in, classify_p, classify_eps);
    if (solve_cmd->parsed())
      return run_solve(solve_in, solve_strategy, solve_eps, solve_lim,
                       solve_out);
    if (kernel_cmd->parsed())
      return run_kernelize(kernel_in, kernel_eps, kernel_out_inst,
                           kernel_out_seq);
    if (gadget_cmd->parsed())
      return run_gadget(gadget_in, gadget_kind, gadget_p, gadget_out);
    if (verify_cmd->parsed()) return run_verify(verify_in, verify_seq);
    if (random_cmd->parsed())
      return run_random(random_family, random_n, random_k, random_seed,
                        random_variant, random_out);
  } catch (const limit_error& e) {
    std::cout << "decision: UNDECIDED (limits)\n";
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
