// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failing criteria (capped at 100). `--criterion N` runs one.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <future>
#include <sstream>
#include <string>
#include <vector>

#include "rph/adversary.hpp"
#include "rph/analysis.hpp"
#include "rph/audit.hpp"
#include "rph/graph.hpp"
#include "rph/oracle.hpp"
#include "rph/runner.hpp"
#include "rph/workloads.hpp"
#include "support.hpp"

using namespace rph;
using rph::testing::all_nodes;
using rph::testing::Fuzz;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

HeapConfig with_policy(const char* impl, MatchPolicy p) {
  HeapConfig c = HeapConfig::parse(impl);
  c.policy = p;
  return c;
}

constexpr MatchPolicy kPolicies[] = {MatchPolicy::Unrestricted, MatchPolicy::RedFirst,
                                     MatchPolicy::DisassemblyFirst};

std::vector<HeapConfig> every_kind_and_policy() {
  std::vector<HeapConfig> out;
  for (const char* k : {"tournament", "bq-onepass", "bq-eager", "pairing"})
    out.push_back(HeapConfig::parse(k));
  for (const char* k : {"rp1", "rp2", "variantA:2", "capped:1"})
    for (MatchPolicy p : kPolicies) out.push_back(with_policy(k, p));
  return out;
}

std::vector<HeapConfig> type1_and_type2() {
  std::vector<HeapConfig> out;
  for (const char* k : {"rp1", "rp2"})
    for (MatchPolicy p : kPolicies) out.push_back(with_policy(k, p));
  return out;
}

// 1 -------------------------------------------------------------------------
Verdict oracle_equivalence() {
  const auto configs = every_kind_and_policy();
  std::vector<std::future<DiffReport>> jobs;
  for (std::size_t i = 0; i < configs.size(); ++i) {
    jobs.push_back(std::async(std::launch::async, [c = configs[i], i] {
      RandomWorkload w;
      w.ops = 100000;
      w.seed = 1000 + i;
      w.decrease_key = c.supports_decrease_key();
      return differential_run(gen_random(w), impl_factory(c), oracle_factory(c));
    }));
  }
  Verdict v{true, ""};
  std::size_t ops = 0;
  for (std::size_t i = 0; i < configs.size(); ++i) {
    const DiffReport r = jobs[i].get();
    ops += r.ops;
    if (!r.ok) {
      v.pass = false;
      v.detail += configs[i].label() + ": " + r.message + "; ";
    }
  }
  if (v.pass)
    v.detail = std::to_string(configs.size()) + " configurations, " + std::to_string(ops) +
               " ops, zero mismatches";
  return v;
}

// 2 -------------------------------------------------------------------------
Verdict exhaustive_equivalence() {
  Verdict v{true, ""};
  std::uint64_t sequences = 0;
  for (const HeapConfig& c : type1_and_type2()) {
    const ExhaustiveReport r = exhaustive_small(c, 6, 3);
    sequences += r.sequences;
    if (!r.ok) {
      v.pass = false;
      v.detail += c.label() + ": " + r.failure + "; ";
    }
  }
  if (v.pass)
    v.detail = std::to_string(sequences) + " sequences (length <= 6, <= 3 items) over rp1 and rp2 "
               "with every policy";
  return v;
}

// Replays a random multi-heap trace and calls `check` on every live heap
// after every op; returns the first failure message.
std::string fuzz_trace(const HeapConfig& c, std::size_t ops, std::uint64_t seed,
                       const std::function<std::string(const Heap&)>& check) {
  RandomWorkload w;
  w.ops = ops;
  w.seed = seed;
  w.decrease_key = c.supports_decrease_key();
  const Trace t = gen_random(w);
  ImplTarget target(c);
  for (std::size_t i = 0; i < t.ops.size(); ++i) {
    target.apply(t, t.ops[i]);
    // Only the heap named by the op can have changed.
    if (const Heap* heap = target.heap(t.ops[i].heap))
      if (std::string e = check(*heap); !e.empty())
        return c.label() + " op " + std::to_string(i) + ": " + e;
  }
  return {};
}

// 3 -------------------------------------------------------------------------
Verdict size_bounds() {
  Verdict v{true, ""};
  const std::uint64_t fib[] = {1, 2, 3, 5, 8};
  for (int k = 0; k < 5; ++k)
    if (min_half_tree_size(SizeBound::Fibonacci, k) != fib[k]) {
      v.pass = false;
      v.detail += "Fibonacci minimum for rank " + std::to_string(k) + " is wrong; ";
    }
  std::size_t runs = 0;
  for (const HeapConfig& c : type1_and_type2()) {
    const SizeBound bound =
        c.kind == HeapKind::RankPairing1 ? SizeBound::Pow2 : SizeBound::Fibonacci;
    for (std::uint64_t seed = 1; seed <= 2; ++seed, ++runs) {
      const std::string e = fuzz_trace(c, 10000, 300 + seed, [&](const Heap& h) {
        const AuditReport r = audit_half_tree_sizes(h, bound);
        return r.ok() ? std::string{} : r.summary(1);
      });
      if (!e.empty()) {
        v.pass = false;
        v.detail += e + "; ";
      }
    }
  }
  if (v.pass)
    v.detail = std::to_string(runs) + " fuzz runs of 10^4 ops: type-1 >= 2^k, type-2 >= F(k+2) "
               "(1,2,3,5,8 for ranks 0-4), zero violations";
  return v;
}

// 4 -------------------------------------------------------------------------
Verdict perfect_trees() {
  Verdict v{true, ""};
  for (const char* k : {"bq-onepass", "bq-eager"}) {
    const std::string e = fuzz_trace(HeapConfig::parse(k), 10000, 44, [](const Heap& h) {
      const AuditReport r = audit_half_tree_sizes(h, SizeBound::Exact);
      return r.ok() ? std::string{} : r.summary(1);
    });
    if (!e.empty()) {
      v.pass = false;
      v.detail += e + "; ";
    }
  }
  if (v.pass) v.detail = "bq-onepass and bq-eager: every half tree of rank k has exactly 2^k nodes";
  return v;
}

// 5 -------------------------------------------------------------------------
// Recomputes the type-2 potential from scratch around every structural event.
class Type2Checker : public HeapObserver {
 public:
  explicit Type2Checker(const Heap& heap) : inc_(heap, Scheme::Type2GoodBad) {}

  void before(const Heap& h, Mutation m, std::span<const NodeId> t) override {
    inc_.before(h, m, t);
    phi_ = potential_value(h, Scheme::Type2GoodBad);
    if (m == Mutation::Link) fair_ = h.pool()[t[0]].rank == h.pool()[t[1]].rank;
    if (m == Mutation::Disassemble) k_ = h.pool()[t[0]].rank;
  }

  void after(const Heap& h, Mutation m, std::span<const NodeId> t) override {
    inc_.after(h, m, t);
    const std::int64_t d = potential_value(h, Scheme::Type2GoodBad) - phi_;
    switch (m) {
      case Mutation::Link:
        if (!fair_) fail("unfair match in a type-2 heap");
        ++links;
        if (d != -1) fail("fair match dPhi " + std::to_string(d));
        break;
      case Mutation::Detach:
        ++detaches;
        if (d > 4) fail("detach dPhi " + std::to_string(d));
        break;
      case Mutation::Disassemble:
        ++disassemblies;
        if (d > k_ - 2) fail("disassembly of rank " + std::to_string(k_) + " dPhi " + std::to_string(d));
        break;
      default:
        break;
    }
  }

  std::int64_t incremental() const { return inc_.value(); }
  void fail(const std::string& why) {
    if (failure.empty()) failure = why;
  }

  std::string failure;
  std::size_t inserts = 0, links = 0, detaches = 0, disassemblies = 0;

 private:
  IncrementalPotential inc_;
  std::int64_t phi_ = 0;
  bool fair_ = true;
  int k_ = 0;
};

Verdict type2_potential() {
  Verdict v{true, ""};
  std::size_t inserts = 0, links = 0, detaches = 0, disassemblies = 0;
  for (MatchPolicy p : kPolicies) {
    Fuzz f(with_policy("rp2", p), 55);
    Type2Checker check(f.heap);
    f.heap.set_observer(&check);
    std::int64_t phi = 0;
    for (int i = 0; i < 10000 && check.failure.empty(); ++i) {
      // The new node joins the root list after its event, so inserts are
      // checked across the whole operation.
      const Fuzz::Op op = f.step();
      const std::int64_t now = potential_value(f.heap, Scheme::Type2GoodBad);
      if (op == Fuzz::Insert) {
        ++check.inserts;
        if (now - phi != 2) check.fail("insert dPhi " + std::to_string(now - phi));
      }
      if (check.incremental() != now)
        check.fail("incremental potential drifted at op " + std::to_string(i));
      phi = now;
    }
    inserts += check.inserts;
    links += check.links;
    detaches += check.detaches;
    disassemblies += check.disassemblies;
    if (!check.failure.empty()) {
      v.pass = false;
      v.detail += std::string(to_string(p)) + ": " + check.failure + "; ";
    }
  }
  if (v.pass) {
    std::ostringstream s;
    s << "3 x 10^4 ops: " << inserts << " inserts (+2), " << links << " fair matches (-1), "
      << detaches << " detaches (<= +4), " << disassemblies << " disassemblies (<= k-2)";
    v.detail = s.str();
  }
  return v;
}

// 6 -------------------------------------------------------------------------
class StepLog : public HeapObserver {
 public:
  struct Step {
    NodeId u;
    int old_rank, new_rank;
    bool stopped;
  };
  void rank_step(const Heap&, NodeId u, int o, int n, bool stopped) override {
    steps.push_back({u, o, n, stopped});
  }
  std::vector<Step> steps;
};

Verdict type1_colors() {
  Verdict v{true, ""};
  std::size_t dks = 0, yellow_halts = 0, new_reds = 0;
  for (MatchPolicy p : kPolicies) {
    Fuzz f(with_policy("rp1", p), 66, 40, 15, 40, 5);
    StepLog log;
    f.heap.set_observer(&log);
    std::size_t count = 0;
    std::vector<int> color(0);
    while (count < 10000 && v.pass) {
      if (f.pick() != Fuzz::DecreaseKey) {
        f.step();
        continue;
      }
      const NodePool& pool = f.heap.pool();
      const std::vector<NodeId> nodes = all_nodes(f.heap);
      color.assign(pool.slots(), -1);
      for (NodeId x : nodes) color[x] = static_cast<int>(classify_type1(pool, x));
      log.steps.clear();
      const NodeId x = f.decrease_key();
      ++count;

      int reds = 0;
      for (NodeId y : nodes) {
        if (y == x) continue;
        const Color before = static_cast<Color>(color[y]);
        const Color after = classify_type1(pool, y);
        if (before == Color::Green && after == Color::Red) {
          v.pass = false;
          v.detail = "green node turned red";
        }
        if (before != Color::Red && after == Color::Red) ++reds;
      }
      if (reds > 1) {
        v.pass = false;
        v.detail = std::to_string(reds) + " new red nodes in one decrease_key";
      }
      new_reds += static_cast<std::size_t>(reds);
      for (std::size_t i = 0; i < log.steps.size(); ++i) {
        const auto& s = log.steps[i];
        if (static_cast<Color>(color[s.u]) != Color::Yellow) continue;
        ++yellow_halts;
        if (!s.stopped || i + 1 != log.steps.size()) {
          v.pass = false;
          v.detail = "rank decrease continued past a yellow non-root";
        }
        break;
      }
    }
    dks += count;
  }
  if (v.pass) {
    std::ostringstream s;
    s << dks << " decrease_keys over 3 policies: zero green->red, " << new_reds
      << " new reds (never > 1 per op), " << yellow_halts << " cascades stopped at a yellow node";
    v.detail = s.str();
  }
  return v;
}

// 7 -------------------------------------------------------------------------
Verdict tournament_bound() {
  Verdict v{true, ""};
  const HeapConfig c = HeapConfig::parse("tournament");
  double worst = 1e300;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    RandomWorkload w;
    w.ops = 3000;
    w.seed = 7000 + seed;
    w.decrease_key = false;
    RunOptions opts;
    opts.record_metrics = true;
    const RunResult r = run_trace(gen_random(w), c, opts);
    if (r.exit_code != 0) {
      v.pass = false;
      v.detail = "run failed: " + r.error;
      break;
    }
    std::uint64_t comparisons = 0, bound = 0;
    for (const MetricsRow& row : r.rows) {
      comparisons += row.m.comparisons;
      if (row.m.op == OpKind::Insert || row.m.op == OpKind::Meld) bound += 2;
      if (row.m.op == OpKind::DeleteMin) bound += 2 * static_cast<std::uint64_t>(ceil_lg(row.m.n_before));
    }
    worst = std::min(worst, static_cast<double>(bound) - static_cast<double>(comparisons));
    if (comparisons > bound) {
      v.pass = false;
      v.detail = "seed " + std::to_string(seed) + ": " + std::to_string(comparisons) +
                 " comparisons > bound " + std::to_string(bound);
      break;
    }
  }
  if (v.pass) {
    std::ostringstream s;
    s << "100 traces within 2(#insert + #meld) + sum 2*ceil(lg n); smallest slack " << worst;
    v.detail = s.str();
  }
  return v;
}

// 8 -------------------------------------------------------------------------
Verdict variantA_attack() {
  Verdict v{true, ""};
  std::vector<std::uint64_t> steps;
  std::ostringstream s;
  for (int k : {16, 32, 64}) {
    try {
      AdversaryDriver d = build_variantA_instance(1, k);
      const CycleSummary c = run_variantA_cycle(d, 1, k);
      steps.push_back(c.rank_steps);
      s << "k=" << k << ": " << c.rank_steps << " steps; ";
    } catch (const HeapError& e) {
      v.pass = false;
      s << "k=" << k << ": " << e.what() << "; ";
      break;
    }
  }
  for (std::size_t i = 1; i < steps.size(); ++i)
    if (steps[i] < 3 * steps[i - 1]) v.pass = false;

  // The same attack where it fits, to show the quadratic growth.
  s << "feasible range:";
  std::uint64_t prev = 0;
  for (int k : {4, 8, 16}) {
    AdversaryDriver d = build_variantA_instance(1, k);
    const CycleSummary c = run_variantA_cycle(d, 1, k);
    s << " k=" << k << " " << c.rank_steps << (c.shape_restored ? "" : " (shape lost)");
    if (prev) s << " (x" << static_cast<double>(c.rank_steps) / static_cast<double>(prev) << ")";
    prev = c.rank_steps;
  }
  v.detail = s.str();
  return v;
}

// 9 -------------------------------------------------------------------------
Verdict capped_attack() {
  Verdict v{true, ""};
  const int k = 15;
  bool script_ok = true;
  CappedBuild stats;
  AdversaryDriver d = build_capped_instance(
      0, k, true, &stats, [&](const Heap& h, int level, int j) {
        std::vector<int> want;
        for (int r = 0; r <= level; ++r)
          if (r != j - 1) want.push_back(r);
        if (root_ranks(h) != want || !all_paths(h)) script_ok = false;
      });
  const Trace build = d.trace();
  const std::uint64_t build_ops = d.ops();
  const AttackSummary attack = run_insert_deletemin_attack(d, 50);

  AdversaryDriver control = replay_on(build, HeapConfig::parse("rp1"));
  run_insert_deletemin_attack(control, 10);  // settle the one-pass leftovers
  const AttackSummary healthy = run_insert_deletemin_attack(control, 50);
  const std::uint64_t lg_bound = static_cast<std::uint64_t>(ceil_lg(healthy.n)) + 1;

  if (!script_ok) v.pass = false;
  if (attack.min_halftrees < static_cast<std::uint64_t>(k) + 1) v.pass = false;
  if (healthy.max_halftrees > lg_bound) v.pass = false;
  std::ostringstream s;
  s << "build " << build_ops << " ops (k^3 = " << k * k * k << "), intermediate states "
    << (script_ok ? "match" : "DIFFER") << "; capped(0) n=" << attack.n << " halftrees per cycle "
    << attack.min_halftrees << ".." << attack.max_halftrees << " (need >= " << k + 1
    << "); rp1 control <= " << healthy.max_halftrees << " (bound " << lg_bound << ")";
  v.detail = s.str();
  return v;
}

// 10 ------------------------------------------------------------------------
Verdict graph_clients() {
  std::vector<HeapConfig> kinds;
  for (const char* k : {"rp1", "rp2", "pairing", "variantA:2", "capped:1"})
    kinds.push_back(HeapConfig::parse(k));
  kinds.push_back(with_policy("rp1", MatchPolicy::RedFirst));
  std::vector<std::future<std::string>> jobs;
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    jobs.push_back(std::async(std::launch::async, [seed, &kinds]() -> std::string {
      const Graph g = random_graph(1000, 5000, seed);
      const std::vector<double> dist = bellman_ford(g, 0);
      const MstResult mst = kruskal(g);
      for (const HeapConfig& c : kinds) {
        auto pq = make_queue(c);
        if (dijkstra(g, 0, *pq).dist != dist)
          return "seed " + std::to_string(seed) + " " + c.label() + ": dijkstra differs";
        auto pq2 = make_queue(c);
        if (prim(g, *pq2).weight != mst.weight)
          return "seed " + std::to_string(seed) + " " + c.label() + ": prim weight differs";
      }
      return {};
    }));
  }
  Verdict v{true, ""};
  for (auto& j : jobs)
    if (std::string e = j.get(); !e.empty() && v.pass) {
      v.pass = false;
      v.detail = e;
    }
  if (v.pass)
    v.detail = "50 graphs (n=1000, m=5000) x " + std::to_string(kinds.size()) +
               " decrease-key kinds: distances equal Bellman-Ford, MST weight equals Kruskal";
  return v;
}

// 11 ------------------------------------------------------------------------
Verdict determinism() {
  Verdict v{true, ""};
  std::size_t bytes = 0;
  for (const char* k : {"rp1", "rp2", "tournament", "bq-onepass", "pairing"}) {
    const HeapConfig c = HeapConfig::parse(k);
    std::string csv[2];
    for (int run = 0; run < 2; ++run) {
      RandomWorkload w;
      w.ops = 20000;
      w.seed = 11;
      w.decrease_key = c.supports_decrease_key();
      const Trace t = parse_trace_text(print_trace_text(gen_random(w)));
      RunOptions opts;
      opts.record_metrics = true;
      opts.analysis = default_scheme(c);
      std::ostringstream out;
      write_metrics_csv(out, run_trace(t, c, opts), true);
      csv[run] = out.str();
    }
    bytes += csv[0].size();
    if (csv[0] != csv[1]) {
      v.pass = false;
      v.detail += std::string(k) + " CSV differs; ";
    }
  }
  if (v.pass) v.detail = "5 kinds, two runs each, " + std::to_string(bytes) + " CSV bytes identical";
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<const char*, Verdict (*)()>> criteria = {
      {"oracle equivalence, 10^5 ops per kind and policy", oracle_equivalence},
      {"exhaustive small instances", exhaustive_equivalence},
      {"rank and size bounds", size_bounds},
      {"perfect binomial half trees", perfect_trees},
      {"exact type-2 potential deltas", type2_potential},
      {"type-1 color rules", type1_colors},
      {"tournament amortized comparisons", tournament_bound},
      {"variantA adversary, b=1, k=16->32->64", variantA_attack},
      {"capped(0) adversary, k=15", capped_attack},
      {"graph clients against oracles", graph_clients},
      {"deterministic CSV", determinism},
  };
  const double limits[] = {30, 60, 0, 0, 0, 0, 0, 10, 0, 0, 0};

  int only = 0;
  if (argc == 3 && std::strcmp(argv[1], "--criterion") == 0) only = std::atoi(argv[2]);

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int n = static_cast<int>(i) + 1;
    if (only && n != only) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (limits[i] > 0 && secs > limits[i]) {
      v.pass = false;
      v.detail += " [over the " + std::to_string(static_cast<int>(limits[i])) + " s limit]";
    }
    if (!v.pass) ++failed;
    std::printf("criterion %2d: %s  %s (%.2fs)\n    %s\n", n, v.pass ? "PASS" : "FAIL",
                criteria[i].first, secs, v.detail.c_str());
    std::fflush(stdout);
  }
  return failed > 100 ? 100 : failed;
}
