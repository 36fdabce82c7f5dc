#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include "rph/adversary.hpp"
#include "rph/bench.hpp"
#include "rph/dot.hpp"
#include "rph/graph.hpp"
#include "rph/runner.hpp"
#include "rph/workloads.hpp"

using namespace rph;

namespace {

// Exit codes: 0 success, 1 failed run (op error, audit or oracle mismatch),
// 2 bad input (usage, parse, I/O).
constexpr int kRunFailed = 1;
constexpr int kBadInput = 2;

std::uint64_t effective_seed(std::uint64_t flag) {
  if (const char* env = std::getenv("HEAPBENCH_SEED"); env && *env) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw HeapError(Errc::BadArgument, "HEAPBENCH_SEED must be an unsigned integer");
    }
  }
  return flag;
}

HeapConfig make_config(const std::string& impl, const std::string& policy) {
  HeapConfig c = HeapConfig::parse(impl);
  if (!policy.empty()) {
    if (!c.uses_rank_pairing())
      throw HeapError(Errc::BadArgument, "--policy applies to rank-pairing kinds, not " + c.name());
    c.policy = parse_policy(policy);
  }
  return c;
}

// Writes to `path`, or stdout for "-" or empty.
template <class F>
void with_output(const std::string& path, F&& f) {
  if (path.empty() || path == "-") {
    f(std::cout);
    return;
  }
  std::ofstream out(path);
  if (!out) throw HeapError(Errc::Io, "cannot write '" + path + "'");
  f(out);
}

struct Common {
  std::string impl = "rp2";
  std::string policy;
  std::uint64_t seed = 1;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Meldable-heap verification and benchmark driver"};
  app.require_subcommand(1);
  Common common;

  // gen ---------------------------------------------------------------------
  auto* gen = app.add_subcommand("gen", "Generate a trace (or a random graph)");
  std::string gen_kind, gen_out = "-", gen_graph, gen_mix = "50/25/15/5/5";
  std::size_t gen_n = 1000, gen_m = 5000;
  std::uint32_t gen_source = 0;
  int gen_heaps = 4;
  bool gen_no_dk = false;
  gen->add_option("workload", gen_kind, "sort | random | dijkstra | prim | graph")
      ->required()
      ->check(CLI::IsMember({"sort", "random", "dijkstra", "prim", "graph"}));
  gen->add_option("-n,--n", gen_n, "items (sort), ops (random) or vertices (graph)");
  gen->add_option("-m,--m", gen_m, "edges for a random graph");
  gen->add_option("--mix", gen_mix, "insert/deletemin/decreasekey/meld/delete weights");
  gen->add_option("--heaps", gen_heaps, "heaps in a random trace");
  gen->add_flag("--no-decrease-key", gen_no_dk, "drop decreasekey and delete from the mix");
  gen->add_option("--graph", gen_graph, "edge-list file for dijkstra/prim (random graph if absent)");
  gen->add_option("--source", gen_source, "dijkstra source vertex");
  gen->add_option("--seed", common.seed, "PRNG seed (HEAPBENCH_SEED overrides)");
  gen->add_option("-o,--out", gen_out, "output path, - for stdout");

  // run ---------------------------------------------------------------------
  auto* run = app.add_subcommand("run", "Replay a trace against an implementation");
  std::string run_trace_path, run_metrics, run_checks = "off", run_analysis;
  bool run_oracle = false;
  run->add_option("--trace", run_trace_path, "trace file")->required();
  run->add_option("--impl", common.impl, "structure kind");
  run->add_option("--policy", common.policy, "match policy: unrestricted | red-first | disassembly-first");
  run->add_option("--check-invariants", run_checks, "off | cheap | full")
      ->check(CLI::IsMember({"off", "cheap", "full"}));
  run->add_option("--analysis", run_analysis, "potential scheme for phi columns, or 'default'");
  run->add_option("--metrics", run_metrics, "CSV output path, - for stdout");
  run->add_flag("--oracle", run_oracle, "shadow every op with the reference heap");

  // bench -------------------------------------------------------------------
  auto* bch = app.add_subcommand("bench", "Mean comparisons and links per op class");
  std::vector<std::string> bench_suite, bench_impls{"rp1", "rp2", "bq-onepass", "bq-eager",
                                                    "tournament", "pairing"};
  std::string bench_out = "-";
  int bench_reps = 1;
  bch->add_option("--suite", bench_suite, "workloads: sort:N random:N dijkstra:N:M prim:N:M");
  bch->add_option("--impl", bench_impls, "structure kinds");
  bch->add_option("--reps", bench_reps, "repetitions per cell");
  bch->add_option("--seed", common.seed, "PRNG seed (HEAPBENCH_SEED overrides)");
  bch->add_option("-o,--metrics,--out", bench_out, "CSV output path, - for stdout");

  // dot ---------------------------------------------------------------------
  auto* dot = app.add_subcommand("dot", "Export a heap built from a trace as Graphviz");
  std::string dot_trace, dot_view = "half-ordered", dot_out = "-", dot_heap;
  dot->add_option("--trace", dot_trace, "trace file")->required();
  dot->add_option("--impl", common.impl, "structure kind");
  dot->add_option("--policy", common.policy, "match policy");
  dot->add_option("--view", dot_view, "half-ordered | heap-ordered | full | half-empty");
  dot->add_option("--heap", dot_heap, "heap name (default: first heap in the trace)");
  dot->add_option("-o,--out", dot_out, "output path, - for stdout");

  // adversary ---------------------------------------------------------------
  auto* adv = app.add_subcommand("adversary", "Run a weakened-rule attack");
  std::string adv_kind, adv_trace;
  int adv_b = 1, adv_d = 0, adv_k = 8, adv_cycles = 10;
  bool adv_control = false;
  adv->add_option("attack", adv_kind, "variantA | capped")
      ->required()
      ->check(CLI::IsMember({"variantA", "capped"}));
  adv->add_option("--b", adv_b, "variantA rank-difference bound");
  adv->add_option("--d", adv_d, "capped step limit");
  adv->add_option("--k", adv_k, "size parameter");
  adv->add_option("--cycles", adv_cycles, "attack cycles");
  adv->add_flag("--control", adv_control, "capped: replay the build on rp1 and attack it too");
  adv->add_option("--trace", adv_trace, "write the build and attack ops as a trace");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kBadInput;
  }

  try {
    const std::uint64_t seed = effective_seed(common.seed);

    if (*gen) {
      if (gen_kind == "graph") {
        const Graph g = random_graph(static_cast<std::uint32_t>(gen_n), gen_m, seed);
        with_output(gen_out, [&](std::ostream& out) {
          for (const Edge& e : g.edges) out << e.u << ' ' << e.v << ' ' << format_real(e.w) << '\n';
        });
        return 0;
      }
      Trace t;
      if (gen_kind == "sort") {
        t = gen_sort(gen_n, seed);
      } else if (gen_kind == "random") {
        RandomWorkload w;
        w.ops = gen_n;
        w.mix = OpMix::parse(gen_mix);
        w.seed = seed;
        w.heaps = gen_heaps;
        w.decrease_key = !gen_no_dk;
        t = gen_random(w);
      } else {
        const Graph g = gen_graph.empty()
                            ? random_graph(static_cast<std::uint32_t>(gen_n), gen_m, seed)
                            : read_graph(gen_graph);
        t = gen_kind == "dijkstra" ? gen_dijkstra(g, gen_source) : gen_prim(g);
      }
      with_output(gen_out, [&](std::ostream& out) { print_trace(out, t); });
      return 0;
    }

    if (*run) {
      const HeapConfig config = make_config(common.impl, common.policy);
      const Trace trace = read_trace_file(run_trace_path);
      RunOptions opts;
      opts.checks = parse_check_level(run_checks);
      if (!run_analysis.empty())
        opts.analysis = run_analysis == "default" ? default_scheme(config) : parse_scheme(run_analysis);
      opts.record_metrics = !run_metrics.empty();
      opts.shadow_oracle = run_oracle;
      const RunResult r = run_trace(trace, config, opts);
      if (!run_metrics.empty())
        with_output(run_metrics,
                    [&](std::ostream& out) { write_metrics_csv(out, r, opts.analysis.has_value()); });
      if (r.exit_code != 0) {
        std::cerr << "heapbench: " << r.error << '\n';
        return kRunFailed;
      }
      std::cerr << "ok: " << r.ops << " ops, " << r.counters.comparisons << " comparisons, "
                << r.counters.links << " links, " << r.counters.rank_steps << " rank steps\n";
      return 0;
    }

    if (*bch) {
      std::vector<BenchWorkload> suite;
      for (const auto& s : bench_suite) suite.push_back(BenchWorkload::parse(s));
      std::vector<HeapConfig> impls;
      for (const auto& s : bench_impls) impls.push_back(HeapConfig::parse(s));
      const BenchReport report = bench(suite, impls, bench_reps, seed);
      with_output(bench_out, [&](std::ostream& out) { write_bench_csv(out, report); });
      for (const auto& s : report.skipped) std::cerr << "skipped " << s << '\n';
      return 0;
    }

    if (*dot) {
      const HeapConfig config = make_config(common.impl, common.policy);
      const DotView view = parse_dot_view(dot_view);
      Trace trace = read_trace_file(dot_trace);
      ImplTarget target(config);
      for (const TraceOp& op : trace.ops) {
        const OpOutcome o = target.apply(trace, op);
        if (o.error) throw HeapError(o.code, "trace op failed: " + describe(o));
      }
      std::uint32_t index = 0;
      if (!dot_heap.empty()) {
        auto it = std::find(trace.names.begin(), trace.names.end(), dot_heap);
        if (it == trace.names.end()) throw HeapError(Errc::BadArgument, "no heap named " + dot_heap);
        index = static_cast<std::uint32_t>(it - trace.names.begin());
      }
      const Heap* h = target.heap(index);
      if (!h) throw HeapError(Errc::BadArgument, "heap is not live at the end of the trace");
      const std::string text = export_dot(*h, view);
      with_output(dot_out, [&](std::ostream& out) { out << text; });
      return 0;
    }

    if (*adv) {
      if (adv_kind == "variantA") {
        AdversaryDriver d = build_variantA_instance(adv_b, adv_k, !adv_trace.empty());
        std::cout << "variantA b=" << adv_b << " k=" << adv_k << " n=" << d.heap().size()
                  << " build_ops=" << d.ops() << '\n';
        std::cout << "cycle,rank_steps,decrease_keys,comparisons,shape_restored\n";
        for (int i = 0; i < adv_cycles; ++i) {
          const CycleSummary s = run_variantA_cycle(d, adv_b, adv_k);
          std::cout << i << ',' << s.rank_steps << ',' << s.decrease_keys << ',' << s.comparisons
                    << ',' << (s.shape_restored ? 1 : 0) << '\n';
        }
        if (!adv_trace.empty()) write_trace_file(adv_trace, d.trace());
        return 0;
      }
      CappedBuild stats;
      AdversaryDriver d = build_capped_instance(adv_d, adv_k, true, &stats);
      const Trace build_trace = d.trace();
      std::cout << "capped d=" << adv_d << " k=" << adv_k << " n=" << d.heap().size()
                << " build_ops=" << d.ops() << '\n';
      auto report = [](const char* label, const AttackSummary& s) {
        std::cout << label << " n=" << s.n << " lg_bound=" << ceil_lg(s.n) + 1
                  << " halftrees_min=" << s.min_halftrees << " halftrees_max=" << s.max_halftrees
                  << " superlogarithmic=" << (s.superlogarithmic ? 1 : 0) << '\n';
      };
      report("attack", run_insert_deletemin_attack(d, adv_cycles));
      if (adv_control) {
        AdversaryDriver c = replay_on(build_trace, HeapConfig::parse("rp1"));
        report("rp1-control", run_insert_deletemin_attack(c, adv_cycles));
      }
      if (!adv_trace.empty()) write_trace_file(adv_trace, d.trace());
      return 0;
    }
  } catch (const HeapError& e) {
    std::cerr << "heapbench: " << to_string(e.code()) << ": " << e.what() << '\n';
    return e.code() == Errc::Parse || e.code() == Errc::Io || e.code() == Errc::BadArgument ||
                   e.code() == Errc::UnknownStructure || e.code() == Errc::NodeBudget ||
                   e.code() == Errc::Unsupported
               ? kBadInput
               : kRunFailed;
  } catch (const std::exception& e) {
    std::cerr << "heapbench: " << e.what() << '\n';
    return kRunFailed;
  }
  return 0;
}
