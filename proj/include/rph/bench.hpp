#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "rph/heap.hpp"

namespace rph {

// One workload of a suite. Text forms: "sort:<n>", "random:<ops>",
// "dijkstra:<n>:<m>", "prim:<n>:<m>" (random graphs) or
// "dijkstra:@<file>", "prim:@<file>".
struct BenchWorkload {
  enum Kind { Sort, Random, Dijkstra, Prim } kind = Sort;
  std::uint64_t size = 0;   // items, ops or vertices
  std::uint64_t edges = 0;  // graph workloads
  std::string graph_path;   // overrides the random graph when set

  static BenchWorkload parse(std::string_view text);
  std::string name() const;
};

struct BenchRow {
  std::string workload;
  std::string impl;
  std::string op;
  std::uint64_t count = 0;  // summed over repetitions
  double mean_comparisons = 0;
  double mean_links = 0;
  double mean_rank_steps = 0;
};

struct BenchReport {
  std::vector<BenchRow> rows;
  std::vector<std::string> skipped;  // "workload impl: reason"
};

// Every (workload, impl) cell runs on its own thread with its own heaps;
// results are merged in a fixed order, so the report is deterministic.
BenchReport bench(const std::vector<BenchWorkload>& suite, const std::vector<HeapConfig>& impls,
                  int repetitions, std::uint64_t seed);

void write_bench_csv(std::ostream& out, const BenchReport& report);

}  // namespace rph
