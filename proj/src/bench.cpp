#include "rph/bench.hpp"

#include <charconv>
#include <future>
#include <map>
#include <ostream>

#include "rph/graph.hpp"
#include "rph/runner.hpp"
#include "rph/workloads.hpp"

namespace rph {

namespace {

std::uint64_t parse_count(std::string_view s, std::string_view whole) {
  std::uint64_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || p != s.data() + s.size())
    throw HeapError(Errc::BadArgument, "bad workload '" + std::string(whole) + "'");
  return v;
}

}  // namespace

BenchWorkload BenchWorkload::parse(std::string_view text) {
  BenchWorkload w;
  const std::size_t colon = text.find(':');
  const std::string_view kind = text.substr(0, colon);
  const std::string_view rest = colon == std::string_view::npos ? "" : text.substr(colon + 1);
  if (kind == "sort") w.kind = Sort;
  else if (kind == "random") w.kind = Random;
  else if (kind == "dijkstra") w.kind = Dijkstra;
  else if (kind == "prim") w.kind = Prim;
  else throw HeapError(Errc::BadArgument, "unknown workload '" + std::string(text) + "'");

  if (w.kind == Sort || w.kind == Random) {
    w.size = parse_count(rest, text);
  } else if (!rest.empty() && rest.front() == '@') {
    w.graph_path = std::string(rest.substr(1));
  } else {
    const std::size_t c2 = rest.find(':');
    if (c2 == std::string_view::npos) throw HeapError(Errc::BadArgument, "graph workload needs n:m");
    w.size = parse_count(rest.substr(0, c2), text);
    w.edges = parse_count(rest.substr(c2 + 1), text);
  }
  return w;
}

std::string BenchWorkload::name() const {
  static const char* names[] = {"sort", "random", "dijkstra", "prim"};
  std::string s = names[kind];
  if (!graph_path.empty()) return s + ":@" + graph_path;
  s += ":" + std::to_string(size);
  if (kind == Dijkstra || kind == Prim) s += ":" + std::to_string(edges);
  return s;
}

namespace {

struct Totals {
  std::uint64_t count = 0, comparisons = 0, links = 0, rank_steps = 0;
};

struct Cell {
  std::map<OpKind, Totals> by_op;
  std::string skipped;
};

Trace make_trace(const BenchWorkload& w, const HeapConfig& impl, std::uint64_t seed) {
  switch (w.kind) {
    case BenchWorkload::Sort:
      return gen_sort(w.size, seed);
    case BenchWorkload::Random: {
      RandomWorkload r;
      r.ops = w.size;
      r.seed = seed;
      r.decrease_key = impl.supports_decrease_key();
      return gen_random(r);
    }
    case BenchWorkload::Dijkstra:
    case BenchWorkload::Prim: {
      const Graph g = w.graph_path.empty()
                          ? random_graph(static_cast<std::uint32_t>(w.size), w.edges, seed)
                          : read_graph(w.graph_path);
      return w.kind == BenchWorkload::Dijkstra ? gen_dijkstra(g, 0) : gen_prim(g);
    }
  }
  return {};
}

Cell run_cell(const BenchWorkload& w, const HeapConfig& impl, int reps, std::uint64_t seed) {
  Cell cell;
  const bool graph = w.kind == BenchWorkload::Dijkstra || w.kind == BenchWorkload::Prim;
  if (graph && !impl.supports_decrease_key()) {
    cell.skipped = "no decrease_key";
    return cell;
  }
  RunOptions opts;
  opts.record_metrics = true;
  for (int rep = 0; rep < reps; ++rep) {
    const Trace t = make_trace(w, impl, seed + static_cast<std::uint64_t>(rep));
    const RunResult r = run_trace(t, impl, opts);
    if (r.exit_code != 0) {
      cell.skipped = r.error;
      cell.by_op.clear();
      return cell;
    }
    for (const MetricsRow& row : r.rows) {
      if (row.m.op == OpKind::Make) continue;
      Totals& tot = cell.by_op[row.m.op];
      ++tot.count;
      tot.comparisons += row.m.comparisons;
      tot.links += row.m.links;
      tot.rank_steps += row.m.rank_steps;
    }
  }
  return cell;
}

}  // namespace

BenchReport bench(const std::vector<BenchWorkload>& suite, const std::vector<HeapConfig>& impls,
                  int repetitions, std::uint64_t seed) {
  if (repetitions < 1) throw HeapError(Errc::BadArgument, "repetitions must be positive");
  std::vector<std::future<Cell>> cells;
  for (const BenchWorkload& w : suite)
    for (const HeapConfig& impl : impls)
      cells.push_back(std::async(std::launch::async, run_cell, std::cref(w), std::cref(impl),
                                 repetitions, seed));

  BenchReport report;
  std::size_t i = 0;
  for (const BenchWorkload& w : suite) {
    for (const HeapConfig& impl : impls) {
      Cell cell = cells[i++].get();
      if (!cell.skipped.empty()) {
        report.skipped.push_back(w.name() + " " + impl.label() + ": " + cell.skipped);
        continue;
      }
      for (const auto& [op, t] : cell.by_op) {
        BenchRow row;
        row.workload = w.name();
        row.impl = impl.label();
        row.op = std::string(to_string(op));
        row.count = t.count;
        const double n = static_cast<double>(t.count);
        row.mean_comparisons = static_cast<double>(t.comparisons) / n;
        row.mean_links = static_cast<double>(t.links) / n;
        row.mean_rank_steps = static_cast<double>(t.rank_steps) / n;
        report.rows.push_back(std::move(row));
      }
    }
  }
  return report;
}

void write_bench_csv(std::ostream& out, const BenchReport& report) {
  out << "workload,impl,op,count,mean_comparisons,mean_links,mean_rank_steps\n";
  for (const BenchRow& r : report.rows)
    out << r.workload << ',' << r.impl << ',' << r.op << ',' << r.count << ','
        << format_real(r.mean_comparisons) << ',' << format_real(r.mean_links) << ','
        << format_real(r.mean_rank_steps) << '\n';
}

}  // namespace rph
