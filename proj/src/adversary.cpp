#include "rph/adversary.hpp"

#include <algorithm>
#include <limits>

#include "rph/analysis.hpp"
#include "rph/audit.hpp"

namespace rph {

AdversaryDriver::AdversaryDriver(const HeapConfig& config, bool record_trace)
    : heap_(config), record_(record_trace) {
  trace_.kind_hint = config.name();
  if (record_) trace_.make("h");
}

ItemId AdversaryDriver::insert(double value) {
  const ItemId id = next_id_++;
  handles_[id] = heap_.insert(value, id);
  if (record_) trace_.insert("h", id, value);
  ++ops_;
  return id;
}

ItemId AdversaryDriver::insert_below_min() {
  const auto m = heap_.find_min();
  return insert(m ? heap_.key(*m).value - 1.0 : 0.0);
}

std::optional<ItemId> AdversaryDriver::delete_min() {
  if (record_) trace_.delete_min("h");
  ++ops_;
  auto it = heap_.delete_min();
  if (!it) return std::nullopt;
  handles_.erase(it->key.id);
  return it->key.id;
}

void AdversaryDriver::decrease_key(ItemId id, double delta) {
  heap_.decrease_key(handles_.at(id), delta);
  if (record_) trace_.decrease_key("h", id, delta);
  ++ops_;
}

std::vector<int> root_ranks(const Heap& heap) {
  std::vector<int> ranks;
  heap.for_each_root([&](NodeId r) { ranks.push_back(heap.pool()[r].rank); });
  std::sort(ranks.begin(), ranks.end());
  return ranks;
}

bool is_perfect_ladder(const Heap& heap, int max_rank) {
  const auto ranks = root_ranks(heap);
  if (ranks.size() != static_cast<std::size_t>(max_rank + 1)) return false;
  for (int i = 0; i <= max_rank; ++i)
    if (ranks[static_cast<std::size_t>(i)] != i) return false;
  return audit_half_tree_sizes(heap, SizeBound::Exact).ok();
}

namespace {

bool distinct_ranks(const Heap& heap) {
  const auto ranks = root_ranks(heap);
  return std::adjacent_find(ranks.begin(), ranks.end()) == ranks.end();
}

NodeId root_of_rank(const Heap& heap, int rank) {
  NodeId found = kNil;
  heap.for_each_root([&](NodeId r) {
    if (heap.pool()[r].rank == rank) found = r;
  });
  return found;
}

void check_budget(std::uint64_t nodes, std::uint64_t budget, const std::string& what) {
  if (nodes > budget)
    throw HeapError(Errc::NodeBudget, what + " needs " + std::to_string(nodes) +
                                          " nodes, over the budget of " + std::to_string(budget));
}

std::uint64_t ladder_nodes(int max_rank) {
  if (max_rank >= 62) return std::numeric_limits<std::uint64_t>::max();
  return (std::uint64_t{1} << (max_rank + 1)) - 1;
}

}  // namespace

void build_perfect_ladder(AdversaryDriver& d, int max_rank, std::uint64_t budget) {
  if (max_rank < 0) throw HeapError(Errc::BadArgument, "max rank must be non-negative");
  const std::uint64_t n = ladder_nodes(max_rank);
  check_budget(n, budget, "a perfect ladder of rank " + std::to_string(max_rank));
  for (std::uint64_t i = 1; i <= n; ++i) d.insert(static_cast<double>(i));
  // Each cycle links equal ranks once; the forest converges to the binary
  // representation of n, which is all ones.
  while (!distinct_ranks(d.heap())) {
    d.insert_below_min();
    d.delete_min();
  }
}

AdversaryDriver build_variantA_instance(int b, int k, bool record_trace, std::uint64_t budget) {
  if (b < 1 || k < 1) throw HeapError(Errc::BadArgument, "variantA attack needs b >= 1 and k >= 1");
  HeapConfig config;
  config.kind = HeapKind::VariantA;
  config.bound = b;
  AdversaryDriver d(config, record_trace);
  const long long top = static_cast<long long>(b) * k + 1;
  if (top >= 62) check_budget(std::numeric_limits<std::uint64_t>::max(), budget,
                              "variantA(" + std::to_string(b) + ") with k=" + std::to_string(k));
  check_budget(ladder_nodes(static_cast<int>(top)), budget,
               "variantA(" + std::to_string(b) + ") with k=" + std::to_string(k));
  build_perfect_ladder(d, static_cast<int>(top), budget);
  return d;
}

CycleSummary run_variantA_cycle(AdversaryDriver& d, int b, int k) {
  const int top = b * k + 1;
  Heap& h = d.heap();
  const NodePool& pool = h.pool();
  const NodeId x = root_of_rank(h, top);
  if (x == kNil) throw HeapError(Errc::BadArgument, "heap has no half tree of rank bk+1");

  std::vector<ItemId> path;  // ranks bk down to 0
  for (NodeId c = pool[x].ord; c != kNil; c = pool[c].unord) path.push_back(d.id_of(c));

  const CostCounters before = h.counters();
  const std::uint64_t ops_before = d.ops();
  CycleSummary s;

  std::vector<ItemId> kept;
  for (ItemId id : path) {
    if (pool[d.node(id)].rank % b != 0) {
      d.decrease_key(id, 0.5);
      ++s.decrease_keys;
    } else {
      kept.push_back(id);
    }
  }
  std::reverse(kept.begin(), kept.end());
  for (std::size_t i = 0; i < kept.size(); ++i) {
    const double value = h.key(h.pool().handle(d.node(kept[i]))).value;
    const double delta = i == 0 ? value - (h.key(*h.find_min()).value - 1.0) : 0.5;
    d.decrease_key(kept[i], delta);
    ++s.decrease_keys;
  }
  d.delete_min();
  d.insert(1e12 + static_cast<double>(d.ops()));

  s.rank_steps = h.counters().rank_steps - before.rank_steps;
  s.comparisons = h.counters().comparisons - before.comparisons;
  s.ops = d.ops() - ops_before;
  s.shape_restored = is_perfect_ladder(h, top);
  return s;
}

// ---------------------------------------------------------------------------

namespace {

// Given path half trees of ranks 0..j-1 (and possibly larger ones), leaves
// paths of ranks 0..j-2 and j, with no rank changed along the way.
void lift(AdversaryDriver& d, int j) {
  const ItemId s = d.insert_below_min();
  for (int i = 0; i < j; ++i) {
    d.insert_below_min();
    d.delete_min();
  }
  const NodePool& pool = d.heap().pool();
  const NodeId first = pool[d.node(s)].ord;
  std::vector<ItemId> unordered;
  for (NodeId c = first == kNil ? kNil : pool[first].unord; c != kNil; c = pool[c].unord)
    unordered.push_back(d.id_of(c));
  for (ItemId id : unordered) d.decrease_key(id, 0.5);
}

}  // namespace

bool all_paths(const Heap& heap) {
  const NodePool& pool = heap.pool();
  bool ok = true;
  heap.for_each_root([&](NodeId r) {
    for (NodeId c = pool[r].ord; c != kNil; c = pool[c].ord)
      if (pool[c].unord != kNil) ok = false;
  });
  return ok;
}

AdversaryDriver build_capped_instance(int d, int k, bool record_trace, CappedBuild* stats,
                                      const LadderHook& hook, std::uint64_t budget) {
  if (d < 0 || k < 0) throw HeapError(Errc::BadArgument, "capped attack needs d >= 0 and k >= 0");
  HeapConfig config;
  config.kind = HeapKind::Capped;
  config.policy = MatchPolicy::DisassemblyFirst;
  config.bound = d;
  AdversaryDriver drv(config, record_trace);

  if (d == 0) {
    const std::uint64_t nodes = static_cast<std::uint64_t>(k + 1) * static_cast<std::uint64_t>(k + 2) / 2;
    check_budget(nodes + static_cast<std::uint64_t>(k) + 1, budget,
                 "capped(0) with k=" + std::to_string(k));
    drv.insert(0.0);
    if (stats) stats->ops_per_level.assign(1, drv.ops());
    for (int level = 1; level <= k; ++level) {
      const std::uint64_t start = drv.ops();
      for (int j = level; j >= 1; --j) {
        lift(drv, j);
        if (hook) hook(drv.heap(), level, j);
      }
      drv.insert_below_min();
      if (stats) stats->ops_per_level.push_back(drv.ops() - start);
    }
    return drv;
  }

  build_perfect_ladder(drv, k, budget);
  const NodePool& pool = drv.heap().pool();
  std::vector<std::pair<int, ItemId>> deep;  // (distance, id)
  std::vector<std::pair<NodeId, int>> stack;
  drv.heap().for_each_root([&](NodeId r) {
    if (pool[r].ord != kNil) stack.emplace_back(pool[r].ord, 1);
  });
  while (!stack.empty()) {
    auto [x, dist] = stack.back();
    stack.pop_back();
    if (dist >= d + 2) deep.emplace_back(dist, drv.id_of(x));
    if (pool[x].ord != kNil) stack.emplace_back(pool[x].ord, dist + 1);
    if (pool[x].unord != kNil) stack.emplace_back(pool[x].unord, dist + 1);
  }
  std::stable_sort(deep.begin(), deep.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  for (const auto& [dist, id] : deep) {
    drv.decrease_key(id, std::numeric_limits<double>::infinity());
    drv.delete_min();
  }
  return drv;
}

AttackSummary run_insert_deletemin_attack(AdversaryDriver& d, int cycles) {
  AttackSummary s;
  Heap& h = d.heap();
  for (int i = 0; i < cycles; ++i) {
    const CostCounters before = h.counters();
    d.insert_below_min();
    d.delete_min();
    AttackCycle c;
    c.halftrees = h.last_halftrees();
    c.comparisons = h.counters().comparisons - before.comparisons;
    c.links = h.counters().links - before.links;
    s.cycles.push_back(c);
  }
  s.n = h.size();
  if (!s.cycles.empty()) {
    auto [lo, hi] = std::minmax_element(s.cycles.begin(), s.cycles.end(),
                                        [](const auto& a, const auto& b) { return a.halftrees < b.halftrees; });
    s.min_halftrees = lo->halftrees;
    s.max_halftrees = hi->halftrees;
    s.superlogarithmic = s.min_halftrees > static_cast<std::uint64_t>(ceil_lg(s.n)) + 1;
  }
  return s;
}

AdversaryDriver replay_on(const Trace& trace, const HeapConfig& config) {
  AdversaryDriver d(config, false);
  for (const TraceOp& op : trace.ops) {
    switch (op.op) {
      case OpKind::Make:
      case OpKind::FindMin:
        break;
      case OpKind::Insert:
        if (d.insert(op.value) != op.id)
          throw HeapError(Errc::BadArgument, "replay expects ids numbered from 1 in insert order");
        break;
      case OpKind::DeleteMin:
        d.delete_min();
        break;
      case OpKind::DecreaseKey:
        d.decrease_key(op.id, op.value);
        break;
      default:
        throw HeapError(Errc::Unsupported, "adversary replay handles one heap without erase or meld");
    }
  }
  return d;
}

}  // namespace rph
