#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <unordered_map>
#include <vector>

#include "rph/heap.hpp"
#include "rph/trace.hpp"

namespace rph {

inline constexpr std::uint64_t kNodeBudget = std::uint64_t{1} << 26;

// Applies scripted operations to one heap, remembering handles by id and,
// optionally, the trace so the attack can be replayed on other structures.
class AdversaryDriver {
 public:
  explicit AdversaryDriver(const HeapConfig& config, bool record_trace = false);

  ItemId insert(double value);
  ItemId insert_below_min();
  std::optional<ItemId> delete_min();
  void decrease_key(ItemId id, double delta);

  Heap& heap() noexcept { return heap_; }
  const Heap& heap() const noexcept { return heap_; }
  const Trace& trace() const noexcept { return trace_; }
  std::uint64_t ops() const noexcept { return ops_; }
  NodeId node(ItemId id) const { return handles_.at(id).index; }
  ItemId id_of(NodeId n) const { return heap_.pool()[n].key.id; }

 private:
  Heap heap_;
  std::unordered_map<ItemId, Handle> handles_;
  ItemId next_id_ = 1;
  bool record_;
  Trace trace_;
  std::uint64_t ops_ = 0;
};

// Root ranks of the heap, ascending.
std::vector<int> root_ranks(const Heap& heap);
// True when there is exactly one perfect half tree of each rank 0..max_rank.
bool is_perfect_ladder(const Heap& heap, int max_rank);

// Inserts and delete-min cycles until the heap holds one perfect half tree of
// each rank 0..max_rank. Throws NodeBudget if 2^(max_rank+1) - 1 > budget.
void build_perfect_ladder(AdversaryDriver& d, int max_rank, std::uint64_t budget = kNodeBudget);

// --- bounded positive rank differences ------------------------------------

// A variantA(b) heap holding a perfect half tree of each rank 0..bk+1.
AdversaryDriver build_variantA_instance(int b, int k, bool record_trace = false,
                                        std::uint64_t budget = kNodeBudget);

struct CycleSummary {
  std::uint64_t rank_steps = 0;
  std::uint64_t decrease_keys = 0;
  std::uint64_t comparisons = 0;
  std::uint64_t ops = 0;
  bool shape_restored = false;
};

// Thins the unordered path below the top tree's ordered child, decreases the
// remaining path keys bottom-up, then one delete-min and one insert.
CycleSummary run_variantA_cycle(AdversaryDriver& d, int b, int k);

// --- capped rank decrease ---------------------------------------------------

struct CappedBuild {
  std::vector<std::uint64_t> ops_per_level;  // d = 0: ops spent raising the max rank to j
};

// Called after each lift in the d = 0 build with (target k, lifted rank j).
using LadderHook = std::function<void(const Heap&, int k, int j)>;

// d = 0: half trees of ranks 0..k, each a path, built without any rank
// change. d >= 1: perfect half trees 0..k trimmed to the nodes within
// distance d+1 of each root.
AdversaryDriver build_capped_instance(int d, int k, bool record_trace = false,
                                      CappedBuild* stats = nullptr, const LadderHook& hook = {},
                                      std::uint64_t budget = kNodeBudget);

// True when every root's half tree is a root plus a chain of ordered children.
bool all_paths(const Heap& heap);

struct AttackCycle {
  std::uint64_t halftrees = 0;  // processed by the delete-min
  std::uint64_t comparisons = 0;
  std::uint64_t links = 0;
};

struct AttackSummary {
  std::vector<AttackCycle> cycles;
  std::uint64_t n = 0;  // heap size between cycles
  std::uint64_t min_halftrees = 0;
  std::uint64_t max_halftrees = 0;
  // Every cycle processed more than ceil(lg n) + 1 half trees.
  bool superlogarithmic = false;
};

// Insert an item below the minimum, then delete it; `cycles` times.
AttackSummary run_insert_deletemin_attack(AdversaryDriver& d, int cycles);

// Replays a recorded trace on a fresh heap of another configuration.
AdversaryDriver replay_on(const Trace& trace, const HeapConfig& config);

}  // namespace rph
