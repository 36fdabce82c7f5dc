#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "rph/heap.hpp"
#include "rph/trace.hpp"

namespace rph {

// Sorted-multiset heap with the same contracts as Heap. Slow on purpose.
class OracleHeap {
 public:
  void insert(double value, ItemId id);
  std::optional<Key> find_min() const;
  std::optional<Key> delete_min();
  void decrease_key(ItemId id, double delta);
  void erase(ItemId id);
  void meld(OracleHeap& other);

  bool contains(ItemId id) const { return by_id_.count(id) > 0; }
  std::size_t size() const noexcept { return by_id_.size(); }

 private:
  std::set<Key, KeyLess> keys_;
  std::unordered_map<ItemId, Key> by_id_;
};

// Result of one trace op: the item reported by findmin/deletemin, or an error.
struct OpOutcome {
  bool has_item = false;
  ItemId id = 0;
  bool error = false;
  Errc code = Errc::BadArgument;
  std::string message;

  friend bool operator==(const OpOutcome& a, const OpOutcome& b) {
    return a.has_item == b.has_item && a.id == b.id && a.error == b.error &&
           (!a.error || a.code == b.code);
  }
};

std::string describe(const OpOutcome& outcome);

class TraceTarget {
 public:
  virtual ~TraceTarget() = default;
  virtual OpOutcome apply(const Trace& trace, const TraceOp& op) = 0;
};

using TargetFactory = std::function<std::unique_ptr<TraceTarget>()>;

// Trace semantics shared by every target: ids are global, `meld h h2` moves
// everything into h and ends h2, `make` needs an unused or ended name.
class OracleTarget : public TraceTarget {
 public:
  explicit OracleTarget(bool supports_decrease_key = true)
      : supports_decrease_key_(supports_decrease_key) {}
  OpOutcome apply(const Trace& trace, const TraceOp& op) override;

 private:
  OracleHeap* live_heap(std::uint32_t h);

  bool supports_decrease_key_;
  std::vector<std::optional<OracleHeap>> heaps_;
};

struct DiffReport {
  bool ok = true;
  std::size_t ops = 0;
  std::optional<std::size_t> mismatch_at;
  std::string message;
  Trace shrunk;  // minimal failing trace found by shrinking
};

// Replays the trace on both targets and compares every outcome. On mismatch
// the failing prefix is shrunk greedily while it still mismatches.
DiffReport differential_run(const Trace& trace, const TargetFactory& impl,
                            const TargetFactory& oracle, bool shrink = true);

TargetFactory oracle_factory(const HeapConfig& config);

struct ExhaustiveReport {
  bool ok = true;
  std::uint64_t sequences = 0;
  std::uint64_t ops = 0;
  std::string failure;
  std::vector<std::string> failing_sequence;
};

// Every op sequence up to max_len over at most max_items items: inserts with
// values 1..max_items, delete-min, decrease-key by 0.5, 1.5 or 3 and delete.
// Each state is checked against the oracle and the structural, rank-rule,
// size and potential audits.
ExhaustiveReport exhaustive_small(const HeapConfig& config, int max_len = 6, int max_items = 3);

}  // namespace rph
