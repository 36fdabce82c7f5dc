#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "rph/error.hpp"
#include "rph/key.hpp"
#include "rph/node_pool.hpp"

namespace rph {

enum class HeapKind {
  Tournament,       // one-tree balanced tournament
  BinomialOnePass,  // one-pass binomial queue
  BinomialEager,    // classical binomial queue, at most one tree per rank
  RankPairing1,     // type-1 rp-heap
  RankPairing2,     // type-2 rp-heap
  VariantA,         // bounded positive rank differences, ancestor-only rank decrease
  Capped,           // type-1 rule, at most d rank-decrease steps per key decrease
  Pairing,          // two-pass pairing heap baseline
};

// Order in which delete-min feeds half trees to the rank buckets.
enum class MatchPolicy { Unrestricted, RedFirst, DisassemblyFirst };

struct HeapConfig {
  HeapKind kind = HeapKind::RankPairing2;
  MatchPolicy policy = MatchPolicy::Unrestricted;
  int bound = 1;        // b for VariantA, d for Capped
  bool verify = false;  // id uniqueness and handle ownership checks

  // Accepts "tournament", "bq-onepass", "bq-eager", "rp1", "rp2", "pairing",
  // "variantA:<b>" / "variantA(<b>)" and "capped:<d>" / "capped(<d>)".
  // rp kinds get their default policy (disassembly-first for rp1).
  static HeapConfig parse(std::string_view name);
  static HeapConfig of(HeapKind kind);

  std::string name() const;
  // name() plus the match policy when it differs from the kind's default.
  std::string label() const;
  bool supports_decrease_key() const noexcept;
  bool uses_rank_pairing() const noexcept;
};

MatchPolicy parse_policy(std::string_view name);
std::string_view to_string(MatchPolicy policy) noexcept;
std::string_view kind_name(HeapKind kind) noexcept;

struct CostCounters {
  std::uint64_t comparisons = 0;
  std::uint64_t links = 0;
  std::uint64_t unfair_links = 0;
  std::uint64_t rank_steps = 0;
};

// Structural events reported to an observer. `touched` lists every node whose
// classification may change; before() and after() receive the same list, and
// a node missing at one of the two moments (new or freed) contributes nothing.
enum class Mutation { Insert, Link, Detach, RankChange, Disassemble, Staleness };

class Heap;

class HeapObserver {
 public:
  virtual ~HeapObserver() = default;
  virtual void before(const Heap&, Mutation, std::span<const NodeId>) {}
  virtual void after(const Heap&, Mutation, std::span<const NodeId>) {}
  // One decrease-rank iteration at non-root u. `stopped` marks the terminating one.
  virtual void rank_step(const Heap&, NodeId, int /*old_rank*/, int /*new_rank*/,
                         bool /*stopped*/) {}
};

struct Item {
  Key key;
  Handle handle;
};

class Heap {
 public:
  explicit Heap(HeapConfig config, std::shared_ptr<NodePool> pool = nullptr);
  ~Heap();

  Heap(Heap&& other) noexcept;
  Heap& operator=(Heap&& other) noexcept;
  Heap(const Heap&) = delete;
  Heap& operator=(const Heap&) = delete;

  // Deep copy backed by a private copy of the pool; handles carry over.
  Heap clone() const;

  const HeapConfig& config() const noexcept { return config_; }
  HeapKind kind() const noexcept { return config_.kind; }
  std::size_t size() const noexcept { return size_; }
  bool empty() const noexcept { return size_ == 0; }

  Handle insert(double value, ItemId id);
  std::optional<Handle> find_min() const;
  std::optional<Item> delete_min();
  // Absorbs every item of `other`, which is left empty.
  void meld(Heap& other);
  // delta = +infinity turns the key into a tombstone.
  void decrease_key(Handle x, double delta);
  void erase(Handle x);

  bool contains(Handle x) const noexcept { return pool_->alive(x); }
  const Key& key(Handle x) const;
  int rank(Handle x) const;

  const CostCounters& counters() const noexcept { return counters_; }
  const NodePool& pool() const noexcept { return *pool_; }
  const std::shared_ptr<NodePool>& shared_pool() const noexcept { return pool_; }
  NodeId min_root() const noexcept { return min_; }

  // Current half-tree roots. During delete-min this includes the working set.
  template <class F>
  void for_each_root(F&& f) const {
    if (working_) {
      for (NodeId r : work_)
        if ((*pool_)[r].live && (*pool_)[r].parent == kNil) f(r);
      return;
    }
    if (min_ == kNil) return;
    NodeId r = min_;
    do {
      f(r);
      r = (*pool_)[r].next;
    } while (r != min_);
  }
  std::vector<NodeId> roots() const;
  std::size_t root_count() const;
  // Largest root rank, -1 when empty. Cached between structural changes.
  int max_root_rank() const;

  // Number of nodes joined by an unfair match (tournament potential).
  std::size_t unfair_edges() const noexcept { return unfair_edges_; }
  // Half trees present after the most recent disassembly (h in the analyses).
  std::size_t last_halftrees() const noexcept { return last_halftrees_; }

  void set_observer(HeapObserver* observer) noexcept { observer_ = observer; }
  HeapObserver* observer() const noexcept { return observer_; }

  // Low-level primitives over detached half trees owned by this heap.
  // take_roots() empties the ring; adopt_roots() rebuilds it (min search).
  std::vector<NodeId> take_roots();
  void adopt_roots(std::span<const NodeId> roots);
  NodeId match_roots(NodeId a, NodeId b);
  std::vector<NodeId> disassemble(NodeId root);
  std::vector<NodeId> one_pass_links(std::span<const NodeId> trees);
  std::vector<NodeId> eager_links(std::span<const NodeId> trees);

  // Direct node access for audits and test fixtures that forge ranks.
  NodePool& mutable_pool() noexcept { return *pool_; }

 private:
  Node& node(NodeId id) { return (*pool_)[id]; }
  const Node& node(NodeId id) const { return (*pool_)[id]; }

  bool less(NodeId a, NodeId b);
  NodeId check_handle(Handle x) const;
  void require_decrease_key() const;
  void verify_owner(NodeId x) const;

  void push_root(NodeId x);
  void splice_ring(NodeId other_min);
  void relink_ring(std::span<const NodeId> roots);
  std::vector<NodeId> ring_after_min() const;

  void notify_before(Mutation m, std::span<const NodeId> touched) const;
  void notify_after(Mutation m, std::span<const NodeId> touched) const;

  NodeId link(NodeId a, NodeId b);
  std::size_t remove_min_and_disassemble();
  void finish_delete_min(std::span<const NodeId> out, bool search_min);

  void delete_min_one_tree();
  void delete_min_eager();
  void delete_min_rank_pairing();
  void delete_min_pairing();

  void detach(NodeId x);
  void restore_ranks(NodeId u, NodeId child);
  int decrease_rank_target(NodeId u) const;
  void set_rank(NodeId u, int rank);
  void refresh_root_rank(NodeId root);

  void release_all();
  void reset() noexcept;

  HeapConfig config_;
  std::shared_ptr<NodePool> pool_;
  NodeId min_ = kNil;
  std::size_t size_ = 0;
  std::size_t unfair_edges_ = 0;
  std::size_t last_halftrees_ = 0;
  std::size_t root_total_ = 0;  // ring length outside delete-min
  mutable int max_rank_ = -1;
  mutable bool max_rank_dirty_ = false;
  CostCounters counters_;
  HeapObserver* observer_ = nullptr;
  std::unordered_set<ItemId> ids_;  // verify mode only

  bool working_ = false;
  std::vector<NodeId> work_;
  std::vector<NodeId> buckets_;
  std::vector<NodeId> scratch_;
  std::vector<NodeId> touched_;
};

// Free-function forms of the heap operations.
Heap make_heap(const HeapConfig& config, std::shared_ptr<NodePool> pool = nullptr);
Heap make_heap(std::string_view kind, std::shared_ptr<NodePool> pool = nullptr);
// Returns a heap holding the items of both arguments.
Heap meld(Heap a, Heap b);

}  // namespace rph
