#include "rph/oracle.hpp"

#include <cmath>
#include <future>
#include <sstream>

#include "rph/analysis.hpp"
#include "rph/audit.hpp"

namespace rph {

void OracleHeap::insert(double value, ItemId id) {
  if (by_id_.count(id)) throw HeapError(Errc::DuplicateId, "duplicate id " + std::to_string(id));
  const Key k{value, id, false};
  keys_.insert(k);
  by_id_.emplace(id, k);
}

std::optional<Key> OracleHeap::find_min() const {
  if (keys_.empty()) return std::nullopt;
  return *keys_.begin();
}

std::optional<Key> OracleHeap::delete_min() {
  if (keys_.empty()) return std::nullopt;
  const Key k = *keys_.begin();
  keys_.erase(keys_.begin());
  by_id_.erase(k.id);
  return k;
}

void OracleHeap::decrease_key(ItemId id, double delta) {
  auto it = by_id_.find(id);
  if (it == by_id_.end()) throw HeapError(Errc::DeadHandle, "dead handle");
  if (std::isnan(delta) || delta <= 0.0)
    throw HeapError(Errc::NonPositiveDelta, "decrease_key needs delta > 0");
  keys_.erase(it->second);
  if (std::isinf(delta))
    it->second.tombstone = true;
  else
    it->second.value -= delta;
  keys_.insert(it->second);
}

void OracleHeap::erase(ItemId id) {
  auto it = by_id_.find(id);
  if (it == by_id_.end()) throw HeapError(Errc::DeadHandle, "dead handle");
  keys_.erase(it->second);
  by_id_.erase(it);
}

void OracleHeap::meld(OracleHeap& other) {
  const OracleHeap& small = other.size() < size() ? other : *this;
  const OracleHeap& large = &small == this ? other : *this;
  for (const auto& [id, k] : small.by_id_)
    if (large.by_id_.count(id)) throw HeapError(Errc::IdCollision, "id collision");
  // Small-to-large, so repeated melds move each item O(log n) times.
  if (other.size() > size()) {
    keys_.swap(other.keys_);
    by_id_.swap(other.by_id_);
  }
  keys_.merge(other.keys_);
  by_id_.merge(other.by_id_);
  other.keys_.clear();
  other.by_id_.clear();
}

std::string describe(const OpOutcome& o) {
  if (o.error) return std::string("error (") + to_string(o.code) + ")";
  if (o.has_item) return "item " + std::to_string(o.id);
  return "none";
}

// ---------------------------------------------------------------------------

namespace {

OpOutcome error_outcome(Errc code, std::string message) {
  OpOutcome o;
  o.error = true;
  o.code = code;
  o.message = std::move(message);
  return o;
}

OpOutcome item_outcome(ItemId id) {
  OpOutcome o;
  o.has_item = true;
  o.id = id;
  return o;
}

}  // namespace

OracleHeap* OracleTarget::live_heap(std::uint32_t h) {
  if (h >= heaps_.size() || !heaps_[h]) return nullptr;
  return &*heaps_[h];
}

OpOutcome OracleTarget::apply(const Trace& trace, const TraceOp& op) {
  if (std::max(op.heap, op.heap2) >= heaps_.size())
    heaps_.resize(std::max(op.heap, op.heap2) + 1);
  OracleHeap* h = live_heap(op.heap);
  if (op.op != OpKind::Make && !h)
    return error_outcome(Errc::BadArgument, "unknown heap '" + trace.names[op.heap] + "'");

  auto owner_of = [&](ItemId id) -> OracleHeap* {
    for (auto& other : heaps_)
      if (other && other->contains(id)) return &*other;
    return nullptr;
  };

  try {
    switch (op.op) {
      case OpKind::Make:
        if (h) return error_outcome(Errc::BadArgument, "heap already exists");
        heaps_[op.heap].emplace();
        return {};
      case OpKind::Insert:
        if (owner_of(op.id)) return error_outcome(Errc::DuplicateId, "duplicate id");
        h->insert(op.value, op.id);
        return {};
      case OpKind::FindMin:
        if (auto k = h->find_min()) return item_outcome(k->id);
        return {};
      case OpKind::DeleteMin:
        if (auto k = h->delete_min()) return item_outcome(k->id);
        return {};
      case OpKind::DecreaseKey:
      case OpKind::Delete: {
        if (!supports_decrease_key_) return error_outcome(Errc::Unsupported, "unsupported");
        OracleHeap* owner = owner_of(op.id);
        if (!owner) return error_outcome(Errc::DeadHandle, "no live item");
        if (owner != h) return error_outcome(Errc::ForeignHandle, "item in another heap");
        if (op.op == OpKind::DecreaseKey)
          h->decrease_key(op.id, op.value);
        else
          h->erase(op.id);
        return {};
      }
      case OpKind::Meld: {
        if (op.heap == op.heap2) return error_outcome(Errc::BadArgument, "self meld");
        OracleHeap* h2 = live_heap(op.heap2);
        if (!h2) return error_outcome(Errc::BadArgument, "unknown heap");
        h->meld(*h2);
        heaps_[op.heap2].reset();
        return {};
      }
    }
  } catch (const HeapError& e) {
    return error_outcome(e.code(), e.what());
  }
  return {};
}

TargetFactory oracle_factory(const HeapConfig& config) {
  const bool dk = config.supports_decrease_key();
  return [dk] { return std::make_unique<OracleTarget>(dk); };
}

// ---------------------------------------------------------------------------

namespace {

std::vector<OpOutcome> replay(const Trace& trace, const TargetFactory& factory) {
  std::unique_ptr<TraceTarget> target = factory();
  std::vector<OpOutcome> out;
  out.reserve(trace.ops.size());
  for (const TraceOp& op : trace.ops) out.push_back(target->apply(trace, op));
  return out;
}

std::optional<std::size_t> first_mismatch(const Trace& trace, const TargetFactory& a,
                                          const TargetFactory& b) {
  std::unique_ptr<TraceTarget> ta = a();
  std::unique_ptr<TraceTarget> tb = b();
  for (std::size_t i = 0; i < trace.ops.size(); ++i)
    if (!(ta->apply(trace, trace.ops[i]) == tb->apply(trace, trace.ops[i]))) return i;
  return std::nullopt;
}

}  // namespace

DiffReport differential_run(const Trace& trace, const TargetFactory& impl,
                            const TargetFactory& oracle, bool shrink) {
  DiffReport report;
  report.ops = trace.ops.size();
  // The two replays are independent; each target stays on its own thread.
  auto fa = std::async(std::launch::async, [&] { return replay(trace, impl); });
  std::vector<OpOutcome> expect = replay(trace, oracle);
  std::vector<OpOutcome> got = fa.get();

  for (std::size_t i = 0; i < trace.ops.size(); ++i) {
    if (got[i] == expect[i]) continue;
    report.ok = false;
    report.mismatch_at = i;
    report.message = "op " + std::to_string(i) + ": expected " + describe(expect[i]) + ", got " +
                     describe(got[i]);
    break;
  }
  if (report.ok || !shrink) return report;

  // Keep the failing prefix, then drop chunks of decreasing size while the
  // remaining ops still produce some mismatch.
  std::vector<std::size_t> keep(*report.mismatch_at + 1);
  for (std::size_t i = 0; i < keep.size(); ++i) keep[i] = i;
  for (std::size_t chunk = std::max<std::size_t>(keep.size() / 2, 1);; chunk /= 2) {
    bool removed = true;
    while (removed) {
      removed = false;
      for (std::size_t start = 0; start < keep.size();) {
        std::vector<std::size_t> trial;
        trial.reserve(keep.size());
        trial.insert(trial.end(), keep.begin(), keep.begin() + static_cast<std::ptrdiff_t>(start));
        const std::size_t stop = std::min(keep.size(), start + chunk);
        trial.insert(trial.end(), keep.begin() + static_cast<std::ptrdiff_t>(stop), keep.end());
        const Trace candidate = subsequence(trace, trial);
        if (!trial.empty()) {
          if (auto at = first_mismatch(candidate, impl, oracle)) {
            trial.resize(*at + 1);
            keep = std::move(trial);
            removed = true;
            continue;
          }
        }
        start += chunk;
      }
    }
    if (chunk == 1) break;
  }
  report.shrunk = subsequence(trace, keep);
  return report;
}

// ---------------------------------------------------------------------------

namespace {

struct SmallState {
  Heap heap;
  OracleHeap oracle;
  std::vector<Handle> handles;  // by id - 1
  std::vector<bool> live;
  int inserted = 0;
};

class Exhaustive {
 public:
  Exhaustive(const HeapConfig& config, int max_len, int max_items)
      : config_(config), max_len_(max_len), max_items_(max_items) {}

  ExhaustiveReport run() {
    SmallState root{Heap(config_), {}, std::vector<Handle>(static_cast<std::size_t>(max_items_)),
                    std::vector<bool>(static_cast<std::size_t>(max_items_), false), 0};
    ++report_.sequences;  // the empty sequence
    dfs(root, 0);
    return report_;
  }

 private:
  bool check(const SmallState& s, const std::optional<Item>& got, const std::optional<Key>& expect) {
    ++report_.ops;
    if (got.has_value() != expect.has_value() || (got && got->key.id != expect->id))
      return fail("delete-min result differs from the oracle");
    const auto m = s.heap.find_min();
    const auto om = s.oracle.find_min();
    if (m.has_value() != om.has_value() || (m && s.heap.key(*m).id != om->id))
      return fail("find-min differs from the oracle");
    if (s.heap.size() != s.oracle.size()) return fail("size differs from the oracle");
    AuditReport a = audit_all(s.heap, true);
    if (!a.ok()) return fail(a.summary());
    const SizeBound bound = config_.kind == HeapKind::RankPairing2 ? SizeBound::Fibonacci
                                                                   : SizeBound::Pow2;
    if (config_.kind != HeapKind::Pairing) {
      AuditReport sizes = audit_half_tree_sizes(s.heap, bound);
      if (!sizes.ok()) return fail(sizes.summary());
    }
    if (potential_value(s.heap, default_scheme(config_)) < 0) return fail("negative potential");
    return true;
  }

  bool fail(const std::string& why) {
    if (report_.ok) {
      report_.ok = false;
      report_.failure = why;
      report_.failing_sequence = path_;
    }
    return false;
  }

  SmallState copy(const SmallState& s) {
    return SmallState{s.heap.clone(), s.oracle, s.handles, s.live, s.inserted};
  }

  void step(const SmallState& base, int depth, const std::string& label,
            const std::function<std::optional<Item>(SmallState&, std::optional<Key>&)>& op) {
    if (!report_.ok) return;
    SmallState s = copy(base);
    std::optional<Key> expect;
    path_.push_back(label);
    std::optional<Item> got;
    IncrementalPotential phi(s.heap, default_scheme(config_));
    s.heap.set_observer(&phi);
    try {
      got = op(s, expect);
    } catch (const HeapError& e) {
      fail(std::string("unexpected error: ") + e.what());
      path_.pop_back();
      return;
    }
    s.heap.set_observer(nullptr);
    ++report_.sequences;
    bool ok = check(s, got, expect);
    if (ok && phi.value() != potential_value(s.heap, phi.scheme()))
      ok = fail("incremental potential differs from recomputation");
    if (ok) dfs(s, depth + 1);
    path_.pop_back();
  }

  void dfs(const SmallState& s, int depth) {
    if (depth == max_len_ || !report_.ok) return;
    if (s.inserted < max_items_) {
      const int id = s.inserted + 1;
      for (int v = 1; v <= max_items_; ++v) {
        step(s, depth, "insert " + std::to_string(id) + " " + std::to_string(v),
             [&](SmallState& t, std::optional<Key>&) -> std::optional<Item> {
               t.handles[static_cast<std::size_t>(id - 1)] = t.heap.insert(v, static_cast<ItemId>(id));
               t.oracle.insert(v, static_cast<ItemId>(id));
               t.live[static_cast<std::size_t>(id - 1)] = true;
               ++t.inserted;
               return std::nullopt;
             });
      }
    }
    step(s, depth, "deletemin", [&](SmallState& t, std::optional<Key>& expect) {
      expect = t.oracle.delete_min();
      auto got = t.heap.delete_min();
      if (got) t.live[static_cast<std::size_t>(got->key.id - 1)] = false;
      return got;
    });
    if (!config_.supports_decrease_key()) return;
    for (int id = 1; id <= s.inserted; ++id) {
      if (!s.live[static_cast<std::size_t>(id - 1)]) continue;
      for (double delta : {0.5, 1.5, 3.0}) {
        step(s, depth, "decreasekey " + std::to_string(id) + " " + format_real(delta),
             [&](SmallState& t, std::optional<Key>&) -> std::optional<Item> {
               t.heap.decrease_key(t.handles[static_cast<std::size_t>(id - 1)], delta);
               t.oracle.decrease_key(static_cast<ItemId>(id), delta);
               return std::nullopt;
             });
      }
      step(s, depth, "delete " + std::to_string(id),
           [&](SmallState& t, std::optional<Key>&) -> std::optional<Item> {
             t.heap.erase(t.handles[static_cast<std::size_t>(id - 1)]);
             t.oracle.erase(static_cast<ItemId>(id));
             t.live[static_cast<std::size_t>(id - 1)] = false;
             return std::nullopt;
           });
    }
  }

  HeapConfig config_;
  int max_len_;
  int max_items_;
  ExhaustiveReport report_;
  std::vector<std::string> path_;
};

}  // namespace

ExhaustiveReport exhaustive_small(const HeapConfig& config, int max_len, int max_items) {
  if (max_items < 0 || max_items > 8)
    throw HeapError(Errc::BadArgument, "exhaustive enumeration takes at most 8 items");
  return Exhaustive(config, max_len, max_items).run();
}

}  // namespace rph
