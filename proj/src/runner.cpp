#include "rph/runner.hpp"

#include <ostream>

#include "rph/audit.hpp"

namespace rph {

CheckLevel parse_check_level(std::string_view name) {
  if (name == "off") return CheckLevel::Off;
  if (name == "cheap") return CheckLevel::Cheap;
  if (name == "full") return CheckLevel::Full;
  throw HeapError(Errc::BadArgument, "unknown check level '" + std::string(name) + "'");
}

namespace {

OpOutcome fail(Errc code, std::string message) {
  OpOutcome o;
  o.error = true;
  o.code = code;
  o.message = std::move(message);
  return o;
}

OpOutcome item(ItemId id) {
  OpOutcome o;
  o.has_item = true;
  o.id = id;
  return o;
}

void add(CostCounters& a, const CostCounters& b) {
  a.comparisons += b.comparisons;
  a.links += b.links;
  a.unfair_links += b.unfair_links;
  a.rank_steps += b.rank_steps;
}

}  // namespace

ImplTarget::ImplTarget(HeapConfig config, RunOptions options)
    : config_(config), options_(options), pool_(std::make_shared<NodePool>()) {
  if (options_.checks == CheckLevel::Full && !options_.analysis)
    options_.analysis = default_scheme(config_);
  if (options_.shadow_oracle) shadow_.emplace(config_.supports_decrease_key());
}

ImplTarget::~ImplTarget() {
  for (auto& h : heaps_)
    if (h) h->set_observer(nullptr);
}

const Heap* ImplTarget::heap(std::uint32_t index) const {
  return index < heaps_.size() ? heaps_[index].get() : nullptr;
}

CostCounters ImplTarget::total_counters() const {
  CostCounters total = retired_;
  for (const auto& h : heaps_)
    if (h) add(total, h->counters());
  return total;
}

Heap* ImplTarget::live_heap(std::uint32_t h) { return h < heaps_.size() ? heaps_[h].get() : nullptr; }

std::uint32_t ImplTarget::find(std::uint32_t instance) {
  while (uf_[instance] != instance) {
    uf_[instance] = uf_[uf_[instance]];
    instance = uf_[instance];
  }
  return instance;
}

OpOutcome ImplTarget::locate(std::uint32_t h, ItemId id, Handle& out) {
  auto it = items_.find(id);
  if (it == items_.end()) return fail(Errc::DeadHandle, "no live item " + std::to_string(id));
  if (find(it->second.instance) != find(heap_instance_[h]))
    return fail(Errc::ForeignHandle, "item " + std::to_string(id) + " is in another heap");
  out = it->second.handle;
  return {};
}

std::int64_t ImplTarget::phi(std::uint32_t h) const {
  if (h >= observers_.size() || !observers_[h]) return 0;
  return observers_[h]->value();
}

OpOutcome ImplTarget::apply(const Trace& trace, const TraceOp& op) {
  const std::size_t index = op_index_++;
  if (std::max(op.heap, op.heap2) >= heaps_.size()) {
    const std::size_t n = std::max<std::size_t>(op.heap, op.heap2) + 1;
    heaps_.resize(n);
    observers_.resize(n);
    heap_instance_.resize(n, 0);
  }
  if (op.op != OpKind::Make && !live_heap(op.heap))
    return fail(Errc::BadArgument, "unknown heap '" + trace.names[op.heap] + "'");

  Heap* h = live_heap(op.heap);
  MetricsRow row;
  row.op_index = index;
  row.heap = op.heap;
  row.m.op = op.op;
  const CostCounters before = h ? h->counters() : CostCounters{};
  if (h) row.m.n_before = h->size();
  row.m.phi_before = phi(op.heap);

  OpOutcome out;
  try {
    switch (op.op) {
      case OpKind::Make: {
        if (h) return fail(Errc::BadArgument, "heap '" + trace.names[op.heap] + "' already exists");
        heaps_[op.heap] = std::make_unique<Heap>(config_, pool_);
        h = heaps_[op.heap].get();
        if (options_.analysis) {
          observers_[op.heap] = std::make_unique<IncrementalPotential>(*h, *options_.analysis);
          h->set_observer(observers_[op.heap].get());
        }
        heap_instance_[op.heap] = static_cast<std::uint32_t>(uf_.size());
        uf_.push_back(static_cast<std::uint32_t>(uf_.size()));
        row.m.phi_before = phi(op.heap);
        break;
      }
      case OpKind::Insert: {
        if (items_.count(op.id))
          return fail(Errc::DuplicateId, "duplicate id " + std::to_string(op.id));
        const Handle hd = h->insert(op.value, op.id);
        items_[op.id] = {heap_instance_[op.heap], hd};
        ++live_items_;
        break;
      }
      case OpKind::FindMin: {
        if (auto m = h->find_min()) out = item(h->key(*m).id);
        break;
      }
      case OpKind::DeleteMin: {
        if (auto m = h->delete_min()) {
          out = item(m->key.id);
          items_.erase(m->key.id);
          --live_items_;
        }
        break;
      }
      case OpKind::DecreaseKey: {
        if (!config_.supports_decrease_key())
          return fail(Errc::Unsupported, "decrease_key is not supported by " + config_.name());
        Handle hd;
        if (OpOutcome err = locate(op.heap, op.id, hd); err.error) return err;
        h->decrease_key(hd, op.value);
        break;
      }
      case OpKind::Delete: {
        if (!config_.supports_decrease_key())
          return fail(Errc::Unsupported, "delete is not supported by " + config_.name());
        Handle hd;
        if (OpOutcome err = locate(op.heap, op.id, hd); err.error) return err;
        h->erase(hd);
        items_.erase(op.id);
        --live_items_;
        break;
      }
      case OpKind::Meld: {
        if (op.heap == op.heap2) return fail(Errc::BadArgument, "cannot meld a heap with itself");
        Heap* h2 = live_heap(op.heap2);
        if (!h2) return fail(Errc::BadArgument, "unknown heap '" + trace.names[op.heap2] + "'");
        row.m.n_before += h2->size();
        row.m.phi_before += phi(op.heap2);
        if (observers_[op.heap2]) {
          observers_[op.heap]->absorb(*observers_[op.heap2]);
          h2->set_observer(nullptr);
        }
        h->meld(*h2);
        add(retired_, h2->counters());
        heaps_[op.heap2].reset();
        observers_[op.heap2].reset();
        uf_[find(heap_instance_[op.heap2])] = find(heap_instance_[op.heap]);
        break;
      }
    }
  } catch (const HeapError& e) {
    return fail(e.code(), e.what());
  }

  if (options_.record_metrics) {
    const CostCounters& now = h->counters();
    row.m.comparisons = now.comparisons - before.comparisons;
    row.m.links = now.links - before.links;
    row.m.rank_steps = now.rank_steps - before.rank_steps;
    row.m.halftrees_after = h->root_count();
    row.m.max_rank = h->max_root_rank();
    row.m.phi_after = phi(op.heap);
    rows_.push_back(row);
  }

  if (shadow_ && !failure_) {
    const OpOutcome expect = shadow_->apply(trace, op);
    if (!(expect == out))
      failure_ = "oracle mismatch at op " + std::to_string(index) + ": expected " +
                 describe(expect) + ", got " + describe(out);
  }
  if (options_.checks != CheckLevel::Off && !failure_) run_checks(op);
  return out;
}

void ImplTarget::run_checks(const TraceOp& op) {
  const std::size_t index = op_index_ - 1;
  std::size_t total = 0;
  for (const auto& h : heaps_)
    if (h) total += h->size();
  if (total != live_items_) {
    failure_ = "op " + std::to_string(index) + ": heaps hold " + std::to_string(total) +
               " items, expected " + std::to_string(live_items_);
    return;
  }
  const Heap* h = heap(op.heap);
  if (!h) return;
  if (options_.checks == CheckLevel::Cheap) {
    const NodeId m = h->min_root();
    if (m != kNil) {
      const NodeId c = h->pool()[m].ord;
      if (c != kNil && !key_less(h->pool()[m].key, h->pool()[c].key))
        failure_ = "op " + std::to_string(index) + ": min root violates half order";
    }
    if (!failure_ && index % 1024 == 1023) {
      AuditReport r = audit_structure(*h);
      if (!r.ok()) failure_ = "op " + std::to_string(index) + ": " + r.summary();
    }
    return;
  }
  AuditReport r = audit_all(*h, true);
  if (!r.ok()) {
    failure_ = "op " + std::to_string(index) + ": " + r.summary();
    return;
  }
  if (options_.analysis && observers_[op.heap]) {
    const std::int64_t scratch = potential_value(*h, *options_.analysis);
    if (scratch != observers_[op.heap]->value())
      failure_ = "op " + std::to_string(index) + ": incremental potential " +
                 std::to_string(observers_[op.heap]->value()) + " != recomputed " +
                 std::to_string(scratch);
  }
}

TargetFactory impl_factory(const HeapConfig& config, RunOptions options) {
  return [config, options] { return std::make_unique<ImplTarget>(config, options); };
}

RunResult run_trace(const Trace& trace, const HeapConfig& config, const RunOptions& options) {
  RunResult result;
  result.heap_names = trace.names;
  ImplTarget target(config, options);
  for (const TraceOp& op : trace.ops) {
    const OpOutcome out = target.apply(trace, op);
    ++result.ops;
    if (out.error) {
      result.exit_code = 1;
      result.failed_op = result.ops - 1;
      result.error = "op " + std::to_string(result.ops - 1) + ": " + out.message;
      break;
    }
    if (target.check_failure()) {
      result.exit_code = 1;
      result.failed_op = result.ops - 1;
      result.error = *target.check_failure();
      break;
    }
  }
  result.rows = target.rows();
  result.counters = target.total_counters();
  return result;
}

void write_metrics_csv(std::ostream& out, const RunResult& result, bool with_phi) {
  out << "op_index,op,heap,n_before,comparisons,links,rank_steps,halftrees_after,max_rank";
  if (with_phi) out << ",phi_before,phi_after";
  out << '\n';
  for (const MetricsRow& r : result.rows) {
    out << r.op_index << ',' << to_string(r.m.op) << ',' << result.heap_names[r.heap] << ','
        << r.m.n_before << ',' << r.m.comparisons << ',' << r.m.links << ',' << r.m.rank_steps
        << ',' << r.m.halftrees_after << ',' << r.m.max_rank;
    if (with_phi) out << ',' << r.m.phi_before << ',' << r.m.phi_after;
    out << '\n';
  }
}

}  // namespace rph
