#pragma once

#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "rph/analysis.hpp"
#include "rph/oracle.hpp"
#include "rph/trace.hpp"

namespace rph {

// off: nothing. cheap: item conservation and the min root's ordered child
// after every op, full structural audit every 1024 ops. full: structural and
// rank-rule audits plus potential recomputation after every op.
enum class CheckLevel { Off, Cheap, Full };

CheckLevel parse_check_level(std::string_view name);

struct RunOptions {
  CheckLevel checks = CheckLevel::Off;
  std::optional<Scheme> analysis;
  bool record_metrics = false;
  bool shadow_oracle = false;
};

struct MetricsRow {
  std::size_t op_index = 0;
  std::uint32_t heap = 0;
  OpMetrics m;
};

// Runs trace ops against real heaps that share one node pool.
class ImplTarget : public TraceTarget {
 public:
  explicit ImplTarget(HeapConfig config, RunOptions options = {});
  ~ImplTarget() override;

  OpOutcome apply(const Trace& trace, const TraceOp& op) override;

  const std::vector<MetricsRow>& rows() const noexcept { return rows_; }
  // Set when an audit or oracle comparison failed; the run should stop.
  const std::optional<std::string>& check_failure() const noexcept { return failure_; }
  const Heap* heap(std::uint32_t index) const;
  CostCounters total_counters() const;

 private:
  struct Located {
    std::uint32_t instance;
    Handle handle;
  };

  Heap* live_heap(std::uint32_t h);
  std::uint32_t find(std::uint32_t instance);
  OpOutcome locate(std::uint32_t h, ItemId id, Handle& out);
  std::int64_t phi(std::uint32_t h) const;
  void run_checks(const TraceOp& op);

  HeapConfig config_;
  RunOptions options_;
  std::shared_ptr<NodePool> pool_;
  std::vector<std::unique_ptr<Heap>> heaps_;  // by trace heap index; null = not live
  std::vector<std::unique_ptr<IncrementalPotential>> observers_;
  std::vector<std::uint32_t> heap_instance_;
  std::vector<std::uint32_t> uf_;
  std::unordered_map<ItemId, Located> items_;
  std::vector<MetricsRow> rows_;
  std::optional<OracleTarget> shadow_;
  std::optional<std::string> failure_;
  std::size_t op_index_ = 0;
  std::size_t live_items_ = 0;
  CostCounters retired_;  // counters of heaps that were melded away
};

TargetFactory impl_factory(const HeapConfig& config, RunOptions options = {});

struct RunResult {
  int exit_code = 0;  // 0 ok, 1 op error, audit failure or oracle mismatch
  std::size_t ops = 0;
  std::vector<MetricsRow> rows;
  std::vector<std::string> heap_names;
  std::string error;
  std::optional<std::size_t> failed_op;
  CostCounters counters;
};

RunResult run_trace(const Trace& trace, const HeapConfig& config, const RunOptions& options);

void write_metrics_csv(std::ostream& out, const RunResult& result, bool with_phi);

}  // namespace rph
