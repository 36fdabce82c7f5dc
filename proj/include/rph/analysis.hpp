#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "rph/heap.hpp"

namespace rph {

enum class Goodness { Good, Bad, Root };
enum class Color { Green, Yellow, Red };

// A node is an i,j-node when its children have rank differences i and j.
bool is_11_node(const NodePool& pool, NodeId x);

Goodness classify_type2(const NodePool& pool, NodeId x);
Color classify_type1(const NodePool& pool, NodeId x);

enum class Scheme {
  TournamentUnfair,
  OnepassTreecount,
  Type2GoodBad,
  Type1Color,
  Type1FreshStale,
};

// Accepts the scheme names used on the command line, e.g. "type2-goodbad".
Scheme parse_scheme(std::string_view name);
std::string_view to_string(Scheme scheme) noexcept;
// The scheme matching a heap kind's own analysis.
Scheme default_scheme(const HeapConfig& config);

struct PotentialEntry {
  NodeId node = kNil;
  int rank = 0;
  bool root = false;
  bool fresh = false;
  std::string_view cls;  // "good", "bad", "root", "green", "yellow", "red", "" for flag schemes
  std::int64_t value = 0;
};

struct PotentialSnapshot {
  Scheme scheme = Scheme::Type2GoodBad;
  std::int64_t value = 0;
  std::vector<PotentialEntry> per_node;
};

// Potential of one live node. `fresh` is only read by the fresh/stale scheme.
std::int64_t node_potential(const NodePool& pool, NodeId x, Scheme scheme, bool fresh);

// From-scratch potential. Freshness comes from the nodes' own flags unless an
// explicit set of fresh roots is supplied.
PotentialSnapshot potential(const Heap& heap, Scheme scheme,
                            const std::unordered_set<NodeId>* fresh_roots = nullptr);
std::int64_t potential_value(const Heap& heap, Scheme scheme);

PotentialSnapshot potential_type2(const Heap& heap);
PotentialSnapshot potential_type1(const Heap& heap,
                                  const std::unordered_set<NodeId>* fresh_roots = nullptr);

// Keeps a running potential from the heap's mutation events.
class IncrementalPotential : public HeapObserver {
 public:
  IncrementalPotential(const Heap& heap, Scheme scheme);

  void before(const Heap& heap, Mutation m, std::span<const NodeId> touched) override;
  void after(const Heap& heap, Mutation m, std::span<const NodeId> touched) override;

  std::int64_t value() const noexcept { return value_; }
  // Takes over the potential of a heap about to be melded into this one.
  void absorb(const IncrementalPotential& other) noexcept { value_ += other.value_; }
  Scheme scheme() const noexcept { return scheme_; }
  // Change across the most recent event.
  std::int64_t last_delta() const noexcept { return value_ - value_before_event_; }

 private:
  std::int64_t sum(const Heap& heap, std::span<const NodeId> touched);

  Scheme scheme_;
  std::int64_t value_ = 0;
  std::int64_t value_before_event_ = 0;
  std::vector<NodeId> dedup_;
};

enum class OpKind { Make, Insert, FindMin, DeleteMin, DecreaseKey, Delete, Meld };

std::string_view to_string(OpKind op) noexcept;

struct OpMetrics {
  OpKind op = OpKind::Insert;
  std::uint64_t n_before = 0;
  std::uint64_t comparisons = 0;
  std::uint64_t links = 0;
  std::uint64_t rank_steps = 0;
  std::uint64_t halftrees_after = 0;
  int max_rank = -1;
  std::int64_t phi_before = 0;
  std::int64_t phi_after = 0;
};

// Budgets: c1 for insert, meld, find-min and decrease-key; c2*ceil(lg n) + c3
// for delete-min; delete pays both. Actual cost counts comparisons plus
// rank-decrease steps; potential is multiplied by phi_scale.
struct BudgetParams {
  double c1 = 1;
  double c2 = 2;
  double c3 = 0;
  double phi_scale = 1;
};

struct AmortizedReport {
  bool ok = true;
  std::optional<std::size_t> first_violation;
  std::string message;
  double total_actual = 0;
  double total_budget = 0;
  double worst_slack = 0;  // smallest budget - (actual + dPhi) over all ops
};

int ceil_lg(std::uint64_t n) noexcept;
double op_budget(const OpMetrics& m, const BudgetParams& params);
AmortizedReport verify_amortized(std::span<const OpMetrics> metrics, const BudgetParams& params);

// Calibrated budgets per scheme, frozen after the acceptance runs.
BudgetParams frozen_budget(Scheme scheme);

}  // namespace rph
