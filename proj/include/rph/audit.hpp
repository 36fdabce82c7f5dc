#pragma once

#include <string>
#include <vector>

#include "rph/heap.hpp"

namespace rph {

struct AuditReport {
  std::vector<std::string> violations;
  std::vector<NodeId> nodes;  // offending node per violation, kNil if global

  bool ok() const noexcept { return violations.empty(); }
  void add(NodeId x, std::string what);
  std::string summary(std::size_t limit = 5) const;
};

struct RankRule {
  // Monotone: every rank difference >= 0. Perfect: every non-root is a 1,1-node.
  enum Kind { Type1, Type2, VariantA, Perfect, Monotone, None } kind = Type2;
  int bound = 1;  // b for VariantA

  static RankRule type1() { return {Type1, 1}; }
  static RankRule type2() { return {Type2, 1}; }
  static RankRule variantA(int b) { return {VariantA, b}; }
  static RankRule perfect() { return {Perfect, 1}; }
  // The rule a heap of this configuration maintains after every operation.
  static RankRule of(const HeapConfig& config);
};

// Links, half order, root list, item count, root ranks and unfair flags.
AuditReport audit_structure(const Heap& heap);
AuditReport audit_rank_rule(const Heap& heap, RankRule rule);

// Size bound for rank k: 2^k, the Fibonacci bound F(k+2), or exactly 2^k.
// Roots are measured by their half tree, non-roots by their binary subtree.
enum class SizeBound { Pow2, Fibonacci, Exact };
std::uint64_t min_half_tree_size(SizeBound bound, int rank);
AuditReport audit_half_tree_sizes(const Heap& heap, SizeBound bound);

// Both structure and rank rule; cheap mode skips the per-node rank rule.
AuditReport audit_all(const Heap& heap, bool full);

}  // namespace rph
