#include "rph/audit.hpp"

#include <limits>
#include <sstream>
#include <unordered_map>

#include "rph/key.hpp"

namespace rph {

void AuditReport::add(NodeId x, std::string what) {
  violations.push_back(std::move(what));
  nodes.push_back(x);
}

std::string AuditReport::summary(std::size_t limit) const {
  std::ostringstream out;
  for (std::size_t i = 0; i < violations.size() && i < limit; ++i) {
    if (i) out << "; ";
    out << violations[i];
  }
  if (violations.size() > limit) out << "; ... (" << violations.size() << " total)";
  return out.str();
}

RankRule RankRule::of(const HeapConfig& config) {
  switch (config.kind) {
    case HeapKind::RankPairing1: return type1();
    case HeapKind::RankPairing2: return type2();
    case HeapKind::VariantA: return variantA(config.bound);
    case HeapKind::BinomialOnePass:
    case HeapKind::BinomialEager: return perfect();
    case HeapKind::Tournament:
    case HeapKind::Capped: return {Monotone, 1};
    case HeapKind::Pairing: return {None, 1};
  }
  return {None, 1};
}

namespace {

std::string node_name(const NodePool& pool, NodeId x) {
  std::ostringstream out;
  out << "node " << pool[x].key.id;
  return out.str();
}

}  // namespace

AuditReport audit_structure(const Heap& heap) {
  AuditReport report;
  const NodePool& pool = heap.pool();
  const bool ranked = heap.kind() != HeapKind::Pairing;
  std::vector<NodeId> roots = heap.roots();

  if (!roots.empty() && heap.min_root() != roots.front())
    report.add(kNil, "root list does not start at the minimum root");

  struct Frame {
    NodeId x;
    const Key* bound;  // key of the nearest ancestor whose ordered subtree holds x
  };
  std::vector<Frame> stack;
  std::size_t count = 0;
  std::size_t unfair = 0;
  const Key* min_key = roots.empty() ? nullptr : &pool[heap.min_root()].key;

  for (NodeId r : roots) {
    const Node& rn = pool[r];
    if (!rn.live) {
      report.add(r, "dead node in root list");
      continue;
    }
    if (rn.parent != kNil) report.add(r, node_name(pool, r) + " is listed as a root but has a parent");
    if (rn.unord != kNil) report.add(r, node_name(pool, r) + " is a root with an unordered child");
    if (ranked && rn.rank != pool.rank_of(rn.ord) + 1)
      report.add(r, node_name(pool, r) + " root rank " + std::to_string(rn.rank) +
                        " != r(ord)+1");
    if (min_key && key_less(rn.key, *min_key))
      report.add(r, node_name(pool, r) + " has a smaller key than the minimum root");
    stack.push_back({r, nullptr});
    while (!stack.empty()) {
      const Frame f = stack.back();
      stack.pop_back();
      const Node& n = pool[f.x];
      ++count;
      if (count > pool.live_count() + 1) {
        report.add(kNil, "cycle in child links");
        return report;
      }
      if (n.unfair) ++unfair;
      if (f.bound && !key_less(*f.bound, n.key))
        report.add(f.x, node_name(pool, f.x) + " violates half order");
      if (min_key && key_less(n.key, *min_key))
        report.add(f.x, node_name(pool, f.x) + " has a smaller key than the minimum root");
      for (NodeId c : {n.ord, n.unord}) {
        if (c == kNil) continue;
        if (!pool[c].live) {
          report.add(f.x, node_name(pool, f.x) + " has a dead child");
          continue;
        }
        if (pool[c].parent != f.x)
          report.add(c, node_name(pool, c) + " parent link is inconsistent");
      }
      if (n.ord != kNil) stack.push_back({n.ord, &n.key});
      if (n.unord != kNil) stack.push_back({n.unord, f.bound});
    }
  }
  if (count != heap.size())
    report.add(kNil, "reachable nodes " + std::to_string(count) + " != item count " +
                         std::to_string(heap.size()));
  if (unfair != heap.unfair_edges())
    report.add(kNil, "unfair flags " + std::to_string(unfair) + " != tracked " +
                         std::to_string(heap.unfair_edges()));
  return report;
}

AuditReport audit_rank_rule(const Heap& heap, RankRule rule) {
  AuditReport report;
  if (rule.kind == RankRule::None) return report;
  const NodePool& pool = heap.pool();
  std::vector<NodeId> stack = heap.roots();
  while (!stack.empty()) {
    const NodeId x = stack.back();
    stack.pop_back();
    const Node& n = pool[x];
    if (n.ord != kNil) stack.push_back(n.ord);
    if (n.unord != kNil) stack.push_back(n.unord);
    if (n.rank < 0) report.add(x, node_name(pool, x) + " has negative rank");
    if (n.parent == kNil) continue;  // root ranks are checked structurally

    const int a = n.rank - pool.rank_of(n.ord);
    const int b = n.rank - pool.rank_of(n.unord);
    const int lo = std::min(a, b);
    const int hi = std::max(a, b);
    bool ok = true;
    switch (rule.kind) {
      case RankRule::Type1: ok = (lo == 1 && hi == 1) || (lo == 0 && hi >= 1); break;
      case RankRule::Type2:
        ok = (lo == 1 && (hi == 1 || hi == 2)) || (lo == 0 && hi >= 2);
        break;
      case RankRule::VariantA: ok = hi <= rule.bound; break;
      case RankRule::Perfect: ok = lo == 1 && hi == 1; break;
      case RankRule::Monotone: ok = lo >= 0; break;
      case RankRule::None: break;
    }
    if (!ok)
      report.add(x, node_name(pool, x) + " rank " + std::to_string(n.rank) +
                        " has rank differences " + std::to_string(a) + "," + std::to_string(b));
  }
  return report;
}

std::uint64_t min_half_tree_size(SizeBound bound, int rank) {
  if (rank <= 0) return 1;
  if (rank >= 63) return std::numeric_limits<std::uint64_t>::max();
  if (bound != SizeBound::Fibonacci) return std::uint64_t{1} << rank;
  std::uint64_t a = 1, b = 2;  // n_0, n_1
  for (int k = 1; k < rank; ++k) {
    const std::uint64_t c = a + b;
    a = b;
    b = c;
  }
  return b;
}

AuditReport audit_half_tree_sizes(const Heap& heap, SizeBound bound) {
  AuditReport report;
  const NodePool& pool = heap.pool();
  // Post-order binary subtree sizes.
  std::unordered_map<NodeId, std::uint64_t> size;
  std::vector<std::pair<NodeId, bool>> stack;
  for (NodeId r : heap.roots()) stack.emplace_back(r, false);
  while (!stack.empty()) {
    auto [x, expanded] = stack.back();
    stack.pop_back();
    const Node& n = pool[x];
    if (!expanded) {
      stack.emplace_back(x, true);
      if (n.ord != kNil) stack.emplace_back(n.ord, false);
      if (n.unord != kNil) stack.emplace_back(n.unord, false);
      continue;
    }
    const std::uint64_t under_ord = n.ord == kNil ? 0 : size[n.ord];
    const std::uint64_t under_unord = n.unord == kNil ? 0 : size[n.unord];
    size[x] = 1 + under_ord + under_unord;
    // A root heads its half tree; a non-root of rank k heads its binary
    // subtree, which for a perfect tree has 2^(k+1) - 1 nodes.
    const bool root = n.parent == kNil;
    const std::uint64_t have = root ? 1 + under_ord : size[x];
    std::uint64_t need = min_half_tree_size(bound, n.rank);
    if (bound == SizeBound::Exact && !root) need = 2 * need - 1;
    const bool bad = bound == SizeBound::Exact ? have != need : have < need;
    if (bad)
      report.add(x, node_name(pool, x) + " of rank " + std::to_string(n.rank) + " heads " +
                        std::to_string(have) + " nodes, bound " + std::to_string(need));
  }
  return report;
}

AuditReport audit_all(const Heap& heap, bool full) {
  AuditReport report = audit_structure(heap);
  if (!full) return report;
  AuditReport ranks = audit_rank_rule(heap, RankRule::of(heap.config()));
  for (std::size_t i = 0; i < ranks.violations.size(); ++i)
    report.add(ranks.nodes[i], ranks.violations[i]);
  return report;
}

}  // namespace rph
