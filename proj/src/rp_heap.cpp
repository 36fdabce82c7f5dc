// Rank-pairing heaps: key decrease with rank restoration, and the bucketed
// delete-min shared with the one-pass binomial queue. Also the pairing-heap
// baseline, which uses the same detach but no ranks.

#include <algorithm>

#include "rph/analysis.hpp"
#include "rph/heap.hpp"
#include "rph/rank_rules.hpp"

namespace rph {

void Heap::detach(NodeId x) {
  const NodeId p = node(x).parent;
  const NodeId y = node(x).unord;
  const bool ranked = config_.kind != HeapKind::Pairing;

  touched_.assign({x, p});
  if (y != kNil) touched_.push_back(y);
  if (node(p).parent != kNil) touched_.push_back(node(p).parent);
  notify_before(Mutation::Detach, touched_);

  Node& pn = node(p);
  if (pn.ord == x)
    pn.ord = y;
  else
    pn.unord = y;
  if (y != kNil) node(y).parent = p;
  Node& xn = node(x);
  xn.parent = kNil;
  xn.unord = kNil;
  xn.fresh = false;
  if (ranked) {
    xn.rank = pool_->rank_of(xn.ord) + 1;
    if (pn.parent == kNil) {
      pn.rank = pool_->rank_of(pn.ord) + 1;
      max_rank_dirty_ = true;
    }
    push_root(x);
  }
  notify_after(Mutation::Detach, touched_);

  if (!ranked) {
    const NodeId w = link(min_, x);
    node(w).next = w;
    min_ = w;
    root_total_ = 1;
    return;
  }
  restore_ranks(p, y);
}

int Heap::decrease_rank_target(NodeId u) const {
  const int rv = pool_->rank_of(node(u).ord);
  const int rw = pool_->rank_of(node(u).unord);
  if (config_.kind == HeapKind::RankPairing2) return rank_target_type2(rv, rw);
  return rank_target_type1(rv, rw);
}

void Heap::set_rank(NodeId u, int rank) {
  touched_.assign({u});
  const NodeId p = node(u).parent;
  if (p != kNil) {
    touched_.push_back(p);
    if (node(p).parent != kNil) touched_.push_back(node(p).parent);
  }
  notify_before(Mutation::RankChange, touched_);
  if (p == kNil) max_rank_dirty_ = true;
  node(u).rank = rank;
  notify_after(Mutation::RankChange, touched_);
}

void Heap::refresh_root_rank(NodeId root) {
  const int want = pool_->rank_of(node(root).ord) + 1;
  if (node(root).rank != want) set_rank(root, want);
}

// Walks up from u, the node whose child slot now holds `child`, lowering
// ranks until one is already right or a root is reached.
void Heap::restore_ranks(NodeId u, NodeId child) {
  int steps = 0;
  while (u != kNil) {
    if (node(u).parent == kNil) {
      refresh_root_rank(u);
      return;
    }
    if (config_.kind == HeapKind::Capped && steps == config_.bound) return;
    ++steps;
    ++counters_.rank_steps;
    const int old = node(u).rank;
    const int k = config_.kind == HeapKind::VariantA
                      ? rank_target_variantA(old, pool_->rank_of(child), config_.bound)
                      : decrease_rank_target(u);
    if (k == old) {
      if (observer_) observer_->rank_step(*this, u, old, k, true);
      return;
    }
    if (observer_) observer_->rank_step(*this, u, old, k, false);
    set_rank(u, k);
    child = u;
    u = node(u).parent;
  }
}

void Heap::delete_min_rank_pairing() {
  const std::size_t boundary = remove_min_and_disassemble();
  std::vector<NodeId> candidates;
  candidates.reserve(work_.size());
  switch (config_.policy) {
    case MatchPolicy::Unrestricted:
      candidates = work_;
      break;
    case MatchPolicy::DisassemblyFirst:
      candidates.assign(work_.begin() + static_cast<std::ptrdiff_t>(boundary), work_.end());
      candidates.insert(candidates.end(), work_.begin(),
                        work_.begin() + static_cast<std::ptrdiff_t>(boundary));
      break;
    case MatchPolicy::RedFirst: {
      for (NodeId r : work_)
        if (classify_type1(*pool_, r) == Color::Red) candidates.push_back(r);
      for (NodeId r : work_)
        if (classify_type1(*pool_, r) != Color::Red) candidates.push_back(r);
      break;
    }
  }
  std::vector<NodeId> out = one_pass_links(candidates);
  finish_delete_min(out, true);
}

// Two-pass pairing: match the pieces left to right in pairs, then fold the
// winners right to left.
void Heap::delete_min_pairing() {
  remove_min_and_disassemble();
  std::vector<NodeId> pieces = work_;
  std::vector<NodeId> out;
  if (!pieces.empty()) {
    std::vector<NodeId> pairs;
    pairs.reserve(pieces.size() / 2 + 1);
    std::size_t i = 0;
    for (; i + 1 < pieces.size(); i += 2) pairs.push_back(link(pieces[i], pieces[i + 1]));
    if (i < pieces.size()) pairs.push_back(pieces[i]);
    NodeId acc = pairs.back();
    for (std::size_t j = pairs.size() - 1; j-- > 0;) acc = link(pairs[j], acc);
    out.push_back(acc);
  }
  finish_delete_min(out, false);
}

}  // namespace rph
