// One-pass and eager binomial queues, and the disassembly shared by every
// delete-min that splits a deleted root's half tree.

#include <algorithm>

#include "rph/heap.hpp"

namespace rph {

std::vector<NodeId> Heap::disassemble(NodeId root) {
  if (!node(root).live || node(root).parent != kNil)
    throw HeapError(Errc::BadArgument, "disassemble needs a root");
  const bool ranked = config_.kind != HeapKind::Pairing;
  const bool mark_fresh = config_.uses_rank_pairing();

  std::vector<NodeId> pieces;
  NodeId c = node(root).ord;
  node(root).ord = kNil;
  while (c != kNil) {
    Node& n = node(c);
    const NodeId next = n.unord;
    n.parent = kNil;
    n.unord = kNil;
    if (n.unfair) {
      n.unfair = false;
      --unfair_edges_;
    }
    if (ranked) {
      n.rank = pool_->rank_of(n.ord) + 1;
      n.fresh = mark_fresh && n.rank >= 1;
    }
    pieces.push_back(c);
    if (working_) work_.push_back(c);
    c = next;
  }
  if (ranked) node(root).rank = 0;
  return pieces;
}

std::vector<NodeId> Heap::one_pass_links(std::span<const NodeId> trees) {
  std::vector<NodeId> out;
  out.reserve(trees.size());
  for (NodeId t : trees) {
    const auto r = static_cast<std::size_t>(node(t).rank);
    if (r >= buckets_.size()) buckets_.resize(std::max(r + 1, buckets_.size() * 2), kNil);
    if (buckets_[r] == kNil) {
      buckets_[r] = t;
    } else {
      out.push_back(link(buckets_[r], t));
      buckets_[r] = kNil;
    }
  }
  for (NodeId& slot : buckets_) {
    if (slot != kNil) out.push_back(slot);
    slot = kNil;
  }
  return out;
}

std::vector<NodeId> Heap::eager_links(std::span<const NodeId> trees) {
  for (NodeId t : trees) {
    auto r = static_cast<std::size_t>(node(t).rank);
    for (;;) {
      if (r >= buckets_.size()) buckets_.resize(std::max(r + 1, buckets_.size() * 2), kNil);
      if (buckets_[r] == kNil) break;
      t = link(buckets_[r], t);
      buckets_[r] = kNil;
      r = static_cast<std::size_t>(node(t).rank);
    }
    buckets_[r] = t;
  }
  std::vector<NodeId> out;
  for (NodeId& slot : buckets_) {
    if (slot != kNil) out.push_back(slot);
    slot = kNil;
  }
  return out;
}

// Removes the minimum root and splits its half tree. Afterwards the heap is
// in working mode: work_ holds the other roots in ring order, then the pieces
// in production order. Returns the number of other roots.
std::size_t Heap::remove_min_and_disassemble() {
  const NodeId x = min_;
  std::vector<NodeId> others = ring_after_min();

  touched_.assign({x});
  for (NodeId c = node(x).ord; c != kNil; c = node(c).unord) touched_.push_back(c);
  notify_before(Mutation::Disassemble, touched_);

  working_ = true;
  work_ = std::move(others);
  const std::size_t boundary = work_.size();
  disassemble(x);
  if (config_.verify) ids_.erase(node(x).key.id);
  pool_->release(x);
  --size_;
  min_ = kNil;
  last_halftrees_ = work_.size();

  notify_after(Mutation::Disassemble, touched_);
  return boundary;
}

void Heap::finish_delete_min(std::span<const NodeId> out, bool search_min) {
  touched_.clear();
  for (NodeId r : out)
    if (node(r).fresh) touched_.push_back(r);
  if (!touched_.empty()) {
    notify_before(Mutation::Staleness, touched_);
    for (NodeId r : touched_) node(r).fresh = false;
    notify_after(Mutation::Staleness, touched_);
  }
  relink_ring(out);
  if (out.empty()) return;
  if (!search_min) {
    min_ = out.front();
    return;
  }
  NodeId best = out.front();
  for (std::size_t i = 1; i < out.size(); ++i)
    if (less(out[i], best)) best = out[i];
  min_ = best;
}

void Heap::delete_min_eager() {
  remove_min_and_disassemble();
  std::vector<NodeId> trees = work_;
  std::vector<NodeId> out = eager_links(trees);
  finish_delete_min(out, true);
}

}  // namespace rph
