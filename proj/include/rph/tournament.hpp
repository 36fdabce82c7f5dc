#pragma once

#include <vector>

#include "rph/heap.hpp"

namespace rph {

// A tournament as a full binary tree: leaves are the items, every internal
// node is a match labeled with its winner and the winner's rank after it.
// In the half-empty form only the topmost node of each item is full.
struct TournamentNode {
  Key item;
  int rank = 0;
  int left = -1;   // the winner's tournament before this match
  int right = -1;  // the loser's tournament
  bool full = true;

  bool leaf() const noexcept { return left < 0; }
};

struct FullTournamentView {
  std::vector<TournamentNode> nodes;
  int root = -1;
};

struct HalfEmptyView {
  std::vector<TournamentNode> nodes;
  int root = -1;
};

// Multiway heap-ordered tree; children are listed most recent match first.
struct HeapOrderedView {
  struct Entry {
    Key key;
    int rank = 0;
    std::vector<int> children;
  };
  std::vector<Entry> nodes;
  int root = -1;
};

// Preorder snapshot of a half tree, used to compare structures.
struct HalfTreeShape {
  struct Entry {
    Key key;
    int rank = 0;
    int ord = -1;
    int unord = -1;

    friend bool operator==(const Entry& a, const Entry& b) {
      return a.key.id == b.key.id && a.key.value == b.key.value &&
             a.key.tombstone == b.key.tombstone && a.rank == b.rank && a.ord == b.ord &&
             a.unord == b.unord;
    }
  };
  std::vector<Entry> nodes;

  friend bool operator==(const HalfTreeShape&, const HalfTreeShape&) = default;
};

// Full and half-empty expansions are only meaningful for heaps built purely
// from tournament matches (tournament and binomial-queue kinds).
bool has_tournament_history(const HeapConfig& config) noexcept;
FullTournamentView expand_full(const Heap& heap, NodeId root);
HalfEmptyView expand_half_empty(const Heap& heap, NodeId root);

HeapOrderedView to_heap_ordered(const NodePool& pool, NodeId root);
HalfTreeShape half_tree_shape(const NodePool& pool, NodeId root);
HalfTreeShape from_heap_ordered(const HeapOrderedView& view);

// Nodes in the half tree rooted at `root` (the root and everything below it).
std::size_t subtree_size(const NodePool& pool, NodeId root);

}  // namespace rph
