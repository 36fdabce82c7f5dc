#include "rph/tournament.hpp"

#include <utility>

namespace rph {

// One-tree delete-min: fair matches cascade through the rank buckets, then the
// survivors are combined by unfair matches in increasing rank order.
void Heap::delete_min_one_tree() {
  remove_min_and_disassemble();
  std::vector<NodeId> pieces = work_;
  std::vector<NodeId> survivors = eager_links(pieces);
  std::vector<NodeId> out;
  if (!survivors.empty()) {
    NodeId acc = survivors.front();
    for (std::size_t i = 1; i < survivors.size(); ++i) acc = link(acc, survivors[i]);
    out.push_back(acc);
  }
  finish_delete_min(out, false);
}

bool has_tournament_history(const HeapConfig& config) noexcept {
  return config.kind == HeapKind::Tournament || config.kind == HeapKind::BinomialOnePass ||
         config.kind == HeapKind::BinomialEager;
}

namespace {

void require_tournament(const Heap& heap, NodeId root) {
  if (!has_tournament_history(heap.config()))
    throw HeapError(Errc::Unsupported,
                    "full and half-empty views need a tournament heap, not " +
                        heap.config().name());
  const Node& n = heap.pool()[root];
  if (!n.live || n.parent != kNil)
    throw HeapError(Errc::BadArgument, "tournament views start at a root");
}

// The tournament won by `item` whose losers, most recent first, are `chain`
// and its unordered successors. The latest match splits into the winner's
// earlier tournament (left) and the loser's own tournament (right).
std::vector<TournamentNode> expand(const NodePool& pool, NodeId root) {
  struct Task {
    NodeId item;
    NodeId chain;
    int slot;
  };
  std::vector<TournamentNode> nodes;
  std::vector<Task> stack{{root, pool[root].ord, 0}};
  nodes.emplace_back();
  while (!stack.empty()) {
    const Task t = stack.back();
    stack.pop_back();
    nodes[t.slot].item = pool[t.item].key;
    if (t.chain == kNil) {
      nodes[t.slot].rank = 0;
      continue;
    }
    nodes[t.slot].rank = pool[t.chain].rank + 1;
    const int left = static_cast<int>(nodes.size());
    nodes.emplace_back();
    const int right = static_cast<int>(nodes.size());
    nodes.emplace_back();
    nodes[t.slot].left = left;
    nodes[t.slot].right = right;
    stack.push_back({t.item, pool[t.chain].unord, left});
    stack.push_back({t.chain, pool[t.chain].ord, right});
  }
  return nodes;
}

}  // namespace

FullTournamentView expand_full(const Heap& heap, NodeId root) {
  require_tournament(heap, root);
  FullTournamentView view;
  view.nodes = expand(heap.pool(), root);
  view.root = 0;
  return view;
}

HalfEmptyView expand_half_empty(const Heap& heap, NodeId root) {
  require_tournament(heap, root);
  HalfEmptyView view;
  view.nodes = expand(heap.pool(), root);
  view.root = 0;
  for (auto& n : view.nodes) {
    if (n.leaf()) continue;
    view.nodes[n.left].full = false;
    view.nodes[n.right].full = true;
  }
  view.nodes[0].full = true;
  return view;
}

HeapOrderedView to_heap_ordered(const NodePool& pool, NodeId root) {
  HeapOrderedView view;
  std::vector<std::pair<NodeId, int>> stack{{root, 0}};
  view.nodes.push_back({pool[root].key, pool[root].rank, {}});
  view.root = 0;
  while (!stack.empty()) {
    auto [id, slot] = stack.back();
    stack.pop_back();
    for (NodeId c = pool[id].ord; c != kNil; c = pool[c].unord) {
      const int child = static_cast<int>(view.nodes.size());
      view.nodes.push_back({pool[c].key, pool[c].rank, {}});
      view.nodes[slot].children.push_back(child);
      stack.emplace_back(c, child);
    }
  }
  return view;
}

HalfTreeShape half_tree_shape(const NodePool& pool, NodeId root) {
  HalfTreeShape shape;
  struct Task {
    NodeId id;
    int parent;
    bool ordered;
  };
  std::vector<Task> stack{{root, -1, false}};
  while (!stack.empty()) {
    const Task t = stack.back();
    stack.pop_back();
    const int slot = static_cast<int>(shape.nodes.size());
    shape.nodes.push_back({pool[t.id].key, pool[t.id].rank, -1, -1});
    if (t.parent >= 0) {
      if (t.ordered)
        shape.nodes[t.parent].ord = slot;
      else
        shape.nodes[t.parent].unord = slot;
    }
    if (pool[t.id].unord != kNil) stack.push_back({pool[t.id].unord, slot, false});
    if (pool[t.id].ord != kNil) stack.push_back({pool[t.id].ord, slot, true});
  }
  return shape;
}

HalfTreeShape from_heap_ordered(const HeapOrderedView& view) {
  HalfTreeShape shape;
  if (view.root < 0) return shape;
  struct Task {
    int entry;
    int parent;
    bool ordered;
  };
  // First child becomes the ordered child, next sibling the unordered one.
  std::vector<int> next(view.nodes.size(), -1);
  for (const auto& e : view.nodes)
    for (std::size_t i = 0; i + 1 < e.children.size(); ++i) next[e.children[i]] = e.children[i + 1];

  std::vector<Task> stack{{view.root, -1, false}};
  while (!stack.empty()) {
    const Task t = stack.back();
    stack.pop_back();
    const auto& e = view.nodes[t.entry];
    const int slot = static_cast<int>(shape.nodes.size());
    shape.nodes.push_back({e.key, e.rank, -1, -1});
    if (t.parent >= 0) {
      if (t.ordered)
        shape.nodes[t.parent].ord = slot;
      else
        shape.nodes[t.parent].unord = slot;
    }
    if (next[t.entry] >= 0) stack.push_back({next[t.entry], slot, false});
    if (!e.children.empty()) stack.push_back({e.children.front(), slot, true});
  }
  return shape;
}

std::size_t subtree_size(const NodePool& pool, NodeId root) {
  std::size_t count = 0;
  std::vector<NodeId> stack{root};
  while (!stack.empty()) {
    const NodeId n = stack.back();
    stack.pop_back();
    ++count;
    if (pool[n].ord != kNil) stack.push_back(pool[n].ord);
    if (pool[n].unord != kNil) stack.push_back(pool[n].unord);
  }
  return count;
}

}  // namespace rph
