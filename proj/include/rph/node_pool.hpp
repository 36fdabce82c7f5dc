#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "rph/key.hpp"

namespace rph {

using NodeId = std::uint32_t;
inline constexpr NodeId kNil = 0xffffffffu;

// One item of the half-ordered representation. The item is the node.
struct Node {
  Key key;
  int rank = 0;
  NodeId ord = kNil;
  NodeId unord = kNil;
  NodeId parent = kNil;
  NodeId next = kNil;  // root ring successor; meaningful for roots only
  std::uint32_t generation = 0;
  bool live = false;
  bool unfair = false;  // lost its match to the parent's tree unfairly
  bool fresh = false;   // produced by the running disassembly, not yet matched
};

struct Handle {
  NodeId index = kNil;
  std::uint32_t generation = 0;

  friend bool operator==(const Handle&, const Handle&) = default;
};

// Dense slab of nodes with generation-checked handles. Several heaps may draw
// from one pool; a slot is recycled only after its node is released.
class NodePool {
 public:
  NodeId allocate(const Key& key);
  void release(NodeId id);

  Node& operator[](NodeId id) { return nodes_[id]; }
  const Node& operator[](NodeId id) const { return nodes_[id]; }

  bool alive(Handle h) const noexcept {
    return h.index < nodes_.size() && nodes_[h.index].live &&
           nodes_[h.index].generation == h.generation;
  }
  Handle handle(NodeId id) const { return Handle{id, nodes_[id].generation}; }

  std::size_t live_count() const noexcept { return live_; }
  std::size_t slots() const noexcept { return nodes_.size(); }

  // Rank of a child slot; a missing child reads -1.
  int rank_of(NodeId id) const noexcept { return id == kNil ? -1 : nodes_[id].rank; }

 private:
  std::vector<Node> nodes_;
  std::vector<NodeId> free_;
  std::size_t live_ = 0;
};

}  // namespace rph
