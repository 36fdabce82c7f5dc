#pragma once

#include <unordered_map>
#include <vector>

#include "rph/heap.hpp"
#include "rph/rng.hpp"

namespace rph::testing {

// Random single-heap driver for property checks that need the Heap itself.
struct Fuzz {
  enum Op { Insert, DeleteMin, DecreaseKey, Erase };

  Heap heap;
  Rng rng;
  std::vector<Handle> live;
  std::unordered_map<ItemId, std::size_t> where;
  ItemId next_id = 1;
  double weights[4];

  Fuzz(const HeapConfig& config, std::uint64_t seed, double insert = 45, double delete_min = 20,
       double decrease_key = 25, double erase = 10)
      : heap(config), rng(seed), weights{insert, delete_min, decrease_key, erase} {
    if (!config.supports_decrease_key()) weights[2] = weights[3] = 0;
  }

  Op pick() {
    double total = 0;
    for (double w : weights) total += w;
    double r = rng.uniform() * total;
    int k = 0;
    while (k < 3 && r >= weights[k]) r -= weights[k++];
    if ((k == 2 || k == 3) && live.empty()) k = 0;
    return static_cast<Op>(k);
  }

  void forget(ItemId id) {
    const std::size_t i = where.at(id);
    where[heap.pool()[live.back().index].key.id] = i;
    live[i] = live.back();
    live.pop_back();
    where.erase(id);
  }

  Handle random_live() { return live[rng.below(live.size())]; }

  void insert() {
    const ItemId id = next_id++;
    where[id] = live.size();
    live.push_back(heap.insert(rng.uniform(), id));
  }

  void delete_min() {
    if (auto it = heap.delete_min()) forget(it->key.id);
  }

  // Returns the decreased node.
  NodeId decrease_key() {
    const Handle h = random_live();
    heap.decrease_key(h, 1.0 - rng.uniform());
    return h.index;
  }

  void erase() {
    const Handle h = random_live();
    const ItemId id = heap.key(h).id;
    heap.erase(h);
    forget(id);
  }

  Op step() {
    const Op op = pick();
    switch (op) {
      case Insert: insert(); break;
      case DeleteMin: delete_min(); break;
      case DecreaseKey: decrease_key(); break;
      case Erase: erase(); break;
    }
    return op;
  }
};

// Values in delete-min order, emptying the heap.
inline std::vector<double> drain(Heap& heap) {
  std::vector<double> out;
  while (auto it = heap.delete_min()) out.push_back(it->key.value);
  return out;
}

// Every live node of the heap, by walking each half tree from its root.
inline std::vector<NodeId> all_nodes(const Heap& heap) {
  std::vector<NodeId> out;
  std::vector<NodeId> stack;
  heap.for_each_root([&](NodeId r) { stack.push_back(r); });
  const NodePool& pool = heap.pool();
  while (!stack.empty()) {
    const NodeId x = stack.back();
    stack.pop_back();
    out.push_back(x);
    if (pool[x].ord != kNil) stack.push_back(pool[x].ord);
    if (pool[x].unord != kNil) stack.push_back(pool[x].unord);
  }
  return out;
}

}  // namespace rph::testing
