#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "rph/heap.hpp"
#include "rph/trace.hpp"

namespace rph {

struct Edge {
  std::uint32_t u = 0;
  std::uint32_t v = 0;
  double w = 0;
};

struct Graph {
  std::uint32_t n = 0;  // vertices are 0..n-1
  std::vector<Edge> edges;
};

// Edge list text: one `u v w` per line, `#` comments. n is one past the
// largest vertex mentioned.
Graph read_graph(const std::string& path);
void write_graph(const std::string& path, const Graph& g);
// Directed edges with uniform endpoints (no self loops) and weights in [0, 1).
Graph random_graph(std::uint32_t n, std::size_t m, std::uint64_t seed);

// Minimal priority-queue surface the graph clients drive.
class PriorityQueue {
 public:
  virtual ~PriorityQueue() = default;
  virtual void insert(ItemId id, double value) = 0;
  virtual std::optional<ItemId> delete_min() = 0;
  virtual void decrease_key(ItemId id, double delta) = 0;
  virtual bool contains(ItemId id) const = 0;
  virtual double key(ItemId id) const = 0;
};

std::unique_ptr<PriorityQueue> make_queue(const HeapConfig& config);
std::unique_ptr<PriorityQueue> make_oracle_queue();

inline constexpr double kUnreached = -1.0;

struct DijkstraResult {
  std::vector<double> dist;  // kUnreached if not reachable
  std::size_t decrease_keys = 0;
  std::size_t reinserts = 0;
};

// Label-correcting Dijkstra: a vertex whose distance improves after it was
// popped is inserted again. Records the heap ops into `trace` when given.
DijkstraResult dijkstra(const Graph& g, std::uint32_t source, PriorityQueue& pq,
                        Trace* trace = nullptr);

struct MstResult {
  std::vector<std::uint32_t> edges;  // indices into Graph::edges
  double weight = 0;                 // sum of the chosen weights in ascending order
  std::size_t decrease_keys = 0;
};

// Minimum spanning forest, treating every edge as undirected.
MstResult prim(const Graph& g, PriorityQueue& pq, Trace* trace = nullptr);

std::vector<double> bellman_ford(const Graph& g, std::uint32_t source);
MstResult kruskal(const Graph& g);

Trace gen_dijkstra(const Graph& g, std::uint32_t source);
Trace gen_prim(const Graph& g);

}  // namespace rph
