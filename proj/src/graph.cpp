#include "rph/graph.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "rph/oracle.hpp"
#include "rph/rng.hpp"

namespace rph {

Graph read_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw HeapError(Errc::Io, "cannot read graph '" + path + "'");
  Graph g;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream fields(line);
    std::string su, sv, sw, extra;
    if (!(fields >> su)) continue;
    if (!(fields >> sv >> sw) || (fields >> extra))
      throw HeapError(Errc::Parse, path + ":" + std::to_string(lineno) + ": expected 'u v w'");
    Edge e;
    double w = 0;
    auto bad = [&](const std::string& tok, auto& out) {
      auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
      return ec != std::errc{} || p != tok.data() + tok.size();
    };
    if (bad(su, e.u) || bad(sv, e.v) || bad(sw, w) || !std::isfinite(w))
      throw HeapError(Errc::Parse, path + ":" + std::to_string(lineno) + ": bad edge");
    if (w < 0)
      throw HeapError(Errc::BadArgument,
                      path + ":" + std::to_string(lineno) + ": negative edge weight");
    e.w = w;
    g.n = std::max({g.n, e.u + 1, e.v + 1});
    g.edges.push_back(e);
  }
  return g;
}

void write_graph(const std::string& path, const Graph& g) {
  std::ofstream out(path);
  if (!out) throw HeapError(Errc::Io, "cannot write graph '" + path + "'");
  for (const Edge& e : g.edges) out << e.u << ' ' << e.v << ' ' << format_real(e.w) << '\n';
}

Graph random_graph(std::uint32_t n, std::size_t m, std::uint64_t seed) {
  if (n < 2 && m > 0) throw HeapError(Errc::BadArgument, "edges need at least two vertices");
  Rng rng(seed);
  Graph g;
  g.n = n;
  g.edges.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    Edge e;
    e.u = static_cast<std::uint32_t>(rng.below(n));
    e.v = static_cast<std::uint32_t>(rng.below(n - 1));
    if (e.v >= e.u) ++e.v;
    e.w = rng.uniform();
    g.edges.push_back(e);
  }
  return g;
}

// ---------------------------------------------------------------------------

namespace {

class HeapQueue : public PriorityQueue {
 public:
  explicit HeapQueue(const HeapConfig& config) : heap_(config) {}
  void insert(ItemId id, double value) override { handles_[id] = heap_.insert(value, id); }
  std::optional<ItemId> delete_min() override {
    auto it = heap_.delete_min();
    if (!it) return std::nullopt;
    handles_.erase(it->key.id);
    return it->key.id;
  }
  void decrease_key(ItemId id, double delta) override { heap_.decrease_key(handles_.at(id), delta); }
  bool contains(ItemId id) const override { return handles_.count(id) > 0; }
  double key(ItemId id) const override { return heap_.key(handles_.at(id)).value; }

 private:
  Heap heap_;
  std::unordered_map<ItemId, Handle> handles_;
};

class OracleQueue : public PriorityQueue {
 public:
  void insert(ItemId id, double value) override {
    heap_.insert(value, id);
    keys_[id] = value;
  }
  std::optional<ItemId> delete_min() override {
    auto k = heap_.delete_min();
    if (!k) return std::nullopt;
    keys_.erase(k->id);
    return k->id;
  }
  void decrease_key(ItemId id, double delta) override {
    heap_.decrease_key(id, delta);
    keys_[id] -= delta;
  }
  bool contains(ItemId id) const override { return keys_.count(id) > 0; }
  double key(ItemId id) const override { return keys_.at(id); }

 private:
  OracleHeap heap_;
  std::unordered_map<ItemId, double> keys_;
};

struct Adjacency {
  std::vector<std::size_t> start;
  std::vector<std::uint32_t> edge;  // edge indices grouped by source vertex
};

Adjacency adjacency(const Graph& g, bool undirected) {
  Adjacency a;
  a.start.assign(g.n + 1, 0);
  for (const Edge& e : g.edges) {
    ++a.start[e.u + 1];
    if (undirected) ++a.start[e.v + 1];
  }
  std::partial_sum(a.start.begin(), a.start.end(), a.start.begin());
  a.edge.resize(a.start.back());
  std::vector<std::size_t> fill(a.start.begin(), a.start.end() - 1);
  for (std::uint32_t i = 0; i < g.edges.size(); ++i) {
    a.edge[fill[g.edges[i].u]++] = i;
    if (undirected) a.edge[fill[g.edges[i].v]++] = i;
  }
  return a;
}

}  // namespace

std::unique_ptr<PriorityQueue> make_queue(const HeapConfig& config) {
  if (!config.supports_decrease_key())
    throw HeapError(Errc::Unsupported, "graph clients need decrease_key, not " + config.name());
  return std::make_unique<HeapQueue>(config);
}

std::unique_ptr<PriorityQueue> make_oracle_queue() { return std::make_unique<OracleQueue>(); }

DijkstraResult dijkstra(const Graph& g, std::uint32_t source, PriorityQueue& pq, Trace* trace) {
  if (source >= g.n) throw HeapError(Errc::BadArgument, "source vertex out of range");
  for (const Edge& e : g.edges)
    if (e.w < 0) throw HeapError(Errc::BadArgument, "negative edge weight");
  const Adjacency adj = adjacency(g, false);
  DijkstraResult r;
  r.dist.assign(g.n, kUnreached);
  std::vector<bool> popped(g.n, false);
  if (trace) trace->make("g");

  auto push = [&](std::uint32_t v, double d) {
    pq.insert(v, d);
    if (trace) trace->insert("g", v, d);
  };
  r.dist[source] = 0;
  push(source, 0);
  while (auto top = pq.delete_min()) {
    if (trace) trace->delete_min("g");
    const auto u = static_cast<std::uint32_t>(*top);
    popped[u] = true;
    for (std::size_t i = adj.start[u]; i < adj.start[u + 1]; ++i) {
      const Edge& e = g.edges[adj.edge[i]];
      const double nd = r.dist[u] + e.w;
      if (r.dist[e.v] != kUnreached && !(nd < r.dist[e.v])) continue;
      r.dist[e.v] = nd;
      if (pq.contains(e.v)) {
        const double delta = pq.key(e.v) - nd;
        if (delta > 0) {
          pq.decrease_key(e.v, delta);
          if (trace) trace->decrease_key("g", e.v, delta);
          ++r.decrease_keys;
        }
      } else {
        if (popped[e.v]) ++r.reinserts;
        push(e.v, nd);
      }
    }
  }
  if (trace) trace->delete_min("g");  // the final empty delete-min
  return r;
}

MstResult prim(const Graph& g, PriorityQueue& pq, Trace* trace) {
  const Adjacency adj = adjacency(g, true);
  MstResult r;
  std::vector<bool> done(g.n, false);
  std::vector<std::uint32_t> via(g.n, UINT32_MAX);
  if (trace) trace->make("g");
  for (std::uint32_t s = 0; s < g.n; ++s) {
    if (done[s]) continue;
    pq.insert(s, 0.0);
    if (trace) trace->insert("g", s, 0.0);
    while (auto top = pq.delete_min()) {
      if (trace) trace->delete_min("g");
      const auto u = static_cast<std::uint32_t>(*top);
      done[u] = true;
      if (via[u] != UINT32_MAX) r.edges.push_back(via[u]);
      for (std::size_t i = adj.start[u]; i < adj.start[u + 1]; ++i) {
        const std::uint32_t ei = adj.edge[i];
        const Edge& e = g.edges[ei];
        const std::uint32_t v = e.u == u ? e.v : e.u;
        if (done[v]) continue;
        if (!pq.contains(v)) {
          via[v] = ei;
          pq.insert(v, e.w);
          if (trace) trace->insert("g", v, e.w);
        } else if (e.w < pq.key(v)) {
          const double delta = pq.key(v) - e.w;
          via[v] = ei;
          pq.decrease_key(v, delta);
          if (trace) trace->decrease_key("g", v, delta);
          ++r.decrease_keys;
        }
      }
    }
    if (trace) trace->delete_min("g");
  }
  std::vector<double> ws;
  for (std::uint32_t ei : r.edges) ws.push_back(g.edges[ei].w);
  std::sort(ws.begin(), ws.end());
  for (double w : ws) r.weight += w;
  std::sort(r.edges.begin(), r.edges.end());
  return r;
}

std::vector<double> bellman_ford(const Graph& g, std::uint32_t source) {
  std::vector<double> dist(g.n, std::numeric_limits<double>::infinity());
  dist[source] = 0;
  for (std::uint32_t round = 0; round + 1 < std::max<std::uint32_t>(g.n, 2); ++round) {
    bool changed = false;
    for (const Edge& e : g.edges) {
      if (std::isinf(dist[e.u])) continue;
      const double nd = dist[e.u] + e.w;
      if (nd < dist[e.v]) {
        dist[e.v] = nd;
        changed = true;
      }
    }
    if (!changed) break;
  }
  for (double& d : dist)
    if (std::isinf(d)) d = kUnreached;
  return dist;
}

MstResult kruskal(const Graph& g) {
  std::vector<std::uint32_t> order(g.edges.size());
  std::iota(order.begin(), order.end(), 0u);
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    return g.edges[a].w != g.edges[b].w ? g.edges[a].w < g.edges[b].w : a < b;
  });
  std::vector<std::uint32_t> parent(g.n);
  std::iota(parent.begin(), parent.end(), 0u);
  auto find = [&](std::uint32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  MstResult r;
  for (std::uint32_t ei : order) {
    const std::uint32_t a = find(g.edges[ei].u);
    const std::uint32_t b = find(g.edges[ei].v);
    if (a == b) continue;
    parent[a] = b;
    r.edges.push_back(ei);
    r.weight += g.edges[ei].w;  // ascending order already
  }
  std::sort(r.edges.begin(), r.edges.end());
  return r;
}

Trace gen_dijkstra(const Graph& g, std::uint32_t source) {
  Trace t;
  OracleQueue pq;
  dijkstra(g, source, pq, &t);
  return t;
}

Trace gen_prim(const Graph& g) {
  Trace t;
  OracleQueue pq;
  prim(g, pq, &t);
  return t;
}

}  // namespace rph
