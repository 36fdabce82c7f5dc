#include "rph/dot.hpp"

#include <fstream>
#include <sstream>

#include "rph/tournament.hpp"
#include "rph/trace.hpp"

namespace rph {

DotView parse_dot_view(std::string_view name) {
  if (name == "half-ordered") return DotView::HalfOrdered;
  if (name == "heap-ordered") return DotView::HeapOrdered;
  if (name == "full") return DotView::Full;
  if (name == "half-empty") return DotView::HalfEmpty;
  throw HeapError(Errc::BadArgument, "unknown view '" + std::string(name) +
                                         "' (half-ordered, heap-ordered, full, half-empty)");
}

std::string_view to_string(DotView view) noexcept {
  switch (view) {
    case DotView::HalfOrdered: return "half-ordered";
    case DotView::HeapOrdered: return "heap-ordered";
    case DotView::Full: return "full";
    case DotView::HalfEmpty: return "half-empty";
  }
  return "?";
}

namespace {

std::string label(const Key& key, int rank) {
  std::string value = key.tombstone ? "tombstone" : format_real(key.value);
  return std::to_string(key.id) + ":" + value + " [" + std::to_string(rank) + "]";
}

class Writer {
 public:
  int node(const std::string& text, bool empty = false) {
    const int id = next_++;
    out_ << "  n" << id << " [label=\"" << (empty ? "" : text) << "\"";
    if (empty) out_ << ", shape=point";
    out_ << "];\n";
    return id;
  }
  void edge(int from, int to, bool dashed) {
    out_ << "  n" << from << " -> n" << to;
    if (dashed) out_ << " [style=dashed]";
    out_ << ";\n";
  }
  std::string finish(std::string_view view) {
    return "digraph \"" + std::string(view) + "\" {\n  node [shape=box];\n" + out_.str() + "}\n";
  }

 private:
  std::ostringstream out_;
  int next_ = 0;
};

void half_ordered(Writer& w, const NodePool& pool, NodeId root) {
  std::vector<std::pair<NodeId, int>> stack;  // (node, parent dot id)
  const int top = w.node(label(pool[root].key, pool[root].rank));
  auto push = [&](NodeId c, int parent) {
    if (c != kNil) stack.emplace_back(c, parent);
  };
  push(pool[root].unord, top);
  push(pool[root].ord, top);
  while (!stack.empty()) {
    auto [x, parent] = stack.back();
    stack.pop_back();
    const int id = w.node(label(pool[x].key, pool[x].rank));
    w.edge(parent, id, pool[pool[x].parent].unord == x);
    push(pool[x].unord, id);
    push(pool[x].ord, id);
  }
}

void heap_ordered(Writer& w, const NodePool& pool, NodeId root) {
  const HeapOrderedView v = to_heap_ordered(pool, root);
  std::vector<int> ids(v.nodes.size());
  for (std::size_t i = 0; i < v.nodes.size(); ++i) ids[i] = w.node(label(v.nodes[i].key, v.nodes[i].rank));
  for (std::size_t i = 0; i < v.nodes.size(); ++i)
    for (int c : v.nodes[i].children) w.edge(ids[i], ids[static_cast<std::size_t>(c)], false);
}

template <class View>
void tournament(Writer& w, const View& v) {
  std::vector<int> ids(v.nodes.size());
  for (std::size_t i = 0; i < v.nodes.size(); ++i)
    ids[i] = w.node(label(v.nodes[i].item, v.nodes[i].rank), !v.nodes[i].full);
  for (std::size_t i = 0; i < v.nodes.size(); ++i) {
    if (v.nodes[i].leaf()) continue;
    w.edge(ids[i], ids[static_cast<std::size_t>(v.nodes[i].left)], false);
    w.edge(ids[i], ids[static_cast<std::size_t>(v.nodes[i].right)], false);
  }
}

}  // namespace

std::string export_dot(const Heap& heap, DotView view) {
  if ((view == DotView::Full || view == DotView::HalfEmpty) &&
      !has_tournament_history(heap.config()))
    throw HeapError(Errc::Unsupported, std::string(to_string(view)) +
                                           " view needs a tournament heap, not " +
                                           heap.config().name());
  Writer w;
  for (NodeId r : heap.roots()) {
    switch (view) {
      case DotView::HalfOrdered: half_ordered(w, heap.pool(), r); break;
      case DotView::HeapOrdered: heap_ordered(w, heap.pool(), r); break;
      case DotView::Full: tournament(w, expand_full(heap, r)); break;
      case DotView::HalfEmpty: tournament(w, expand_half_empty(heap, r)); break;
    }
  }
  return w.finish(to_string(view));
}

void export_dot(const Heap& heap, DotView view, const std::string& path) {
  const std::string text = export_dot(heap, view);
  std::ofstream out(path);
  if (!out || !(out << text)) throw HeapError(Errc::Io, "cannot write '" + path + "'");
}

}  // namespace rph
