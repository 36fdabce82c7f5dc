#pragma once

#include <string>
#include <string_view>

#include "rph/heap.hpp"

namespace rph {

enum class DotView { HalfOrdered, HeapOrdered, Full, HalfEmpty };

DotView parse_dot_view(std::string_view name);
std::string_view to_string(DotView view) noexcept;

// Graphviz text for every half tree of the heap. Nodes are labeled
// `id:value [rank]`; in the half-ordered view ordered-child edges are solid
// and unordered-child edges dashed. Full and half-empty views throw
// Unsupported unless the heap was built only from tournament matches.
std::string export_dot(const Heap& heap, DotView view);
void export_dot(const Heap& heap, DotView view, const std::string& path);

}  // namespace rph
