#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "rph/analysis.hpp"
#include "rph/key.hpp"

namespace rph {

// One line of a trace. Heaps are referred to by index into Trace::names.
struct TraceOp {
  OpKind op = OpKind::Make;
  std::uint32_t heap = 0;
  std::uint32_t heap2 = 0;  // meld source
  ItemId id = 0;
  double value = 0;  // insert value or decrease delta

  friend bool operator==(const TraceOp&, const TraceOp&) = default;
};

struct Trace {
  std::string kind_hint = "any";
  std::vector<std::string> names;
  std::vector<TraceOp> ops;

  std::uint32_t heap_index(std::string_view name);  // interns
  void make(std::string_view h);
  void insert(std::string_view h, ItemId id, double value);
  void find_min(std::string_view h);
  void delete_min(std::string_view h);
  void decrease_key(std::string_view h, ItemId id, double delta);
  void erase(std::string_view h, ItemId id);
  void meld(std::string_view h, std::string_view h2);

  friend bool operator==(const Trace&, const Trace&) = default;
};

// Shortest text that reads back to the same double ("inf" for infinity).
std::string format_real(double v);

Trace parse_trace(std::istream& in);
Trace parse_trace_text(std::string_view text);
Trace read_trace_file(const std::string& path);
void print_trace(std::ostream& out, const Trace& trace);
std::string print_trace_text(const Trace& trace);
void write_trace_file(const std::string& path, const Trace& trace);

// The ops at the given positions, in order, with the same heap names.
Trace subsequence(const Trace& trace, const std::vector<std::size_t>& keep);

}  // namespace rph
