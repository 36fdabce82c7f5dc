#include "rph/trace.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace rph {

std::uint32_t Trace::heap_index(std::string_view name) {
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return static_cast<std::uint32_t>(i);
  names.emplace_back(name);
  return static_cast<std::uint32_t>(names.size() - 1);
}

void Trace::make(std::string_view h) { ops.push_back({OpKind::Make, heap_index(h), 0, 0, 0}); }

void Trace::insert(std::string_view h, ItemId id, double value) {
  ops.push_back({OpKind::Insert, heap_index(h), 0, id, value});
}

void Trace::find_min(std::string_view h) { ops.push_back({OpKind::FindMin, heap_index(h), 0, 0, 0}); }

void Trace::delete_min(std::string_view h) {
  ops.push_back({OpKind::DeleteMin, heap_index(h), 0, 0, 0});
}

void Trace::decrease_key(std::string_view h, ItemId id, double delta) {
  ops.push_back({OpKind::DecreaseKey, heap_index(h), 0, id, delta});
}

void Trace::erase(std::string_view h, ItemId id) {
  ops.push_back({OpKind::Delete, heap_index(h), 0, id, 0});
}

void Trace::meld(std::string_view h, std::string_view h2) {
  const std::uint32_t a = heap_index(h);
  const std::uint32_t b = heap_index(h2);
  ops.push_back({OpKind::Meld, a, b, 0, 0});
}

std::string format_real(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

namespace {

[[noreturn]] void parse_fail(std::size_t line, const std::string& what) {
  throw HeapError(Errc::Parse, "line " + std::to_string(line) + ": " + what);
}

std::vector<std::string_view> split(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

ItemId parse_id(std::string_view s, std::size_t line) {
  ItemId v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    parse_fail(line, "bad id '" + std::string(s) + "'");
  return v;
}

double parse_real(std::string_view s, std::size_t line) {
  double v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || std::isnan(v))
    parse_fail(line, "bad number '" + std::string(s) + "'");
  return v;
}

}  // namespace

Trace parse_trace(std::istream& in) {
  Trace trace;
  std::string raw;
  std::size_t line = 0;
  bool header = false;
  while (std::getline(in, raw)) {
    ++line;
    std::string_view text = raw;
    if (auto hash = text.find('#'); hash != std::string_view::npos) text = text.substr(0, hash);
    const auto tok = split(text);
    if (tok.empty()) continue;
    if (!header) {
      if (tok[0] != "heaptrace") parse_fail(line, "expected header 'heaptrace 1 <kind>'");
      if (tok.size() < 2 || tok[1] != "1") parse_fail(line, "unsupported trace version");
      if (tok.size() > 3) parse_fail(line, "trailing tokens in header");
      trace.kind_hint = tok.size() == 3 ? std::string(tok[2]) : "any";
      header = true;
      continue;
    }
    const std::string_view op = tok[0];
    auto want = [&](std::size_t n) {
      if (tok.size() != n)
        parse_fail(line, "'" + std::string(op) + "' takes " + std::to_string(n - 1) + " arguments");
    };
    if (op == "make") {
      want(2);
      trace.make(tok[1]);
    } else if (op == "insert") {
      want(4);
      const double v = parse_real(tok[3], line);
      if (!std::isfinite(v)) parse_fail(line, "insert value must be finite");
      trace.insert(tok[1], parse_id(tok[2], line), v);
    } else if (op == "findmin") {
      want(2);
      trace.find_min(tok[1]);
    } else if (op == "deletemin") {
      want(2);
      trace.delete_min(tok[1]);
    } else if (op == "decreasekey") {
      want(4);
      trace.decrease_key(tok[1], parse_id(tok[2], line), parse_real(tok[3], line));
    } else if (op == "delete") {
      want(3);
      trace.erase(tok[1], parse_id(tok[2], line));
    } else if (op == "meld") {
      want(3);
      trace.meld(tok[1], tok[2]);
    } else {
      parse_fail(line, "unknown op '" + std::string(op) + "'");
    }
  }
  if (!header) parse_fail(line + 1, "missing header 'heaptrace 1 <kind>'");
  return trace;
}

Trace parse_trace_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_trace(in);
}

Trace read_trace_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw HeapError(Errc::Io, "cannot read trace '" + path + "'");
  return parse_trace(in);
}

void print_trace(std::ostream& out, const Trace& trace) {
  out << "heaptrace 1 " << trace.kind_hint << '\n';
  for (const TraceOp& op : trace.ops) {
    const std::string& h = trace.names[op.heap];
    out << to_string(op.op) << ' ' << h;
    switch (op.op) {
      case OpKind::Insert:
      case OpKind::DecreaseKey: out << ' ' << op.id << ' ' << format_real(op.value); break;
      case OpKind::Delete: out << ' ' << op.id; break;
      case OpKind::Meld: out << ' ' << trace.names[op.heap2]; break;
      default: break;
    }
    out << '\n';
  }
}

std::string print_trace_text(const Trace& trace) {
  std::ostringstream out;
  print_trace(out, trace);
  return out.str();
}

void write_trace_file(const std::string& path, const Trace& trace) {
  std::ofstream out(path);
  if (!out) throw HeapError(Errc::Io, "cannot write trace '" + path + "'");
  print_trace(out, trace);
}

Trace subsequence(const Trace& trace, const std::vector<std::size_t>& keep) {
  Trace out;
  out.kind_hint = trace.kind_hint;
  out.names = trace.names;
  out.ops.reserve(keep.size());
  for (std::size_t i : keep) out.ops.push_back(trace.ops[i]);
  return out;
}

}  // namespace rph
