#include "rph/analysis.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

namespace rph {

namespace {

int diff(const NodePool& pool, NodeId x, NodeId child) { return pool[x].rank - pool.rank_of(child); }

bool is_root(const NodePool& pool, NodeId x) { return pool[x].parent == kNil; }

}  // namespace

bool is_11_node(const NodePool& pool, NodeId x) {
  return diff(pool, x, pool[x].ord) == 1 && diff(pool, x, pool[x].unord) == 1;
}

Goodness classify_type2(const NodePool& pool, NodeId x) {
  if (is_root(pool, x)) return Goodness::Root;
  return diff(pool, x, pool[x].ord) >= 2 ? Goodness::Bad : Goodness::Good;
}

Color classify_type1(const NodePool& pool, NodeId x) {
  const Node& n = pool[x];
  if (is_root(pool, x)) {
    if (n.ord == kNil || is_11_node(pool, n.ord)) return Color::Yellow;
    return Color::Red;
  }
  if (n.ord == kNil && n.unord == kNil) return Color::Green;
  if (is_11_node(pool, x) && n.ord != kNil && n.unord != kNil && is_11_node(pool, n.ord) &&
      is_11_node(pool, n.unord))
    return Color::Green;
  const int dv = diff(pool, x, n.ord);
  const int dw = diff(pool, x, n.unord);
  if ((dv == 0 && dw == 1) || (dv == 1 && dw == 0)) {
    const NodeId zero_child = dv == 0 ? n.ord : n.unord;
    if (is_11_node(pool, zero_child)) return Color::Yellow;
  }
  return Color::Red;
}

Scheme parse_scheme(std::string_view name) {
  if (name == "tournament-unfair") return Scheme::TournamentUnfair;
  if (name == "onepass-treecount") return Scheme::OnepassTreecount;
  if (name == "type2-goodbad") return Scheme::Type2GoodBad;
  if (name == "type1-color") return Scheme::Type1Color;
  if (name == "type1-freshstale") return Scheme::Type1FreshStale;
  throw HeapError(Errc::BadArgument, "unknown analysis scheme '" + std::string(name) + "'");
}

std::string_view to_string(Scheme scheme) noexcept {
  switch (scheme) {
    case Scheme::TournamentUnfair: return "tournament-unfair";
    case Scheme::OnepassTreecount: return "onepass-treecount";
    case Scheme::Type2GoodBad: return "type2-goodbad";
    case Scheme::Type1Color: return "type1-color";
    case Scheme::Type1FreshStale: return "type1-freshstale";
  }
  return "?";
}

Scheme default_scheme(const HeapConfig& config) {
  switch (config.kind) {
    case HeapKind::Tournament: return Scheme::TournamentUnfair;
    case HeapKind::BinomialOnePass:
    case HeapKind::BinomialEager: return Scheme::OnepassTreecount;
    case HeapKind::RankPairing1:
    case HeapKind::Capped:
      return config.policy == MatchPolicy::RedFirst ? Scheme::Type1Color : Scheme::Type1FreshStale;
    default: return Scheme::Type2GoodBad;
  }
}

std::int64_t node_potential(const NodePool& pool, NodeId x, Scheme scheme, bool fresh) {
  const Node& n = pool[x];
  const std::int64_t k = n.rank;
  const bool root = n.parent == kNil;
  switch (scheme) {
    case Scheme::TournamentUnfair: return n.unfair ? 1 : 0;
    case Scheme::OnepassTreecount: return root ? 1 : 0;
    case Scheme::Type2GoodBad:
      switch (classify_type2(pool, x)) {
        case Goodness::Good: return k;
        case Goodness::Bad: return k + 1;
        case Goodness::Root: return k + 2;
      }
      break;
    case Scheme::Type1Color: {
      const Color c = classify_type1(pool, x);
      if (c == Color::Red) return k + 4;
      return root ? k + 2 : k;
    }
    case Scheme::Type1FreshStale: {
      const Color c = classify_type1(pool, x);
      if (!root) return c == Color::Red ? k + 4 : k;
      if (fresh) return k + 4;
      return c == Color::Red ? k + 6 : k + 2;
    }
  }
  return 0;
}

namespace {

std::string_view class_name(const NodePool& pool, NodeId x, Scheme scheme) {
  switch (scheme) {
    case Scheme::Type2GoodBad:
      switch (classify_type2(pool, x)) {
        case Goodness::Good: return "good";
        case Goodness::Bad: return "bad";
        case Goodness::Root: return "root";
      }
      break;
    case Scheme::Type1Color:
    case Scheme::Type1FreshStale:
      switch (classify_type1(pool, x)) {
        case Color::Green: return "green";
        case Color::Yellow: return "yellow";
        case Color::Red: return "red";
      }
      break;
    default: break;
  }
  return "";
}

template <class F>
void for_each_node(const Heap& heap, F&& f) {
  const NodePool& pool = heap.pool();
  std::vector<NodeId> stack;
  heap.for_each_root([&](NodeId r) { stack.push_back(r); });
  while (!stack.empty()) {
    const NodeId x = stack.back();
    stack.pop_back();
    f(x);
    if (pool[x].ord != kNil) stack.push_back(pool[x].ord);
    if (pool[x].unord != kNil) stack.push_back(pool[x].unord);
  }
}

}  // namespace

PotentialSnapshot potential(const Heap& heap, Scheme scheme,
                            const std::unordered_set<NodeId>* fresh_roots) {
  PotentialSnapshot snap;
  snap.scheme = scheme;
  const NodePool& pool = heap.pool();
  for_each_node(heap, [&](NodeId x) {
    const Node& n = pool[x];
    const bool root = n.parent == kNil;
    const bool fresh = root && (fresh_roots ? fresh_roots->count(x) > 0 : n.fresh);
    PotentialEntry e{x, n.rank, root, fresh, class_name(pool, x, scheme),
                     node_potential(pool, x, scheme, fresh)};
    snap.value += e.value;
    snap.per_node.push_back(e);
  });
  std::sort(snap.per_node.begin(), snap.per_node.end(),
            [](const PotentialEntry& a, const PotentialEntry& b) { return a.node < b.node; });
  return snap;
}

std::int64_t potential_value(const Heap& heap, Scheme scheme) {
  std::int64_t total = 0;
  const NodePool& pool = heap.pool();
  for_each_node(heap, [&](NodeId x) {
    const Node& n = pool[x];
    total += node_potential(pool, x, scheme, n.parent == kNil && n.fresh);
  });
  return total;
}

PotentialSnapshot potential_type2(const Heap& heap) { return potential(heap, Scheme::Type2GoodBad); }

PotentialSnapshot potential_type1(const Heap& heap, const std::unordered_set<NodeId>* fresh_roots) {
  return potential(heap, fresh_roots ? Scheme::Type1FreshStale : Scheme::Type1Color, fresh_roots);
}

// ---------------------------------------------------------------------------

IncrementalPotential::IncrementalPotential(const Heap& heap, Scheme scheme)
    : scheme_(scheme), value_(potential_value(heap, scheme)), value_before_event_(value_) {}

std::int64_t IncrementalPotential::sum(const Heap& heap, std::span<const NodeId> touched) {
  dedup_.assign(touched.begin(), touched.end());
  std::sort(dedup_.begin(), dedup_.end());
  dedup_.erase(std::unique(dedup_.begin(), dedup_.end()), dedup_.end());
  const NodePool& pool = heap.pool();
  std::int64_t total = 0;
  for (NodeId x : dedup_) {
    if (x == kNil || x >= pool.slots() || !pool[x].live) continue;
    const Node& n = pool[x];
    total += node_potential(pool, x, scheme_, n.parent == kNil && n.fresh);
  }
  return total;
}

void IncrementalPotential::before(const Heap& heap, Mutation, std::span<const NodeId> touched) {
  value_before_event_ = value_;
  value_ -= sum(heap, touched);
}

void IncrementalPotential::after(const Heap& heap, Mutation, std::span<const NodeId> touched) {
  value_ += sum(heap, touched);
}

// ---------------------------------------------------------------------------

std::string_view to_string(OpKind op) noexcept {
  switch (op) {
    case OpKind::Make: return "make";
    case OpKind::Insert: return "insert";
    case OpKind::FindMin: return "findmin";
    case OpKind::DeleteMin: return "deletemin";
    case OpKind::DecreaseKey: return "decreasekey";
    case OpKind::Delete: return "delete";
    case OpKind::Meld: return "meld";
  }
  return "?";
}

int ceil_lg(std::uint64_t n) noexcept {
  if (n <= 1) return 0;
  return static_cast<int>(std::bit_width(n - 1));
}

double op_budget(const OpMetrics& m, const BudgetParams& params) {
  const double lg = ceil_lg(m.n_before);
  switch (m.op) {
    case OpKind::DeleteMin: return m.n_before == 0 ? 0 : params.c2 * lg + params.c3;
    case OpKind::Delete: return params.c1 + params.c2 * lg + params.c3;
    case OpKind::Make: return 0;
    default: return params.c1;
  }
}

AmortizedReport verify_amortized(std::span<const OpMetrics> metrics, const BudgetParams& params) {
  AmortizedReport report;
  bool first = true;
  double phi_start = 0;
  double phi_end = 0;
  for (std::size_t i = 0; i < metrics.size(); ++i) {
    const OpMetrics& m = metrics[i];
    const double actual = static_cast<double>(m.comparisons + m.rank_steps);
    const double dphi = params.phi_scale * static_cast<double>(m.phi_after - m.phi_before);
    const double budget = op_budget(m, params);
    if (first) {
      phi_start = params.phi_scale * static_cast<double>(m.phi_before);
      report.worst_slack = budget - (actual + dphi);
      first = false;
    }
    phi_end = params.phi_scale * static_cast<double>(m.phi_after);
    report.total_actual += actual;
    report.total_budget += budget;
    const double slack = budget - (actual + dphi);
    report.worst_slack = std::min(report.worst_slack, slack);
    if (slack < -1e-9 && report.ok) {
      report.ok = false;
      report.first_violation = i;
      std::ostringstream msg;
      msg << "op " << i << " (" << to_string(m.op) << ", n=" << m.n_before << "): actual " << actual
          << " + dphi " << dphi << " > budget " << budget;
      report.message = msg.str();
    }
  }
  if (report.ok && report.total_actual + phi_end - phi_start > report.total_budget + 1e-9) {
    report.ok = false;
    report.message = "telescoped sum exceeds total budget";
  }
  return report;
}

BudgetParams frozen_budget(Scheme scheme) {
  switch (scheme) {
    // Potential is doubled for the one-pass kinds so that a delete-min's
    // h comparisons are paid by the roughly h/2 fair matches.
    case Scheme::TournamentUnfair: return {2, 2, 0, 1};
    case Scheme::OnepassTreecount: return {3, 3, 2, 2};
    case Scheme::Type2GoodBad: return {12, 5, 4, 2};
    case Scheme::Type1Color:
    case Scheme::Type1FreshStale: return {18, 11, 4, 2};
  }
  return {};
}

}  // namespace rph
