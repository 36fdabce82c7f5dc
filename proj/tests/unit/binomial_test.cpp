#include <algorithm>

#include "doctest.h"
#include "rph/analysis.hpp"
#include "rph/audit.hpp"
#include "rph/heap.hpp"
#include "support.hpp"

using namespace rph;

namespace {

// Detached singletons 1..n of a one-pass heap, which does no work on insert.
std::vector<NodeId> singletons(Heap& h, int n) {
  for (int i = 1; i <= n; ++i) h.insert(i, static_cast<ItemId>(i));
  auto roots = h.take_roots();
  std::sort(roots.begin(), roots.end(),
            [&](NodeId a, NodeId b) { return h.pool()[a].key.value < h.pool()[b].key.value; });
  return roots;
}

std::vector<int> ranks_of(const Heap& h, const std::vector<NodeId>& trees) {
  std::vector<int> out;
  for (NodeId t : trees) out.push_back(h.pool()[t].rank);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("disassembly splits a half tree into its right spine") {
  Heap h(HeapConfig::parse("bq-eager"));
  for (int i = 1; i <= 8; ++i) h.insert(9 - i, static_cast<ItemId>(i));
  auto roots = h.take_roots();
  REQUIRE(roots.size() == 1);
  const NodeId r = roots[0];
  CHECK(h.pool()[r].rank == 3);
  const auto pieces = h.disassemble(r);
  REQUIRE(pieces.size() == 3);
  CHECK(h.pool()[pieces[0]].rank == 2);
  CHECK(h.pool()[pieces[1]].rank == 1);
  CHECK(h.pool()[pieces[2]].rank == 0);
  CHECK(h.pool()[r].rank == 0);
  CHECK(h.pool()[r].ord == kNil);
  for (NodeId p : pieces) {
    CHECK(h.pool()[p].parent == kNil);
    CHECK(h.pool()[p].unord == kNil);
  }
  std::vector<NodeId> back = pieces;
  back.push_back(r);
  h.adopt_roots(back);
  CHECK(audit_half_tree_sizes(h, SizeBound::Exact).ok());
  CHECK(h.key(*h.find_min()).value == 1);
}

TEST_CASE("disassembling a singleton yields nothing") {
  Heap h(HeapConfig::parse("bq-onepass"));
  auto roots = singletons(h, 1);
  CHECK(h.disassemble(roots[0]).empty());
  h.adopt_roots(roots);
}

TEST_CASE("one pass over ranks 0,0,0 makes one link") {
  Heap h(HeapConfig::parse("bq-onepass"));
  const auto s = singletons(h, 3);
  const auto links = h.counters().links;
  const auto out = h.one_pass_links(s);
  CHECK(h.counters().links == links + 1);
  CHECK(ranks_of(h, out) == std::vector<int>{0, 1});
  h.adopt_roots(out);
  CHECK(audit_structure(h).ok());
}

TEST_CASE("one pass over distinct ranks links nothing") {
  Heap h(HeapConfig::parse("bq-onepass"));
  const auto s = singletons(h, 7);
  const NodeId one = h.match_roots(s[0], s[1]);
  const NodeId two = h.match_roots(h.match_roots(s[2], s[3]), h.match_roots(s[4], s[5]));
  const auto links = h.counters().links;
  const NodeId trees[] = {s[6], one, two};
  const auto out = h.one_pass_links(trees);
  CHECK(h.counters().links == links);
  CHECK(ranks_of(h, out) == std::vector<int>{0, 1, 2});
  h.adopt_roots(out);
  CHECK(h.size() == 7);
}

TEST_CASE("eager linking") {
  SUBCASE("sixteen singletons become one rank-4 tree") {
    Heap h(HeapConfig::parse("bq-onepass"));
    const auto s = singletons(h, 16);
    const auto out = h.eager_links(s);
    REQUIRE(out.size() == 1);
    CHECK(h.pool()[out[0]].rank == 4);
    h.adopt_roots(out);
    CHECK(audit_half_tree_sizes(h, SizeBound::Exact).ok());
  }
  SUBCASE("ranks 1,1,2 cascade to rank 3") {
    Heap h(HeapConfig::parse("bq-onepass"));
    const auto s = singletons(h, 8);
    const NodeId a = h.match_roots(s[0], s[1]);
    const NodeId b = h.match_roots(s[2], s[3]);
    const NodeId c = h.match_roots(h.match_roots(s[4], s[5]), h.match_roots(s[6], s[7]));
    const NodeId trees[] = {a, b, c};
    const auto out = h.eager_links(trees);
    REQUIRE(out.size() == 1);
    CHECK(h.pool()[out[0]].rank == 3);
    h.adopt_roots(out);
  }
}

TEST_CASE("eager queues keep one tree per rank") {
  rph::testing::Fuzz f(HeapConfig::parse("bq-eager"), 3, 60, 40, 0, 0);
  for (int i = 0; i < 3000; ++i) {
    f.step();
    const auto ranks = [&] {
      std::vector<int> r;
      f.heap.for_each_root([&](NodeId x) { r.push_back(f.heap.pool()[x].rank); });
      std::sort(r.begin(), r.end());
      return r;
    }();
    REQUIRE(std::adjacent_find(ranks.begin(), ranks.end()) == ranks.end());
    CHECK(f.heap.root_count() <= static_cast<std::size_t>(ceil_lg(f.heap.size() + 1)));
  }
}

TEST_CASE("eager worst-case cost is logarithmic") {
  Heap h(HeapConfig::parse("bq-eager"));
  std::uint64_t worst = 0;
  for (int i = 1; i <= 4096; ++i) {
    const auto before = h.counters().comparisons;
    h.insert(4097 - i, static_cast<ItemId>(i));
    worst = std::max(worst, h.counters().comparisons - before);
    CHECK(h.counters().comparisons - before <= static_cast<std::uint64_t>(ceil_lg(h.size())) + 1);
  }
  CHECK(worst >= 12);
  for (int i = 0; i < 2048; ++i) {
    const std::size_t n = h.size();
    const auto before = h.counters().comparisons;
    h.delete_min();
    CHECK(h.counters().comparisons - before <= 3 * static_cast<std::uint64_t>(ceil_lg(n)) + 2);
  }
}

TEST_CASE("one-pass delete-min leaves few trees") {
  Heap h(HeapConfig::parse("bq-onepass"));
  for (int i = 1; i <= 1024; ++i) h.insert(i, static_cast<ItemId>(i));
  CHECK(h.root_count() == 1024);
  h.delete_min();
  CHECK(h.root_count() == 512);
  CHECK(h.last_halftrees() == 1023);
  CHECK(testing::drain(h).size() == 1023);
}
