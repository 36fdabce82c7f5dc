#include <algorithm>
#include <memory>
#include <numeric>

#include "doctest.h"
#include "rph/audit.hpp"
#include "rph/heap.hpp"
#include "rph/rng.hpp"
#include "support.hpp"

using namespace rph;
using rph::testing::drain;

namespace {

const char* const kKinds[] = {"tournament", "bq-onepass", "bq-eager", "rp1",
                              "rp2",        "pairing",    "variantA:2", "capped:1"};

Errc error_of(auto&& f) {
  try {
    f();
  } catch (const HeapError& e) {
    return e.code();
  }
  FAIL("expected a HeapError");
  return Errc::BadArgument;
}

}  // namespace

TEST_CASE("config parsing and names") {
  CHECK(HeapConfig::parse("rp2").kind == HeapKind::RankPairing2);
  CHECK(HeapConfig::parse("bq-onepass").kind == HeapKind::BinomialOnePass);
  const HeapConfig a = HeapConfig::parse("variantA:3");
  CHECK(a.kind == HeapKind::VariantA);
  CHECK(a.bound == 3);
  CHECK(HeapConfig::parse("capped(2)").bound == 2);
  CHECK(HeapConfig::parse("rp1").policy == MatchPolicy::DisassemblyFirst);
  CHECK(error_of([] { HeapConfig::parse("fibonacci"); }) == Errc::UnknownStructure);
  CHECK_FALSE(HeapConfig::parse("tournament").supports_decrease_key());
  CHECK(HeapConfig::parse("pairing").supports_decrease_key());

  HeapConfig red = HeapConfig::parse("rp2");
  red.policy = MatchPolicy::RedFirst;
  CHECK(red.label() != red.name());
  CHECK(HeapConfig::parse("rp2").label() == "rp2");
}

TEST_CASE("a fresh heap is empty") {
  Heap h(HeapConfig::parse("rp2"));
  CHECK(h.empty());
  CHECK_FALSE(h.find_min());
  CHECK_FALSE(h.delete_min());
  Heap b(HeapConfig::parse("bq-onepass"));
  CHECK(b.root_count() == 0);
}

TEST_CASE("find-min after three inserts") {
  for (const char* kind : kKinds) {
    CAPTURE(kind);
    Heap h(HeapConfig::parse(kind));
    h.insert(3, 1);
    h.insert(1, 2);
    h.insert(2, 3);
    REQUIRE(h.find_min());
    CHECK(h.key(*h.find_min()).value == 1);
    CHECK(h.size() == 3);
  }
}

TEST_CASE("find-min is idempotent and free") {
  Heap h(HeapConfig::parse("rp1"));
  for (int i = 0; i < 10; ++i) h.insert(10 - i, static_cast<ItemId>(i + 1));
  const CostCounters before = h.counters();
  const auto a = h.find_min();
  const auto b = h.find_min();
  CHECK(*a == *b);
  CHECK(h.counters().comparisons == before.comparisons);
  CHECK(h.counters().links == before.links);
}

TEST_CASE("reused id is rejected when verifying") {
  HeapConfig cfg = HeapConfig::parse("rp2");
  cfg.verify = true;
  Heap h(cfg);
  h.insert(1, 7);
  CHECK(error_of([&] { h.insert(2, 7); }) == Errc::DuplicateId);
  CHECK(h.size() == 1);
}

TEST_CASE("non-finite insert values are rejected") {
  Heap h(HeapConfig::parse("rp2"));
  CHECK(error_of([&] { h.insert(std::numeric_limits<double>::infinity(), 1); }) ==
        Errc::BadArgument);
}

TEST_CASE("draining a permutation yields sorted output") {
  for (const char* kind : kKinds) {
    CAPTURE(kind);
    std::vector<int> values(500);
    std::iota(values.begin(), values.end(), 1);
    Rng rng(11);
    for (std::size_t i = values.size(); i > 1; --i) std::swap(values[i - 1], values[rng.below(i)]);
    Heap h(HeapConfig::parse(kind));
    for (std::size_t i = 0; i < values.size(); ++i) h.insert(values[i], i + 1);
    const auto out = drain(h);
    REQUIRE(out.size() == values.size());
    CHECK(std::is_sorted(out.begin(), out.end()));
    CHECK(h.empty());
  }
}

TEST_CASE("meld") {
  for (const char* kind : kKinds) {
    CAPTURE(kind);
    auto pool = std::make_shared<NodePool>();
    SUBCASE("with an empty heap is the identity") {
      Heap a(HeapConfig::parse(kind), pool);
      Heap e(HeapConfig::parse(kind), pool);
      a.insert(5, 1);
      a.insert(4, 2);
      a.meld(e);
      CHECK(a.size() == 2);
      CHECK(e.empty());
      CHECK(drain(a) == std::vector<double>{4, 5});
    }
    SUBCASE("interleaves both heaps") {
      Heap a(HeapConfig::parse(kind), pool);
      Heap b(HeapConfig::parse(kind), pool);
      a.insert(1, 1);
      a.insert(3, 2);
      b.insert(2, 3);
      b.insert(4, 4);
      a.meld(b);
      CHECK(b.empty());
      CHECK(audit_structure(a).ok());
      CHECK(drain(a) == std::vector<double>{1, 2, 3, 4});
    }
  }
}

TEST_CASE("meld rejects mismatched heaps") {
  auto pool = std::make_shared<NodePool>();
  Heap a(HeapConfig::parse("rp2"), pool);
  Heap b(HeapConfig::parse("bq-eager"), pool);
  Heap c(HeapConfig::parse("rp2"));
  a.insert(1, 1);
  b.insert(2, 2);
  c.insert(3, 3);
  CHECK(error_of([&] { a.meld(b); }) == Errc::KindMismatch);
  CHECK(error_of([&] { a.meld(c); }) == Errc::PoolMismatch);
  CHECK(error_of([&] { a.meld(a); }) == Errc::BadArgument);
  CHECK(error_of([&] {
          Heap v1(HeapConfig::parse("variantA:1"), pool);
          Heap v2(HeapConfig::parse("variantA:2"), pool);
          v1.meld(v2);
        }) == Errc::KindMismatch);
}

TEST_CASE("meld detects colliding ids when verifying") {
  HeapConfig cfg = HeapConfig::parse("rp1");
  cfg.verify = true;
  auto pool = std::make_shared<NodePool>();
  Heap a(cfg, pool);
  Heap b(cfg, pool);
  a.insert(1, 9);
  b.insert(2, 9);
  CHECK(error_of([&] { a.meld(b); }) == Errc::IdCollision);
}

TEST_CASE("decrease-key") {
  SUBCASE("on a root does no linking") {
    Heap h(HeapConfig::parse("rp2"));
    h.insert(5, 1);
    const Handle x = h.insert(7, 2);
    const CostCounters before = h.counters();
    h.decrease_key(x, 4);
    CHECK(h.counters().links == before.links);
    CHECK(h.key(*h.find_min()).id == 2);
    CHECK(h.key(x).value == 3);
  }
  SUBCASE("needs a positive delta") {
    Heap h(HeapConfig::parse("rp1"));
    const Handle x = h.insert(5, 1);
    CHECK(error_of([&] { h.decrease_key(x, 0); }) == Errc::NonPositiveDelta);
    CHECK(error_of([&] { h.decrease_key(x, -1); }) == Errc::NonPositiveDelta);
  }
  SUBCASE("is unsupported by tournament and binomial kinds") {
    for (const char* kind : {"tournament", "bq-onepass", "bq-eager"}) {
      Heap h(HeapConfig::parse(kind));
      const Handle x = h.insert(5, 1);
      CHECK(error_of([&] { h.decrease_key(x, 1); }) == Errc::Unsupported);
    }
  }
  SUBCASE("below the minimum makes the item the new minimum") {
    for (const char* kind : {"rp1", "rp2", "pairing", "variantA:1", "capped:0"}) {
      CAPTURE(kind);
      Heap h(HeapConfig::parse(kind));
      std::vector<Handle> hs;
      for (int i = 0; i < 64; ++i) hs.push_back(h.insert(i, static_cast<ItemId>(i + 1)));
      h.delete_min();
      h.decrease_key(hs[40], 100);
      CHECK(h.key(*h.find_min()).id == 41);
      CHECK(audit_all(h, true).ok());
    }
  }
  SUBCASE("infinite delta makes a tombstone") {
    Heap h(HeapConfig::parse("rp2"));
    h.insert(1, 1);
    const Handle x = h.insert(9, 2);
    h.decrease_key(x, std::numeric_limits<double>::infinity());
    CHECK(h.key(x).tombstone);
    CHECK(h.delete_min()->key.id == 2);
  }
}

TEST_CASE("delete and delete-min") {
  SUBCASE("erasing the minimum") {
    Heap h(HeapConfig::parse("rp2"));
    const Handle a = h.insert(1, 1);
    h.insert(2, 2);
    h.erase(a);
    CHECK(h.key(*h.find_min()).value == 2);
    CHECK(h.size() == 1);
  }
  SUBCASE("erasing an inner item") {
    Heap h(HeapConfig::parse("rp1"));
    std::vector<Handle> hs;
    for (int i = 0; i < 20; ++i) hs.push_back(h.insert(i, static_cast<ItemId>(i + 1)));
    h.delete_min();
    h.erase(hs[7]);
    std::vector<double> expect;
    for (int i = 1; i < 20; ++i)
      if (i != 7) expect.push_back(i);
    CHECK(drain(h) == expect);
  }
  SUBCASE("delete-min on the only item empties the heap") {
    Heap h(HeapConfig::parse("pairing"));
    h.insert(4, 1);
    CHECK(h.delete_min()->key.value == 4);
    CHECK(h.empty());
    CHECK_FALSE(h.find_min());
  }
  SUBCASE("handles die with their item") {
    Heap h(HeapConfig::parse("rp2"));
    const Handle a = h.insert(1, 1);
    h.insert(2, 2);
    h.delete_min();
    CHECK_FALSE(h.contains(a));
    CHECK(error_of([&] { h.decrease_key(a, 1); }) == Errc::DeadHandle);
    CHECK(error_of([&] { h.erase(a); }) == Errc::DeadHandle);
  }
  SUBCASE("handles of another heap are foreign when verifying") {
    HeapConfig cfg = HeapConfig::parse("rp2");
    cfg.verify = true;
    auto pool = std::make_shared<NodePool>();
    Heap a(cfg, pool);
    Heap b(cfg, pool);
    a.insert(1, 1);
    const Handle y = b.insert(2, 2);
    CHECK(error_of([&] { a.decrease_key(y, 1); }) == Errc::ForeignHandle);
  }
}

TEST_CASE("clone is independent") {
  Heap h(HeapConfig::parse("rp2"));
  for (int i = 0; i < 30; ++i) h.insert(30 - i, static_cast<ItemId>(i + 1));
  h.delete_min();
  Heap c = h.clone();
  CHECK(c.size() == h.size());
  drain(c);
  CHECK(h.size() == 29);
  CHECK(drain(h).front() == 2);
}

TEST_CASE("random operations keep every audit clean") {
  for (const char* kind : kKinds) {
    CAPTURE(kind);
    const HeapConfig cfg = HeapConfig::parse(kind);
    rph::testing::Fuzz f(cfg, 5);
    for (int i = 0; i < 3000; ++i) {
      f.step();
      if (i % 97 == 0) {
        const AuditReport r = audit_all(f.heap, true);
        REQUIRE_MESSAGE(r.ok(), r.summary());
      }
    }
    CHECK(f.heap.size() == f.live.size());
  }
}
