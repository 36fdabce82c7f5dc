#include <unordered_set>

#include "doctest.h"
#include "rph/analysis.hpp"
#include "rph/heap.hpp"
#include "rph/runner.hpp"
#include "rph/workloads.hpp"
#include "support.hpp"

using namespace rph;

namespace {

// A perfect rank-2 half tree (4 items) as the only root of an rp heap.
Heap perfect_rank2(const char* kind) {
  Heap h(HeapConfig::parse(kind));
  for (ItemId i = 1; i <= 4; ++i) h.insert(static_cast<double>(i), i);
  auto s = h.take_roots();
  std::sort(s.begin(), s.end());
  const NodeId w = h.match_roots(h.match_roots(s[0], s[1]), h.match_roots(s[2], s[3]));
  const NodeId back[] = {w};
  h.adopt_roots(back);
  return h;
}

}  // namespace

TEST_CASE("classification of a perfect half tree") {
  Heap h = perfect_rank2("rp1");
  const NodePool& pool = h.pool();
  const NodeId root = h.min_root();
  const NodeId top = pool[root].ord;    // rank 1, children: leaf (ord) and leaf (unord)
  const NodeId left = pool[top].ord;    // rank 0 leaf
  const NodeId right = pool[top].unord;  // rank 0 leaf
  REQUIRE(pool[top].rank == 1);

  CHECK(classify_type2(pool, root) == Goodness::Root);
  CHECK(classify_type2(pool, top) == Goodness::Good);
  CHECK(classify_type2(pool, left) == Goodness::Good);

  CHECK(is_11_node(pool, top));
  CHECK(classify_type1(pool, left) == Color::Green);
  CHECK(classify_type1(pool, right) == Color::Green);
  CHECK(classify_type1(pool, root) == Color::Yellow);

  // Type 2: root 2+2, rank-1 good 1, two leaves 0.
  CHECK(potential_value(h, Scheme::Type2GoodBad) == 5);
  CHECK(potential_value(h, Scheme::OnepassTreecount) == 1);
  CHECK(potential_value(h, Scheme::TournamentUnfair) == 0);
}

TEST_CASE("a bad node pays one extra unit") {
  Heap h = perfect_rank2("rp2");
  NodePool& pool = h.mutable_pool();
  const NodeId top = pool[h.min_root()].ord;
  pool[top].rank = 2;  // ordered child rank 0: difference 2
  CHECK(classify_type2(pool, top) == Goodness::Bad);
  CHECK(node_potential(pool, top, Scheme::Type2GoodBad, false) == 3);
  pool[top].rank = 1;
}

TEST_CASE("root potentials under the fresh/stale scheme") {
  Heap h = perfect_rank2("rp1");
  NodePool& pool = h.mutable_pool();
  const NodeId root = h.min_root();
  const NodeId top = pool[root].ord;
  const int saved = pool[root].rank;

  pool[root].rank = 3;
  pool[top].rank = 0;  // ordered child no longer a 1,1-node: the root turns red
  REQUIRE(classify_type1(pool, root) == Color::Red);
  CHECK(node_potential(pool, root, Scheme::Type1FreshStale, false) == 9);
  CHECK(node_potential(pool, root, Scheme::Type1FreshStale, true) == 7);
  CHECK(node_potential(pool, root, Scheme::Type1Color, false) == 7);

  pool[root].rank = saved;
  pool[top].rank = 1;
  REQUIRE(classify_type1(pool, root) == Color::Yellow);
  CHECK(node_potential(pool, root, Scheme::Type1FreshStale, false) == saved + 2);
}

TEST_CASE("scheme names round-trip") {
  for (Scheme s : {Scheme::TournamentUnfair, Scheme::OnepassTreecount, Scheme::Type2GoodBad,
                   Scheme::Type1Color, Scheme::Type1FreshStale})
    CHECK(parse_scheme(to_string(s)) == s);
  CHECK_THROWS_AS(parse_scheme("nope"), HeapError);
  CHECK(default_scheme(HeapConfig::parse("rp2")) == Scheme::Type2GoodBad);
}

TEST_CASE("ceil_lg") {
  CHECK(ceil_lg(0) == 0);
  CHECK(ceil_lg(1) == 0);
  CHECK(ceil_lg(2) == 1);
  CHECK(ceil_lg(3) == 2);
  CHECK(ceil_lg(1024) == 10);
  CHECK(ceil_lg(1025) == 11);
}

TEST_CASE("amortized check on pure inserts") {
  const BudgetParams params{3, 2, 2, 1};
  std::vector<OpMetrics> ms;
  for (std::uint64_t i = 0; i < 20; ++i) {
    OpMetrics m;
    m.op = OpKind::Insert;
    m.n_before = i;
    m.comparisons = i == 0 ? 0 : 1;
    m.phi_before = static_cast<std::int64_t>(2 * i);
    m.phi_after = m.phi_before + 2;
    ms.push_back(m);
  }
  const AmortizedReport ok = verify_amortized(ms, params);
  CHECK(ok.ok);
  CHECK(ok.worst_slack == doctest::Approx(0));
  CHECK(ok.total_budget == doctest::Approx(60));

  ms[7].comparisons = 5;
  const AmortizedReport bad = verify_amortized(ms, params);
  CHECK_FALSE(bad.ok);
  REQUIRE(bad.first_violation);
  CHECK(*bad.first_violation == 7);
  CHECK(bad.message.find("insert") != std::string::npos);
}

TEST_CASE("incremental potential matches a recount") {
  for (const char* kind : {"rp1", "rp2", "bq-onepass", "tournament"}) {
    CAPTURE(kind);
    const HeapConfig cfg = HeapConfig::parse(kind);
    const Scheme scheme = default_scheme(cfg);
    testing::Fuzz f(cfg, 4);
    IncrementalPotential inc(f.heap, scheme);
    f.heap.set_observer(&inc);
    for (int i = 0; i < 2000; ++i) {
      f.step();
      REQUIRE(inc.value() == potential_value(f.heap, scheme));
    }
    f.heap.set_observer(nullptr);
  }
}

TEST_CASE("frozen budgets hold on random traces") {
  for (const char* kind : {"tournament", "bq-onepass", "rp1", "rp2"}) {
    CAPTURE(kind);
    const HeapConfig cfg = HeapConfig::parse(kind);
    const Scheme scheme = default_scheme(cfg);
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      RandomWorkload w;
      w.ops = 5000;
      w.seed = seed;
      w.heaps = 1;
      w.decrease_key = cfg.supports_decrease_key();
      RunOptions opts;
      opts.analysis = scheme;
      opts.record_metrics = true;
      const RunResult r = run_trace(gen_random(w), cfg, opts);
      REQUIRE(r.exit_code == 0);
      std::vector<OpMetrics> ms;
      for (const MetricsRow& row : r.rows) ms.push_back(row.m);
      const AmortizedReport rep = verify_amortized(ms, frozen_budget(scheme));
      CHECK_MESSAGE(rep.ok, rep.message);
    }
  }
}
