#include "rph/workloads.hpp"

#include <charconv>
#include <numeric>
#include <unordered_map>

#include "rph/oracle.hpp"
#include "rph/rng.hpp"

namespace rph {

OpMix OpMix::parse(std::string_view text) {
  double w[5];
  std::size_t pos = 0;
  for (int i = 0; i < 5; ++i) {
    const std::size_t slash = text.find('/', pos);
    const std::string_view part =
        text.substr(pos, slash == std::string_view::npos ? std::string_view::npos : slash - pos);
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), w[i]);
    if (part.empty() || ec != std::errc{} || ptr != part.data() + part.size() || w[i] < 0)
      throw HeapError(Errc::BadArgument, "op mix must be five weights like 50/25/15/5/5");
    if ((slash == std::string_view::npos) != (i == 4))
      throw HeapError(Errc::BadArgument, "op mix must be five weights like 50/25/15/5/5");
    pos = slash + 1;
  }
  return {w[0], w[1], w[2], w[3], w[4]};
}

OpMix OpMix::without_decrease_key() const {
  OpMix m = *this;
  m.decrease_key = 0;
  m.erase = 0;
  return m;
}

namespace {

// Live ids of one heap with O(1) removal.
struct IdBag {
  std::vector<ItemId> ids;
  std::unordered_map<ItemId, std::size_t> where;

  void add(ItemId id) {
    where[id] = ids.size();
    ids.push_back(id);
  }
  void remove(ItemId id) {
    const std::size_t i = where.at(id);
    where[ids.back()] = i;
    ids[i] = ids.back();
    ids.pop_back();
    where.erase(id);
  }
};

}  // namespace

Trace gen_random(const RandomWorkload& w) {
  if (w.heaps < 1) throw HeapError(Errc::BadArgument, "need at least one heap");
  const OpMix mix = w.decrease_key ? w.mix : w.mix.without_decrease_key();
  const double weights[5] = {mix.insert, mix.delete_min, mix.decrease_key, mix.meld, mix.erase};
  const double total = std::accumulate(std::begin(weights), std::end(weights), 0.0);
  if (total <= 0) throw HeapError(Errc::BadArgument, "op mix has no positive weight");

  Rng rng(w.seed);
  Trace trace;
  std::vector<std::string> names;
  for (int i = 0; i < w.heaps; ++i) {
    names.push_back("h" + std::to_string(i));
    trace.make(names.back());
  }
  std::vector<OracleHeap> model(static_cast<std::size_t>(w.heaps));
  std::vector<IdBag> bags(static_cast<std::size_t>(w.heaps));
  ItemId next_id = 1;

  for (std::size_t n = 0; n < w.ops; ++n) {
    double r = rng.uniform() * total;
    int kind = 0;
    while (kind < 4 && r >= weights[kind]) r -= weights[kind++];
    while (weights[kind] == 0) kind = (kind + 4) % 5;  // guards r landing on a zero weight
    const std::size_t h = rng.below(static_cast<std::uint64_t>(w.heaps));

    if ((kind == 2 || kind == 4) && bags[h].ids.empty()) kind = 0;
    if (kind == 3 && w.heaps < 2) kind = 0;

    switch (kind) {
      case 0: {
        const double v = rng.uniform();
        const ItemId id = next_id++;
        trace.insert(names[h], id, v);
        model[h].insert(v, id);
        bags[h].add(id);
        break;
      }
      case 1: {
        trace.delete_min(names[h]);
        if (auto k = model[h].delete_min()) bags[h].remove(k->id);
        break;
      }
      case 2: {
        const ItemId id = bags[h].ids[rng.below(bags[h].ids.size())];
        const double delta = 1.0 - rng.uniform();  // (0, 1]
        trace.decrease_key(names[h], id, delta);
        model[h].decrease_key(id, delta);
        break;
      }
      case 3: {
        std::size_t h2 = rng.below(static_cast<std::uint64_t>(w.heaps - 1));
        if (h2 >= h) ++h2;
        trace.meld(names[h], names[h2]);
        model[h].meld(model[h2]);
        if (bags[h2].ids.size() > bags[h].ids.size()) std::swap(bags[h], bags[h2]);
        for (ItemId id : bags[h2].ids) bags[h].add(id);
        bags[h2] = IdBag{};
        trace.make(names[h2]);
        break;
      }
      case 4: {
        const ItemId id = bags[h].ids[rng.below(bags[h].ids.size())];
        trace.erase(names[h], id);
        model[h].erase(id);
        bags[h].remove(id);
        break;
      }
    }
  }
  return trace;
}

Trace gen_sort(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::uint64_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::uint64_t{1});
  for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
  Trace trace;
  trace.make("h");
  for (std::size_t i = 0; i < n; ++i)
    trace.insert("h", static_cast<ItemId>(i + 1), static_cast<double>(perm[i]));
  for (std::size_t i = 0; i < n; ++i) trace.delete_min("h");
  return trace;
}

}  // namespace rph
