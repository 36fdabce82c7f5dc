#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "rph/heap.hpp"
#include "rph/trace.hpp"

namespace rph {

// Relative weights of insert / deletemin / decreasekey / meld / delete.
struct OpMix {
  double insert = 50;
  double delete_min = 25;
  double decrease_key = 15;
  double meld = 5;
  double erase = 5;

  // "50/25/15/5/5"
  static OpMix parse(std::string_view text);
  // Drops decrease-key and delete, keeping the other weights' proportions.
  OpMix without_decrease_key() const;
};

struct RandomWorkload {
  std::size_t ops = 1000;
  OpMix mix;
  std::uint64_t seed = 1;
  int heaps = 4;
  bool decrease_key = true;  // false renormalizes the mix
};

// `ops` counts the five mixed operations; each meld is followed by a make
// that recreates the consumed heap.
Trace gen_random(const RandomWorkload& w);
// n inserts of a seeded permutation of 1..n, then n delete-mins.
Trace gen_sort(std::size_t n, std::uint64_t seed);

}  // namespace rph
