#pragma once

#include <cstdint>

namespace rph {

using ItemId = std::uint64_t;

// A key is a real value plus the item id used to break ties. A tombstoned key
// sorts below every ordinary key; ids still order tombstones among themselves.
struct Key {
  double value = 0.0;
  ItemId id = 0;
  bool tombstone = false;
};

inline bool key_less(const Key& a, const Key& b) noexcept {
  if (a.tombstone != b.tombstone) return a.tombstone;
  if (a.value != b.value) return a.value < b.value;
  return a.id < b.id;
}

struct KeyLess {
  bool operator()(const Key& a, const Key& b) const noexcept { return key_less(a, b); }
};

}  // namespace rph
