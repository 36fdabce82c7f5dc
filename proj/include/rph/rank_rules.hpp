#pragma once

#include <algorithm>

namespace rph {

// New rank for a non-root u whose children have ranks rv and rw (missing = -1).
inline int rank_target_type1(int rv, int rw) noexcept {
  if (rv > rw) return rv;
  if (rw > rv) return rw;
  return rw + 1;
}

inline int rank_target_type2(int rv, int rw) noexcept {
  if (rv > rw + 1) return rv;
  if (rw > rv + 1) return rw;
  return std::max(rv, rw) + 1;
}

// Bounded positive differences: only the child whose subtree shrank is read.
inline int rank_target_variantA(int ru, int changed_child, int b) noexcept {
  return ru - changed_child > b ? changed_child + b : ru;
}

}  // namespace rph
