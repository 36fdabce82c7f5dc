#pragma once

#include <stdexcept>
#include <string>

namespace rph {

enum class Errc {
  UnknownStructure,
  DuplicateId,
  KindMismatch,
  IdCollision,
  PoolMismatch,
  DeadHandle,
  ForeignHandle,
  NonPositiveDelta,
  Unsupported,
  EmptyHeap,
  BadArgument,
  NodeBudget,
  Parse,
  Audit,
  Io,
};

const char* to_string(Errc code) noexcept;

class HeapError : public std::runtime_error {
 public:
  HeapError(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace rph
