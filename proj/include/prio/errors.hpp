#pragma once

#include <stdexcept>
#include <string>

namespace prio {

// One error taxonomy for the whole engine. The CLI maps kinds to exit codes;
// everything below the CLI just throws.
enum class ErrKind {
  input,              // malformed arguments, framework/strategy mismatch
  parse,              // unreadable file or literal
  validation,         // table or config fails its invariants
  resource,           // exhaustive search bound exceeded
  universe_exhausted, // finite enumeration ran out of indices
  strategy_fault,     // a strategy emitted a non-dominating request
  no_compatible_item, // the item search found nothing under the deepest request
  internal,
};

class EngineError : public std::runtime_error {
 public:
  EngineError(ErrKind kind, std::string message)
      : std::runtime_error(std::move(message)), kind_(kind) {}

  ErrKind kind() const { return kind_; }

 private:
  ErrKind kind_;
};

[[noreturn]] inline void throw_error(ErrKind kind, std::string message) {
  throw EngineError(kind, std::move(message));
}

}  // namespace prio
