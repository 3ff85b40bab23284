#ifndef IMONO_COMMON_HPP_
#define IMONO_COMMON_HPP_

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace imono {

// Element of a finite algebra. Everything in this library works on universes
// {0..n-1} with n < 255; 0xff is reserved as the "undefined" sentinel used by
// the model search.
using elem = std::uint8_t;
inline constexpr elem UNDEF = 0xff;
inline constexpr int MAX_SIZE = 64;

class ParseError : public std::runtime_error {
 public:
  ParseError(std::string const& what, std::size_t offset)
      : std::runtime_error(what + " at byte " + std::to_string(offset)),
        _offset(offset) {}

  std::size_t offset() const noexcept {
    return _offset;
  }

 private:
  std::size_t _offset;
};

// A computation refused to run (or stopped) because it would exceed an
// evaluation/time budget. Deliberately distinct from a FAIL verdict: callers
// must not confuse "checked false" with "could not check".
class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An operation was called on an algebra that does not meet its precondition
// (e.g. asking for the semilattice skeleton of a non-McCarthy algebra).
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A structural invariant that is guaranteed by theory failed to hold. This
// always indicates a bug upstream and should abort loudly.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace imono

#endif  // IMONO_COMMON_HPP_
