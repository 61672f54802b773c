#pragma once

#include <stdexcept>

namespace yesno {

// Malformed input text: distribution documents, rational literals.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A domain invariant does not hold (bad distribution, corrupt tree).
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Input exceeds a documented algorithm capacity.
struct CapacityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace yesno
