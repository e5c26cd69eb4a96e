#pragma once

#include <stdexcept>

namespace graded {

// thrown when a configured enumeration bound would be exceeded
struct resource_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// raised when two independent computations of the same quantity disagree
struct verification_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace graded
