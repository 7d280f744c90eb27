#pragma once

#include <stdexcept>

namespace varmod {

// Precondition or configuration failure. The CLI maps these to exit code 2.
struct validation_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// An iteration cap was exhausted before the tolerance was met. Exit code 3.
struct convergence_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// find_gap_sets detected no exponent variation at the requested resolution.
struct no_exponent_gap : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A kernel infimum came out non-positive; the region has to shrink before
// any lower-bound argument applies.
struct nonpositive_infimum : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace varmod
