#pragma once

#include <stdexcept>
#include <string>

namespace tmi {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An interval with coincident endpoints has no representable frequency.
struct ZeroLengthInterval : Error {
  using Error::Error;
};

// Duration comparison is defined only for finite windows.
struct UnboundedWindow : Error {
  using Error::Error;
};

struct ArityMismatch : Error {
  using Error::Error;
};

struct UnknownLabel : Error {
  using Error::Error;
};

// Operation requires a one-hot-per-row kernel.
struct NotDeterministic : Error {
  using Error::Error;
};

// Operation requires a kernel whose columns each have at most one nonzero.
struct NotRefinement : Error {
  using Error::Error;
};

// A realized outcome record is required but absent.
struct MissingRealization : Error {
  using Error::Error;
};

// A realized transition has zero probability and the chain is not flagged
// as artificial variation.
struct ImpossibleRealization : Error {
  using Error::Error;
};

// Enumeration would exceed the configured path budget.
struct TooLarge : Error {
  using Error::Error;
};

}  // namespace tmi
