#pragma once

#include <stdexcept>
#include <string>

namespace relaysec {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Scenario or parameter violates a documented invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Matrix arguments do not conform.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// Channel is rank-deficient or too ill-conditioned to invert; the caller is
// expected to redraw the realization.
class SingularChannelError : public Error {
 public:
  using Error::Error;
};

class BufferOverflowError : public Error {
 public:
  using Error::Error;
};

class BufferUnderflowError : public Error {
 public:
  using Error::Error;
};

// No feasible candidate link in either phase.
class DeadlockError : public Error {
 public:
  using Error::Error;
};

}  // namespace relaysec
