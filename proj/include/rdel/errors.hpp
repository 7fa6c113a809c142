#pragma once

#include <stdexcept>
#include <string>

namespace rdel {

// Error taxonomy. The CLI maps ConfigError to exit code 2 and every other
// Error to exit code 1.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Dimension or index mismatch between operands.
struct ShapeError : Error {
  using Error::Error;
};

// Tensor-product dimension would exceed the configured cap.
struct CapacityError : Error {
  using Error::Error;
};

// Input value outside the operation's domain (non-Hermitian matrix,
// non-basis state, ...).
struct DomainError : Error {
  using Error::Error;
};

// A register does not satisfy the operation's precondition.
struct PreconditionError : Error {
  using Error::Error;
};

// Bad numeric parameter (non-normalized amplitudes, zero sample count, ...).
struct ParameterError : Error {
  using Error::Error;
};

// Malformed file, JSON, or command-line configuration.
struct ConfigError : Error {
  using Error::Error;
};

}  // namespace rdel
