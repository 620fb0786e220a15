#pragma once

#include <stdexcept>
#include <string>

namespace cfq {

/// Circuit or parameter record is malformed (unknown path, port collision,
/// out-of-range protocol parameter, arity mismatch).
class StructuralError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Norm drifted beyond tolerance or light reached a port declared unused.
class InternalConsistencyError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

/// Amplitude is still on non-terminal modes after the last stage.
class CircuitIncompleteError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Post-selected outcome has (numerically) zero probability.
class NullPostSelectionError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Enumeration would exceed a resource guard.
class ResourceError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Numeric argument outside its admissible domain.
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

} // namespace cfq
