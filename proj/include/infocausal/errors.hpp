#pragma once

#include <stdexcept>
#include <string>

namespace infocausal {

// Error categories map onto CLI exit codes (see tools/infocausal.cpp).

/// Malformed or out-of-range user input (bad index, bad symbol, bad table).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Invalid configuration: unknown transformer, unknown measure, bad flags.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An exhaustive routine was asked to enumerate past its size guard.
class SizeGuardError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Structurally invalid object, e.g. a grammar referencing an undefined rule.
class StructuralError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Orientation propagation was forced in both directions on one edge.
class InconsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace infocausal
