#pragma once

#include <stdexcept>
#include <string>

namespace periodlab {

// Input files or JSON payloads that cannot be understood.  CLI exit code 1.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// Inputs that parse but violate a theorem hypothesis or an operation
// precondition (wrong signature, isotropic reflection axis, ...).
// CLI exit code 2.
class HypothesisError : public std::runtime_error {
 public:
  explicit HypothesisError(const std::string& what) : std::runtime_error(what) {}
};

// Requests that cannot be served with the given bounds (e.g. an empty
// generator set).  CLI exit code 3.
class ResourceError : public std::runtime_error {
 public:
  explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace periodlab
