#pragma once

#include <stdexcept>
#include <string>

namespace borda {

// Bad instance data or a violated call contract at an API boundary.
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// A configured search or state cap was reached before a verdict. Callers may
// retry with a larger budget; the solver never converts this into a verdict.
class ResourceLimitError : public std::runtime_error {
 public:
  explicit ResourceLimitError(const std::string& what) : std::runtime_error(what) {}
};

// A solver produced something that fails its own invariants. Always a bug.
class InternalError : public std::logic_error {
 public:
  explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace borda
