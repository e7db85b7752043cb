#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace entdist {

/// Input that violates a documented contract (bad id, malformed list, ...).
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numeric argument lies outside the domain of the operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The greedy walk got stuck before reaching the target.
class NoPathError : public std::runtime_error {
 public:
  NoPathError(std::size_t stuck_node, const std::string& what)
      : std::runtime_error(what), stuck_node_(stuck_node) {}

  std::size_t stuck_node() const noexcept { return stuck_node_; }

 private:
  std::size_t stuck_node_;
};

/// A computed result broke one of its own postconditions.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace entdist
