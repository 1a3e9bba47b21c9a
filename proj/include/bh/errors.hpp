#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace bh {

// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A configured work or memory budget would be exceeded.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An empirical precondition of a claim check does not hold on the scanned range.
class HypothesisError : public std::runtime_error {
 public:
  HypothesisError(const std::string& what, std::int64_t witness, double value)
      : std::runtime_error(what), witness_(witness), value_(value) {}

  std::int64_t witness() const noexcept { return witness_; }
  double value() const noexcept { return value_; }

 private:
  std::int64_t witness_;
  double value_;
};

// Malformed form-tensor text.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Should be unreachable; signals a broken internal assumption.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace bh
