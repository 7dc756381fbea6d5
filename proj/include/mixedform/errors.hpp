#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace mixedform {

// Two families: InputError means the caller handed us something malformed
// (CLI exit 2); InvariantViolation means a quantity that must hold for valid
// data did not (CLI exit 3).

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidInput : public InputError {
 public:
  using InputError::InputError;
};

class ContractViolation : public InputError {
 public:
  using InputError::InputError;
};

class DomainError : public InputError {
 public:
  using InputError::InputError;
};

class StructuralError : public InputError {
 public:
  using InputError::InputError;
};

class UnboundedInput : public InputError {
 public:
  using InputError::InputError;
};

class FlipNotAdmissible : public InputError {
 public:
  using InputError::InputError;
};

class RedundancyError : public InputError {
 public:
  RedundancyError(const std::string& what, std::vector<int> faces)
      : InputError(what), faces_(std::move(faces)) {}
  const std::vector<int>& faces() const noexcept { return faces_; }

 private:
  std::vector<int> faces_;
};

class InvariantViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConsistencyError : public InvariantViolation {
 public:
  using InvariantViolation::InvariantViolation;
};

class Inconsistency : public InvariantViolation {
 public:
  using InvariantViolation::InvariantViolation;
};

}  // namespace mixedform
