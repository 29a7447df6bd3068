#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace mathieu {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands carry different field tags (e.g. F_2 and F_3, or F_p and Q).
class FieldMismatch : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// An exhaustive scan would visit more objects than the configured cap.
class CapExceeded : public Error {
 public:
  CapExceeded(const std::string& what, std::uint64_t required, std::uint64_t cap)
      : Error(what + ": requires " + std::to_string(required) +
              " items, cap is " + std::to_string(cap)),
        required_(required),
        cap_(cap) {}

  std::uint64_t required() const noexcept { return required_; }
  std::uint64_t cap() const noexcept { return cap_; }

 private:
  std::uint64_t required_;
  std::uint64_t cap_;
};

/// Construction-time validation failed (associativity, unit, action axioms).
class AxiomViolation : public Error {
 public:
  using Error::Error;
};

/// The requested operation is not available for this field or input.
class Unsupported : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Input JSON does not have the expected shape or types.
class SchemaError : public Error {
 public:
  using Error::Error;
};

}  // namespace mathieu
