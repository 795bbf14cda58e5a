#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace pbnn {

/// A dimension outside the supported range for the requested operation.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed "P..." permutation identifier.
class PermutationParseError : public std::invalid_argument {
 public:
  enum class Kind {
    MissingPrefix,
    BadCharacter,
    WrongLength,
    OutOfRange,
    NotBijective,
  };

  PermutationParseError(Kind kind, const std::string& what)
      : std::invalid_argument(what), kind_(kind) {}

  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

/// Parameter sweep whose row count exceeds what is practical to enumerate.
class SweepSizeError : public std::invalid_argument {
 public:
  SweepSizeError(const std::string& what, std::uint64_t required_rows)
      : std::invalid_argument(what), required_rows_(required_rows) {}

  std::uint64_t required_rows() const noexcept { return required_rows_; }

 private:
  std::uint64_t required_rows_;
};

class ExportError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a parsed CSV/JSON document does not match the expected layout.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace pbnn
