#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cdtplan {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input bytes/text. Carries the byte offset where parsing failed.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : Error(what + " (byte offset " + std::to_string(offset) + ")"),
        offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

/// Input violates a structural invariant. polygon_index() identifies the
/// offending polygon where applicable (-1 otherwise).
class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& what, int polygon_index = -1)
      : Error(polygon_index >= 0
                  ? what + " (polygon " + std::to_string(polygon_index) + ")"
                  : what),
        polygon_index_(polygon_index) {}
  int polygon_index() const { return polygon_index_; }

 private:
  int polygon_index_;
};

class NotInFreeSpaceError : public Error {
 public:
  using Error::Error;
};

class UnreachableError : public Error {
 public:
  using Error::Error;
};

/// Caller broke a documented precondition.
class ContractError : public Error {
 public:
  using Error::Error;
};

class ConstructionError : public Error {
 public:
  using Error::Error;
};

/// An iteration guard tripped (sweep cap, rewire cap). Indicates a numerical
/// pathology rather than bad input.
class IterationLimitError : public Error {
 public:
  using Error::Error;
};

}  // namespace cdtplan
