#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace formalat {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed textual input (group files, cycle notation, partitions,
/// formation descriptors). `line` is 1-based, 0 when not applicable.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line = 0)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// An enumeration cap (elements, subgroups, table size) would be exceeded.
/// `reached` is how far the computation got before giving up.
class CapExceeded : public Error {
 public:
  CapExceeded(const std::string& what, std::size_t cap, std::size_t reached)
      : Error(what + " (cap " + std::to_string(cap) + ", reached " +
              std::to_string(reached) + ")"),
        cap_(cap),
        reached_(reached) {}

  std::size_t cap() const noexcept { return cap_; }
  std::size_t reached() const noexcept { return reached_; }

 private:
  std::size_t cap_;
  std::size_t reached_;
};

/// A precondition on the mathematical input failed (element not in group,
/// subgroup not normal, degree mismatch, unsupported formation kind, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

}  // namespace formalat
