#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace lastloop {

// Argument outside the mathematical domain of an operation (odd length, H(0), ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Caller-supplied data violates a precondition (duplicate nodes, bad word).
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Malformed table or store file. `position` is a line number for text files
// and a byte offset for binary streams.
class FormatError : public std::runtime_error {
 public:
  FormatError(const std::string& what, std::uint64_t position)
      : std::runtime_error(what + " (at " + std::to_string(position) + ")"),
        position_(position) {}

  std::uint64_t position() const noexcept { return position_; }

 private:
  std::uint64_t position_;
};

// A C-table lookup needed an index beyond the table's max_index.
class TableTooSmall : public std::out_of_range {
 public:
  explicit TableTooSmall(std::size_t required)
      : std::out_of_range("C table too small: index " + std::to_string(required) +
                          " required; rebuild with `cmatrix --max-index " +
                          std::to_string(required) + "` or larger"),
        required_(required) {}

  std::size_t required() const noexcept { return required_; }

 private:
  std::size_t required_;
};

class InvalidPolygon : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class IllConditioned : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Word stream not sorted, contains duplicates, or has the wrong length.
class OrderError : public std::runtime_error {
 public:
  OrderError(const std::string& what, std::size_t index)
      : std::runtime_error(what + " (word index " + std::to_string(index) + ")"), index_(index) {}

  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

}  // namespace lastloop
