#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace lsf {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or unreadable files (bad magic, truncation, dim overflow).
class IoError : public Error {
 public:
  using Error::Error;
};

// Shape mismatches; the message names the offending axis.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// Raised when an oracle call would exceed the query limit.
class BudgetExhausted : public Error {
 public:
  BudgetExhausted(std::uint64_t used, std::uint64_t limit)
      : Error("query budget exhausted: " + std::to_string(used) + "/" +
              std::to_string(limit)),
        used_(used),
        limit_(limit) {}
  std::uint64_t used() const { return used_; }
  std::uint64_t limit() const { return limit_; }

 private:
  std::uint64_t used_;
  std::uint64_t limit_;
};

}  // namespace lsf
