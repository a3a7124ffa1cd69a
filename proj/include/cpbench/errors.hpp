#pragma once

#include <stdexcept>
#include <string>

namespace cpbench {

// Bad inputs: malformed files, invalid configs, degenerate data (CLI exit code 2).
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

// A contract the code itself guarantees was observed broken (CLI exit code 3).
class InvariantError : public std::runtime_error {
 public:
  explicit InvariantError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace cpbench
