#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace memclust {

using NodeID = std::uint32_t;
using ClusterID = std::uint32_t;
using EdgeIndex = std::uint64_t;
// Integer weights keep intra-cluster and volume sums exact; rounding only
// happens in the final division when a score is formed.
using EdgeWeight = std::int64_t;
using NodeWeight = std::int64_t;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input file. Carries the 1-based line number that failed.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace memclust
