#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace biq {

// Text that does not parse (block matrices, PD codes, braid words).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Well-formed input that violates a precondition (non-unit parameter,
// empty subset, unsupported diagram shape, ...).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A value that parsed but is not the structure it claims to be
// (non-Latin operation table, inconsistent dual graph embedding).
class StructureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(const std::string& what, std::uint64_t work_done)
      : std::runtime_error(what), work_done_(work_done) {}

  std::uint64_t work_done() const noexcept { return work_done_; }

 private:
  std::uint64_t work_done_;
};

}  // namespace biq
