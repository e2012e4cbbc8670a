#pragma once

#include <stdexcept>
#include <string>

namespace descwave {

enum class ErrorKind {
  precondition,
  numerical_failure,
  degenerate_boundary,
  pencil_singular,
  hypothesis_violation,
  infeasible_boundary,
  input,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace descwave
