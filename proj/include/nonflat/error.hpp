#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace nonflat {

enum class ErrorCode {
  singular_matrix,
  infeasible,
  shape_mismatch,
  field_mismatch,
  not_a_group,
  bad_root,
  non_invertible_antipode,
  mixed_sides,
  not_conv_invertible,
  sampling_exhausted,
  cell_singular,
  depth_exceeded,
  truncation_exceeded,
  too_large,
  budget_exhausted,
  parse_error,
  invalid_argument,
};

std::string_view to_string(ErrorCode code);

// Every failure raised by the library carries one of the codes above so
// callers (the CLI in particular) can map it onto a stable exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace nonflat
