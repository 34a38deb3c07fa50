#pragma once

#include <stdexcept>
#include <string>

namespace mmsalloc {

enum class ErrorCode {
  sign_violation,
  empty_matrix,
  ragged_matrix,
  shape_mismatch,
  too_large,
  internal_invariant_violation,
  precondition_unmet,
  dangling_reference,
  negative_c,
  c_out_of_range,
  n_equals_three,
  too_few_agents,
  empty_group,
  parse_error,
};

const char* to_string(ErrorCode code);

// Single exception type for the library; the code identifies the failure.
class MmsError : public std::runtime_error {
 public:
  MmsError(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace mmsalloc
