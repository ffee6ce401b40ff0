#pragma once

#include <stdexcept>
#include <string>

namespace maxac {

enum class ErrorCode {
  invalid_input,
  rank_out_of_range,
  shape_error,
  singular_basis,
  invalid_scale,
  invalid_spec,
  invalid_config,
  infinite_temperature,
  io_error,
  parse_error,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace maxac
