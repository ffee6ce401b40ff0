#include "maxac/error.hpp"

namespace maxac {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_input: return "InvalidInput";
    case ErrorCode::rank_out_of_range: return "RankOutOfRange";
    case ErrorCode::shape_error: return "ShapeError";
    case ErrorCode::singular_basis: return "SingularBasis";
    case ErrorCode::invalid_scale: return "InvalidScale";
    case ErrorCode::invalid_spec: return "InvalidSpec";
    case ErrorCode::invalid_config: return "InvalidConfig";
    case ErrorCode::infinite_temperature: return "InfiniteTemperatureSignal";
    case ErrorCode::io_error: return "IoError";
    case ErrorCode::parse_error: return "ParseError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace maxac
