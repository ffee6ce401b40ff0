#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <maxac/linalg.hpp>

namespace maxac::cli {

/// Comma-separated, no header, one row per line. Throws parse_error with the
/// 1-based row number, or io_error.
Matrix parse_matrix_csv(const std::string& text);
Matrix read_matrix_csv(const std::filesystem::path& path);

/// %.17g per entry so values survive a round trip exactly.
std::string format_matrix_csv(const Matrix& m);
std::string format_labels_csv(const std::vector<int>& labels);

std::string read_text(const std::filesystem::path& path);

/// Writes to a sibling temporary file, then renames over path.
void write_text_atomic(const std::filesystem::path& path, const std::string& text);

}  // namespace maxac::cli
