#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace stacklab {

/// Writes via a sibling temp file and rename. Creates parent directories.
/// Throws IoError.
void write_file_atomic(const std::filesystem::path& path, std::string_view bytes);

std::string read_file(const std::filesystem::path& path);

/// Splits into lines, dropping the trailing newline of each.
std::vector<std::string> split_lines(std::string_view text);

}  // namespace stacklab
