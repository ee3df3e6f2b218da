#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

namespace urnwalk::io {

/// Shortest decimal representation that parses back to exactly `value`.
std::string format_double(double value);

/// Writes `content` to a sibling temporary file and renames it over `path`.
/// Throws DataError on I/O failure.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

/// Whole file as bytes. Throws DataError if it cannot be read.
std::string read_file(const std::filesystem::path& path);

/// 64-bit FNV-1a content hash.
std::uint64_t fnv1a64(std::string_view bytes);

/// 16 lowercase hex digits.
std::string hex64(std::uint64_t value);

}  // namespace urnwalk::io
