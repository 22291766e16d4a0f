#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace amnlt {

// Reads a whole file as bytes. Throws Error(IoError) on failure.
std::string read_file(const std::filesystem::path& path);

void write_file(const std::filesystem::path& path, std::string_view content);

}  // namespace amnlt
