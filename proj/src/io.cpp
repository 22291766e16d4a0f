#include "amnlt/io.hpp"

#include <fstream>
#include <sstream>

#include "amnlt/error.hpp"

namespace amnlt {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    fail(Errc::IoError, "cannot open " + path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) {
    fail(Errc::IoError, "read failed for " + path.string());
  }
  return std::move(buffer).str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    fail(Errc::IoError, "cannot open " + path.string() + " for writing");
  }
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) {
    fail(Errc::IoError, "write failed for " + path.string());
  }
}

}  // namespace amnlt
