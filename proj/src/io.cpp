#include "tractlab/io.hpp"

#include <cstdio>
#include <fstream>

#include "tractlab/util.hpp"

namespace tractlab {

std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  auto dir = path.parent_path();
  if (dir.empty()) dir = ".";
  auto tmp = dir / (path.filename().string() + ".tmp");
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw numerical_error("cannot open output file " + tmp.string());
    os.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!os) throw numerical_error("short write to " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

} // namespace tractlab
