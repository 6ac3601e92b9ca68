#ifndef TRACTLAB_IO_HPP
#define TRACTLAB_IO_HPP

#include <filesystem>
#include <string>
#include <string_view>

namespace tractlab {

/// %.17g, enough digits to round-trip a double through text.
std::string format_g17(double v);

/// Writes to a temporary file in the target directory and renames it into
/// place, so partial output is never observed.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

} // namespace tractlab

#endif
