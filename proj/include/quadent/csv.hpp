#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace quadent::csv {

/// 12 significant digits; "NA" for NaN or infinity.
std::string number(double value);

/// Writes `content` to `path` through a temporary file in the same directory
/// followed by a rename. Throws IoError.
void write_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace quadent::csv
