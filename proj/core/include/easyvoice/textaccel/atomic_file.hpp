#pragma once

#include <string>
#include <string_view>

namespace easyvoice::textaccel {

/// Writes contents to a sibling temp file, flushes it and renames it over
/// path, so readers see either the old or the new file. Throws
/// std::runtime_error on I/O failure.
void write_file_atomically(const std::string& path, std::string_view contents);

}  // namespace easyvoice::textaccel
