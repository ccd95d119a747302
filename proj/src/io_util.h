#ifndef ANNOPROJ_SRC_IO_UTIL_H_
#define ANNOPROJ_SRC_IO_UTIL_H_

#include <filesystem>
#include <string>
#include <string_view>

namespace annoproj {

// Throws Error when the file cannot be opened.
std::string ReadTextFile(const std::filesystem::path &path);

// Writes to a sibling temporary file and renames it over the target, so a
// failed write never leaves a partial file behind.
void WriteTextFileAtomic(const std::filesystem::path &path,
                         std::string_view content);

}  // namespace annoproj

#endif  // ANNOPROJ_SRC_IO_UTIL_H_
