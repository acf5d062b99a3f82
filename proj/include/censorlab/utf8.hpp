#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace censorlab::utf8 {

// Decodes UTF-8 into code points. Invalid byte sequences decode byte-wise
// as U+FFFD so that malformed scraped text never aborts a run.
std::vector<char32_t> decode(std::string_view text);

std::string encode(char32_t cp);

// Splits text into one UTF-8 string per code point.
std::vector<std::string> split_code_points(std::string_view text);

}  // namespace censorlab::utf8
