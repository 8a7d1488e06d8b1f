#ifndef TABLESENSE_SRC_UNICODE_HPP
#define TABLESENSE_SRC_UNICODE_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

// Internal text helpers shared by the extractor and the string metrics.
// Everything operates on UTF-8 in, UTF-8 out; metric code works on decoded
// scalar values.

namespace tablesense::unicode {

inline constexpr char32_t replacement_char = 0xFFFD;

// Lenient decode: every invalid byte becomes U+FFFD.
std::vector<char32_t> decode_utf8(std::string_view s);

// Strict check used by the charset layer.
bool is_valid_utf8(std::string_view s);

void append_utf8(std::string& out, char32_t cp);
std::string encode_utf8(const std::vector<char32_t>& cps);

// Unicode whitespace as used for cell normalization and word counting.
bool is_space(char32_t cp);

// Trim ends and collapse internal whitespace runs to one ASCII space.
std::string collapse_whitespace(std::string_view s);

// Number of maximal non-whitespace runs.
int count_words(std::string_view s);

// Transcoding for the charsets the extractor accepts. Returns false when the
// charset is unknown; *out holds UTF-8 on success.
bool transcode_to_utf8(std::string_view body, std::string_view charset, std::string* out);

// "Windows-1251", "cp-1251", "CP1251" -> "windows-1251" etc.
std::string normalize_charset_name(std::string_view name);

} // namespace tablesense::unicode

#endif
