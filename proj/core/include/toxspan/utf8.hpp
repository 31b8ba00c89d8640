#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace toxspan::utf8 {

struct Utf8Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A UTF-8 string decoded into code points, with the byte offset of each
/// code point retained so character positions can be mapped back to bytes.
struct Decoded {
    std::u32string points;
    std::vector<std::size_t> byte_starts;  // size points.size()+1; last entry = byte length

    std::size_t size() const { return points.size(); }
    std::size_t byte_of(std::size_t cp_index) const { return byte_starts.at(cp_index); }
};

/// Throws Utf8Error on malformed input (truncated sequences, overlong
/// encodings, surrogates, values beyond U+10FFFF).
Decoded decode(std::string_view text);

std::size_t length(std::string_view text);

std::string encode(std::u32string_view points);
void append(std::string& out, char32_t cp);

bool is_space(char32_t cp);
bool is_punct(char32_t cp);

/// ASCII-only lowercasing; non-ASCII code points pass through unchanged.
std::string to_lower(std::string_view text);
char32_t to_lower(char32_t cp);

}  // namespace toxspan::utf8
