#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "toxspan/tokenizer.hpp"
#include "toxspan/utf8.hpp"

namespace toxspan::detail {

struct BasicToken {
    std::u32string text;  // possibly lowercased
    TokenRange range;
};

/// Splits into word runs and single punctuation marks, skipping whitespace.
std::vector<BasicToken> basic_tokenize(const utf8::Decoded& d, bool lowercase);

inline std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace toxspan::detail
