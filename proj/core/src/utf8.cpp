#include "toxspan/utf8.hpp"

namespace toxspan::utf8 {

namespace {

int sequence_length(unsigned char lead) {
    if (lead < 0x80) return 1;
    if ((lead >> 5) == 0x6) return 2;
    if ((lead >> 4) == 0xe) return 3;
    if ((lead >> 3) == 0x1e) return 4;
    return 0;
}

}  // namespace

Decoded decode(std::string_view text) {
    Decoded out;
    out.points.reserve(text.size());
    out.byte_starts.reserve(text.size() + 1);

    std::size_t i = 0;
    while (i < text.size()) {
        const auto lead = static_cast<unsigned char>(text[i]);
        const int len = sequence_length(lead);
        if (len == 0 || i + len > text.size())
            throw Utf8Error("malformed UTF-8 at byte " + std::to_string(i));

        char32_t cp = 0;
        switch (len) {
            case 1: cp = lead; break;
            case 2: cp = lead & 0x1f; break;
            case 3: cp = lead & 0x0f; break;
            case 4: cp = lead & 0x07; break;
        }
        for (int k = 1; k < len; ++k) {
            const auto cont = static_cast<unsigned char>(text[i + k]);
            if ((cont >> 6) != 0x2)
                throw Utf8Error("malformed UTF-8 continuation at byte " + std::to_string(i + k));
            cp = (cp << 6) | (cont & 0x3f);
        }
        // reject overlong encodings, surrogates and out-of-range values
        static constexpr char32_t kMin[5] = {0, 0, 0x80, 0x800, 0x10000};
        if (cp < kMin[len] || cp > 0x10ffff || (cp >= 0xd800 && cp <= 0xdfff))
            throw Utf8Error("invalid code point at byte " + std::to_string(i));

        out.byte_starts.push_back(i);
        out.points.push_back(cp);
        i += len;
    }
    out.byte_starts.push_back(text.size());
    return out;
}

std::size_t length(std::string_view text) { return decode(text).size(); }

void append(std::string& out, char32_t cp) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xc0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xe0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3f)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
    } else {
        out.push_back(static_cast<char>(0xf0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3f)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3f)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
    }
}

std::string encode(std::u32string_view points) {
    std::string out;
    out.reserve(points.size());
    for (char32_t cp : points) append(out, cp);
    return out;
}

bool is_space(char32_t cp) {
    switch (cp) {
        case U' ': case U'\t': case U'\n': case U'\r':
        case 0x0b: case 0x0c: case 0x85: case 0xa0:
        case 0x1680: case 0x2028: case 0x2029: case 0x202f:
        case 0x205f: case 0x3000: case 0xfeff:
            return true;
        default:
            return cp >= 0x2000 && cp <= 0x200a;
    }
}

bool is_punct(char32_t cp) {
    if (cp < 0x80) {
        return (cp >= U'!' && cp <= U'/') || (cp >= U':' && cp <= U'@') ||
               (cp >= U'[' && cp <= U'`') || (cp >= U'{' && cp <= U'~');
    }
    switch (cp) {
        case 0x2018: case 0x2019: case 0x201c: case 0x201d:
        case 0x2013: case 0x2014: case 0x2026: case 0x00a1:
        case 0x00bf: case 0x00ab: case 0x00bb:
            return true;
        default:
            return false;
    }
}

char32_t to_lower(char32_t cp) {
    if (cp >= U'A' && cp <= U'Z') return cp + 32;
    return cp;
}

std::string to_lower(std::string_view text) {
    std::string out(text);
    for (char& c : out)
        if (c >= 'A' && c <= 'Z') c += 32;
    return out;
}

}  // namespace toxspan::utf8
