#include "unicode.hpp"

#include <algorithm>
#include <array>
#include <cctype>

namespace tablesense::unicode {

namespace {

// Returns the length of the sequence starting at s[i], or 0 when invalid.
// Rejects overlong encodings, surrogates and values above U+10FFFF.
int sequence_length(std::string_view s, size_t i, char32_t* cp) {
    const auto b0 = static_cast<unsigned char>(s[i]);
    if (b0 < 0x80) {
        *cp = b0;
        return 1;
    }
    int len;
    char32_t v;
    if ((b0 & 0xE0) == 0xC0) {
        len = 2;
        v = b0 & 0x1F;
    } else if ((b0 & 0xF0) == 0xE0) {
        len = 3;
        v = b0 & 0x0F;
    } else if ((b0 & 0xF8) == 0xF0) {
        len = 4;
        v = b0 & 0x07;
    } else {
        return 0;
    }
    if (i + len > s.size()) return 0;
    for (int k = 1; k < len; ++k) {
        const auto b = static_cast<unsigned char>(s[i + k]);
        if ((b & 0xC0) != 0x80) return 0;
        v = (v << 6) | (b & 0x3F);
    }
    static constexpr char32_t min_for_len[5] = {0, 0, 0x80, 0x800, 0x10000};
    if (v < min_for_len[len]) return 0;
    if (v > 0x10FFFF || (v >= 0xD800 && v <= 0xDFFF)) return 0;
    *cp = v;
    return len;
}

// cp1252 positions 0x80..0x9F; 0 marks an unassigned slot (kept as U+FFFD).
constexpr std::array<char16_t, 32> cp1252_high = {
    0x20AC, 0,      0x201A, 0x0192, 0x201E, 0x2026, 0x2020, 0x2021,
    0x02C6, 0x2030, 0x0160, 0x2039, 0x0152, 0,      0x017D, 0,
    0,      0x2018, 0x2019, 0x201C, 0x201D, 0x2022, 0x2013, 0x2014,
    0x02DC, 0x2122, 0x0161, 0x203A, 0x0153, 0,      0x017E, 0x0178,
};

// cp1251 positions 0x80..0xBF; 0xC0..0xFF map linearly onto U+0410..U+044F.
constexpr std::array<char16_t, 64> cp1251_mid = {
    0x0402, 0x0403, 0x201A, 0x0453, 0x201E, 0x2026, 0x2020, 0x2021,
    0x20AC, 0x2030, 0x0409, 0x2039, 0x040A, 0x040C, 0x040B, 0x040F,
    0x0452, 0x2018, 0x2019, 0x201C, 0x201D, 0x2022, 0x2013, 0x2014,
    0,      0x2122, 0x0459, 0x203A, 0x045A, 0x045C, 0x045B, 0x045F,
    0x00A0, 0x040E, 0x045E, 0x0408, 0x00A4, 0x0490, 0x00A6, 0x00A7,
    0x0401, 0x00A9, 0x0404, 0x00AB, 0x00AC, 0x00AD, 0x00AE, 0x0407,
    0x00B0, 0x00B1, 0x0406, 0x0456, 0x0491, 0x00B5, 0x00B6, 0x00B7,
    0x0451, 0x2116, 0x0454, 0x00BB, 0x0458, 0x0405, 0x0455, 0x0457,
};

} // namespace

std::vector<char32_t> decode_utf8(std::string_view s) {
    std::vector<char32_t> out;
    out.reserve(s.size());
    size_t i = 0;
    while (i < s.size()) {
        char32_t cp;
        const int len = sequence_length(s, i, &cp);
        if (len == 0) {
            out.push_back(replacement_char);
            ++i;
        } else {
            out.push_back(cp);
            i += static_cast<size_t>(len);
        }
    }
    return out;
}

bool is_valid_utf8(std::string_view s) {
    size_t i = 0;
    while (i < s.size()) {
        char32_t cp;
        const int len = sequence_length(s, i, &cp);
        if (len == 0) return false;
        i += static_cast<size_t>(len);
    }
    return true;
}

void append_utf8(std::string& out, char32_t cp) {
    if (cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) cp = replacement_char;
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

std::string encode_utf8(const std::vector<char32_t>& cps) {
    std::string out;
    out.reserve(cps.size());
    for (char32_t cp : cps) append_utf8(out, cp);
    return out;
}

bool is_space(char32_t cp) {
    switch (cp) {
        case 0x09: case 0x0A: case 0x0B: case 0x0C: case 0x0D: case 0x20:
        case 0x85: case 0xA0: case 0x1680:
        case 0x2028: case 0x2029: case 0x202F: case 0x205F: case 0x3000:
        case 0xFEFF:
            return true;
        default:
            return cp >= 0x2000 && cp <= 0x200A;
    }
}

std::string collapse_whitespace(std::string_view s) {
    const auto cps = decode_utf8(s);
    std::string out;
    out.reserve(s.size());
    bool pending_space = false;
    bool seen_nonspace = false;
    for (char32_t cp : cps) {
        if (is_space(cp)) {
            pending_space = seen_nonspace;
        } else {
            if (pending_space) out.push_back(' ');
            pending_space = false;
            seen_nonspace = true;
            append_utf8(out, cp);
        }
    }
    return out;
}

int count_words(std::string_view s) {
    const auto cps = decode_utf8(s);
    int words = 0;
    bool in_word = false;
    for (char32_t cp : cps) {
        if (is_space(cp)) {
            in_word = false;
        } else if (!in_word) {
            in_word = true;
            ++words;
        }
    }
    return words;
}

std::string normalize_charset_name(std::string_view name) {
    std::string out;
    for (char c : name) {
        if (c == '_') c = '-';
        out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
    // strip whitespace and quotes around header values
    const auto first = out.find_first_not_of(" \t\"'");
    const auto last = out.find_last_not_of(" \t\"'");
    if (first == std::string::npos) return {};
    out = out.substr(first, last - first + 1);
    if (out == "utf8") return "utf-8";
    if (out == "cp1251" || out == "win-1251") return "windows-1251";
    if (out == "cp1252" || out == "win-1252") return "windows-1252";
    if (out == "latin1" || out == "latin-1" || out == "l1") return "iso-8859-1";
    return out;
}

bool transcode_to_utf8(std::string_view body, std::string_view charset, std::string* out) {
    const std::string cs = normalize_charset_name(charset);
    if (cs.empty() || cs == "utf-8" || cs == "us-ascii" || cs == "ascii") {
        if (!is_valid_utf8(body)) return false;
        out->assign(body);
        return true;
    }
    if (cs == "iso-8859-1") {
        out->clear();
        out->reserve(body.size());
        for (char c : body) append_utf8(*out, static_cast<unsigned char>(c));
        return true;
    }
    if (cs == "windows-1252") {
        out->clear();
        out->reserve(body.size());
        for (char c : body) {
            const auto b = static_cast<unsigned char>(c);
            if (b >= 0x80 && b <= 0x9F) {
                const char16_t mapped = cp1252_high[b - 0x80];
                append_utf8(*out, mapped ? mapped : replacement_char);
            } else {
                append_utf8(*out, b);
            }
        }
        return true;
    }
    if (cs == "windows-1251") {
        out->clear();
        out->reserve(body.size() * 2);
        for (char c : body) {
            const auto b = static_cast<unsigned char>(c);
            if (b < 0x80) {
                out->push_back(c);
            } else if (b < 0xC0) {
                const char16_t mapped = cp1251_mid[b - 0x80];
                append_utf8(*out, mapped ? mapped : replacement_char);
            } else {
                append_utf8(*out, 0x0410 + (b - 0xC0));
            }
        }
        return true;
    }
    return false;
}

} // namespace tablesense::unicode
