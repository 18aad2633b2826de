#pragma once

// Character-level helpers shared by the Python and SimPy lexers.

#include <algorithm>
#include <string_view>

#include "simpy/token.hpp"

namespace simpy::lex {

inline bool is_digit(char c) {
    return c >= '0' && c <= '9';
}

inline bool is_ident_start(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' ||
           static_cast<unsigned char>(c) >= 0x80;
}

inline bool is_ident_char(char c) {
    return is_ident_start(c) || is_digit(c);
}

inline std::size_t scan_identifier(std::string_view src, std::size_t pos) {
    while (pos < src.size() && is_ident_char(src[pos])) ++pos;
    return pos;
}

inline bool is_string_prefix(std::string_view word) {
    if (word.empty() || word.size() > 2) return false;
    bool r = false, b = false, u = false, f = false;
    for (char c : word) {
        switch (c) {
        case 'r': case 'R': if (r) return false; r = true; break;
        case 'b': case 'B': if (b) return false; b = true; break;
        case 'u': case 'U': if (u) return false; u = true; break;
        case 'f': case 'F': if (f) return false; f = true; break;
        default: return false;
        }
    }
    if (u && word.size() > 1) return false;
    return !(b && f);
}

/// Scans a quoted literal whose opening quote is at `pos`; returns the end
/// offset (one past the closing quote).
inline std::size_t scan_string(std::string_view src, std::size_t pos) {
    const std::size_t start = pos;
    const char q = src[pos];
    const bool triple = pos + 2 < src.size() && src[pos + 1] == q && src[pos + 2] == q;
    pos += triple ? 3 : 1;
    while (pos < src.size()) {
        char c = src[pos];
        if (c == '\\') {
            pos += 2;
            continue;
        }
        if (c == q) {
            if (!triple) return pos + 1;
            if (pos + 2 < src.size() && src[pos + 1] == q && src[pos + 2] == q) return pos + 3;
        } else if (!triple && (c == '\n' || c == '\r')) {
            break;
        }
        ++pos;
    }
    throw LexError("unterminated string literal",
                   {static_cast<std::uint32_t>(start), static_cast<std::uint32_t>(std::min(pos, src.size()))});
}

inline std::size_t scan_digits(std::string_view src, std::size_t pos) {
    while (pos < src.size() && (is_digit(src[pos]) || src[pos] == '_')) ++pos;
    return pos;
}

/// Scans a numeric literal starting at `pos` (digit, or '.' followed by digit).
inline std::size_t scan_number(std::string_view src, std::size_t pos) {
    auto at = [&](std::size_t i) { return i < src.size() ? src[i] : '\0'; };
    if (at(pos) == '0' && (at(pos + 1) == 'x' || at(pos + 1) == 'X' || at(pos + 1) == 'o' ||
                           at(pos + 1) == 'O' || at(pos + 1) == 'b' || at(pos + 1) == 'B')) {
        pos += 2;
        while (pos < src.size()) {
            char c = src[pos];
            if (is_digit(c) || c == '_' || (c >= 'a' && c <= 'f') || (c >= 'A' && c <= 'F')) {
                ++pos;
            } else {
                break;
            }
        }
        return pos;
    }
    pos = scan_digits(src, pos);
    if (at(pos) == '.') {
        pos = scan_digits(src, pos + 1);
    }
    if (at(pos) == 'e' || at(pos) == 'E') {
        std::size_t p = pos + 1;
        if (at(p) == '+' || at(p) == '-') ++p;
        if (is_digit(at(p))) pos = scan_digits(src, p);
    }
    if (at(pos) == 'j' || at(pos) == 'J') ++pos;
    return pos;
}

} // namespace simpy::lex
