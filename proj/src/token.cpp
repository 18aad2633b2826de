#include "simpy/token.hpp"

#include <algorithm>
#include <array>

namespace simpy {

namespace {

constexpr std::array<std::string_view, kTokCount> kSpelling = {
    "ENDMARKER",
    "NAME", "NUMBER", "STRING", "COMMENT",
    "NEWLINE", "NL", "INDENT", "DEDENT",
    "LINE_SEP", "BLOCK_START", "BLOCK_END", "CONCAT",

    "False", "None", "True", "and", "as", "assert", "break", "class", "continue", "def", "del",
    "elif", "else", "except", "finally", "for", "from", "global", "if", "import", "in", "is",
    "lambda", "nonlocal", "not", "or", "pass", "raise", "return", "try", "while", "with", "yield",

    "if", "else", "for", "if", "from", "@",
    "yield from", "not in", "is not",

    "**", "//", "<<", ">>", "<=", ">=", "==", "!=", "->",
    "+=", "-=", "*=", "/=", "//=", "%=", "@=",
    "&=", "|=", "^=", ">>=", "<<=", "**=", "...",

    ".", "(", ")", "[", "]", "{", "}", ",", "=", ":",
    ";", "+", "-", "*", "/", "%", "<", ">", "@", "&", "|",
    "^", "~",
};

} // namespace

std::string_view python_spelling(Tok t) {
    return kSpelling[static_cast<std::size_t>(t)];
}

Tok keyword_role(std::string_view word) {
    for (int i = static_cast<int>(Tok::False); i <= static_cast<int>(Tok::Yield); ++i) {
        if (kSpelling[static_cast<std::size_t>(i)] == word) return static_cast<Tok>(i);
    }
    return Tok::End;
}

bool is_keyword_role(Tok t) {
    return t >= Tok::False && t <= Tok::Yield;
}

bool is_operator_role(Tok t) {
    return t >= Tok::Pow && t <= Tok::Tilde;
}

bool is_aug_assign(Tok t) {
    return t >= Tok::PlusEq && t <= Tok::PowEq;
}

const std::vector<Tok>& operator_roles_longest_first() {
    static const std::vector<Tok> roles = [] {
        std::vector<Tok> r;
        for (int i = static_cast<int>(Tok::Pow); i <= static_cast<int>(Tok::Tilde); ++i) {
            r.push_back(static_cast<Tok>(i));
        }
        std::stable_sort(r.begin(), r.end(), [](Tok a, Tok b) {
            return python_spelling(a).size() > python_spelling(b).size();
        });
        return r;
    }();
    return roles;
}

LexError::LexError(std::string message, SourceSpan s) : Error(std::move(message)), span(s) {}

ParseError::ParseError(std::string message, SourceSpan s, std::vector<std::string> exp)
    : Error(std::move(message)), span(s), expected(std::move(exp)) {}

std::string describe_location(std::string_view source, std::uint32_t byte) {
    std::uint32_t line = 1;
    std::uint32_t col = 1;
    for (std::uint32_t i = 0; i < byte && i < source.size(); ++i) {
        if (source[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return std::to_string(line) + ":" + std::to_string(col);
}

} // namespace simpy
