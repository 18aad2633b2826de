#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "simpy/ast.hpp"

namespace simpy {

/// Grammatical role of a lexeme. Both grammars lex into this one alphabet so
/// the expression grammar is shared; a role is spelled `>=` in Python and
/// `<ge>` in SimPy.
enum class Tok : std::uint8_t {
    End,
    Name, Number, String, Comment,
    // Python layout
    Newline, NL, Indent, Dedent,
    // SimPy layout
    LineSep, BlockStart, BlockEnd, Concat,

    // keywords
    False, None, True, And, As, Assert, Break, Class, Continue, Def, Del,
    Elif, Else, Except, Finally, For, From, Global, If, Import, In, Is,
    Lambda, Nonlocal, Not, Or, Pass, Raise, Return, Try, While, With, Yield,

    // context-specific roles (distinct spellings in SimPy only)
    IfExp, ElseExp, CompFor, CompIf, RaiseFrom, Decorator,
    YieldFrom, NotIn, IsNot,

    // multi-character operators
    Pow, FloorDiv, LShift, RShift, Le, Ge, Eq, Ne, Arrow,
    PlusEq, MinusEq, StarEq, SlashEq, FloorDivEq, PercentEq, AtEq,
    AmpEq, PipeEq, CaretEq, RShiftEq, LShiftEq, PowEq, Ellipsis,

    // single-character symbols
    Dot, LPar, RPar, LSqb, RSqb, LBrace, RBrace, Comma, Assign, Colon,
    Semi, Plus, Minus, Star, Slash, Percent, Lt, Gt, At, Amp, Pipe,
    Caret, Tilde,
};

inline constexpr int kTokCount = static_cast<int>(Tok::Tilde) + 1;

/// Python spelling of a role ("def", ">=", "(") or a descriptive name for
/// layout and literal roles ("NEWLINE", "NAME").
std::string_view python_spelling(Tok t);
/// Python keyword role for `word`, or Tok::End when `word` is not a keyword.
Tok keyword_role(std::string_view word);
bool is_keyword_role(Tok t);
bool is_operator_role(Tok t);
bool is_aug_assign(Tok t);
/// All roles whose Python spelling is an operator or delimiter, longest first.
const std::vector<Tok>& operator_roles_longest_first();

struct Token {
    Tok kind = Tok::End;
    std::string text;
    SourceSpan span{};
    bool space_before = false;
    /// Python comments: true when the comment follows other tokens of the
    /// same logical line (trailing or inside brackets).
    bool inline_comment = false;
};

class LexError : public Error {
public:
    LexError(std::string message, SourceSpan span);
    SourceSpan span;
};

class ParseError : public Error {
public:
    ParseError(std::string message, SourceSpan span, std::vector<std::string> expected = {});
    SourceSpan span;
    std::vector<std::string> expected;
};

/// Line/column (1-based) of a byte offset, for messages.
std::string describe_location(std::string_view source, std::uint32_t byte);

} // namespace simpy
