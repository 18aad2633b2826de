#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "simpy/ast.hpp"
#include "simpy/grammar_table.hpp"
#include "simpy/token.hpp"

namespace simpy {

enum class SimpyTokenKind { Placeholder, Identifier, Number, String, Symbol, CommentText, End };

struct SimpyToken {
    SimpyTokenKind kind = SimpyTokenKind::End;
    /// Placeholder text, identifier, literal, symbol, or the unescaped
    /// comment body (without the `<comment>` prefix).
    std::string text;
    SourceSpan span{};
    bool space_before = false;
};

/// Longest-match lexing of one SimPy line. Whitespace separates tokens and is
/// otherwise dropped. A comment is one token: the `<comment>` placeholder and
/// the text after it, up to the next unescaped placeholder.
/// Throws LexError on text that matches no rule.
std::vector<SimpyToken> lex_simpy(std::string_view source, const GrammarTable& table = default_table());

struct SimpyParseStats {
    /// Largest number of tokens inspected beyond the current one, plus one.
    int max_lookahead = 0;
    /// Times the parser had to rewind; the grammar is predictive so this
    /// stays 0.
    int backtracks = 0;
};

Ast parse_simpy(std::string_view source, const GrammarTable& table = default_table(),
                SimpyParseStats* stats = nullptr);

/// Canonical SimPy text: one line, no indentation, `<line_sep>` only where a
/// statement begins without a placeholder, explicit `<block_end>`s.
std::string emit_simpy(const Ast& ast, const GrammarTable& table = default_table());

/// Number of SimPy lexical tokens (EOF excluded).
std::size_t simpy_token_count(std::string_view source, const GrammarTable& table = default_table());

} // namespace simpy
