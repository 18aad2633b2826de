#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "simpy/ast.hpp"
#include "simpy/token.hpp"

namespace simpy {

/// Tokenizes Python source. Follows the reference tokenizer's layout rules:
/// INDENT/DEDENT synthesized from leading whitespace (tab stops of 8), implicit
/// joining inside brackets and after a backslash, NL for non-logical line
/// breaks, and comments as tokens. A leading UTF-8 BOM is skipped.
///
/// Throws LexError on unterminated strings, inconsistent dedents, mixed
/// tab/space indentation that is ambiguous, and illegal characters.
std::vector<Token> lex_python(std::string_view source);

/// Parses the supported Python subset. Fails fast with ParseError.
Ast parse_python(std::string_view source);

/// Canonical Python text: four-space indents, one statement per line, single
/// spaces around binary operators and after commas, exactly one trailing
/// newline (nothing at all for an empty module).
std::string emit_python(const Ast& ast);

/// Parses one string literal token (prefix + quotes) into a StrPart or, for
/// f-strings, an FString node whose interpolations are parsed as Python
/// expressions.
NodePtr parse_string_literal(std::string_view literal, SourceSpan span = {});

/// Number of lexical tokens (EOF excluded) in `source`.
std::size_t python_token_count(std::string_view source);

} // namespace simpy
