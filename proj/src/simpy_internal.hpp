#pragma once

#include <string>
#include <vector>

#include "simpy/simpy.hpp"
#include "simpy_vocab.hpp"

namespace simpy::detail {

/// Role tokens for the shared expression grammar; abbreviation placeholders
/// expand to their role sequences here.
std::vector<Token> simpy_roles(const std::vector<SimpyToken>& toks, const SimpyVocab& vocab);

/// Comment body as written after `<comment>`.
std::string escape_comment(std::string_view body, const GrammarTable& table);

} // namespace simpy::detail
