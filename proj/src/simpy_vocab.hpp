#pragma once

// Role <-> placeholder mapping derived from a grammar table.

#include <array>
#include <string>
#include <vector>

#include "simpy/grammar_table.hpp"
#include "simpy/token.hpp"

namespace simpy::detail {

struct Abbreviation {
    std::vector<Tok> roles;
    std::string placeholder;
};

class SimpyVocab {
public:
    explicit SimpyVocab(const GrammarTable& table);

    /// Placeholder spelling of `role`, or empty when the table has none.
    const std::string& placeholder(Tok role) const { return spelling_[static_cast<std::size_t>(role)]; }
    /// Roles a placeholder stands for (one, or several for abbreviations);
    /// empty when the placeholder is unknown to the SimPy grammar.
    const std::vector<Tok>* roles(std::string_view placeholder) const;
    /// Multi-role placeholders, longest role sequence first.
    const std::vector<Abbreviation>& abbreviations() const { return abbreviations_; }

    const GrammarTable& table() const { return table_; }

private:
    const GrammarTable& table_;
    std::array<std::string, kTokCount> spelling_{};
    std::vector<std::pair<std::string, std::vector<Tok>>> expansions_;
    std::vector<Abbreviation> abbreviations_;
};

} // namespace simpy::detail
