#include "simpy_vocab.hpp"

#include <algorithm>

namespace simpy::detail {

namespace {

// Role of one Python terminal inside `context`; Tok::End if none.
Tok role_for(std::string_view terminal, std::string_view context) {
    if (context == "conditional_expr") {
        if (terminal == "if") return Tok::IfExp;
        if (terminal == "else") return Tok::ElseExp;
    } else if (context == "comprehension") {
        if (terminal == "for") return Tok::CompFor;
        if (terminal == "if") return Tok::CompIf;
    } else if (context == "raise_stmt" && terminal == "from") {
        return Tok::RaiseFrom;
    } else if (context == "decorator" && terminal == "@") {
        return Tok::Decorator;
    }
    if (context == "block" && terminal == "NEWLINE INDENT") return Tok::BlockStart;
    if (context == "block" && terminal == "DEDENT") return Tok::BlockEnd;
    if (context == "simple_stmts" && terminal == "NEWLINE") return Tok::LineSep;
    if (context == "strings" && terminal == "STRING_JOIN") return Tok::Concat;
    if (terminal == "COMMENT") return Tok::Comment;
    if (terminal == "yield from") return Tok::YieldFrom;
    if (terminal == "not in") return Tok::NotIn;
    if (terminal == "is not") return Tok::IsNot;
    Tok kw = keyword_role(terminal);
    if (kw != Tok::End) return kw;
    for (Tok t : operator_roles_longest_first()) {
        if (python_spelling(t) == terminal) return t;
    }
    return Tok::End;
}

// Splits a merge entry into roles, preferring two-terminal native merges.
std::vector<Tok> decompose(const TableEntry& e) {
    Tok whole = role_for(e.python_terminal, e.context);
    if (whole != Tok::End) return {whole};
    auto terms = e.terminals();
    std::vector<Tok> out;
    for (std::size_t i = 0; i < terms.size();) {
        if (i + 1 < terms.size()) {
            Tok pair = role_for(terms[i] + " " + terms[i + 1], e.context);
            if (pair != Tok::End) {
                out.push_back(pair);
                i += 2;
                continue;
            }
        }
        Tok single = role_for(terms[i], e.context);
        if (single == Tok::End) return {};
        out.push_back(single);
        ++i;
    }
    return out;
}

} // namespace

SimpyVocab::SimpyVocab(const GrammarTable& table) : table_(table) {
    for (const auto& e : table.entries()) {
        if (!e.has_placeholder()) continue;
        std::vector<Tok> roles = decompose(e);
        if (roles.empty()) continue;
        if (roles.size() == 1) {
            auto& slot = spelling_[static_cast<std::size_t>(roles[0])];
            // A global entry never overrides a context-specific one.
            if (!slot.empty() && e.context == "global") continue;
            slot = e.simpy_token;
        } else {
            abbreviations_.push_back({roles, e.simpy_token});
        }
        expansions_.emplace_back(e.simpy_token, std::move(roles));
    }
    std::stable_sort(abbreviations_.begin(), abbreviations_.end(),
                     [](const Abbreviation& a, const Abbreviation& b) { return a.roles.size() > b.roles.size(); });
}

const std::vector<Tok>* SimpyVocab::roles(std::string_view placeholder) const {
    for (const auto& [ph, roles] : expansions_) {
        if (ph == placeholder) return &roles;
    }
    return nullptr;
}

} // namespace simpy::detail
