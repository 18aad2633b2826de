#pragma once

// Recursive-descent expression grammar shared by the Python and SimPy
// parsers. Both lex into the same role alphabet; the few places where the
// grammars spell a construct differently go through `Dialect`.

#include <string>
#include <vector>

#include "simpy/ast.hpp"
#include "simpy/token.hpp"

namespace simpy::detail {

struct Dialect {
    Tok ifexp_if = Tok::If;
    Tok ifexp_else = Tok::Else;
    Tok comp_for = Tok::For;
    Tok comp_if = Tok::If;
    /// Token joining adjacent string parts; Tok::End means plain adjacency.
    Tok concat = Tok::End;
};

struct ParseStats {
    /// Largest k such that the parser inspected token i+k-1 while positioned at i.
    int max_lookahead = 0;
    /// Positions the parser rewound to. The grammar is predictive, so any
    /// nonzero count is a bug.
    int backtracks = 0;
};

class ExprParser {
public:
    ExprParser(std::vector<Token> tokens, Dialect dialect);

    const ParseStats& stats() const { return stats_; }

protected:
    const Token& peek(std::size_t k = 0);
    Tok cur() { return peek().kind; }
    /// Current token is `t` and is not cut off by a significant space.
    bool at(Tok t) { return cur() == t && !space_stop(); }
    bool accept(Tok t);
    const Token& expect(Tok t, std::string_view what);
    Token advance();
    [[noreturn]] void fail(std::string message, std::vector<std::string> expected = {});
    bool space_stop();

    NodePtr mk(NodeKind kind, std::vector<NodePtr> children, std::size_t start_tok,
               std::string value = {}, std::string aux = {});
    SourceSpan span_from(std::size_t start_tok) const;

    bool starts_expression();

    NodePtr parse_star_expressions();
    NodePtr parse_star_expression();
    NodePtr parse_expression();
    NodePtr parse_named_expression() { return parse_expression(); }
    NodePtr parse_disjunction();
    NodePtr parse_conjunction();
    NodePtr parse_inversion();
    NodePtr parse_comparison();
    NodePtr parse_bitwise_or();
    NodePtr parse_bitwise_xor();
    NodePtr parse_bitwise_and();
    NodePtr parse_shift();
    NodePtr parse_sum();
    NodePtr parse_term();
    NodePtr parse_factor();
    NodePtr parse_power();
    NodePtr parse_primary();
    NodePtr parse_atom();
    NodePtr parse_lambda();
    NodePtr parse_yield();
    NodePtr parse_strings();
    NodePtr parse_paren_atom();
    NodePtr parse_list_atom();
    NodePtr parse_brace_atom();
    NodePtr parse_subscript_index();
    NodePtr parse_slice_item();
    std::vector<NodePtr> parse_call_args(Tok closer);
    std::vector<NodePtr> parse_comprehensions();
    /// Targets of `for`, comprehensions and `as`: bitwise-or level, optional
    /// star, comma list becomes a Tuple when `allow_tuple`.
    NodePtr parse_target_list(bool allow_tuple);
    NodePtr parse_star_target();

    /// One parameter: `name[:ann][=default]`, `*[name[:ann]]`, `**name[:ann]` or `/`.
    NodePtr parse_param(bool annotations);
    /// Comma-separated parameters up to (not including) `closer`.
    NodePtr parse_param_list(Tok closer, bool annotations);

    void check_target(const Node& node, bool allow_star, std::size_t at_tok);

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    Dialect dialect_;
    ParseStats stats_;
    int nest_ = 0;
    bool stop_at_space_ = false;
};

/// RAII: entering brackets suspends significant-space handling.
class NestGuard {
public:
    explicit NestGuard(int& nest) : nest_(nest) { ++nest_; }
    ~NestGuard() { --nest_; }
    NestGuard(const NestGuard&) = delete;
    NestGuard& operator=(const NestGuard&) = delete;

private:
    int& nest_;
};

/// Python spelling of a binary or augmented operator role.
std::string op_text(Tok t);

} // namespace simpy::detail
