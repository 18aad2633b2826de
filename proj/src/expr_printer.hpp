#pragma once

// Expression printer shared by both emitters. It produces a list of role
// pieces; each dialect has its own joiner that spells roles and decides
// where whitespace goes.

#include <string>
#include <vector>

#include "simpy/ast.hpp"
#include "simpy/token.hpp"

namespace simpy::detail {

// Binding strength, loosest first. A node printed where `min_prec` exceeds
// its own precedence is parenthesized.
enum Prec : int {
    kPrecYield = -1,
    kPrecTuple = 0,
    kPrecLambda = 1,
    kPrecTest = 2,
    kPrecOr = 3,
    kPrecAnd = 4,
    kPrecNot = 5,
    kPrecCompare = 6,
    kPrecBitOr = 7,
    kPrecBitXor = 8,
    kPrecBitAnd = 9,
    kPrecShift = 10,
    kPrecArith = 11,
    kPrecTerm = 12,
    kPrecUnary = 13,
    kPrecPower = 14,
    kPrecPrimary = 16,
};

struct Piece {
    Tok role = Tok::Name;
    // Literal text for names, numbers, strings and raw pieces; empty means
    // "spell the role".
    std::string text;
    // Python layout hint.
    bool space_before = false;
    // Whitespace that carries meaning in SimPy (parameter, with-item and
    // import-from separators).
    bool hard_space = false;
    // Emitted verbatim by the SimPy joiner (comment bodies).
    bool raw = false;
};

class ExprPrinter {
public:
    explicit ExprPrinter(bool simpy) : simpy_(simpy) {}

    void expr(const Node& node, int min_prec);
    /// Parameters of a def (`annotations`) or a lambda. In SimPy def mode each
    /// parameter is introduced by a hard space instead of commas.
    void params(const Node& params, bool annotations, bool simpy_def);
    /// Parenthesized argument list from `node.children[from..]` (calls, class bases).
    /// `genexp_shorthand`: a sole generator argument drops its own parentheses,
    /// as calls allow and class bases do not.
    void call_args(const Node& node, std::size_t from, bool genexp_shorthand = true);

    /// Appends a piece. `space_after` makes the next piece space-separated.
    void put(Tok role, std::string text = {}, bool space_before = false, bool space_after = false);
    void put_hard_space() { hard_pending_ = true; }
    void put_raw(Tok role, std::string text);

    std::vector<Piece>& pieces() { return pieces_; }
    bool simpy() const { return simpy_; }

private:
    void comma() { put(Tok::Comma, {}, false, true); }
    void sequence(const std::vector<NodePtr>& items, std::size_t from, int min_prec);
    void tuple(const Node& node, bool bare);
    void comprehensions(const Node& node, std::size_t from);
    void subscript_index(const Node& index);
    void slice(const Node& node);
    void strings(const Node& node);

    bool simpy_;
    bool pending_space_ = false;
    bool hard_pending_ = false;
    std::vector<Piece> pieces_;
};

int precedence(const Node& node);

/// Joins pieces with canonical Python spacing.
std::string python_join(const std::vector<Piece>& pieces);

/// Python text of one expression, as used inside f-string fields.
std::string python_expr_text(const Node& node, int min_prec);

/// Python text of a string-literal part (StrPart verbatim, FString rebuilt).
std::string string_part_text(const Node& part);

bool is_word_char(char c);

} // namespace simpy::detail
