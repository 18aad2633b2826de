#include "expr_parser.hpp"

#include <algorithm>

#include "simpy/python.hpp"

namespace simpy::detail {

namespace {

bool is_float_literal(std::string_view text) {
    if (text.size() > 1 && text[0] == '0' &&
        (text[1] == 'x' || text[1] == 'X' || text[1] == 'o' || text[1] == 'O' || text[1] == 'b' || text[1] == 'B')) {
        return false;
    }
    return text.find_first_of(".eEjJ") != std::string_view::npos;
}

std::string describe(const Token& t) {
    switch (t.kind) {
    case Tok::End: return "end of input";
    case Tok::Name: return "name '" + t.text + "'";
    case Tok::Number: return "number " + t.text;
    case Tok::String: return "string literal";
    case Tok::Newline: return "end of line";
    case Tok::Indent: return "indent";
    case Tok::Dedent: return "dedent";
    default:
        return "'" + (t.text.empty() ? std::string(python_spelling(t.kind)) : t.text) + "'";
    }
}

} // namespace

std::string op_text(Tok t) {
    return std::string(python_spelling(t));
}

ExprParser::ExprParser(std::vector<Token> tokens, Dialect dialect)
    : toks_(std::move(tokens)), dialect_(dialect) {
    if (toks_.empty() || toks_.back().kind != Tok::End) {
        Token end;
        end.kind = Tok::End;
        if (!toks_.empty()) end.span = {toks_.back().span.end_byte, toks_.back().span.end_byte};
        toks_.push_back(end);
    }
}

const Token& ExprParser::peek(std::size_t k) {
    stats_.max_lookahead = std::max(stats_.max_lookahead, static_cast<int>(k) + 1);
    std::size_t i = std::min(pos_ + k, toks_.size() - 1);
    return toks_[i];
}

bool ExprParser::space_stop() {
    return stop_at_space_ && nest_ == 0 && peek().space_before;
}

bool ExprParser::accept(Tok t) {
    if (at(t)) {
        ++pos_;
        return true;
    }
    return false;
}

Token ExprParser::advance() {
    Token t = peek();
    if (pos_ < toks_.size() - 1) ++pos_;
    return t;
}

const Token& ExprParser::expect(Tok t, std::string_view what) {
    if (cur() != t) {
        fail("expected " + std::string(what) + ", found " + describe(peek()), {std::string(what)});
    }
    const Token& tok = toks_[pos_];
    if (pos_ < toks_.size() - 1) ++pos_;
    return tok;
}

void ExprParser::fail(std::string message, std::vector<std::string> expected) {
    throw ParseError(std::move(message), peek().span, std::move(expected));
}

SourceSpan ExprParser::span_from(std::size_t start_tok) const {
    std::size_t last = pos_ > start_tok ? pos_ - 1 : start_tok;
    last = std::min(last, toks_.size() - 1);
    return {toks_[std::min(start_tok, toks_.size() - 1)].span.start_byte, toks_[last].span.end_byte};
}

NodePtr ExprParser::mk(NodeKind kind, std::vector<NodePtr> children, std::size_t start_tok, std::string value,
                       std::string aux) {
    return make_node(kind, std::move(children),
                     {.value = std::move(value), .aux = std::move(aux), .span = span_from(start_tok)});
}

bool ExprParser::starts_expression() {
    if (space_stop()) return false;
    switch (cur()) {
    case Tok::Name: case Tok::Number: case Tok::String:
    case Tok::True: case Tok::False: case Tok::None: case Tok::Ellipsis:
    case Tok::LPar: case Tok::LSqb: case Tok::LBrace:
    case Tok::Minus: case Tok::Plus: case Tok::Tilde:
    case Tok::Not: case Tok::Lambda: case Tok::Star: case Tok::Yield: case Tok::YieldFrom:
        return true;
    default:
        return false;
    }
}

NodePtr ExprParser::parse_star_expressions() {
    std::size_t start = pos_;
    NodePtr first = parse_star_expression();
    if (!at(Tok::Comma)) return first;
    std::vector<NodePtr> elts{first};
    while (accept(Tok::Comma)) {
        if (!starts_expression() || cur() == Tok::Yield || cur() == Tok::YieldFrom) break;
        elts.push_back(parse_star_expression());
    }
    return mk(NodeKind::Tuple, std::move(elts), start);
}

NodePtr ExprParser::parse_star_expression() {
    std::size_t start = pos_;
    if (cur() == Tok::Star) {
        advance();
        return mk(NodeKind::Starred, {parse_bitwise_or()}, start);
    }
    return parse_expression();
}

NodePtr ExprParser::parse_expression() {
    if (cur() == Tok::Lambda) return parse_lambda();
    std::size_t start = pos_;
    NodePtr body = parse_disjunction();
    if (!at(dialect_.ifexp_if)) return body;
    advance();
    NodePtr test = parse_disjunction();
    if (!at(dialect_.ifexp_else)) {
        fail("expected 'else' in conditional expression, found " + describe(peek()), {"else"});
    }
    advance();
    NodePtr orelse = parse_expression();
    return mk(NodeKind::IfExp, {body, test, orelse}, start);
}

NodePtr ExprParser::parse_lambda() {
    std::size_t start = pos_;
    expect(Tok::Lambda, "'lambda'");
    NodePtr params = parse_param_list(Tok::Colon, false);
    expect(Tok::Colon, "':'");
    NodePtr body = parse_expression();
    return mk(NodeKind::Lambda, {params, body}, start);
}

NodePtr ExprParser::parse_disjunction() {
    std::size_t start = pos_;
    NodePtr first = parse_conjunction();
    if (!at(Tok::Or)) return first;
    std::vector<NodePtr> operands{first};
    while (accept(Tok::Or)) operands.push_back(parse_conjunction());
    return mk(NodeKind::BoolOp, std::move(operands), start, "or");
}

NodePtr ExprParser::parse_conjunction() {
    std::size_t start = pos_;
    NodePtr first = parse_inversion();
    if (!at(Tok::And)) return first;
    std::vector<NodePtr> operands{first};
    while (accept(Tok::And)) operands.push_back(parse_inversion());
    return mk(NodeKind::BoolOp, std::move(operands), start, "and");
}

NodePtr ExprParser::parse_inversion() {
    std::size_t start = pos_;
    if (cur() == Tok::Not) {
        advance();
        return mk(NodeKind::UnaryOp, {parse_inversion()}, start, "not");
    }
    return parse_comparison();
}

NodePtr ExprParser::parse_comparison() {
    std::size_t start = pos_;
    NodePtr left = parse_bitwise_or();
    std::vector<NodePtr> comparators;
    while (!space_stop()) {
        std::size_t op_start = pos_;
        std::string op;
        switch (cur()) {
        case Tok::Lt: case Tok::Gt: case Tok::Eq: case Tok::Ne: case Tok::Le: case Tok::Ge: case Tok::In:
            op = op_text(cur());
            advance();
            break;
        case Tok::NotIn:
            op = "not in";
            advance();
            break;
        case Tok::IsNot:
            op = "is not";
            advance();
            break;
        case Tok::Not:
            if (peek(1).kind != Tok::In) fail("expected 'in' after 'not'", {"in"});
            advance();
            advance();
            op = "not in";
            break;
        case Tok::Is:
            advance();
            if (cur() == Tok::Not) {
                advance();
                op = "is not";
            } else {
                op = "is";
            }
            break;
        default:
            break;
        }
        if (op.empty()) break;
        NodePtr right = parse_bitwise_or();
        comparators.push_back(mk(NodeKind::Comparator, {right}, op_start, op));
    }
    if (comparators.empty()) return left;
    comparators.insert(comparators.begin(), left);
    return mk(NodeKind::Compare, std::move(comparators), start);
}

NodePtr ExprParser::parse_bitwise_or() {
    std::size_t start = pos_;
    NodePtr left = parse_bitwise_xor();
    while (at(Tok::Pipe)) {
        advance();
        left = mk(NodeKind::BinOp, {left, parse_bitwise_xor()}, start, "|");
    }
    return left;
}

NodePtr ExprParser::parse_bitwise_xor() {
    std::size_t start = pos_;
    NodePtr left = parse_bitwise_and();
    while (at(Tok::Caret)) {
        advance();
        left = mk(NodeKind::BinOp, {left, parse_bitwise_and()}, start, "^");
    }
    return left;
}

NodePtr ExprParser::parse_bitwise_and() {
    std::size_t start = pos_;
    NodePtr left = parse_shift();
    while (at(Tok::Amp)) {
        advance();
        left = mk(NodeKind::BinOp, {left, parse_shift()}, start, "&");
    }
    return left;
}

NodePtr ExprParser::parse_shift() {
    std::size_t start = pos_;
    NodePtr left = parse_sum();
    while (at(Tok::LShift) || at(Tok::RShift)) {
        std::string op = op_text(advance().kind);
        left = mk(NodeKind::BinOp, {left, parse_sum()}, start, op);
    }
    return left;
}

NodePtr ExprParser::parse_sum() {
    std::size_t start = pos_;
    NodePtr left = parse_term();
    while (at(Tok::Plus) || at(Tok::Minus)) {
        std::string op = op_text(advance().kind);
        left = mk(NodeKind::BinOp, {left, parse_term()}, start, op);
    }
    return left;
}

NodePtr ExprParser::parse_term() {
    std::size_t start = pos_;
    NodePtr left = parse_factor();
    while (at(Tok::Star) || at(Tok::Slash) || at(Tok::FloorDiv) || at(Tok::Percent) || at(Tok::At)) {
        std::string op = op_text(advance().kind);
        left = mk(NodeKind::BinOp, {left, parse_factor()}, start, op);
    }
    return left;
}

NodePtr ExprParser::parse_factor() {
    std::size_t start = pos_;
    if (cur() == Tok::Minus || cur() == Tok::Plus || cur() == Tok::Tilde) {
        std::string op = op_text(advance().kind);
        return mk(NodeKind::UnaryOp, {parse_factor()}, start, op);
    }
    return parse_power();
}

NodePtr ExprParser::parse_power() {
    std::size_t start = pos_;
    NodePtr base = parse_primary();
    if (at(Tok::Pow)) {
        advance();
        return mk(NodeKind::BinOp, {base, parse_factor()}, start, "**");
    }
    return base;
}

NodePtr ExprParser::parse_primary() {
    std::size_t start = pos_;
    NodePtr node = parse_atom();
    while (true) {
        if (at(Tok::Dot)) {
            advance();
            const Token& name = expect(Tok::Name, "attribute name");
            node = mk(NodeKind::Attribute, {node}, start, name.text);
        } else if (at(Tok::LPar)) {
            advance();
            std::vector<NodePtr> args;
            {
                NestGuard guard(nest_);
                args = parse_call_args(Tok::RPar);
                expect(Tok::RPar, "')'");
            }
            args.insert(args.begin(), node);
            node = mk(NodeKind::Call, std::move(args), start);
        } else if (at(Tok::LSqb)) {
            advance();
            NodePtr index;
            {
                NestGuard guard(nest_);
                index = parse_subscript_index();
                expect(Tok::RSqb, "']'");
            }
            node = mk(NodeKind::Subscript, {node, index}, start);
        } else {
            return node;
        }
    }
}

NodePtr ExprParser::parse_atom() {
    std::size_t start = pos_;
    switch (cur()) {
    case Tok::Name: {
        Token t = advance();
        return mk(NodeKind::Name, {}, start, t.text);
    }
    case Tok::Number: {
        Token t = advance();
        return mk(is_float_literal(t.text) ? NodeKind::FloatLit : NodeKind::IntLit, {}, start, t.text);
    }
    case Tok::String:
        return parse_strings();
    case Tok::True:
        advance();
        return mk(NodeKind::BoolLit, {}, start, "True");
    case Tok::False:
        advance();
        return mk(NodeKind::BoolLit, {}, start, "False");
    case Tok::None:
        advance();
        return mk(NodeKind::NoneLit, {}, start);
    case Tok::Ellipsis:
        advance();
        return mk(NodeKind::EllipsisLit, {}, start);
    case Tok::LPar:
        return parse_paren_atom();
    case Tok::LSqb:
        return parse_list_atom();
    case Tok::LBrace:
        return parse_brace_atom();
    default:
        fail("expected expression, found " + describe(peek()), {"expression"});
    }
}

NodePtr ExprParser::parse_strings() {
    std::size_t start = pos_;
    std::vector<NodePtr> parts;
    while (true) {
        Token t = advance();
        parts.push_back(parse_string_literal(t.text, t.span));
        if (dialect_.concat == Tok::End) {
            if (cur() != Tok::String) break;
        } else {
            if (!at(dialect_.concat)) break;
            advance();
            if (cur() != Tok::String) fail("expected string literal after concatenation marker", {"string"});
        }
    }
    return mk(NodeKind::StringLit, std::move(parts), start);
}

NodePtr ExprParser::parse_yield() {
    std::size_t start = pos_;
    if (cur() == Tok::YieldFrom) {
        advance();
        return mk(NodeKind::YieldFrom, {parse_expression()}, start);
    }
    expect(Tok::Yield, "'yield'");
    if (dialect_.concat == Tok::End && cur() == Tok::From) {
        advance();
        return mk(NodeKind::YieldFrom, {parse_expression()}, start);
    }
    if (!starts_expression() || cur() == Tok::Yield || cur() == Tok::YieldFrom) {
        return mk(NodeKind::Yield, {nullptr}, start);
    }
    return mk(NodeKind::Yield, {parse_star_expressions()}, start);
}

NodePtr ExprParser::parse_paren_atom() {
    std::size_t start = pos_;
    expect(Tok::LPar, "'('");
    NestGuard guard(nest_);
    if (accept(Tok::RPar)) return mk(NodeKind::Tuple, {}, start);
    if (cur() == Tok::Yield || cur() == Tok::YieldFrom) {
        NodePtr y = parse_yield();
        expect(Tok::RPar, "')'");
        return y;
    }
    NodePtr first = parse_star_expression();
    if (at(dialect_.comp_for)) {
        auto comps = parse_comprehensions();
        expect(Tok::RPar, "')'");
        comps.insert(comps.begin(), first);
        return mk(NodeKind::GenExp, std::move(comps), start);
    }
    if (accept(Tok::RPar)) {
        if (first->kind == NodeKind::Starred) fail("cannot use starred expression here");
        return first;
    }
    std::vector<NodePtr> elts{first};
    while (accept(Tok::Comma)) {
        if (at(Tok::RPar)) break;
        elts.push_back(parse_star_expression());
    }
    expect(Tok::RPar, "')'");
    return mk(NodeKind::Tuple, std::move(elts), start);
}

NodePtr ExprParser::parse_list_atom() {
    std::size_t start = pos_;
    expect(Tok::LSqb, "'['");
    NestGuard guard(nest_);
    if (accept(Tok::RSqb)) return mk(NodeKind::List, {}, start);
    NodePtr first = parse_star_expression();
    if (at(dialect_.comp_for)) {
        auto comps = parse_comprehensions();
        expect(Tok::RSqb, "']'");
        comps.insert(comps.begin(), first);
        return mk(NodeKind::ListComp, std::move(comps), start);
    }
    std::vector<NodePtr> elts{first};
    while (accept(Tok::Comma)) {
        if (at(Tok::RSqb)) break;
        elts.push_back(parse_star_expression());
    }
    expect(Tok::RSqb, "']'");
    return mk(NodeKind::List, std::move(elts), start);
}

NodePtr ExprParser::parse_brace_atom() {
    std::size_t start = pos_;
    expect(Tok::LBrace, "'{'");
    NestGuard guard(nest_);
    if (accept(Tok::RBrace)) return mk(NodeKind::Dict, {}, start);

    auto parse_dict_item = [&]() -> NodePtr {
        std::size_t item_start = pos_;
        if (accept(Tok::Pow)) {
            return mk(NodeKind::KeyValue, {nullptr, parse_bitwise_or()}, item_start);
        }
        NodePtr key = parse_expression();
        expect(Tok::Colon, "':'");
        NodePtr value = parse_expression();
        return mk(NodeKind::KeyValue, {key, value}, item_start);
    };

    std::size_t first_start = pos_;
    bool is_dict = false;
    NodePtr first;
    if (cur() == Tok::Pow) {
        is_dict = true;
        first = parse_dict_item();
    } else {
        NodePtr e = parse_star_expression();
        if (at(Tok::Colon) && e->kind != NodeKind::Starred) {
            advance();
            NodePtr value = parse_expression();
            if (at(dialect_.comp_for)) {
                auto comps = parse_comprehensions();
                expect(Tok::RBrace, "'}'");
                comps.insert(comps.begin(), value);
                comps.insert(comps.begin(), e);
                return mk(NodeKind::DictComp, std::move(comps), start);
            }
            is_dict = true;
            first = mk(NodeKind::KeyValue, {e, value}, first_start);
        } else {
            if (at(dialect_.comp_for)) {
                auto comps = parse_comprehensions();
                expect(Tok::RBrace, "'}'");
                comps.insert(comps.begin(), e);
                return mk(NodeKind::SetComp, std::move(comps), start);
            }
            first = e;
        }
    }
    std::vector<NodePtr> items{first};
    while (accept(Tok::Comma)) {
        if (at(Tok::RBrace)) break;
        items.push_back(is_dict ? parse_dict_item() : parse_star_expression());
    }
    expect(Tok::RBrace, "'}'");
    return mk(is_dict ? NodeKind::Dict : NodeKind::Set, std::move(items), start);
}

std::vector<NodePtr> ExprParser::parse_comprehensions() {
    std::vector<NodePtr> comps;
    while (at(dialect_.comp_for)) {
        std::size_t start = pos_;
        advance();
        NodePtr target = parse_target_list(true);
        expect(Tok::In, "'in'");
        std::vector<NodePtr> parts{target, parse_disjunction()};
        while (at(dialect_.comp_if)) {
            advance();
            parts.push_back(parse_disjunction());
        }
        comps.push_back(mk(NodeKind::Comprehension, std::move(parts), start));
    }
    return comps;
}

NodePtr ExprParser::parse_star_target() {
    std::size_t start = pos_;
    if (cur() == Tok::Star) {
        advance();
        NodePtr inner = parse_bitwise_or();
        return mk(NodeKind::Starred, {inner}, start);
    }
    return parse_bitwise_or();
}

NodePtr ExprParser::parse_target_list(bool allow_tuple) {
    std::size_t start = pos_;
    NodePtr first = parse_star_target();
    if (!allow_tuple || !at(Tok::Comma)) {
        check_target(*first, false, start);
        return first;
    }
    std::vector<NodePtr> elts{first};
    while (accept(Tok::Comma)) {
        if (at(Tok::In) || !starts_expression()) break;
        elts.push_back(parse_star_target());
    }
    NodePtr tuple = mk(NodeKind::Tuple, std::move(elts), start);
    check_target(*tuple, false, start);
    return tuple;
}

void ExprParser::check_target(const Node& node, bool allow_star, std::size_t at_tok) {
    switch (node.kind) {
    case NodeKind::Name:
    case NodeKind::Attribute:
    case NodeKind::Subscript:
        return;
    case NodeKind::Starred:
        if (!allow_star && node.children[0]->kind == NodeKind::Starred) break;
        check_target(*node.children[0], false, at_tok);
        return;
    case NodeKind::Tuple:
    case NodeKind::List:
        for (const auto& c : node.children) check_target(*c, true, at_tok);
        return;
    default:
        break;
    }
    throw ParseError("cannot assign to " + std::string(kind_name(node.kind)),
                     toks_[std::min(at_tok, toks_.size() - 1)].span);
}

std::vector<NodePtr> ExprParser::parse_call_args(Tok closer) {
    std::vector<NodePtr> args;
    while (!at(closer)) {
        std::size_t start = pos_;
        if (accept(Tok::Star)) {
            args.push_back(mk(NodeKind::Starred, {parse_expression()}, start));
        } else if (accept(Tok::Pow)) {
            args.push_back(mk(NodeKind::DoubleStarred, {parse_expression()}, start));
        } else if (cur() == Tok::Name && peek(1).kind == Tok::Assign) {
            std::string name = advance().text;
            advance();
            args.push_back(mk(NodeKind::Keyword, {parse_expression()}, start, name));
        } else {
            NodePtr e = parse_expression();
            if (at(dialect_.comp_for)) {
                auto comps = parse_comprehensions();
                comps.insert(comps.begin(), e);
                e = mk(NodeKind::GenExp, std::move(comps), start);
                if (!args.empty() || !at(closer)) {
                    fail("generator expression must be parenthesized unless it is the sole argument");
                }
            }
            args.push_back(e);
        }
        if (!accept(Tok::Comma)) break;
    }
    return args;
}

NodePtr ExprParser::parse_slice_item() {
    std::size_t start = pos_;
    NodePtr lower;
    if (!at(Tok::Colon)) {
        if (cur() == Tok::Star) return parse_star_expression();
        lower = parse_expression();
        if (!at(Tok::Colon)) return lower;
    }
    expect(Tok::Colon, "':'");
    NodePtr upper;
    NodePtr step;
    if (!at(Tok::Colon) && !at(Tok::Comma) && !at(Tok::RSqb)) upper = parse_expression();
    if (accept(Tok::Colon)) {
        if (!at(Tok::Comma) && !at(Tok::RSqb)) step = parse_expression();
    }
    return mk(NodeKind::Slice, {lower, upper, step}, start);
}

NodePtr ExprParser::parse_subscript_index() {
    std::size_t start = pos_;
    NodePtr first = parse_slice_item();
    if (!at(Tok::Comma)) return first;
    std::vector<NodePtr> elts{first};
    while (accept(Tok::Comma)) {
        if (at(Tok::RSqb)) break;
        elts.push_back(parse_slice_item());
    }
    return mk(NodeKind::Tuple, std::move(elts), start);
}

NodePtr ExprParser::parse_param(bool annotations) {
    std::size_t start = pos_;
    std::string kind;
    if (accept(Tok::Slash)) return mk(NodeKind::Param, {nullptr, nullptr}, start, "", "/");
    if (accept(Tok::Star)) {
        kind = "*";
        if (!at(Tok::Name)) return mk(NodeKind::Param, {nullptr, nullptr}, start, "", "*");
    } else if (accept(Tok::Pow)) {
        kind = "**";
    }
    std::string name = expect(Tok::Name, "parameter name").text;
    NodePtr annotation;
    NodePtr default_value;
    if (annotations && at(Tok::Colon)) {
        advance();
        annotation = parse_expression();
    }
    if (kind.empty() && at(Tok::Assign)) {
        advance();
        default_value = parse_expression();
    }
    return mk(NodeKind::Param, {annotation, default_value}, start, name, kind);
}

NodePtr ExprParser::parse_param_list(Tok closer, bool annotations) {
    std::size_t start = pos_;
    std::vector<NodePtr> params;
    while (!at(closer)) {
        params.push_back(parse_param(annotations));
        if (!accept(Tok::Comma)) break;
    }
    return mk(NodeKind::Params, std::move(params), start);
}

} // namespace simpy::detail
