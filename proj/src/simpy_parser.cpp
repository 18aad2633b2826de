#include "expr_parser.hpp"
#include "simpy/simpy.hpp"
#include "simpy_internal.hpp"

namespace simpy {

namespace {

using detail::Dialect;
using detail::ExprParser;

constexpr Dialect kSimpyDialect{Tok::IfExp, Tok::ElseExp, Tok::CompFor, Tok::CompIf, Tok::Concat};

// Roles that can open a statement without a preceding `<line_sep>`.
bool statement_initial(Tok t) {
    switch (t) {
    case Tok::Def: case Tok::Class: case Tok::Decorator:
    case Tok::If: case Tok::While: case Tok::For: case Tok::With: case Tok::Try:
    case Tok::Return: case Tok::Pass: case Tok::Break: case Tok::Continue: case Tok::Raise:
    case Tok::Global: case Tok::Nonlocal: case Tok::Del: case Tok::Assert:
    case Tok::Import: case Tok::From: case Tok::Comment:
        return true;
    default:
        return false;
    }
}

bool is_compound_start(Tok t) {
    switch (t) {
    case Tok::Def: case Tok::Class: case Tok::Decorator:
    case Tok::If: case Tok::While: case Tok::For: case Tok::With: case Tok::Try:
        return true;
    default:
        return false;
    }
}

class SimpyParser : public ExprParser {
public:
    explicit SimpyParser(std::vector<Token> toks) : ExprParser(std::move(toks), kSimpyDialect) {}

    NodePtr parse_module() {
        std::vector<NodePtr> body;
        statements(body);
        if (cur() == Tok::BlockEnd) fail("<block_end> without an open block");
        return make_node(NodeKind::Module, std::move(body), {.span = span_from(0)});
    }

private:
    // Statements up to a `<block_end>` or the end of input (neither consumed).
    void statements(std::vector<NodePtr>& out) {
        while (true) {
            while (accept(Tok::LineSep)) {}
            if (cur() == Tok::End || cur() == Tok::BlockEnd) return;
            bool compound = is_compound_start(cur());
            if (compound) {
                compound_statement(out);
                continue;
            }
            if (cur() == Tok::Comment) {
                Token t = advance();
                out.push_back(make_comment("#" + t.text, CommentPlacement::OwnLine, t.span));
            } else {
                out.push_back(parse_simple());
            }
            if (accept(Tok::LineSep)) continue;
            Tok next = cur();
            if (next != Tok::End && next != Tok::BlockEnd && !statement_initial(next)) {
                fail("expected <line_sep> between statements", {"<line_sep>"});
            }
        }
    }

    NodePtr parse_block() {
        std::size_t start = pos_;
        expect(Tok::BlockStart, "<block_start>");
        std::vector<NodePtr> body;
        statements(body);
        bool code = false;
        for (const auto& s : body) code = code || s->kind != NodeKind::Comment;
        if (!code) fail("block without statements");
        accept(Tok::BlockEnd);  // end of input closes open blocks
        return make_node(NodeKind::Block, std::move(body), {.span = span_from(start)});
    }

    // The current token opens a space-separated item: drop its separator so
    // the item's own grammar sees it as a fresh start.
    void enter_item(bool first) {
        if (!first && !peek().space_before) fail("expected a space between items");
        toks_[pos_].space_before = false;
    }

    void compound_statement(std::vector<NodePtr>& out) {
        switch (cur()) {
        case Tok::Def: case Tok::Class: case Tok::Decorator: out.push_back(parse_decorated()); return;
        case Tok::If: out.push_back(parse_if()); return;
        case Tok::While: out.push_back(parse_while()); return;
        case Tok::For: out.push_back(parse_for()); return;
        case Tok::With: out.push_back(parse_with()); return;
        case Tok::Try: out.push_back(parse_try()); return;
        default: fail("expected a statement");
        }
    }

    NodePtr parse_decorated() {
        std::size_t start = pos_;
        std::vector<NodePtr> decorators;
        while (accept(Tok::Decorator)) decorators.push_back(parse_named_expression());
        auto decos = make_node(NodeKind::Decorators, std::move(decorators), {.span = span_from(start)});
        if (cur() == Tok::Def) return parse_funcdef(decos, start);
        if (cur() == Tok::Class) return parse_classdef(decos, start);
        fail("expected <def_stmt> or <class_stmt> after decorator", {"<def_stmt>", "<class_stmt>"});
    }

    NodePtr parse_funcdef(NodePtr decorators, std::size_t start) {
        expect(Tok::Def, "<def_stmt>");
        std::string name = expect(Tok::Name, "function name").text;
        std::size_t params_start = pos_;
        std::vector<NodePtr> params;
        stop_at_space_ = true;
        while (cur() != Tok::Arrow && cur() != Tok::BlockStart && cur() != Tok::End) {
            enter_item(false);
            params.push_back(parse_param(true));
        }
        stop_at_space_ = false;
        auto param_node = mk(NodeKind::Params, std::move(params), params_start);
        NodePtr returns;
        if (accept(Tok::Arrow)) returns = parse_expression();
        NodePtr body = parse_block();
        return mk(NodeKind::FunctionDef, {decorators, param_node, returns, body}, start, name);
    }

    NodePtr parse_classdef(NodePtr decorators, std::size_t start) {
        expect(Tok::Class, "<class_stmt>");
        std::string name = expect(Tok::Name, "class name").text;
        std::size_t args_start = pos_;
        std::vector<NodePtr> args;
        if (accept(Tok::LPar)) {
            detail::NestGuard guard(nest_);
            args = parse_call_args(Tok::RPar);
            expect(Tok::RPar, "')'");
        }
        auto bases = mk(NodeKind::Arguments, std::move(args), args_start);
        NodePtr body = parse_block();
        return mk(NodeKind::ClassDef, {decorators, bases, body}, start, name);
    }

    NodePtr parse_if() {
        std::size_t start = pos_;
        expect(Tok::If, "<if_stmt>");
        NodePtr test = parse_named_expression();
        NodePtr body = parse_block();
        std::size_t elifs_start = pos_;
        std::vector<NodePtr> elifs;
        while (cur() == Tok::Elif) {
            std::size_t elif_start = pos_;
            advance();
            NodePtr t = parse_named_expression();
            NodePtr b = parse_block();
            elifs.push_back(mk(NodeKind::Elif, {t, b}, elif_start));
        }
        NodePtr elif_node = mk(NodeKind::Elifs, std::move(elifs), elifs_start);
        NodePtr orelse;
        if (accept(Tok::Else)) orelse = parse_block();
        return mk(NodeKind::If, {test, body, elif_node, orelse}, start);
    }

    NodePtr parse_while() {
        std::size_t start = pos_;
        expect(Tok::While, "<while_stmt>");
        NodePtr test = parse_named_expression();
        NodePtr body = parse_block();
        NodePtr orelse;
        if (accept(Tok::Else)) orelse = parse_block();
        return mk(NodeKind::While, {test, body, orelse}, start);
    }

    NodePtr parse_for() {
        std::size_t start = pos_;
        expect(Tok::For, "<for_stmt>");
        NodePtr target = parse_target_list(true);
        expect(Tok::In, "<in>");
        NodePtr iter = parse_star_expressions();
        NodePtr body = parse_block();
        NodePtr orelse;
        if (accept(Tok::Else)) orelse = parse_block();
        return mk(NodeKind::For, {target, iter, body, orelse}, start);
    }

    NodePtr parse_with() {
        std::size_t start = pos_;
        expect(Tok::With, "<with_stmt>");
        std::vector<NodePtr> items;
        stop_at_space_ = true;
        do {
            enter_item(items.empty());
            std::size_t item_start = pos_;
            NodePtr expr = parse_expression();
            NodePtr target;
            if (accept(Tok::As)) target = parse_target_list(false);
            items.push_back(mk(NodeKind::WithItem, {expr, target}, item_start));
        } while (cur() != Tok::BlockStart && cur() != Tok::End);
        stop_at_space_ = false;
        items.push_back(parse_block());
        return mk(NodeKind::With, std::move(items), start);
    }

    NodePtr parse_try() {
        std::size_t start = pos_;
        expect(Tok::Try, "<try_stmt>");
        NodePtr body = parse_block();
        std::size_t handlers_start = pos_;
        std::vector<NodePtr> handlers;
        while (cur() == Tok::Except) {
            std::size_t h_start = pos_;
            advance();
            NodePtr type;
            std::string name;
            if (cur() != Tok::BlockStart) {
                type = parse_expression();
                if (accept(Tok::As)) name = expect(Tok::Name, "exception name").text;
            }
            NodePtr b = parse_block();
            handlers.push_back(mk(NodeKind::ExceptHandler, {type, b}, h_start, name));
        }
        NodePtr handler_node = mk(NodeKind::Handlers, std::move(handlers), handlers_start);
        NodePtr orelse;
        NodePtr finalbody;
        if (!handler_node->children.empty() && accept(Tok::Else)) orelse = parse_block();
        if (accept(Tok::Finally)) finalbody = parse_block();
        if (handler_node->children.empty() && !finalbody) {
            fail("expected <except_stmt> or <finally_stmt> block", {"<except_stmt>", "<finally_stmt>"});
        }
        return mk(NodeKind::Try, {body, handler_node, orelse, finalbody}, start);
    }

    std::string parse_dotted_name() {
        std::string name = expect(Tok::Name, "module name").text;
        while (cur() == Tok::Dot && !peek().space_before) {
            advance();
            name += "." + expect(Tok::Name, "name").text;
        }
        return name;
    }

    NodePtr parse_alias(bool dotted) {
        std::size_t start = pos_;
        std::string name = dotted ? parse_dotted_name() : expect(Tok::Name, "name").text;
        std::string asname;
        if (accept(Tok::As)) asname = expect(Tok::Name, "name").text;
        return mk(NodeKind::Alias, {}, start, name, asname);
    }

    // `<from_stmt>..module name<as>x,y`: the targets follow a space; the
    // `import` keyword is dropped but tolerated.
    NodePtr parse_import_from(std::size_t start) {
        expect(Tok::From, "<from_stmt>");
        int level = 0;
        while (true) {
            if (accept(Tok::Dot)) {
                level += 1;
            } else if (accept(Tok::Ellipsis)) {
                level += 3;
            } else {
                break;
            }
        }
        std::string module;
        if (cur() == Tok::Name && (level == 0 || !peek().space_before)) module = parse_dotted_name();
        if (level == 0 && module.empty()) fail("expected module name", {"module name"});
        if (cur() == Tok::Import) {
            advance();
        } else if (!peek().space_before) {
            fail("expected a space before the imported names");
        }
        std::vector<NodePtr> names;
        if (cur() == Tok::Star) {
            std::size_t s = pos_;
            advance();
            names.push_back(mk(NodeKind::Alias, {}, s, "*"));
        } else {
            do {
                names.push_back(parse_alias(false));
            } while (accept(Tok::Comma));
        }
        return make_node(NodeKind::ImportFrom, std::move(names),
                         {.value = module, .level = level, .span = span_from(start)});
    }

    std::vector<NodePtr> parse_name_list() {
        std::vector<NodePtr> names;
        do {
            std::size_t s = pos_;
            names.push_back(mk(NodeKind::Name, {}, s, expect(Tok::Name, "name").text));
        } while (accept(Tok::Comma));
        return names;
    }

    NodePtr parse_rhs() {
        if (cur() == Tok::Yield || cur() == Tok::YieldFrom) return parse_yield();
        return parse_star_expressions();
    }

    NodePtr parse_simple() {
        std::size_t start = pos_;
        switch (cur()) {
        case Tok::Pass: advance(); return mk(NodeKind::Pass, {}, start);
        case Tok::Break: advance(); return mk(NodeKind::Break, {}, start);
        case Tok::Continue: advance(); return mk(NodeKind::Continue, {}, start);
        case Tok::Return: {
            advance();
            NodePtr value;
            if (starts_expression()) value = parse_star_expressions();
            return mk(NodeKind::Return, {value}, start);
        }
        case Tok::Raise: {
            advance();
            NodePtr exc;
            NodePtr cause;
            if (starts_expression()) {
                exc = parse_expression();
                if (accept(Tok::RaiseFrom)) cause = parse_expression();
            }
            return mk(NodeKind::Raise, {exc, cause}, start);
        }
        case Tok::Global:
        case Tok::Nonlocal: {
            NodeKind k = cur() == Tok::Global ? NodeKind::Global : NodeKind::Nonlocal;
            advance();
            return mk(k, parse_name_list(), start);
        }
        case Tok::Del: {
            advance();
            std::vector<NodePtr> targets;
            do {
                if (!starts_expression()) break;
                std::size_t t_start = pos_;
                NodePtr t = parse_bitwise_or();
                check_target(*t, false, t_start);
                targets.push_back(t);
            } while (accept(Tok::Comma));
            if (targets.empty()) fail("expected target after <del_stmt>");
            return mk(NodeKind::Delete, std::move(targets), start);
        }
        case Tok::Assert: {
            advance();
            NodePtr test = parse_expression();
            NodePtr msg;
            if (accept(Tok::Comma)) msg = parse_expression();
            return mk(NodeKind::Assert, {test, msg}, start);
        }
        case Tok::Import: {
            advance();
            std::vector<NodePtr> names;
            do {
                names.push_back(parse_alias(true));
            } while (accept(Tok::Comma));
            return mk(NodeKind::Import, std::move(names), start);
        }
        case Tok::From:
            return parse_import_from(start);
        default:
            if (!starts_expression()) fail("expected a statement");
            return parse_expression_statement();
        }
    }

    NodePtr parse_expression_statement() {
        std::size_t start = pos_;
        NodePtr first = parse_rhs();
        auto simple_target = [&] {
            return first->kind == NodeKind::Name || first->kind == NodeKind::Attribute ||
                   first->kind == NodeKind::Subscript;
        };
        if (at(Tok::Colon)) {
            if (!simple_target()) fail("illegal target for annotation");
            advance();
            NodePtr annotation = parse_expression();
            NodePtr value;
            if (accept(Tok::Assign)) value = parse_rhs();
            return mk(NodeKind::AnnAssign, {first, annotation, value}, start);
        }
        if (is_aug_assign(cur())) {
            if (!simple_target()) fail("illegal expression for augmented assignment");
            std::string op = detail::op_text(advance().kind);
            NodePtr value = parse_rhs();
            return mk(NodeKind::AugAssign, {first, value}, start, op);
        }
        if (at(Tok::Assign)) {
            std::vector<NodePtr> parts{first};
            while (accept(Tok::Assign)) parts.push_back(parse_rhs());
            for (std::size_t i = 0; i + 1 < parts.size(); ++i) check_target(*parts[i], false, start);
            return mk(NodeKind::Assign, std::move(parts), start);
        }
        return mk(NodeKind::ExprStmt, {first}, start);
    }
};

} // namespace

Ast parse_simpy(std::string_view source, const GrammarTable& table, SimpyParseStats* stats) {
    detail::SimpyVocab vocab(table);
    SimpyParser parser(detail::simpy_roles(lex_simpy(source, table), vocab));
    Ast ast(parser.parse_module());
    if (stats != nullptr) {
        stats->max_lookahead = parser.stats().max_lookahead;
        stats->backtracks = parser.stats().backtracks;
    }
    return ast;
}

} // namespace simpy
