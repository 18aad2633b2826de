#include <map>

#include "expr_parser.hpp"
#include "simpy/python.hpp"

namespace simpy {

namespace {

using detail::Dialect;
using detail::ExprParser;

struct SplitTokens {
    std::vector<Token> tokens;
    // Inline comments keyed by the index of the NEWLINE that ends their
    // logical line.
    std::map<std::size_t, std::vector<Token>> inline_comments;
};

SplitTokens split_tokens(std::vector<Token> raw) {
    SplitTokens out;
    std::vector<Token> waiting;
    for (auto& t : raw) {
        if (t.kind == Tok::NL) continue;
        if (t.kind == Tok::Comment && t.inline_comment) {
            waiting.push_back(std::move(t));
            continue;
        }
        if (t.kind == Tok::Newline && !waiting.empty()) {
            out.inline_comments[out.tokens.size()] = std::move(waiting);
            waiting.clear();
        }
        out.tokens.push_back(std::move(t));
    }
    return out;
}

class PythonParser : public ExprParser {
public:
    explicit PythonParser(SplitTokens split)
        : ExprParser(std::move(split.tokens), Dialect{}), inline_(std::move(split.inline_comments)) {}

    NodePtr parse_module() {
        std::vector<NodePtr> body;
        while (cur() != Tok::End) {
            if (cur() == Tok::Indent) fail("unexpected indent");
            if (cur() == Tok::Dedent) fail("unexpected dedent");
            parse_statement(body);
        }
        return make_node(NodeKind::Module, std::move(body), {.span = span_from(0)});
    }

private:
    // Consumes a NEWLINE and returns the comments that trailed its line.
    std::vector<NodePtr> end_line(CommentPlacement placement) {
        std::size_t idx = pos_;
        expect(Tok::Newline, "end of line");
        std::vector<NodePtr> out;
        auto it = inline_.find(idx);
        if (it != inline_.end()) {
            for (const auto& c : it->second) out.push_back(make_comment(c.text, placement, c.span));
            inline_.erase(it);
        }
        return out;
    }

    NodePtr own_line_comment() {
        Token t = advance();
        return make_comment(t.text, CommentPlacement::OwnLine, t.span);
    }

    void parse_statement(std::vector<NodePtr>& out) {
        switch (cur()) {
        case Tok::Comment:
            out.push_back(own_line_comment());
            return;
        case Tok::Def: case Tok::Class: case Tok::At:
            parse_decorated(out);
            return;
        case Tok::If: out.push_back(parse_if()); return;
        case Tok::While: out.push_back(parse_while()); return;
        case Tok::For: out.push_back(parse_for()); return;
        case Tok::With: out.push_back(parse_with()); return;
        case Tok::Try: out.push_back(parse_try()); return;
        default:
            parse_simple_line(out);
        }
    }

    void parse_simple_line(std::vector<NodePtr>& out) {
        out.push_back(parse_simple());
        while (accept(Tok::Semi)) {
            if (cur() == Tok::Newline) break;
            out.push_back(parse_simple());
        }
        for (auto& c : end_line(CommentPlacement::Trailing)) out.push_back(std::move(c));
    }

    // Body after a header's ':'.
    NodePtr parse_block() {
        std::size_t start = pos_;
        std::vector<NodePtr> body;
        if (cur() != Tok::Newline) {
            parse_simple_line(body);
            return make_node(NodeKind::Block, std::move(body), {.span = span_from(start)});
        }
        body = end_line(CommentPlacement::Trailing);
        while (cur() == Tok::Comment) body.push_back(own_line_comment());
        expect(Tok::Indent, "an indented block");
        while (cur() != Tok::Dedent && cur() != Tok::End) parse_statement(body);
        expect(Tok::Dedent, "dedent");
        return make_node(NodeKind::Block, std::move(body), {.span = span_from(start)});
    }

    void parse_decorated(std::vector<NodePtr>& out) {
        std::size_t start = pos_;
        std::vector<NodePtr> decorators;
        while (cur() == Tok::At) {
            advance();
            decorators.push_back(parse_expression());
            for (auto& c : end_line(CommentPlacement::OwnLine)) out.push_back(std::move(c));
            while (cur() == Tok::Comment) out.push_back(own_line_comment());
        }
        auto decos = make_node(NodeKind::Decorators, std::move(decorators), {.span = span_from(start)});
        if (cur() == Tok::Def) {
            out.push_back(parse_funcdef(decos, start));
        } else if (cur() == Tok::Class) {
            out.push_back(parse_classdef(decos, start));
        } else {
            fail("expected 'def' or 'class' after decorator", {"def", "class"});
        }
    }

    NodePtr parse_funcdef(NodePtr decorators, std::size_t start) {
        expect(Tok::Def, "'def'");
        std::string name = expect(Tok::Name, "function name").text;
        expect(Tok::LPar, "'('");
        NodePtr params;
        {
            detail::NestGuard guard(nest_);
            params = parse_param_list(Tok::RPar, true);
            expect(Tok::RPar, "')'");
        }
        NodePtr returns;
        if (accept(Tok::Arrow)) returns = parse_expression();
        expect(Tok::Colon, "':'");
        NodePtr body = parse_block();
        return mk(NodeKind::FunctionDef, {decorators, params, returns, body}, start, name);
    }

    NodePtr parse_classdef(NodePtr decorators, std::size_t start) {
        expect(Tok::Class, "'class'");
        std::string name = expect(Tok::Name, "class name").text;
        std::size_t args_start = pos_;
        std::vector<NodePtr> args;
        if (accept(Tok::LPar)) {
            detail::NestGuard guard(nest_);
            args = parse_call_args(Tok::RPar);
            expect(Tok::RPar, "')'");
        }
        auto bases = mk(NodeKind::Arguments, std::move(args), args_start);
        expect(Tok::Colon, "':'");
        NodePtr body = parse_block();
        return mk(NodeKind::ClassDef, {decorators, bases, body}, start, name);
    }

    NodePtr parse_else_block() {
        expect(Tok::Colon, "':'");
        return parse_block();
    }

    NodePtr parse_if() {
        std::size_t start = pos_;
        expect(Tok::If, "'if'");
        NodePtr test = parse_named_expression();
        expect(Tok::Colon, "':'");
        NodePtr body = parse_block();
        std::size_t elifs_start = pos_;
        std::vector<NodePtr> elifs;
        while (cur() == Tok::Elif) {
            std::size_t elif_start = pos_;
            advance();
            NodePtr t = parse_named_expression();
            expect(Tok::Colon, "':'");
            NodePtr b = parse_block();
            elifs.push_back(mk(NodeKind::Elif, {t, b}, elif_start));
        }
        NodePtr elif_node = mk(NodeKind::Elifs, std::move(elifs), elifs_start);
        NodePtr orelse;
        if (accept(Tok::Else)) orelse = parse_else_block();
        return mk(NodeKind::If, {test, body, elif_node, orelse}, start);
    }

    NodePtr parse_while() {
        std::size_t start = pos_;
        expect(Tok::While, "'while'");
        NodePtr test = parse_named_expression();
        expect(Tok::Colon, "':'");
        NodePtr body = parse_block();
        NodePtr orelse;
        if (accept(Tok::Else)) orelse = parse_else_block();
        return mk(NodeKind::While, {test, body, orelse}, start);
    }

    NodePtr parse_for() {
        std::size_t start = pos_;
        expect(Tok::For, "'for'");
        NodePtr target = parse_target_list(true);
        expect(Tok::In, "'in'");
        NodePtr iter = parse_star_expressions();
        expect(Tok::Colon, "':'");
        NodePtr body = parse_block();
        NodePtr orelse;
        if (accept(Tok::Else)) orelse = parse_else_block();
        return mk(NodeKind::For, {target, iter, body, orelse}, start);
    }

    NodePtr parse_with() {
        std::size_t start = pos_;
        expect(Tok::With, "'with'");
        std::vector<NodePtr> items;
        do {
            std::size_t item_start = pos_;
            NodePtr expr = parse_expression();
            NodePtr target;
            if (accept(Tok::As)) target = parse_target_list(false);
            items.push_back(mk(NodeKind::WithItem, {expr, target}, item_start));
        } while (accept(Tok::Comma));
        expect(Tok::Colon, "':'");
        items.push_back(parse_block());
        return mk(NodeKind::With, std::move(items), start);
    }

    NodePtr parse_try() {
        std::size_t start = pos_;
        expect(Tok::Try, "'try'");
        expect(Tok::Colon, "':'");
        NodePtr body = parse_block();
        std::size_t handlers_start = pos_;
        std::vector<NodePtr> handlers;
        while (cur() == Tok::Except) {
            std::size_t h_start = pos_;
            advance();
            NodePtr type;
            std::string name;
            if (cur() != Tok::Colon) {
                type = parse_expression();
                if (accept(Tok::As)) name = expect(Tok::Name, "exception name").text;
            }
            expect(Tok::Colon, "':'");
            NodePtr b = parse_block();
            handlers.push_back(mk(NodeKind::ExceptHandler, {type, b}, h_start, name));
        }
        NodePtr handler_node = mk(NodeKind::Handlers, std::move(handlers), handlers_start);
        NodePtr orelse;
        NodePtr finalbody;
        if (!handler_node->children.empty() && accept(Tok::Else)) orelse = parse_else_block();
        if (accept(Tok::Finally)) finalbody = parse_else_block();
        if (handler_node->children.empty() && !finalbody) {
            fail("expected 'except' or 'finally' block", {"except", "finally"});
        }
        return mk(NodeKind::Try, {body, handler_node, orelse, finalbody}, start);
    }

    NodePtr parse_dotted_name() {
        std::string name = expect(Tok::Name, "module name").text;
        while (accept(Tok::Dot)) name += "." + expect(Tok::Name, "name").text;
        return make_leaf(NodeKind::Name, name);
    }

    NodePtr parse_alias(bool dotted) {
        std::size_t start = pos_;
        std::string name = dotted ? parse_dotted_name()->value : expect(Tok::Name, "name").text;
        std::string asname;
        if (accept(Tok::As)) asname = expect(Tok::Name, "name").text;
        return mk(NodeKind::Alias, {}, start, name, asname);
    }

    NodePtr parse_import_from(std::size_t start) {
        expect(Tok::From, "'from'");
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
        if (cur() == Tok::Name) module = parse_dotted_name()->value;
        if (level == 0 && module.empty()) fail("expected module name", {"module name"});
        expect(Tok::Import, "'import'");
        std::vector<NodePtr> names;
        if (cur() == Tok::Star) {
            std::size_t s = pos_;
            advance();
            names.push_back(mk(NodeKind::Alias, {}, s, "*"));
        } else if (accept(Tok::LPar)) {
            detail::NestGuard guard(nest_);
            do {
                if (cur() == Tok::RPar) break;
                names.push_back(parse_alias(false));
            } while (accept(Tok::Comma));
            expect(Tok::RPar, "')'");
        } else {
            do {
                names.push_back(parse_alias(false));
            } while (accept(Tok::Comma));
        }
        if (names.empty()) fail("expected imported name");
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
        if (cur() == Tok::Yield) return parse_yield();
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
                if (accept(Tok::From)) cause = parse_expression();
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
            if (targets.empty()) fail("expected target after 'del'");
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
            return parse_expression_statement();
        }
    }

    NodePtr parse_expression_statement() {
        std::size_t start = pos_;
        NodePtr first = parse_rhs();
        if (at(Tok::Colon)) {
            if (first->kind != NodeKind::Name && first->kind != NodeKind::Attribute &&
                first->kind != NodeKind::Subscript) {
                fail("illegal target for annotation");
            }
            advance();
            NodePtr annotation = parse_expression();
            NodePtr value;
            if (accept(Tok::Assign)) value = parse_rhs();
            return mk(NodeKind::AnnAssign, {first, annotation, value}, start);
        }
        if (is_aug_assign(cur())) {
            if (first->kind != NodeKind::Name && first->kind != NodeKind::Attribute &&
                first->kind != NodeKind::Subscript) {
                fail("illegal expression for augmented assignment");
            }
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

    std::map<std::size_t, std::vector<Token>> inline_;
};

} // namespace

Ast parse_python(std::string_view source) {
    PythonParser parser(split_tokens(lex_python(source)));
    return Ast(parser.parse_module());
}

} // namespace simpy
