// String literal payloads. Plain literals are kept verbatim; f-strings are
// split into literal text and replacement fields whose expressions are
// parsed like any other Python expression.

#include "expr_parser.hpp"
#include "lex_util.hpp"
#include "simpy/python.hpp"

namespace simpy {

namespace {

class FieldExprParser : public detail::ExprParser {
public:
    using ExprParser::ExprParser;

    NodePtr run() {
        NodePtr e = parse_paren_atom();
        if (cur() == Tok::Newline) advance();
        if (cur() != Tok::End) fail("unexpected token in f-string expression");
        return e;
    }
};

class FStringScanner {
public:
    FStringScanner(std::string_view literal, SourceSpan span, std::size_t body_start, std::size_t body_end,
                   bool raw)
        : lit_(literal), span_(span), pos_(body_start), end_(body_end), raw_(raw) {}

    std::vector<NodePtr> parts(bool in_spec) {
        std::vector<NodePtr> out;
        std::string text;
        auto flush = [&] {
            if (!text.empty()) out.push_back(make_leaf(NodeKind::FStrText, std::move(text)));
            text.clear();
        };
        while (pos_ < end_) {
            char c = lit_[pos_];
            if (c == '\\' && !raw_) {
                text += c;
                ++pos_;
                if (pos_ < end_ && lit_[pos_] == 'N' && pos_ + 1 < end_ && lit_[pos_ + 1] == '{') {
                    std::size_t close = lit_.find('}', pos_);
                    if (close == std::string_view::npos || close >= end_) error("unterminated \\N escape");
                    text.append(lit_.substr(pos_, close + 1 - pos_));
                    pos_ = close + 1;
                } else if (pos_ < end_ && lit_[pos_] != '{' && lit_[pos_] != '}') {
                    text += lit_[pos_++];
                }
                continue;
            }
            if (c == '{') {
                if (!in_spec && pos_ + 1 < end_ && lit_[pos_ + 1] == '{') {
                    text += "{{";
                    pos_ += 2;
                    continue;
                }
                flush();
                out.push_back(field());
                continue;
            }
            if (c == '}') {
                if (in_spec) break;
                if (pos_ + 1 < end_ && lit_[pos_ + 1] == '}') {
                    text += "}}";
                    pos_ += 2;
                    continue;
                }
                error("single '}' is not allowed in f-string");
            }
            text += c;
            ++pos_;
        }
        flush();
        return out;
    }

private:
    [[noreturn]] void error(const std::string& msg) {
        throw ParseError("f-string: " + msg, span_);
    }

    // Offset just past the expression part of a replacement field starting
    // at pos_ (after '{').
    std::size_t scan_expression_end() {
        int depth = 0;
        std::size_t p = pos_;
        while (p < end_) {
            char c = lit_[p];
            if (c == '\'' || c == '"') {
                std::size_t q = p;
                try {
                    p = lex::scan_string(lit_.substr(0, end_), q);
                } catch (const LexError&) {
                    error("unterminated string in expression");
                }
                continue;
            }
            if (c == '\\') error("backslash in expression part");
            if (c == '#') error("'#' in expression part");
            if (c == '(' || c == '[' || c == '{') ++depth;
            if (c == ')' || c == ']' || (c == '}' && depth > 0)) {
                --depth;
                ++p;
                continue;
            }
            if (depth == 0) {
                if (c == '}' || c == ':') return p;
                if (c == '!' && p + 1 < end_ && lit_[p + 1] != '=') return p;
                if (c == '=' && p + 1 < end_) {
                    char prev = p > pos_ ? lit_[p - 1] : '\0';
                    char next = lit_[p + 1];
                    bool part_of_op = next == '=' || prev == '=' || prev == '!' || prev == '<' || prev == '>';
                    if (!part_of_op) return p;
                }
            }
            ++p;
        }
        error("expecting '}'");
    }

    NodePtr field() {
        ++pos_;  // '{'
        std::size_t expr_start = pos_;
        std::size_t expr_end = scan_expression_end();
        std::string_view expr_text = lit_.substr(expr_start, expr_end - expr_start);
        if (expr_text.find_first_not_of(" \t\r\n\f") == std::string_view::npos) error("empty expression");
        pos_ = expr_end;
        std::string self_doc;
        if (lit_[pos_] == '=') {
            ++pos_;
            while (pos_ < end_ && (lit_[pos_] == ' ' || lit_[pos_] == '\t')) ++pos_;
            self_doc = std::string(lit_.substr(expr_start, pos_ - expr_start));
        }
        std::string conversion;
        if (pos_ < end_ && lit_[pos_] == '!') {
            ++pos_;
            if (pos_ >= end_ || (lit_[pos_] != 'r' && lit_[pos_] != 's' && lit_[pos_] != 'a')) {
                error("invalid conversion character");
            }
            conversion = std::string(1, lit_[pos_++]);
        }
        NodePtr spec;
        if (pos_ < end_ && lit_[pos_] == ':') {
            ++pos_;
            spec = make_node(NodeKind::FStrSpec, parts(true));
        }
        if (pos_ >= end_ || lit_[pos_] != '}') error("expecting '}'");
        ++pos_;

        std::string wrapped = "(" + std::string(expr_text) + ")";
        NodePtr expr;
        try {
            auto toks = lex_python(wrapped);
            std::erase_if(toks, [](const Token& t) { return t.kind == Tok::NL; });
            FieldExprParser p(std::move(toks), detail::Dialect{});
            expr = p.run();
        } catch (const LexError& e) {
            error(e.what());
        } catch (const ParseError& e) {
            error(e.what());
        }
        return make_node(NodeKind::FStrExpr, {expr, spec}, {.value = conversion, .aux = self_doc});
    }

    std::string_view lit_;
    SourceSpan span_;
    std::size_t pos_;
    std::size_t end_;
    bool raw_;
};

} // namespace

NodePtr parse_string_literal(std::string_view literal, SourceSpan span) {
    std::size_t q = literal.find_first_of("'\"");
    if (q == std::string_view::npos) throw ParseError("malformed string literal", span);
    std::string_view prefix = literal.substr(0, q);
    bool is_f = prefix.find_first_of("fF") != std::string_view::npos;
    if (!is_f) return make_node(NodeKind::StrPart, {}, {.value = std::string(literal), .span = span});

    char qc = literal[q];
    bool triple = literal.size() >= q + 6 && literal[q + 1] == qc && literal[q + 2] == qc;
    std::size_t qlen = triple ? 3 : 1;
    if (literal.size() < q + 2 * qlen) throw ParseError("malformed string literal", span);
    bool raw = prefix.find_first_of("rR") != std::string_view::npos;
    FStringScanner scanner(literal, span, q + qlen, literal.size() - qlen, raw);
    auto parts = scanner.parts(false);
    return make_node(NodeKind::FString, std::move(parts),
                     {.value = std::string(prefix), .aux = std::string(qlen, qc), .span = span});
}

} // namespace simpy
