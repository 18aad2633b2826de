#include "expr_printer.hpp"

#include <stdexcept>

namespace simpy::detail {

namespace {

Tok role_of(std::string_view op) {
    if (op == "not in") return Tok::NotIn;
    if (op == "is not") return Tok::IsNot;
    for (Tok t : operator_roles_longest_first()) {
        if (python_spelling(t) == op) return t;
    }
    Tok kw = keyword_role(op);
    if (kw != Tok::End) return kw;
    throw EmitError("unknown operator '" + std::string(op) + "'");
}

int binop_prec(std::string_view op) {
    if (op == "|") return kPrecBitOr;
    if (op == "^") return kPrecBitXor;
    if (op == "&") return kPrecBitAnd;
    if (op == "<<" || op == ">>") return kPrecShift;
    if (op == "+" || op == "-") return kPrecArith;
    if (op == "*" || op == "/" || op == "//" || op == "%" || op == "@") return kPrecTerm;
    if (op == "**") return kPrecPower;
    throw EmitError("unknown binary operator '" + std::string(op) + "'");
}

[[noreturn]] void malformed(const Node& node, const char* what) {
    throw EmitError(std::string("malformed ") + std::string(kind_name(node.kind)) + ": " + what);
}

const Node& need(const Node& node, std::size_t i) {
    const Node* c = node.child(i);
    if (c == nullptr) malformed(node, "missing child");
    return *c;
}

} // namespace

bool is_word_char(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_' ||
           static_cast<unsigned char>(c) >= 0x80;
}

int precedence(const Node& node) {
    switch (node.kind) {
    case NodeKind::Tuple: return node.children.empty() ? kPrecPrimary : kPrecTuple;
    case NodeKind::Yield:
    case NodeKind::YieldFrom: return kPrecYield;
    case NodeKind::Lambda: return kPrecLambda;
    case NodeKind::IfExp: return kPrecTest;
    case NodeKind::BoolOp: return node.value == "or" ? kPrecOr : kPrecAnd;
    case NodeKind::UnaryOp: return node.value == "not" ? kPrecNot : kPrecUnary;
    case NodeKind::Compare: return kPrecCompare;
    case NodeKind::BinOp: return binop_prec(node.value);
    default: return kPrecPrimary;
    }
}

void ExprPrinter::put(Tok role, std::string text, bool space_before, bool space_after) {
    Piece p;
    p.role = role;
    p.text = std::move(text);
    p.space_before = space_before || pending_space_;
    p.hard_space = hard_pending_;
    pending_space_ = space_after;
    hard_pending_ = false;
    pieces_.push_back(std::move(p));
}

void ExprPrinter::put_raw(Tok role, std::string text) {
    put(role, std::move(text));
    pieces_.back().raw = true;
}

void ExprPrinter::sequence(const std::vector<NodePtr>& items, std::size_t from, int min_prec) {
    for (std::size_t i = from; i < items.size(); ++i) {
        if (i > from) comma();
        if (!items[i]) throw EmitError("missing sequence element");
        expr(*items[i], min_prec);
    }
}

void ExprPrinter::tuple(const Node& node, bool bare) {
    if (!bare) put(Tok::LPar);
    sequence(node.children, 0, kPrecLambda);
    if (node.children.size() == 1) put(Tok::Comma);
    if (!bare) put(Tok::RPar);
}

void ExprPrinter::call_args(const Node& node, std::size_t from, bool genexp_shorthand) {
    put(Tok::LPar);
    const bool sole_genexp = genexp_shorthand && node.children.size() == from + 1 && node.children[from] &&
                             node.children[from]->kind == NodeKind::GenExp;
    if (sole_genexp) {
        const Node& g = *node.children[from];
        expr(need(g, 0), kPrecLambda);
        comprehensions(g, 1);
    } else {
        for (std::size_t i = from; i < node.children.size(); ++i) {
            if (i > from) comma();
            const Node& arg = need(node, i);
            switch (arg.kind) {
            case NodeKind::Keyword:
                put(Tok::Name, arg.value);
                put(Tok::Assign);
                expr(need(arg, 0), kPrecLambda);
                break;
            case NodeKind::Starred:
                put(Tok::Star);
                expr(need(arg, 0), kPrecBitOr);
                break;
            case NodeKind::DoubleStarred:
                put(Tok::Pow);
                expr(need(arg, 0), kPrecBitOr);
                break;
            default:
                expr(arg, kPrecLambda);
            }
        }
    }
    put(Tok::RPar);
}

void ExprPrinter::comprehensions(const Node& node, std::size_t from) {
    if (node.children.size() <= from) malformed(node, "no comprehension clause");
    for (std::size_t i = from; i < node.children.size(); ++i) {
        const Node& comp = need(node, i);
        if (comp.kind != NodeKind::Comprehension || comp.children.size() < 2) malformed(node, "bad clause");
        put(Tok::CompFor, {}, true, true);
        expr(need(comp, 0), kPrecTuple);
        put(Tok::In, {}, true, true);
        expr(need(comp, 1), kPrecOr);
        for (std::size_t j = 2; j < comp.children.size(); ++j) {
            put(Tok::CompIf, {}, true, true);
            expr(need(comp, j), kPrecOr);
        }
    }
}

void ExprPrinter::slice(const Node& node) {
    if (node.child(0)) expr(*node.child(0), kPrecLambda);
    put(Tok::Colon);
    if (node.child(1)) expr(*node.child(1), kPrecLambda);
    if (node.child(2)) {
        put(Tok::Colon);
        expr(*node.child(2), kPrecLambda);
    }
}

void ExprPrinter::subscript_index(const Node& index) {
    if (index.kind == NodeKind::Tuple && !index.children.empty()) {
        for (std::size_t i = 0; i < index.children.size(); ++i) {
            if (i > 0) comma();
            const Node& e = need(index, i);
            if (e.kind == NodeKind::Slice) {
                slice(e);
            } else {
                expr(e, kPrecLambda);
            }
        }
        if (index.children.size() == 1) put(Tok::Comma);
    } else if (index.kind == NodeKind::Slice) {
        slice(index);
    } else {
        expr(index, kPrecLambda);
    }
}

std::string string_part_text(const Node& part) {
    if (part.kind == NodeKind::StrPart) return part.value;
    if (part.kind != NodeKind::FString) malformed(part, "not a string part");
    std::string out = part.value + part.aux;
    auto body = [&](auto&& self, const Node& holder) -> void {
        for (const auto& c : holder.children) {
            if (!c) malformed(holder, "missing part");
            if (c->kind == NodeKind::FStrText) {
                out += c->value;
                continue;
            }
            if (c->kind != NodeKind::FStrExpr) malformed(holder, "bad f-string part");
            out += '{';
            if (!c->aux.empty()) {
                out += c->aux;
            } else {
                std::string e = python_expr_text(need(*c, 0), kPrecTest);
                if (!e.empty() && e.front() == '{') out += ' ';
                out += e;
            }
            if (!c->value.empty()) out += "!" + c->value;
            if (const Node* spec = c->child(1)) {
                out += ':';
                self(self, *spec);
            }
            out += '}';
        }
    };
    body(body, part);
    out += part.aux;
    return out;
}

void ExprPrinter::strings(const Node& node) {
    if (node.children.empty()) malformed(node, "no parts");
    for (std::size_t i = 0; i < node.children.size(); ++i) {
        if (i > 0 && simpy_) put(Tok::Concat);
        put(Tok::String, string_part_text(need(node, i)), i > 0);
    }
}

void ExprPrinter::params(const Node& params, bool annotations, bool simpy_def) {
    for (std::size_t i = 0; i < params.children.size(); ++i) {
        const Node& p = need(params, i);
        if (p.kind != NodeKind::Param) malformed(params, "not a Param");
        if (simpy_def) {
            put_hard_space();
        } else if (i > 0) {
            comma();
        }
        if (p.aux == "/") {
            put(Tok::Slash);
            continue;
        }
        if (p.aux == "*") put(Tok::Star);
        if (p.aux == "**") put(Tok::Pow);
        if (!p.value.empty()) {
            put(Tok::Name, p.value);
        } else if (p.aux != "*") {
            malformed(p, "unnamed parameter");
        }
        const Node* ann = p.child(0);
        const Node* def = p.child(1);
        if (ann) {
            if (!annotations) malformed(p, "annotation in lambda");
            put(Tok::Colon, {}, false, true);
            expr(*ann, kPrecLambda);
        }
        if (def) {
            put(Tok::Assign, {}, ann != nullptr, ann != nullptr);
            expr(*def, kPrecLambda);
        }
    }
}

void ExprPrinter::expr(const Node& node, int min_prec) {
    const int prec = precedence(node);
    // Tuples supply their own parentheses.
    const bool paren = prec < min_prec && node.kind != NodeKind::Tuple;
    if (paren) put(Tok::LPar);
    switch (node.kind) {
    case NodeKind::Name:
        put(Tok::Name, node.value);
        break;
    case NodeKind::IntLit:
    case NodeKind::FloatLit:
        put(Tok::Number, node.value);
        break;
    case NodeKind::BoolLit:
        put(node.value == "True" ? Tok::True : Tok::False);
        break;
    case NodeKind::NoneLit:
        put(Tok::None);
        break;
    case NodeKind::EllipsisLit:
        put(Tok::Ellipsis);
        break;
    case NodeKind::StringLit:
        strings(node);
        break;
    case NodeKind::Tuple:
        tuple(node, min_prec <= kPrecTuple && !node.children.empty());
        break;
    case NodeKind::List:
        put(Tok::LSqb);
        sequence(node.children, 0, kPrecLambda);
        put(Tok::RSqb);
        break;
    case NodeKind::Set:
        if (node.children.empty()) throw EmitError("empty Set has no literal form");
        put(Tok::LBrace);
        sequence(node.children, 0, kPrecLambda);
        put(Tok::RBrace);
        break;
    case NodeKind::Dict:
        put(Tok::LBrace);
        for (std::size_t i = 0; i < node.children.size(); ++i) {
            if (i > 0) comma();
            const Node& kv = need(node, i);
            if (kv.kind != NodeKind::KeyValue) malformed(node, "item is not KeyValue");
            if (kv.child(0)) {
                expr(*kv.child(0), kPrecLambda);
                put(Tok::Colon, {}, false, true);
                expr(need(kv, 1), kPrecLambda);
            } else {
                put(Tok::Pow);
                expr(need(kv, 1), kPrecBitOr);
            }
        }
        put(Tok::RBrace);
        break;
    case NodeKind::ListComp:
    case NodeKind::SetComp:
    case NodeKind::GenExp: {
        Tok open = node.kind == NodeKind::ListComp ? Tok::LSqb : node.kind == NodeKind::SetComp ? Tok::LBrace : Tok::LPar;
        Tok close = node.kind == NodeKind::ListComp ? Tok::RSqb : node.kind == NodeKind::SetComp ? Tok::RBrace : Tok::RPar;
        put(open);
        expr(need(node, 0), kPrecLambda);
        comprehensions(node, 1);
        put(close);
        break;
    }
    case NodeKind::DictComp:
        put(Tok::LBrace);
        expr(need(node, 0), kPrecLambda);
        put(Tok::Colon, {}, false, true);
        expr(need(node, 1), kPrecLambda);
        comprehensions(node, 2);
        put(Tok::RBrace);
        break;
    case NodeKind::BinOp: {
        const bool right_assoc = node.value == "**";
        expr(need(node, 0), right_assoc ? kPrecPrimary : prec);
        put(role_of(node.value), {}, true, true);
        expr(need(node, 1), right_assoc ? kPrecUnary : prec + 1);
        break;
    }
    case NodeKind::UnaryOp:
        if (node.value == "not") {
            put(Tok::Not, {}, false, true);
        } else {
            put(role_of(node.value));
        }
        expr(need(node, 0), prec);
        break;
    case NodeKind::BoolOp: {
        if (node.children.size() < 2) malformed(node, "fewer than two operands");
        Tok role = node.value == "or" ? Tok::Or : Tok::And;
        for (std::size_t i = 0; i < node.children.size(); ++i) {
            if (i > 0) put(role, {}, true, true);
            expr(need(node, i), prec + 1);
        }
        break;
    }
    case NodeKind::Compare:
        if (node.children.size() < 2) malformed(node, "no comparator");
        expr(need(node, 0), kPrecBitOr);
        for (std::size_t i = 1; i < node.children.size(); ++i) {
            const Node& c = need(node, i);
            if (c.kind != NodeKind::Comparator) malformed(node, "not a Comparator");
            put(role_of(c.value), {}, true, true);
            expr(need(c, 0), kPrecBitOr);
        }
        break;
    case NodeKind::Call:
        expr(need(node, 0), kPrecPrimary);
        call_args(node, 1);
        break;
    case NodeKind::Attribute: {
        const Node& value = need(node, 0);
        const bool numeric = value.kind == NodeKind::IntLit || value.kind == NodeKind::FloatLit;
        if (numeric) put(Tok::LPar);
        expr(value, kPrecPrimary);
        if (numeric) put(Tok::RPar);
        put(Tok::Dot);
        put(Tok::Name, node.value);
        break;
    }
    case NodeKind::Subscript:
        expr(need(node, 0), kPrecPrimary);
        put(Tok::LSqb);
        subscript_index(need(node, 1));
        put(Tok::RSqb);
        break;
    case NodeKind::Slice:
        throw EmitError("Slice outside of a subscript");
    case NodeKind::Lambda: {
        const Node& ps = need(node, 0);
        put(Tok::Lambda, {}, false, !ps.children.empty());
        params(ps, false, false);
        put(Tok::Colon, {}, false, true);
        expr(need(node, 1), kPrecLambda);
        break;
    }
    case NodeKind::IfExp:
        expr(need(node, 0), kPrecOr);
        put(Tok::IfExp, {}, true, true);
        expr(need(node, 1), kPrecOr);
        put(Tok::ElseExp, {}, true, true);
        expr(need(node, 2), kPrecLambda);
        break;
    case NodeKind::Starred:
        put(Tok::Star);
        expr(need(node, 0), kPrecBitOr);
        break;
    case NodeKind::Yield:
        if (const Node* v = node.child(0)) {
            put(Tok::Yield, {}, false, true);
            expr(*v, kPrecTuple);
        } else {
            put(Tok::Yield);
        }
        break;
    case NodeKind::YieldFrom:
        put(Tok::YieldFrom, {}, false, true);
        expr(need(node, 0), kPrecLambda);
        break;
    default:
        throw EmitError("not an expression: " + std::string(kind_name(node.kind)));
    }
    if (paren) put(Tok::RPar);
}

std::string python_join(const std::vector<Piece>& pieces) {
    std::string out;
    for (const auto& p : pieces) {
        std::string_view text = p.text.empty() ? python_spelling(p.role) : std::string_view(p.text);
        if (p.role == Tok::Concat) continue;
        if (!out.empty() && !text.empty() &&
            (p.space_before || p.hard_space || (is_word_char(out.back()) && is_word_char(text.front())))) {
            out += ' ';
        }
        out += text;
    }
    return out;
}

std::string python_expr_text(const Node& node, int min_prec) {
    ExprPrinter printer(false);
    printer.expr(node, min_prec);
    return python_join(printer.pieces());
}

} // namespace simpy::detail
