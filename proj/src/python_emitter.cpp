#include "expr_printer.hpp"
#include "simpy/python.hpp"

namespace simpy {

namespace {

using namespace detail;

[[noreturn]] void malformed(const Node& node, const std::string& what) {
    throw EmitError("malformed " + std::string(kind_name(node.kind)) + ": " + what);
}

const Node& need(const Node& node, std::size_t i) {
    const Node* c = node.child(i);
    if (c == nullptr) malformed(node, "missing child " + std::to_string(i));
    return *c;
}

std::string ex(const Node& node, int min_prec) {
    return python_expr_text(node, min_prec);
}

bool has_code(const Node& block) {
    for (const auto& s : block.children) {
        if (s && s->kind != NodeKind::Comment) return true;
    }
    return false;
}

class PythonEmitter {
public:
    std::string run(const Node& module) {
        if (module.kind != NodeKind::Module) malformed(module, "root is not a Module");
        statements(module.children, 0);
        std::string out;
        for (const auto& l : lines_) {
            out += l;
            out += '\n';
        }
        return out;
    }

private:
    void line(int depth, std::string text, bool attachable) {
        lines_.push_back(std::string(static_cast<std::size_t>(depth) * 4, ' ') + std::move(text));
        can_attach_ = attachable;
    }

    void statements(const std::vector<NodePtr>& stmts, int depth) {
        for (const auto& s : stmts) {
            if (!s) throw EmitError("null statement");
            statement(*s, depth);
        }
    }

    void block(const Node& b, int depth) {
        if (b.kind != NodeKind::Block) malformed(b, "expected Block");
        if (!has_code(b)) throw EmitError("block without statements");
        statements(b.children, depth + 1);
        can_attach_ = false;
    }

    void header(int depth, std::string text, const Node& body) {
        line(depth, std::move(text) + ":", true);
        block(body, depth);
    }

    void comment(const Node& c, int depth) {
        if (c.value.empty() || c.value.front() != '#') malformed(c, "comment text must start with '#'");
        if (c.placement == CommentPlacement::Trailing && can_attach_ && !lines_.empty()) {
            lines_.back() += "  " + c.value;
            can_attach_ = false;
            return;
        }
        line(depth, c.value, false);
    }

    void statement(const Node& s, int depth) {
        switch (s.kind) {
        case NodeKind::Comment:
            comment(s, depth);
            return;
        case NodeKind::FunctionDef: {
            decorators(need(s, 0), depth);
            ExprPrinter p(false);
            p.put(Tok::Def, {}, false, true);
            p.put(Tok::Name, s.value);
            p.put(Tok::LPar);
            p.params(need(s, 1), true, false);
            p.put(Tok::RPar);
            if (const Node* r = s.child(2)) {
                p.put(Tok::Arrow, {}, true, true);
                p.expr(*r, kPrecLambda);
            }
            header(depth, python_join(p.pieces()), need(s, 3));
            return;
        }
        case NodeKind::ClassDef: {
            decorators(need(s, 0), depth);
            ExprPrinter p(false);
            p.put(Tok::Class, {}, false, true);
            p.put(Tok::Name, s.value);
            const Node& bases = need(s, 1);
            if (!bases.children.empty()) p.call_args(bases, 0, false);
            header(depth, python_join(p.pieces()), need(s, 2));
            return;
        }
        case NodeKind::If: {
            header(depth, "if " + ex(need(s, 0), kPrecLambda), need(s, 1));
            for (const auto& e : need(s, 2).children) {
                if (!e || e->kind != NodeKind::Elif) malformed(s, "bad elif");
                header(depth, "elif " + ex(need(*e, 0), kPrecLambda), need(*e, 1));
            }
            if (const Node* orelse = s.child(3)) header(depth, "else", *orelse);
            return;
        }
        case NodeKind::While:
            header(depth, "while " + ex(need(s, 0), kPrecLambda), need(s, 1));
            if (const Node* orelse = s.child(2)) header(depth, "else", *orelse);
            return;
        case NodeKind::For:
            header(depth, "for " + ex(need(s, 0), kPrecTuple) + " in " + ex(need(s, 1), kPrecTuple), need(s, 2));
            if (const Node* orelse = s.child(3)) header(depth, "else", *orelse);
            return;
        case NodeKind::With: {
            if (s.children.size() < 2) malformed(s, "no items");
            std::string text = "with ";
            for (std::size_t i = 0; i + 1 < s.children.size(); ++i) {
                const Node& item = need(s, i);
                if (item.kind != NodeKind::WithItem) malformed(s, "bad item");
                if (i > 0) text += ", ";
                text += ex(need(item, 0), kPrecLambda);
                if (const Node* t = item.child(1)) text += " as " + ex(*t, kPrecBitOr);
            }
            header(depth, text, *s.children.back());
            return;
        }
        case NodeKind::Try: {
            header(depth, "try", need(s, 0));
            const Node& handlers = need(s, 1);
            for (const auto& h : handlers.children) {
                if (!h || h->kind != NodeKind::ExceptHandler) malformed(s, "bad handler");
                std::string text = "except";
                if (const Node* t = h->child(0)) {
                    text += " " + ex(*t, kPrecLambda);
                    if (!h->value.empty()) text += " as " + h->value;
                } else if (!h->value.empty()) {
                    malformed(*h, "bound name without type");
                }
                header(depth, text, need(*h, 1));
            }
            if (const Node* orelse = s.child(2)) {
                if (handlers.children.empty()) malformed(s, "else without except");
                header(depth, "else", *orelse);
            }
            if (const Node* fin = s.child(3)) header(depth, "finally", *fin);
            if (handlers.children.empty() && !s.child(3)) malformed(s, "no handlers");
            return;
        }
        default:
            line(depth, simple(s), true);
        }
    }

    void decorators(const Node& decos, int depth) {
        for (const auto& d : decos.children) {
            if (!d) malformed(decos, "null decorator");
            line(depth, "@" + ex(*d, kPrecLambda), true);
        }
    }

    std::string names(const Node& s) {
        std::string out;
        for (std::size_t i = 0; i < s.children.size(); ++i) {
            if (i > 0) out += ", ";
            out += need(s, i).value;
        }
        if (out.empty()) malformed(s, "no names");
        return out;
    }

    static std::string alias(const Node& a) {
        if (a.kind != NodeKind::Alias) malformed(a, "expected Alias");
        return a.aux.empty() ? a.value : a.value + " as " + a.aux;
    }

    std::string simple(const Node& s) {
        switch (s.kind) {
        case NodeKind::Pass: return "pass";
        case NodeKind::Break: return "break";
        case NodeKind::Continue: return "continue";
        case NodeKind::Return:
            if (const Node* v = s.child(0)) return "return " + ex(*v, kPrecTuple);
            return "return";
        case NodeKind::Raise: {
            std::string out = "raise";
            if (const Node* e = s.child(0)) {
                out += " " + ex(*e, kPrecLambda);
                if (const Node* c = s.child(1)) out += " from " + ex(*c, kPrecLambda);
            } else if (s.child(1)) {
                malformed(s, "cause without exception");
            }
            return out;
        }
        case NodeKind::Assert: {
            std::string out = "assert " + ex(need(s, 0), kPrecLambda);
            if (const Node* m = s.child(1)) out += ", " + ex(*m, kPrecLambda);
            return out;
        }
        case NodeKind::Assign: {
            if (s.children.size() < 2) malformed(s, "no target");
            std::string out;
            for (std::size_t i = 0; i + 1 < s.children.size(); ++i) out += ex(need(s, i), kPrecTuple) + " = ";
            return out + ex(*s.children.back(), kPrecYield);
        }
        case NodeKind::AugAssign:
            return ex(need(s, 0), kPrecPrimary) + " " + s.value + " " + ex(need(s, 1), kPrecYield);
        case NodeKind::AnnAssign: {
            std::string out = ex(need(s, 0), kPrecPrimary) + ": " + ex(need(s, 1), kPrecLambda);
            if (const Node* v = s.child(2)) out += " = " + ex(*v, kPrecYield);
            return out;
        }
        case NodeKind::ExprStmt:
            return ex(need(s, 0), kPrecYield);
        case NodeKind::Global: return "global " + names(s);
        case NodeKind::Nonlocal: return "nonlocal " + names(s);
        case NodeKind::Delete: {
            std::string out = "del ";
            for (std::size_t i = 0; i < s.children.size(); ++i) {
                if (i > 0) out += ", ";
                out += ex(need(s, i), kPrecBitOr);
            }
            if (s.children.empty()) malformed(s, "no targets");
            return out;
        }
        case NodeKind::Import: {
            std::string out = "import ";
            for (std::size_t i = 0; i < s.children.size(); ++i) {
                if (i > 0) out += ", ";
                out += alias(need(s, i));
            }
            if (s.children.empty()) malformed(s, "no names");
            return out;
        }
        case NodeKind::ImportFrom: {
            if (s.level == 0 && s.value.empty()) malformed(s, "no module");
            std::string out = "from " + std::string(static_cast<std::size_t>(s.level), '.') + s.value + " import ";
            for (std::size_t i = 0; i < s.children.size(); ++i) {
                if (i > 0) out += ", ";
                out += alias(need(s, i));
            }
            if (s.children.empty()) malformed(s, "no names");
            return out;
        }
        default:
            throw EmitError("not a statement: " + std::string(kind_name(s.kind)));
        }
    }

    std::vector<std::string> lines_;
    bool can_attach_ = false;
};

} // namespace

std::string emit_python(const Ast& ast) {
    if (!ast.root) throw EmitError("empty tree");
    return PythonEmitter().run(*ast.root);
}

} // namespace simpy
