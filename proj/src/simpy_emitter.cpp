#include "expr_printer.hpp"
#include "simpy/simpy.hpp"
#include "simpy_internal.hpp"

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

bool expression_led(NodeKind k) {
    return k == NodeKind::Assign || k == NodeKind::AugAssign || k == NodeKind::AnnAssign || k == NodeKind::ExprStmt;
}

Tok operator_role(const Node& s) {
    for (Tok t : operator_roles_longest_first()) {
        if (python_spelling(t) == s.value) return t;
    }
    malformed(s, "unknown operator '" + s.value + "'");
}

class SimpyEmitter {
public:
    std::vector<Piece> run(const Node& module) {
        if (module.kind != NodeKind::Module) malformed(module, "root is not a Module");
        statements(module.children);
        return std::move(p_.pieces());
    }

private:
    void statements(const std::vector<NodePtr>& stmts) {
        bool after_simple = false;
        for (const auto& s : stmts) {
            if (!s) throw EmitError("null statement");
            if (expression_led(s->kind) && after_simple) p_.put(Tok::LineSep);
            after_simple = statement(*s);
        }
    }

    void block(const Node& b) {
        if (b.kind != NodeKind::Block) malformed(b, "expected Block");
        bool code = false;
        for (const auto& s : b.children) code = code || (s && s->kind != NodeKind::Comment);
        if (!code) throw EmitError("block without statements");
        p_.put(Tok::BlockStart);
        statements(b.children);
        p_.put(Tok::BlockEnd);
    }

    void expr(const Node& n, int prec) { p_.expr(n, prec); }

    // Returns true for statements after which an expression needs `<line_sep>`.
    bool statement(const Node& s) {
        switch (s.kind) {
        case NodeKind::Comment:
            if (s.value.empty() || s.value.front() != '#') malformed(s, "comment text must start with '#'");
            p_.put_raw(Tok::Comment, s.value.substr(1));
            return true;
        case NodeKind::FunctionDef: {
            decorators(need(s, 0));
            p_.put(Tok::Def);
            p_.put(Tok::Name, s.value);
            p_.params(need(s, 1), true, true);
            if (const Node* r = s.child(2)) {
                p_.put(Tok::Arrow);
                expr(*r, kPrecLambda);
            }
            block(need(s, 3));
            return false;
        }
        case NodeKind::ClassDef: {
            decorators(need(s, 0));
            p_.put(Tok::Class);
            p_.put(Tok::Name, s.value);
            const Node& bases = need(s, 1);
            if (!bases.children.empty()) p_.call_args(bases, 0, false);
            block(need(s, 2));
            return false;
        }
        case NodeKind::If:
            p_.put(Tok::If);
            expr(need(s, 0), kPrecLambda);
            block(need(s, 1));
            for (const auto& e : need(s, 2).children) {
                if (!e || e->kind != NodeKind::Elif) malformed(s, "bad elif");
                p_.put(Tok::Elif);
                expr(need(*e, 0), kPrecLambda);
                block(need(*e, 1));
            }
            else_block(s.child(3));
            return false;
        case NodeKind::While:
            p_.put(Tok::While);
            expr(need(s, 0), kPrecLambda);
            block(need(s, 1));
            else_block(s.child(2));
            return false;
        case NodeKind::For:
            p_.put(Tok::For);
            expr(need(s, 0), kPrecTuple);
            p_.put(Tok::In);
            expr(need(s, 1), kPrecTuple);
            block(need(s, 2));
            else_block(s.child(3));
            return false;
        case NodeKind::With: {
            if (s.children.size() < 2) malformed(s, "no items");
            p_.put(Tok::With);
            for (std::size_t i = 0; i + 1 < s.children.size(); ++i) {
                const Node& item = need(s, i);
                if (item.kind != NodeKind::WithItem) malformed(s, "bad item");
                if (i > 0) p_.put_hard_space();
                expr(need(item, 0), kPrecLambda);
                if (const Node* t = item.child(1)) {
                    p_.put(Tok::As);
                    expr(*t, kPrecBitOr);
                }
            }
            block(*s.children.back());
            return false;
        }
        case NodeKind::Try: {
            p_.put(Tok::Try);
            block(need(s, 0));
            const Node& handlers = need(s, 1);
            for (const auto& h : handlers.children) {
                if (!h || h->kind != NodeKind::ExceptHandler) malformed(s, "bad handler");
                p_.put(Tok::Except);
                if (const Node* t = h->child(0)) {
                    expr(*t, kPrecLambda);
                    if (!h->value.empty()) {
                        p_.put(Tok::As);
                        p_.put(Tok::Name, h->value);
                    }
                } else if (!h->value.empty()) {
                    malformed(*h, "bound name without type");
                }
                block(need(*h, 1));
            }
            if (const Node* orelse = s.child(2)) {
                if (handlers.children.empty()) malformed(s, "else without except");
                p_.put(Tok::Else);
                block(*orelse);
            }
            if (const Node* fin = s.child(3)) {
                p_.put(Tok::Finally);
                block(*fin);
            }
            if (handlers.children.empty() && !s.child(3)) malformed(s, "no handlers");
            return false;
        }
        default:
            simple(s);
            return true;
        }
    }

    void else_block(const Node* orelse) {
        if (!orelse) return;
        p_.put(Tok::Else);
        block(*orelse);
    }

    void decorators(const Node& decos) {
        for (const auto& d : decos.children) {
            if (!d) malformed(decos, "null decorator");
            p_.put(Tok::Decorator);
            expr(*d, kPrecLambda);
        }
    }

    void names(const Node& s) {
        if (s.children.empty()) malformed(s, "no names");
        for (std::size_t i = 0; i < s.children.size(); ++i) {
            if (i > 0) p_.put(Tok::Comma);
            p_.put(Tok::Name, need(s, i).value);
        }
    }

    void aliases(const Node& s) {
        if (s.children.empty()) malformed(s, "no names");
        for (std::size_t i = 0; i < s.children.size(); ++i) {
            const Node& a = need(s, i);
            if (a.kind != NodeKind::Alias) malformed(a, "expected Alias");
            if (i > 0) p_.put(Tok::Comma);
            if (a.value == "*") {
                p_.put(Tok::Star);
                continue;
            }
            p_.put(Tok::Name, a.value);
            if (!a.aux.empty()) {
                p_.put(Tok::As);
                p_.put(Tok::Name, a.aux);
            }
        }
    }

    void simple(const Node& s) {
        switch (s.kind) {
        case NodeKind::Pass: p_.put(Tok::Pass); return;
        case NodeKind::Break: p_.put(Tok::Break); return;
        case NodeKind::Continue: p_.put(Tok::Continue); return;
        case NodeKind::Return:
            p_.put(Tok::Return);
            if (const Node* v = s.child(0)) expr(*v, kPrecTuple);
            return;
        case NodeKind::Raise:
            p_.put(Tok::Raise);
            if (const Node* e = s.child(0)) {
                expr(*e, kPrecLambda);
                if (const Node* c = s.child(1)) {
                    p_.put(Tok::RaiseFrom);
                    expr(*c, kPrecLambda);
                }
            } else if (s.child(1)) {
                malformed(s, "cause without exception");
            }
            return;
        case NodeKind::Assert:
            p_.put(Tok::Assert);
            expr(need(s, 0), kPrecLambda);
            if (const Node* m = s.child(1)) {
                p_.put(Tok::Comma);
                expr(*m, kPrecLambda);
            }
            return;
        case NodeKind::Assign:
            if (s.children.size() < 2) malformed(s, "no target");
            for (std::size_t i = 0; i + 1 < s.children.size(); ++i) {
                expr(need(s, i), kPrecTuple);
                p_.put(Tok::Assign);
            }
            expr(*s.children.back(), kPrecYield);
            return;
        case NodeKind::AugAssign:
            expr(need(s, 0), kPrecPrimary);
            p_.put(operator_role(s));
            expr(need(s, 1), kPrecYield);
            return;
        case NodeKind::AnnAssign:
            expr(need(s, 0), kPrecPrimary);
            p_.put(Tok::Colon);
            expr(need(s, 1), kPrecLambda);
            if (const Node* v = s.child(2)) {
                p_.put(Tok::Assign);
                expr(*v, kPrecYield);
            }
            return;
        case NodeKind::ExprStmt:
            expr(need(s, 0), kPrecYield);
            return;
        case NodeKind::Global:
            p_.put(Tok::Global);
            names(s);
            return;
        case NodeKind::Nonlocal:
            p_.put(Tok::Nonlocal);
            names(s);
            return;
        case NodeKind::Delete:
            if (s.children.empty()) malformed(s, "no targets");
            p_.put(Tok::Del);
            for (std::size_t i = 0; i < s.children.size(); ++i) {
                if (i > 0) p_.put(Tok::Comma);
                expr(need(s, i), kPrecBitOr);
            }
            return;
        case NodeKind::Import:
            p_.put(Tok::Import);
            aliases(s);
            return;
        case NodeKind::ImportFrom:
            if (s.level == 0 && s.value.empty()) malformed(s, "no module");
            p_.put(Tok::From);
            // Runs of three dots read as one ellipsis, as in Python.
            for (int i = 0; i < s.level / 3; ++i) p_.put(Tok::Ellipsis);
            for (int i = 0; i < s.level % 3; ++i) p_.put(Tok::Dot);
            if (!s.value.empty()) p_.put(Tok::Name, s.value);
            p_.put_hard_space();
            aliases(s);
            return;
        default:
            throw EmitError("not a statement: " + std::string(kind_name(s.kind)));
        }
    }

    ExprPrinter p_{true};
};

bool layout_role(Tok t) {
    return t == Tok::BlockStart || t == Tok::BlockEnd || t == Tok::LineSep || t == Tok::Concat;
}

// `a < name > b` would read back as a placeholder when `<name>` is one;
// parenthesizing the name keeps it an operand.
Piece paren(Tok role) {
    Piece p;
    p.role = role;
    return p;
}

std::vector<Piece> guard_placeholder_names(std::vector<Piece> pieces, const GrammarTable& table) {
    std::vector<Piece> out;
    out.reserve(pieces.size());
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        const Piece& p = pieces[i];
        if (p.role == Tok::Name && i > 0 && i + 1 < pieces.size() && pieces[i - 1].role == Tok::Lt &&
            pieces[i + 1].role == Tok::Gt && !p.hard_space && !pieces[i + 1].hard_space &&
            table.is_placeholder("<" + p.text + ">")) {
            out.push_back(paren(Tok::LPar));
            out.push_back(p);
            out.back().hard_space = false;
            out.push_back(paren(Tok::RPar));
            continue;
        }
        out.push_back(p);
    }
    return out;
}

bool role_only(const Piece& p) {
    return p.text.empty() && !p.raw;
}

std::string simpy_join(const std::vector<Piece>& input, const SimpyVocab& vocab) {
    std::vector<Piece> pieces = guard_placeholder_names(input, vocab.table());
    const auto& abbrevs = vocab.abbreviations();
    std::string out;
    auto append = [&](std::string_view text, bool hard_space) {
        if (text.empty()) return;
        if (!out.empty()) {
            char a = out.back();
            char b = text.front();
            bool quote = b == '"' || b == '\'';
            if (hard_space || (is_word_char(a) && (is_word_char(b) || quote))) out += ' ';
        }
        out += text;
    };
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        const Piece& p = pieces[i];
        if (p.raw) {
            append(vocab.placeholder(Tok::Comment).empty() ? "#" : vocab.placeholder(Tok::Comment), p.hard_space);
            out += escape_comment(p.text, vocab.table());
            continue;
        }
        if (role_only(p)) {
            const Abbreviation* hit = nullptr;
            for (const auto& a : abbrevs) {
                if (i + a.roles.size() > pieces.size()) continue;
                bool match = true;
                for (std::size_t k = 0; k < a.roles.size() && match; ++k) {
                    const Piece& q = pieces[i + k];
                    match = role_only(q) && q.role == a.roles[k] && (k == 0 || !q.hard_space);
                }
                if (match) {
                    hit = &a;
                    break;
                }
            }
            if (hit) {
                append(hit->placeholder, p.hard_space);
                i += hit->roles.size() - 1;
                continue;
            }
            const std::string& ph = vocab.placeholder(p.role);
            if (!ph.empty()) {
                append(ph, p.hard_space);
            } else if (!layout_role(p.role)) {
                append(python_spelling(p.role), p.hard_space);
            }
            continue;
        }
        append(p.text, p.hard_space);
    }
    return out;
}

} // namespace

std::string emit_simpy(const Ast& ast, const GrammarTable& table) {
    if (!ast.root) throw EmitError("empty tree");
    SimpyVocab vocab(table);
    return simpy_join(SimpyEmitter().run(*ast.root), vocab);
}

} // namespace simpy
