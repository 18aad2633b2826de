#include "simpy/fuzz.hpp"

#include <random>

#include "simpy/converter.hpp"
#include "simpy/python.hpp"
#include "simpy/simpy.hpp"

namespace simpy {

namespace {

// Identifiers include a few that collide with placeholder names, which SimPy
// has to escape inside comparison chains.
const std::vector<std::string> kNames = {"x", "y", "z", "foo", "bar", "data", "i", "n",
                                         "_tmp", "ge", "true", "block_end", "if_exp", "café"};
const std::vector<std::string> kInts = {"0", "1", "7", "42", "0x1F", "1_000", "0o17", "0b101"};
const std::vector<std::string> kFloats = {"1.5", "2e10", "0.25", "3.", ".5", "1e-3"};
const std::vector<std::string> kStrings = {"'abc'", "\"x y\"", "'<line_sep>'", "\"it's\"", "r'\\d+'",
                                           "'''multi\nline'''", "\"tab\\t\"", "''", "b'raw'", "u'uni'"};
const std::vector<std::string> kComments = {"# note", "#", "# <line_sep> inside", "# back\\slash",
                                            "# <if_stmt>x<block_start>", "#\ttab", "# \\<escaped>"};
const std::vector<std::string> kBinOps = {"+", "-", "*", "/", "//", "%", "**", "<<", ">>", "&", "|", "^", "@"};
const std::vector<std::string> kCmpOps = {"<", ">", "==", "!=", "<=", ">=", "in", "not in", "is", "is not"};
const std::vector<std::string> kAugOps = {"+=", "-=", "*=", "/=", "//=", "%=", "**=", ">>=", "<<=", "&=", "|=", "^=", "@="};
const std::vector<std::string> kModules = {"os", "os.path", "a.b.c", "json"};

NodePtr node(NodeKind kind, std::vector<NodePtr> children = {}, std::string value = {}, std::string aux = {}) {
    return make_node(kind, std::move(children), {.value = std::move(value), .aux = std::move(aux)});
}

class Generator {
public:
    Generator(std::uint64_t seed, const FuzzOptions& options) : rng_(seed), opt_(options) {}

    Ast module() {
        std::vector<NodePtr> body;
        if (!opt_.empty_modules) body = statements(opt_.max_block_depth, 0, 1 + below(opt_.max_statements + 1));
        return Ast(node(NodeKind::Module, std::move(body)));
    }

private:
    std::size_t below(std::size_t n) { return static_cast<std::size_t>(rng_() % n); }
    bool chance(int percent) { return static_cast<int>(below(100)) < percent; }
    template <class T>
    const T& pick(const std::vector<T>& v) { return v[below(v.size())]; }

    NodePtr name() { return node(NodeKind::Name, {}, pick(kNames)); }

    NodePtr string_part() {
        if (chance(25)) {
            // f'a{x}b' shaped parts; the field is a plain name or attribute.
            std::vector<NodePtr> parts;
            if (chance(50)) parts.push_back(node(NodeKind::FStrText, {}, "a "));
            NodePtr field = name();
            if (chance(30)) field = node(NodeKind::Attribute, {field}, "real");
            NodePtr spec;
            if (chance(30)) spec = node(NodeKind::FStrSpec, {node(NodeKind::FStrText, {}, ">10")});
            parts.push_back(node(NodeKind::FStrExpr, {field, spec}, chance(20) ? "r" : ""));
            if (chance(50)) parts.push_back(node(NodeKind::FStrText, {}, "!"));
            return node(NodeKind::FString, std::move(parts), "f", "'");
        }
        return node(NodeKind::StrPart, {}, pick(kStrings));
    }

    NodePtr strings() {
        std::size_t n = chance(80) ? 1 : 2 + below(2);
        std::vector<NodePtr> parts;
        for (std::size_t i = 0; i < n; ++i) {
            NodePtr p = string_part();
            // bytes never concatenate with text
            while (n > 1 && p->value.front() == 'b') p = string_part();
            parts.push_back(p);
        }
        return node(NodeKind::StringLit, std::move(parts));
    }

    NodePtr atom() {
        switch (below(8)) {
        case 0: case 1: case 2: return name();
        case 3: return node(NodeKind::IntLit, {}, pick(kInts));
        case 4: return node(NodeKind::FloatLit, {}, pick(kFloats));
        case 5: return node(NodeKind::BoolLit, {}, chance(50) ? "True" : "False");
        case 6: return chance(70) ? node(NodeKind::NoneLit) : node(NodeKind::EllipsisLit);
        default: return strings();
        }
    }

    std::vector<NodePtr> exprs(int depth, std::size_t lo, std::size_t hi, bool starred) {
        std::vector<NodePtr> out;
        std::size_t n = lo + below(hi - lo + 1);
        for (std::size_t i = 0; i < n; ++i) {
            if (starred && chance(15)) {
                out.push_back(node(NodeKind::Starred, {expr(depth - 1)}));
            } else {
                out.push_back(expr(depth - 1));
            }
        }
        return out;
    }

    NodePtr comprehension(int depth) {
        NodePtr target = chance(70) ? name() : node(NodeKind::Tuple, {name(), name()});
        std::vector<NodePtr> kids{target, expr(depth - 1)};
        for (std::size_t i = below(3); i > 0; --i) kids.push_back(expr(depth - 1));
        return node(NodeKind::Comprehension, std::move(kids));
    }

    std::vector<NodePtr> comprehensions(int depth) {
        std::vector<NodePtr> out{comprehension(depth)};
        if (chance(20)) out.push_back(comprehension(depth));
        return out;
    }

    NodePtr params(bool annotations, int depth) {
        std::vector<NodePtr> ps;
        int counter = 0;
        auto pname = [&] { return "p" + std::to_string(counter++); };
        auto ann = [&]() -> NodePtr { return annotations && chance(30) ? expr(depth - 1) : nullptr; };
        bool defaults = false;
        std::size_t positional = below(4);
        for (std::size_t i = 0; i < positional; ++i) {
            defaults = defaults || chance(30);
            NodePtr a = ann();
            ps.push_back(node(NodeKind::Param, {a, defaults ? expr(depth - 1) : nullptr}, pname()));
        }
        if (positional > 0 && chance(15)) {
            ps.insert(ps.begin() + static_cast<std::ptrdiff_t>(1 + below(positional)),
                      node(NodeKind::Param, {nullptr, nullptr}, "", "/"));
        }
        std::size_t kwonly = chance(30) ? 1 + below(2) : 0;
        if (chance(30)) {
            NodePtr a = ann();
            ps.push_back(node(NodeKind::Param, {a, nullptr}, pname(), "*"));
        } else if (kwonly > 0) {
            ps.push_back(node(NodeKind::Param, {nullptr, nullptr}, "", "*"));
        } else {
            kwonly = 0;
        }
        for (std::size_t i = 0; i < kwonly; ++i) {
            NodePtr a = ann();
            ps.push_back(node(NodeKind::Param, {a, chance(50) ? expr(depth - 1) : nullptr}, pname()));
        }
        if (chance(20)) {
            NodePtr a = ann();
            ps.push_back(node(NodeKind::Param, {a, nullptr}, pname(), "**"));
        }
        return node(NodeKind::Params, std::move(ps));
    }

    std::vector<NodePtr> call_args(int depth) {
        std::vector<NodePtr> args = exprs(depth, 0, 2, true);
        for (std::size_t i = below(3); i > 0; --i) {
            if (chance(75)) {
                args.push_back(node(NodeKind::Keyword, {expr(depth - 1)}, "k" + std::to_string(i)));
            } else {
                args.push_back(node(NodeKind::DoubleStarred, {expr(depth - 1)}));
            }
        }
        return args;
    }

    NodePtr slice(int depth) {
        auto part = [&]() -> NodePtr { return chance(50) ? expr(depth - 1) : nullptr; };
        NodePtr lo = part();
        NodePtr hi = part();
        NodePtr step = chance(30) ? expr(depth - 1) : nullptr;
        return node(NodeKind::Slice, {lo, hi, step});
    }

    // Starred subscript elements are 3.11 syntax; the subset stops at 3.10.
    static NodePtr unstar(NodePtr e) {
        if (!e || e->kind != NodeKind::Tuple) return e;
        std::vector<NodePtr> kids;
        for (const auto& c : e->children) kids.push_back(c && c->kind == NodeKind::Starred ? c->children[0] : c);
        return with_children(*e, std::move(kids));
    }

    NodePtr index(int depth) {
        switch (below(4)) {
        case 0: return slice(depth);
        case 1: return node(NodeKind::Tuple, {chance(50) ? slice(depth) : expr(depth - 1), expr(depth - 1)});
        default: return unstar(expr(depth - 1));
        }
    }

public:
    NodePtr expr(int depth) {
        if (depth <= 0 || chance(25)) return atom();
        switch (below(21)) {
        case 0: case 1:
            return node(NodeKind::BinOp, {expr(depth - 1), expr(depth - 1)}, pick(kBinOps));
        case 2: {
            static const std::vector<std::string> ops = {"-", "+", "~", "not"};
            return node(NodeKind::UnaryOp, {expr(depth - 1)}, pick(ops));
        }
        case 3:
            return node(NodeKind::BoolOp, exprs(depth, 2, 3, false), chance(50) ? "and" : "or");
        case 4: {
            std::vector<NodePtr> kids{expr(depth - 1)};
            for (std::size_t i = 1 + below(3); i > 0; --i) {
                kids.push_back(node(NodeKind::Comparator, {expr(depth - 1)}, pick(kCmpOps)));
            }
            return node(NodeKind::Compare, std::move(kids));
        }
        case 5: case 6: {
            std::vector<NodePtr> kids{chance(70) ? name() : node(NodeKind::Attribute, {name()}, "m")};
            auto args = call_args(depth);
            if (args.empty() && chance(20)) {
                args.push_back(node(NodeKind::GenExp, {expr(depth - 1), comprehension(depth)}));
            }
            kids.insert(kids.end(), args.begin(), args.end());
            return node(NodeKind::Call, std::move(kids));
        }
        case 7: return node(NodeKind::Attribute, {expr(depth - 1)}, pick(kNames));
        case 8: return node(NodeKind::Subscript, {expr(depth - 1), index(depth)});
        case 9: return node(NodeKind::Tuple, exprs(depth, 0, 3, true));
        case 10: return node(NodeKind::List, exprs(depth, 0, 3, true));
        case 11: return node(NodeKind::Set, exprs(depth, 1, 3, true));
        case 12: {
            std::vector<NodePtr> kvs;
            for (std::size_t i = below(3); i > 0; --i) {
                NodePtr key = chance(80) ? expr(depth - 1) : nullptr;
                kvs.push_back(node(NodeKind::KeyValue, {key, expr(depth - 1)}));
            }
            return node(NodeKind::Dict, std::move(kvs));
        }
        case 13: {
            static const std::vector<NodeKind> kinds = {NodeKind::ListComp, NodeKind::SetComp, NodeKind::GenExp};
            std::vector<NodePtr> kids{expr(depth - 1)};
            for (auto& c : comprehensions(depth)) kids.push_back(c);
            return node(pick(kinds), std::move(kids));
        }
        case 14: {
            std::vector<NodePtr> kids{expr(depth - 1), expr(depth - 1)};
            for (auto& c : comprehensions(depth)) kids.push_back(c);
            return node(NodeKind::DictComp, std::move(kids));
        }
        case 15: return node(NodeKind::Lambda, {params(false, depth), expr(depth - 1)});
        case 16: return node(NodeKind::IfExp, {expr(depth - 1), expr(depth - 1), expr(depth - 1)});
        case 17: {
            // `a < name > b` with a placeholder-named operand.
            static const std::vector<std::string> tricky = {"ge", "block_end", "true", "if_exp"};
            return node(NodeKind::Compare, {name(), node(NodeKind::Comparator, {node(NodeKind::Name, {}, pick(tricky))}, "<"),
                                            node(NodeKind::Comparator, {name()}, ">")});
        }
        default:
            return atom();
        }
    }

private:
    NodePtr simple_target(int depth) {
        switch (below(4)) {
        case 0: return node(NodeKind::Attribute, {name()}, pick(kNames));
        case 1: return node(NodeKind::Subscript, {name(), unstar(expr(depth - 1))});
        default: return name();
        }
    }

    NodePtr assign_target(int depth) {
        if (chance(20)) {
            std::vector<NodePtr> elts{simple_target(depth), simple_target(depth)};
            if (chance(30)) elts[below(2)] = node(NodeKind::Starred, {name()});
            return node(chance(70) ? NodeKind::Tuple : NodeKind::List, std::move(elts));
        }
        return simple_target(depth);
    }

    NodePtr rhs(int depth) {
        if (chance(8)) return node(NodeKind::Yield, {chance(70) ? expr(depth) : nullptr});
        if (chance(4)) return node(NodeKind::YieldFrom, {expr(depth)});
        if (chance(15)) return node(NodeKind::Tuple, exprs(depth + 1, 2, 3, true));
        return expr(depth);
    }

    NodePtr alias(bool dotted) {
        std::string n = dotted ? pick(kModules) : pick(kNames);
        return node(NodeKind::Alias, {}, n, chance(30) ? pick(kNames) : "");
    }

    NodePtr simple_statement() {
        int d = opt_.max_expr_depth;
        switch (below(20)) {
        case 0: return node(NodeKind::Pass);
        case 1: return node(NodeKind::Break);
        case 2: return node(NodeKind::Continue);
        case 3: return node(NodeKind::Return, {chance(70) ? rhs(d) : nullptr});
        case 4: {
            NodePtr exc = chance(80) ? expr(d) : nullptr;
            NodePtr cause = exc && chance(40) ? expr(d) : nullptr;
            return node(NodeKind::Raise, {exc, cause});
        }
        case 5: return node(NodeKind::Assert, {expr(d), chance(40) ? expr(d) : nullptr});
        case 6: return node(chance(50) ? NodeKind::Global : NodeKind::Nonlocal, {name(), name()});
        case 7: return node(NodeKind::Delete, {simple_target(d)});
        case 8: {
            std::vector<NodePtr> names{alias(true)};
            if (chance(30)) names.push_back(alias(true));
            return node(NodeKind::Import, std::move(names));
        }
        case 9: {
            int level = static_cast<int>(below(5));
            std::string module = level == 0 || chance(50) ? pick(kModules) : "";
            std::vector<NodePtr> names;
            if (chance(15)) {
                names.push_back(node(NodeKind::Alias, {}, "*"));
            } else {
                names.push_back(alias(false));
                if (chance(40)) names.push_back(alias(false));
            }
            return make_node(NodeKind::ImportFrom, std::move(names), {.value = module, .level = level});
        }
        case 10: return make_comment(pick(kComments), CommentPlacement::OwnLine);
        case 11: case 12: {
            std::vector<NodePtr> kids{assign_target(d)};
            if (chance(15)) kids.push_back(assign_target(d));
            kids.push_back(rhs(d));
            return node(NodeKind::Assign, std::move(kids));
        }
        case 13: return node(NodeKind::AugAssign, {simple_target(d), rhs(d)}, pick(kAugOps));
        case 14: return node(NodeKind::AnnAssign, {simple_target(d), expr(d), chance(60) ? rhs(d) : nullptr});
        default: return node(NodeKind::ExprStmt, {rhs(d)});
        }
    }

    NodePtr block(int depth) {
        std::vector<NodePtr> body = statements(depth - 1, 1, 1 + below(3));
        return node(NodeKind::Block, std::move(body));
    }

    NodePtr compound_statement(int depth) {
        int d = opt_.max_expr_depth;
        auto orelse = [&]() -> NodePtr { return chance(30) ? block(depth) : nullptr; };
        switch (below(7)) {
        case 0: {
            NodePtr test = expr(d);
            NodePtr body = block(depth);
            std::vector<NodePtr> elifs;
            for (std::size_t i = chance(30) ? 1 + below(2) : 0; i > 0; --i) {
                NodePtr t = expr(d);
                elifs.push_back(node(NodeKind::Elif, {t, block(depth)}));
            }
            NodePtr el = node(NodeKind::Elifs, std::move(elifs));
            return node(NodeKind::If, {test, body, el, orelse()});
        }
        case 1: {
            NodePtr test = expr(d);
            NodePtr body = block(depth);
            return node(NodeKind::While, {test, body, orelse()});
        }
        case 2: {
            NodePtr target = chance(70) ? name() : node(NodeKind::Tuple, {name(), name()});
            NodePtr iter = chance(15) ? node(NodeKind::Tuple, exprs(d, 2, 3, false)) : expr(d);
            NodePtr body = block(depth);
            return node(NodeKind::For, {target, iter, body, orelse()});
        }
        case 3: {
            std::vector<NodePtr> items;
            for (std::size_t i = 1 + below(2); i > 0; --i) {
                NodePtr ctx = expr(d);
                NodePtr target = chance(50) ? (chance(80) ? name() : node(NodeKind::Tuple, {name(), name()})) : nullptr;
                items.push_back(node(NodeKind::WithItem, {ctx, target}));
            }
            items.push_back(block(depth));
            return node(NodeKind::With, std::move(items));
        }
        case 4: {
            NodePtr body = block(depth);
            std::vector<NodePtr> handlers;
            for (std::size_t i = below(3); i > 0; --i) {
                NodePtr type = chance(80) ? expr(d) : nullptr;
                std::string bound = type && chance(50) ? pick(kNames) : "";
                handlers.push_back(node(NodeKind::ExceptHandler, {type, block(depth)}, bound));
            }
            bool has_handlers = !handlers.empty();
            NodePtr hs = node(NodeKind::Handlers, std::move(handlers));
            NodePtr el = has_handlers ? orelse() : nullptr;
            NodePtr fin = !has_handlers || chance(30) ? block(depth) : nullptr;
            return node(NodeKind::Try, {body, hs, el, fin});
        }
        case 5: {
            NodePtr decos = decorators();
            NodePtr ps = params(true, d);
            NodePtr returns = chance(30) ? expr(d) : nullptr;
            return node(NodeKind::FunctionDef, {decos, ps, returns, block(depth)}, pick(kNames));
        }
        default: {
            NodePtr decos = decorators();
            NodePtr bases = node(NodeKind::Arguments, chance(50) ? call_args(d) : std::vector<NodePtr>{});
            return node(NodeKind::ClassDef, {decos, bases, block(depth)}, pick(kNames));
        }
        }
    }

    NodePtr decorators() {
        std::vector<NodePtr> ds;
        for (std::size_t i = chance(25) ? 1 + below(2) : 0; i > 0; --i) {
            NodePtr d = name();
            if (chance(40)) d = node(NodeKind::Attribute, {d}, "setter");
            if (chance(40)) d = node(NodeKind::Call, {d, expr(1)});
            ds.push_back(d);
        }
        return node(NodeKind::Decorators, std::move(ds));
    }

    // `n` statements; blocks (min_code = 1) always get at least one that is
    // not a comment.
    std::vector<NodePtr> statements(int depth, int min_code, std::size_t n) {
        std::vector<NodePtr> out;
        int code = 0;
        for (std::size_t i = 0; i < n; ++i) {
            NodePtr s = depth > 0 && chance(30) ? compound_statement(depth) : simple_statement();
            if (s->kind != NodeKind::Comment) ++code;
            out.push_back(s);
        }
        if (code < min_code) out.push_back(node(NodeKind::Pass));
        return out;
    }

    std::mt19937_64 rng_;
    FuzzOptions opt_;
};

bool has_block(const Node& n) {
    if (n.kind == NodeKind::Block) return true;
    for (const auto& c : n.children) {
        if (c && has_block(*c)) return true;
    }
    return false;
}

// Extra SimPy tokens over Python for constructs SimPy spells longer: one per
// `<concat>` join, two per parenthesized placeholder-named operand.
std::size_t spelling_surcharge(const Node& n, const GrammarTable& table) {
    std::size_t extra = 0;
    if (n.kind == NodeKind::StringLit && n.children.size() > 1) extra += n.children.size() - 1;
    if (n.kind == NodeKind::Compare) {
        for (std::size_t i = 1; i + 1 < n.children.size(); ++i) {
            const Node& operand = *n.children[i]->children[0];
            if (n.children[i]->value == "<" && n.children[i + 1]->value == ">" && operand.kind == NodeKind::Name &&
                table.is_placeholder("<" + operand.value + ">")) {
                extra += 2;
            }
        }
    }
    for (const auto& c : n.children) {
        if (c) extra += spelling_surcharge(*c, table);
    }
    return extra;
}

bool is_expression(NodeKind k) {
    switch (k) {
    case NodeKind::Name: case NodeKind::IntLit: case NodeKind::FloatLit: case NodeKind::BoolLit:
    case NodeKind::NoneLit: case NodeKind::EllipsisLit: case NodeKind::StringLit:
    case NodeKind::Tuple: case NodeKind::List: case NodeKind::Set: case NodeKind::Dict:
    case NodeKind::ListComp: case NodeKind::SetComp: case NodeKind::GenExp: case NodeKind::DictComp:
    case NodeKind::BinOp: case NodeKind::UnaryOp: case NodeKind::BoolOp: case NodeKind::Compare:
    case NodeKind::Call: case NodeKind::Attribute: case NodeKind::Subscript: case NodeKind::Lambda:
    case NodeKind::IfExp: case NodeKind::Starred: case NodeKind::Yield: case NodeKind::YieldFrom:
        return true;
    default:
        return false;
    }
}

// Kinds whose children form a list that may lose an element.
bool is_list_like(NodeKind k) {
    switch (k) {
    case NodeKind::Module: case NodeKind::Block: case NodeKind::Elifs: case NodeKind::Handlers:
    case NodeKind::Decorators: case NodeKind::Params: case NodeKind::Arguments:
    case NodeKind::Tuple: case NodeKind::List: case NodeKind::Set: case NodeKind::Dict:
    case NodeKind::BoolOp: case NodeKind::Compare: case NodeKind::Global: case NodeKind::Nonlocal:
    case NodeKind::Delete: case NodeKind::Import: case NodeKind::ImportFrom: case NodeKind::StringLit:
    case NodeKind::FString: case NodeKind::FStrSpec:
        return true;
    default:
        return false;
    }
}

// All trees one reduction step away from `n`.
std::vector<NodePtr> reductions(const NodePtr& n) {
    std::vector<NodePtr> out;
    if (!n) return out;
    if (is_expression(n->kind) && !(n->kind == NodeKind::Name && n->value == "x")) {
        out.push_back(make_leaf(NodeKind::Name, "x"));
        for (const auto& c : n->children) {
            if (c && is_expression(c->kind)) out.push_back(c);
        }
    }
    if (is_compound(n->kind)) out.push_back(make_node(NodeKind::Pass));
    if (is_list_like(n->kind) || n->kind == NodeKind::Call) {
        std::size_t first = n->kind == NodeKind::Call || n->kind == NodeKind::Compare ? 1 : 0;
        for (std::size_t i = first; i < n->children.size(); ++i) {
            auto kids = n->children;
            kids.erase(kids.begin() + static_cast<std::ptrdiff_t>(i));
            out.push_back(with_children(*n, std::move(kids)));
        }
    }
    for (std::size_t i = 0; i < n->children.size(); ++i) {
        const NodePtr& c = n->children[i];
        if (!c) continue;
        // optional slots may be emptied
        for (auto& v : reductions(c)) {
            auto kids = n->children;
            kids[i] = v;
            out.push_back(with_children(*n, std::move(kids)));
        }
    }
    return out;
}

} // namespace

Ast generate_case(std::uint64_t seed, std::uint64_t index, const FuzzOptions& options) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    std::mt19937_64 mixer(seq);
    return Generator(mixer(), options).module();
}

CaseResult check_case(const Ast& ast, const GrammarTable& table) {
    CaseResult r;
    auto failed = [&](std::string property, std::string detail) {
        r.failed_property = std::move(property);
        r.detail = std::move(detail);
        return r;
    };
    std::string python;
    try {
        python = emit_python(ast);
    } catch (const std::exception& e) {
        return failed("emit_python", e.what());
    }
    try {
        if (!ast_equal(ast, parse_python(python))) return failed("python_adjunction", python);
    } catch (const std::exception& e) {
        return failed("python_adjunction", std::string(e.what()) + "\n" + python);
    }
    std::string simpy;
    try {
        simpy = emit_simpy(ast, table);
    } catch (const std::exception& e) {
        return failed("emit_simpy", e.what());
    }
    SimpyParseStats stats;
    Ast back;
    try {
        back = parse_simpy(simpy, table, &stats);
    } catch (const std::exception& e) {
        return failed("simpy_adjunction", std::string(e.what()) + "\n" + simpy);
    }
    r.max_lookahead = stats.max_lookahead;
    r.backtracks = stats.backtracks;
    if (!ast_equal(ast, back)) return failed("alternate_parse", simpy);
    if (stats.max_lookahead > 2 || stats.backtracks > 0) {
        return failed("determinism", "lookahead " + std::to_string(stats.max_lookahead) + ", backtracks " +
                                         std::to_string(stats.backtracks));
    }
    try {
        if (py_to_simpy(python, table) != simpy) return failed("converter_composition", python);
        if (simpy_to_py(simpy, table) != python) return failed("cross_grammar", simpy);
    } catch (const std::exception& e) {
        return failed("converter_composition", e.what());
    }
    const std::string& sep = table.lookup("NEWLINE", "simple_stmts") ? table.lookup("NEWLINE", "simple_stmts")->simpy_token
                                                                      : std::string("<line_sep>");
    auto toks = lex_simpy(simpy, table);
    for (std::size_t i = 1; i < toks.size(); ++i) {
        if (toks[i].text == sep && toks[i - 1].text == sep && toks[i].kind == SimpyTokenKind::Placeholder &&
            toks[i - 1].kind == SimpyTokenKind::Placeholder) {
            return failed("double_line_sep", simpy);
        }
    }
    r.token_property_applies = has_block(*ast.root);
    std::size_t py_count = python_token_count(python);
    std::size_t simpy_count = toks.size() - 1 - spelling_surcharge(*ast.root, table);
    if (r.token_property_applies && simpy_count >= py_count) {
        return failed("token_count", std::to_string(simpy_count) + " SimPy tokens (surcharge removed) vs " +
                                         std::to_string(py_count) + " Python tokens\n" + simpy);
    }
    return r;
}

Ast shrink_ast(const Ast& ast, const std::function<bool(const Ast&)>& still_fails, int max_steps) {
    NodePtr cur = ast.root;
    int steps = 0;
    bool progress = true;
    while (progress && steps < max_steps) {
        progress = false;
        for (auto& cand : reductions(cur)) {
            if (++steps > max_steps) break;
            if (cand->kind != NodeKind::Module) continue;
            if (still_fails(Ast(cand))) {
                cur = cand;
                progress = true;
                break;
            }
        }
    }
    return Ast(cur);
}

FuzzSummary fuzz_roundtrip(std::uint64_t seed, std::size_t n, const GrammarTable& table, FuzzOptions options) {
    FuzzSummary s;
    for (std::size_t i = 0; i < n; ++i) {
        Ast ast = generate_case(seed, i, options);
        CaseResult r = check_case(ast, table);
        ++s.cases;
        s.max_lookahead = std::max(s.max_lookahead, r.max_lookahead);
        if (r.backtracks > 0 || r.max_lookahead > 2) ++s.backtracking_parses;
        if (r.token_property_applies) ++s.token_property_checked;
        if (r.failed_property.empty()) {
            ++s.passed;
            continue;
        }
        ++s.failed;
        if (r.failed_property == "alternate_parse") ++s.alternate_parses;
        if (r.failed_property == "double_line_sep") ++s.double_line_seps;
        if (r.failed_property == "token_count") ++s.token_property_failures;
        if (s.counterexamples.size() >= options.max_counterexamples) continue;
        Counterexample c;
        c.case_index = i;
        c.property = r.failed_property;
        c.original_nodes = node_count(*ast.root);
        Ast small = ast;
        if (options.shrink) {
            small = shrink_ast(ast, [&](const Ast& a) { return check_case(a, table).failed_property == r.failed_property; });
        }
        c.detail = check_case(small, table).detail;
        c.dump = ast_dump(small);
        c.shrunk_nodes = node_count(*small.root);
        s.counterexamples.push_back(std::move(c));
    }
    return s;
}

} // namespace simpy
