#include "simpy/ast.hpp"

#include <array>

#include <json.hpp>

namespace simpy {

namespace {

constexpr std::array<std::string_view, kNodeKindCount> kKindNames = {
    "Module", "Block",
    "FunctionDef", "ClassDef", "Decorators",
    "If", "Elifs", "Elif", "While", "For", "With", "WithItem",
    "Try", "Handlers", "ExceptHandler",
    "Import", "ImportFrom", "Alias",
    "Return", "Raise", "Assert",
    "Assign", "AugAssign", "AnnAssign", "ExprStmt",
    "Global", "Nonlocal", "Delete",
    "Pass", "Break", "Continue",
    "Comment",
    "Name", "IntLit", "FloatLit", "BoolLit", "NoneLit", "EllipsisLit",
    "StringLit", "StrPart", "FString", "FStrText", "FStrExpr", "FStrSpec",
    "Tuple", "List", "Set", "Dict", "KeyValue",
    "ListComp", "SetComp", "GenExp", "DictComp", "Comprehension",
    "BinOp", "UnaryOp", "BoolOp", "Compare", "Comparator",
    "Call", "Arguments", "Keyword", "DoubleStarred",
    "Attribute", "Subscript", "Slice",
    "Lambda", "Params", "Param",
    "IfExp", "Starred", "Yield", "YieldFrom",
};

constexpr int kSerialVersion = 1;

void dump_into(const Node* node, int depth, std::string& out) {
    out.append(static_cast<std::size_t>(depth) * 2, ' ');
    if (node == nullptr) {
        out += "-\n";
        return;
    }
    out += kind_name(node->kind);
    if (!node->value.empty()) {
        out += " value=";
        out += nlohmann::json(node->value).dump();
    }
    if (!node->aux.empty()) {
        out += " aux=";
        out += nlohmann::json(node->aux).dump();
    }
    if (node->level != 0) {
        out += " level=" + std::to_string(node->level);
    }
    if (node->children.empty()) {
        out += "[]";
    }
    out += '\n';
    for (const auto& c : node->children) {
        dump_into(c.get(), depth + 1, out);
    }
}

nlohmann::json to_json(const Node* node) {
    if (node == nullptr) {
        return nullptr;
    }
    nlohmann::json j;
    j["k"] = kind_name(node->kind);
    if (!node->value.empty()) j["v"] = node->value;
    if (!node->aux.empty()) j["a"] = node->aux;
    if (node->level != 0) j["l"] = node->level;
    if (node->span.start_byte != 0 || node->span.end_byte != 0) {
        j["s"] = {node->span.start_byte, node->span.end_byte};
    }
    if (node->placement == CommentPlacement::Trailing) j["t"] = true;
    if (!node->children.empty()) {
        auto& arr = j["c"] = nlohmann::json::array();
        for (const auto& c : node->children) arr.push_back(to_json(c.get()));
    }
    return j;
}

NodePtr from_json(const nlohmann::json& j) {
    if (j.is_null()) {
        return nullptr;
    }
    if (!j.is_object() || !j.contains("k")) {
        throw Error("deserialize: node is not an object with a kind");
    }
    auto node = std::make_shared<Node>();
    if (!kind_from_name(j.at("k").get<std::string>(), node->kind)) {
        throw Error("deserialize: unknown node kind '" + j.at("k").get<std::string>() + "'");
    }
    node->value = j.value("v", std::string{});
    node->aux = j.value("a", std::string{});
    node->level = j.value("l", 0);
    if (auto it = j.find("s"); it != j.end()) {
        node->span = {it->at(0).get<std::uint32_t>(), it->at(1).get<std::uint32_t>()};
        if (node->span.start_byte > node->span.end_byte) {
            throw Error("deserialize: span start exceeds end");
        }
    }
    if (j.value("t", false)) node->placement = CommentPlacement::Trailing;
    if (auto it = j.find("c"); it != j.end()) {
        for (const auto& c : *it) node->children.push_back(from_json(c));
    }
    return node;
}

} // namespace

std::string_view kind_name(NodeKind kind) {
    return kKindNames[static_cast<std::size_t>(kind)];
}

bool kind_from_name(std::string_view name, NodeKind& out) {
    for (std::size_t i = 0; i < kKindNames.size(); ++i) {
        if (kKindNames[i] == name) {
            out = static_cast<NodeKind>(i);
            return true;
        }
    }
    return false;
}

bool is_compound(NodeKind kind) {
    switch (kind) {
    case NodeKind::FunctionDef:
    case NodeKind::ClassDef:
    case NodeKind::If:
    case NodeKind::While:
    case NodeKind::For:
    case NodeKind::With:
    case NodeKind::Try:
        return true;
    default:
        return false;
    }
}

bool is_statement(NodeKind kind) {
    if (is_compound(kind)) return true;
    switch (kind) {
    case NodeKind::Import:
    case NodeKind::ImportFrom:
    case NodeKind::Return:
    case NodeKind::Raise:
    case NodeKind::Assert:
    case NodeKind::Assign:
    case NodeKind::AugAssign:
    case NodeKind::AnnAssign:
    case NodeKind::ExprStmt:
    case NodeKind::Global:
    case NodeKind::Nonlocal:
    case NodeKind::Delete:
    case NodeKind::Pass:
    case NodeKind::Break:
    case NodeKind::Continue:
    case NodeKind::Comment:
        return true;
    default:
        return false;
    }
}

NodePtr make_node(NodeKind kind, std::vector<NodePtr> children, NodeInit init) {
    auto node = std::make_shared<Node>();
    node->kind = kind;
    node->value = std::move(init.value);
    node->aux = std::move(init.aux);
    node->level = init.level;
    node->span = init.span;
    node->children = std::move(children);
    return node;
}

NodePtr make_leaf(NodeKind kind, std::string value) {
    return make_node(kind, {}, {.value = std::move(value)});
}

NodePtr make_comment(std::string text, CommentPlacement placement, SourceSpan span) {
    auto node = std::make_shared<Node>();
    node->kind = NodeKind::Comment;
    node->value = std::move(text);
    node->placement = placement;
    node->span = span;
    return node;
}

NodePtr with_children(const Node& node, std::vector<NodePtr> children) {
    auto copy = std::make_shared<Node>(node);
    copy->children = std::move(children);
    return copy;
}

Ast::Ast() : root(make_node(NodeKind::Module)) {}

Ast::Ast(NodePtr module_root) : root(std::move(module_root)) {}

bool ast_equal(const Node* a, const Node* b) {
    if (a == b) return true;
    if (a == nullptr || b == nullptr) return false;
    if (a->kind != b->kind || a->value != b->value || a->aux != b->aux || a->level != b->level ||
        a->children.size() != b->children.size()) {
        return false;
    }
    for (std::size_t i = 0; i < a->children.size(); ++i) {
        if (!ast_equal(a->children[i].get(), b->children[i].get())) return false;
    }
    return true;
}

bool ast_equal(const Ast& a, const Ast& b) {
    return ast_equal(a.root.get(), b.root.get());
}

std::string ast_dump(const Node& node) {
    std::string out;
    dump_into(&node, 0, out);
    return out;
}

std::string ast_dump(const Ast& ast) {
    return ast_dump(*ast.root);
}

std::string serialize(const Ast& ast) {
    nlohmann::json j;
    j["version"] = kSerialVersion;
    j["root"] = to_json(ast.root.get());
    return j.dump();
}

Ast deserialize(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("deserialize: ") + e.what());
    }
    if (!j.is_object() || j.value("version", 0) != kSerialVersion) {
        throw Error("deserialize: unsupported serialization version");
    }
    try {
        auto root = from_json(j.at("root"));
        if (!root || root->kind != NodeKind::Module) {
            throw Error("deserialize: root is not a Module");
        }
        return Ast(std::move(root));
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("deserialize: ") + e.what());
    }
}

std::size_t node_count(const Node& node) {
    std::size_t n = 1;
    for (const auto& c : node.children) {
        if (c) n += node_count(*c);
    }
    return n;
}

} // namespace simpy
