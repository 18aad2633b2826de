#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace simpy {

/// Byte offsets into the text a node was parsed from. Diagnostics only.
struct SourceSpan {
    std::uint32_t start_byte = 0;
    std::uint32_t end_byte = 0;
};

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class EmitError : public Error {
public:
    using Error::Error;
};

/// Node kinds of the shared syntax tree.
///
/// Child layout per kind (`?` marks a slot that may hold nullptr):
///
///   Module            stmt*
///   Block             stmt*                       (body of a compound statement)
///   FunctionDef       Decorators Params returns? Block          value=name
///   ClassDef          Decorators Arguments Block                value=name
///   Decorators        expr*
///   If                test Block Elifs orelse?(Block)
///   Elifs             Elif*
///   Elif              test Block
///   While             test Block orelse?
///   For               target iter Block orelse?
///   With              WithItem+ Block
///   WithItem          expr target?
///   Try               Block Handlers orelse? finalbody?
///   Handlers          ExceptHandler*
///   ExceptHandler     type? Block                               value=bound name or ""
///   Import            Alias+
///   ImportFrom        Alias+                                    value=module, level
///   Alias                                                       value=dotted name, aux=asname
///   Return            value?
///   Raise             exc? cause?
///   Assert            test msg?
///   Assign            target+ value
///   AugAssign         target value                              value=operator ("+=")
///   AnnAssign         target annotation value?
///   ExprStmt          expr
///   Global, Nonlocal  Name+
///   Delete            target+
///   Pass, Break, Continue
///   Comment                                                     value="# text"
///
///   Name, IntLit, FloatLit, BoolLit                             value=source text
///   NoneLit, EllipsisLit
///   StringLit         (StrPart | FString)+   several parts = implicit concatenation
///   StrPart                                                     value=verbatim literal
///   FString           (FStrText | FStrExpr)*                    value=prefix, aux=quote
///   FStrText                                                    value=verbatim text
///   FStrExpr          expr spec?(FStrSpec)                      value=conversion, aux=self-doc text
///   FStrSpec          (FStrText | FStrExpr)*
///   Tuple, List, Set  expr*
///   Dict              KeyValue*
///   KeyValue          key? value                                 key==nullptr means **value
///   ListComp, SetComp, GenExp   elt Comprehension+
///   DictComp          key value Comprehension+
///   Comprehension     target iter ifs*
///   BinOp             left right                                value=operator
///   UnaryOp           operand                                   value="-", "+", "~", "not"
///   BoolOp            operand{2,}                               value="and" | "or"
///   Compare           left Comparator+
///   Comparator        right                                     value=operator ("not in")
///   Call              func arg*        arg: expr | Starred | Keyword | DoubleStarred
///   Arguments         arg*             (class bases; same item kinds as Call)
///   Keyword           value                                     value=name
///   DoubleStarred     value
///   Attribute         value                                     value=attribute name
///   Subscript         value index
///   Slice             lower? upper? step?
///   Lambda            Params body
///   Params            Param*
///   Param             annotation? default?                      value=name, aux="" | "*" | "**" | "/"
///   IfExp             body test orelse
///   Starred           value
///   Yield             value?
///   YieldFrom         value
enum class NodeKind : std::uint8_t {
    Module, Block,
    FunctionDef, ClassDef, Decorators,
    If, Elifs, Elif, While, For, With, WithItem,
    Try, Handlers, ExceptHandler,
    Import, ImportFrom, Alias,
    Return, Raise, Assert,
    Assign, AugAssign, AnnAssign, ExprStmt,
    Global, Nonlocal, Delete,
    Pass, Break, Continue,
    Comment,

    Name, IntLit, FloatLit, BoolLit, NoneLit, EllipsisLit,
    StringLit, StrPart, FString, FStrText, FStrExpr, FStrSpec,
    Tuple, List, Set, Dict, KeyValue,
    ListComp, SetComp, GenExp, DictComp, Comprehension,
    BinOp, UnaryOp, BoolOp, Compare, Comparator,
    Call, Arguments, Keyword, DoubleStarred,
    Attribute, Subscript, Slice,
    Lambda, Params, Param,
    IfExp, Starred, Yield, YieldFrom,
};

inline constexpr int kNodeKindCount = static_cast<int>(NodeKind::YieldFrom) + 1;

std::string_view kind_name(NodeKind kind);
bool kind_from_name(std::string_view name, NodeKind& out);

/// True for kinds that may appear directly in a statement list.
bool is_statement(NodeKind kind);
/// True for the compound statements (those that own a Block).
bool is_compound(NodeKind kind);

enum class CommentPlacement : std::uint8_t { OwnLine, Trailing };

struct Node;
using NodePtr = std::shared_ptr<const Node>;

/// One immutable tree node. Span and comment placement are layout and never
/// take part in equality.
struct Node {
    NodeKind kind = NodeKind::Module;
    std::string value;
    std::string aux;
    int level = 0;
    std::vector<NodePtr> children;
    SourceSpan span{};
    CommentPlacement placement = CommentPlacement::OwnLine;

    const Node* child(std::size_t i) const {
        return i < children.size() ? children[i].get() : nullptr;
    }
};

struct NodeInit {
    std::string value{};
    std::string aux{};
    int level = 0;
    SourceSpan span{};
};

NodePtr make_node(NodeKind kind, std::vector<NodePtr> children = {}, NodeInit init = {});
NodePtr make_leaf(NodeKind kind, std::string value);
NodePtr make_comment(std::string text, CommentPlacement placement, SourceSpan span = {});

/// Copy of `node` with different children (payload and span kept).
NodePtr with_children(const Node& node, std::vector<NodePtr> children);

struct Ast {
    NodePtr root;

    Ast();
    explicit Ast(NodePtr module_root);
};

bool ast_equal(const Node* a, const Node* b);
bool ast_equal(const Ast& a, const Ast& b);

/// Canonical text dump: one node per line, two spaces of indentation per
/// depth, string payloads JSON-quoted, absent optional children printed as
/// `-`, and childless nodes suffixed with `[]`. Equal dumps iff ast_equal.
std::string ast_dump(const Ast& ast);
std::string ast_dump(const Node& node);

/// Versioned JSON serialization (includes spans and comment placement).
std::string serialize(const Ast& ast);
/// Throws simpy::Error on malformed or unsupported input.
Ast deserialize(std::string_view text);

std::size_t node_count(const Node& node);

} // namespace simpy
