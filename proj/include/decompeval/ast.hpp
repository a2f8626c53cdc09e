// Core syntax-tree types shared by the parser, metrics, and similarity code.
#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace decompeval {

/// Closed set of node categories. Every parsed construct maps to exactly one
/// kind; anything the parser cannot classify is retained as Other, never
/// dropped.
enum class NodeKind {
  FunctionDef,
  ParamList,
  CompoundStmt,
  Decl,
  Assign,
  BinaryOp,
  UnaryOp,
  Call,
  If,
  For,
  While,
  DoWhile,
  Switch,
  Case,
  Return,
  Goto,
  Label,
  Break,
  Continue,
  Cast,
  VarRef,
  Literal,
  Ternary,
  Index,
  Member,
  Other,
};

inline constexpr int kNodeKindCount = 26;

std::string_view to_string(NodeKind kind);

/// Kind-only ordered tree: identifiers, literal values, and type names are
/// erased. This is the unit of all structural comparison.
struct NormTree {
  NodeKind kind = NodeKind::Other;
  std::vector<NormTree> children;

  friend bool operator==(const NormTree&, const NormTree&) = default;
};

int node_count(const NormTree& tree);
int tree_height(const NormTree& tree);

/// Parser-internal tree. `text` carries the content the metrics need
/// (operator spelling, identifier, literal, or "default" for default labels);
/// `extra` carries secondary content (member name, For clause mask, "post"
/// for postfix ++/--, raw tokens for Other nodes).
struct AstNode {
  NodeKind kind = NodeKind::Other;
  std::string text;
  std::string extra;
  int line = 0;
  std::vector<AstNode> children;
};

enum class Severity { Warning, Error };

struct Diagnostic {
  Severity severity = Severity::Warning;
  std::string message;
  int line = 0;
};

struct Origin {
  enum Kind { Original, Decompiled, Rewritten };
  Kind kind = Original;
  std::string tool;  // producing decompiler, set when kind == Decompiled

  friend bool operator==(const Origin&, const Origin&) = default;
};

struct SourceFile {
  std::string path;
  std::string text;
  Origin origin;
};

/// One function definition. `ast` is the detailed tree rooted at FunctionDef
/// with a ParamList and the body CompoundStmt as children; `body` is its
/// kind-only projection.
struct FunctionUnit {
  std::string name;       // unique within the translation unit
  int startLine = 0;      // 1-based, inclusive
  int endLine = 0;
  int paramCount = 0;
  AstNode ast;
  NormTree body;
};

struct TranslationUnit {
  std::shared_ptr<const SourceFile> file;
  std::vector<FunctionUnit> functions;
  std::vector<Diagnostic> diagnostics;
  std::vector<bool> codeLines;  // 1-based; true when the line holds a code token
  int lineCount = 0;
};

}  // namespace decompeval
