#include "decompeval/ast.hpp"

namespace decompeval {

std::string_view to_string(NodeKind kind) {
  switch (kind) {
    case NodeKind::FunctionDef: return "FunctionDef";
    case NodeKind::ParamList: return "ParamList";
    case NodeKind::CompoundStmt: return "CompoundStmt";
    case NodeKind::Decl: return "Decl";
    case NodeKind::Assign: return "Assign";
    case NodeKind::BinaryOp: return "BinaryOp";
    case NodeKind::UnaryOp: return "UnaryOp";
    case NodeKind::Call: return "Call";
    case NodeKind::If: return "If";
    case NodeKind::For: return "For";
    case NodeKind::While: return "While";
    case NodeKind::DoWhile: return "DoWhile";
    case NodeKind::Switch: return "Switch";
    case NodeKind::Case: return "Case";
    case NodeKind::Return: return "Return";
    case NodeKind::Goto: return "Goto";
    case NodeKind::Label: return "Label";
    case NodeKind::Break: return "Break";
    case NodeKind::Continue: return "Continue";
    case NodeKind::Cast: return "Cast";
    case NodeKind::VarRef: return "VarRef";
    case NodeKind::Literal: return "Literal";
    case NodeKind::Ternary: return "Ternary";
    case NodeKind::Index: return "Index";
    case NodeKind::Member: return "Member";
    case NodeKind::Other: return "Other";
  }
  return "Other";
}

int node_count(const NormTree& tree) {
  int n = 1;
  for (const NormTree& c : tree.children) n += node_count(c);
  return n;
}

int tree_height(const NormTree& tree) {
  int h = 0;
  for (const NormTree& c : tree.children) h = std::max(h, tree_height(c));
  return h + 1;
}

}  // namespace decompeval
