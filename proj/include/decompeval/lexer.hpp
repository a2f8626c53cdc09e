#pragma once

#include <string_view>
#include <vector>

#include "decompeval/ast.hpp"

namespace decompeval {

enum class TokenKind {
  Identifier,
  Keyword,
  Number,
  CharLit,
  StringLit,
  Punct,
  Garbage,
};

struct Token {
  TokenKind kind = TokenKind::Garbage;
  std::string text;
  int line = 0;  // 1-based
};

struct LexResult {
  std::vector<Token> tokens;
  std::vector<bool> codeLines;  // 1-based; comments, blanks, and preprocessor
                                // directives do not mark a line as code
  int lineCount = 0;
  std::vector<Diagnostic> diagnostics;
};

/// Tokenizes C-ish text. Comments are stripped; preprocessor directives
/// (including backslash continuations) are consumed whole and produce no
/// tokens. Characters outside the language yield Garbage tokens so the parser
/// can recover around them.
LexResult lex(std::string_view text);

bool is_c_keyword(std::string_view word);

}  // namespace decompeval
