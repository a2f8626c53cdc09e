#include "decompeval/lexer.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <unordered_set>

namespace decompeval {

namespace {

const std::unordered_set<std::string_view> kKeywords = {
    "auto",      "break",    "case",           "char",
    "const",     "continue", "default",        "do",
    "double",    "else",     "enum",           "extern",
    "float",     "for",      "goto",           "if",
    "inline",    "int",      "long",           "register",
    "restrict",  "return",   "short",          "signed",
    "sizeof",    "static",   "struct",         "switch",
    "typedef",   "union",    "unsigned",       "void",
    "volatile",  "while",    "_Bool",          "_Complex",
    "_Atomic",   "_Noreturn", "_Static_assert", "_Thread_local",
    "_Alignas",  "_Alignof",
};

// Maximal-munch punctuator table, longest first.
const std::array<std::string_view, 45> kPuncts = {
    "<<=", ">>=", "...", "->", "++", "--", "<<", ">>", "<=", ">=",
    "==",  "!=",  "&&",  "||", "+=", "-=", "*=", "/=", "%=", "&=",
    "|=",  "^=",  "+",   "-",  "*",  "/",  "%",  "=",  "<",  ">",
    "!",   "~",   "&",   "|",  "^",  "?",  ":",  ";",  ",",  ".",
    "(",   ")",   "[",   "]",  "{",
};

bool is_ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '$';
}

bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '$';
}

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  LexResult run() {
    bool lineHasOnlySpace = true;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '\n') {
        ++line_;
        ++pos_;
        lineHasOnlySpace = true;
        continue;
      }
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
        continue;
      }
      if (c == '/' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '/') {
        skipLineComment();
        continue;
      }
      if (c == '/' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '*') {
        skipBlockComment();
        lineHasOnlySpace = false;
        continue;
      }
      if (c == '#' && lineHasOnlySpace) {
        skipDirective();
        lineHasOnlySpace = true;
        continue;
      }
      lineHasOnlySpace = false;
      if (is_ident_start(c)) {
        lexIdentifier();
      } else if (std::isdigit(static_cast<unsigned char>(c)) ||
                 (c == '.' && pos_ + 1 < text_.size() &&
                  std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])))) {
        lexNumber();
      } else if (c == '"') {
        lexString();
      } else if (c == '\'') {
        lexChar();
      } else {
        lexPunctOrGarbage();
      }
    }
    result_.lineCount = line_;
    result_.codeLines.assign(static_cast<size_t>(line_) + 1, false);
    for (const Token& t : result_.tokens) {
      if (t.line >= 1 && t.line <= line_) result_.codeLines[t.line] = true;
    }
    return std::move(result_);
  }

 private:
  void emit(TokenKind kind, size_t begin, size_t end, int line) {
    result_.tokens.push_back(
        Token{kind, std::string(text_.substr(begin, end - begin)), line});
  }

  void skipLineComment() {
    while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
  }

  void skipBlockComment() {
    size_t startLine = line_;
    pos_ += 2;
    while (pos_ < text_.size()) {
      if (text_[pos_] == '\n') ++line_;
      if (text_[pos_] == '*' && pos_ + 1 < text_.size() &&
          text_[pos_ + 1] == '/') {
        pos_ += 2;
        return;
      }
      ++pos_;
    }
    result_.diagnostics.push_back(
        {Severity::Warning, "unterminated block comment",
         static_cast<int>(startLine)});
  }

  // Consumes "# ... \n" honoring backslash continuations and comments.
  void skipDirective() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '\n') {
        // Continuation if the previous non-space char was a backslash.
        size_t back = pos_;
        bool continued = false;
        while (back > 0) {
          char p = text_[--back];
          if (p == '\\') {
            continued = true;
            break;
          }
          if (p != ' ' && p != '\t' && p != '\r') break;
        }
        if (!continued) return;  // leave '\n' for the main loop
        ++line_;
        ++pos_;
        continue;
      }
      if (c == '/' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '*') {
        skipBlockComment();
        continue;
      }
      if (c == '/' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '/') {
        skipLineComment();
        continue;
      }
      ++pos_;
    }
  }

  void lexIdentifier() {
    size_t begin = pos_;
    while (pos_ < text_.size() && is_ident_char(text_[pos_])) ++pos_;
    std::string_view word = text_.substr(begin, pos_ - begin);
    // String/char literal prefixes: L"..", u8"..", u'..', U"..".
    if ((word == "L" || word == "u" || word == "U" || word == "u8") &&
        pos_ < text_.size() && (text_[pos_] == '"' || text_[pos_] == '\'')) {
      if (text_[pos_] == '"') {
        lexString();
      } else {
        lexChar();
      }
      // Fold the prefix into the literal token just emitted.
      Token& t = result_.tokens.back();
      t.text = std::string(word) + t.text;
      return;
    }
    emit(kKeywords.count(word) ? TokenKind::Keyword : TokenKind::Identifier,
         begin, pos_, line_);
  }

  void lexNumber() {
    size_t begin = pos_;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '_') {
        ++pos_;
        continue;
      }
      if ((c == '+' || c == '-') && pos_ > begin) {
        char prev = text_[pos_ - 1];
        if (prev == 'e' || prev == 'E' || prev == 'p' || prev == 'P') {
          ++pos_;
          continue;
        }
      }
      break;
    }
    emit(TokenKind::Number, begin, pos_, line_);
  }

  void lexString() {
    size_t begin = pos_;
    int startLine = line_;
    ++pos_;  // opening quote
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '\\' && pos_ + 1 < text_.size()) {
        pos_ += 2;
        continue;
      }
      if (c == '"') {
        ++pos_;
        emit(TokenKind::StringLit, begin, pos_, startLine);
        return;
      }
      if (c == '\n') break;
      ++pos_;
    }
    result_.diagnostics.push_back(
        {Severity::Warning, "unterminated string literal", startLine});
    emit(TokenKind::StringLit, begin, pos_, startLine);
  }

  void lexChar() {
    size_t begin = pos_;
    int startLine = line_;
    ++pos_;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '\\' && pos_ + 1 < text_.size()) {
        pos_ += 2;
        continue;
      }
      if (c == '\'') {
        ++pos_;
        emit(TokenKind::CharLit, begin, pos_, startLine);
        return;
      }
      if (c == '\n') break;
      ++pos_;
    }
    result_.diagnostics.push_back(
        {Severity::Warning, "unterminated character literal", startLine});
    emit(TokenKind::CharLit, begin, pos_, startLine);
  }

  void lexPunctOrGarbage() {
    std::string_view rest = text_.substr(pos_);
    if (rest[0] == '}') {  // not in the table: kept separate for clarity
      emit(TokenKind::Punct, pos_, pos_ + 1, line_);
      ++pos_;
      return;
    }
    for (std::string_view p : kPuncts) {
      if (rest.substr(0, p.size()) == p) {
        emit(TokenKind::Punct, pos_, pos_ + p.size(), line_);
        pos_ += p.size();
        return;
      }
    }
    emit(TokenKind::Garbage, pos_, pos_ + 1, line_);
    ++pos_;
  }

  std::string_view text_;
  size_t pos_ = 0;
  int line_ = 1;
  LexResult result_;
};

}  // namespace

LexResult lex(std::string_view text) { return Lexer(text).run(); }

bool is_c_keyword(std::string_view word) { return kKeywords.count(word) > 0; }

}  // namespace decompeval
