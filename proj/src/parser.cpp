#include "decompeval/parser.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_set>

#include "decompeval/lexer.hpp"

namespace decompeval {

namespace {

const std::unordered_set<std::string_view> kTypeKeywords = {
    "void",   "char",     "short",  "int",      "long",    "float",
    "double", "signed",   "unsigned", "_Bool",  "_Complex", "struct",
    "union",  "enum",
};

const std::unordered_set<std::string_view> kSpecifierKeywords = {
    "void",   "char",   "short",    "int",     "long",     "float",
    "double", "signed", "unsigned", "_Bool",   "_Complex", "struct",
    "union",  "enum",   "const",    "volatile", "restrict", "static",
    "extern", "register", "inline", "auto",    "typedef",  "_Atomic",
    "_Noreturn", "_Thread_local",
};

const std::unordered_set<std::string_view> kBuiltinTypeNames = {
    "size_t",   "ssize_t",  "ptrdiff_t", "wchar_t",  "bool",   "byte",
    "uint",     "ulong",    "ushort",    "uchar",    "uint8",  "uint16",
    "uint32",   "uint64",   "int8",      "int16",    "int32",  "int64",
    "u8",       "u16",      "u32",       "u64",      "i8",     "i16",
    "i32",      "i64",      "s8",        "s16",      "s32",    "s64",
    "f32",      "f64",      "code",      "undefined",
};

// Heuristic for identifiers that decompilers commonly use as type names.
bool looks_type_like(std::string_view name) {
  if (kBuiltinTypeNames.count(name)) return true;
  if (name.size() > 2 && name.substr(name.size() - 2) == "_t") return true;
  if (name.rfind("undefined", 0) == 0) return true;
  if (name.rfind("uint", 0) == 0 || name.rfind("int", 0) == 0) {
    std::string_view rest = name.substr(name[0] == 'u' ? 4 : 3);
    return !rest.empty() &&
           std::all_of(rest.begin(), rest.end(),
                       [](char c) { return std::isdigit((unsigned char)c); });
  }
  return false;
}

struct StmtError {};  // statement-level recovery trigger

class Parser {
 public:
  Parser(const SourceFile& file) : source_(file) {}

  TranslationUnit run() {
    LexResult lexed = lex(source_.text);
    tokens_ = std::move(lexed.tokens);
    TranslationUnit unit;
    unit.file = std::make_shared<SourceFile>(source_);
    unit.diagnostics = std::move(lexed.diagnostics);
    unit.codeLines = std::move(lexed.codeLines);
    unit.lineCount = lexed.lineCount;

    collectTypedefs();
    scanTopLevel(unit);

    for (const Diagnostic& d : diags_) unit.diagnostics.push_back(d);
    if (unit.functions.empty() && plausibleDecls_ == 0) {
      throw ParseFatal("no function or declaration recovered from '" +
                       source_.path + "'");
    }
    disambiguateNames(unit);
    for (FunctionUnit& fn : unit.functions) fn.body = normalize(fn.ast);
    return unit;
  }

 private:
  // ---- token helpers --------------------------------------------------

  bool atEnd() const { return pos_ >= limit_; }
  const Token& peek(size_t ahead = 0) const {
    static const Token eof{TokenKind::Garbage, "", 0};
    return pos_ + ahead < limit_ ? tokens_[pos_ + ahead] : eof;
  }
  bool isPunct(const Token& t, std::string_view s) const {
    return t.kind == TokenKind::Punct && t.text == s;
  }
  bool at(std::string_view punct) const { return isPunct(peek(), punct); }
  bool atKeyword(std::string_view kw) const {
    return peek().kind == TokenKind::Keyword && peek().text == kw;
  }
  const Token& take() {
    const Token& t = peek();
    if (!atEnd()) ++pos_;
    return t;
  }
  void expect(std::string_view punct) {
    if (!at(punct)) throw StmtError{};
    ++pos_;
  }
  int lineAt(size_t idx) const {
    return idx < tokens_.size() ? tokens_[idx].line : 0;
  }

  // ---- typedef collection ---------------------------------------------

  void collectTypedefs() {
    for (size_t i = 0; i < tokens_.size(); ++i) {
      if (tokens_[i].kind != TokenKind::Keyword || tokens_[i].text != "typedef")
        continue;
      int depth = 0;
      std::string lastIdent;
      for (size_t j = i + 1; j < tokens_.size(); ++j) {
        const Token& t = tokens_[j];
        if (t.kind == TokenKind::Punct) {
          if (t.text == "(" || t.text == "[" || t.text == "{") ++depth;
          if (t.text == ")" || t.text == "]" || t.text == "}") --depth;
          if (depth == 0 && (t.text == ";" || t.text == ",")) {
            if (!lastIdent.empty()) typedefNames_.insert(lastIdent);
            lastIdent.clear();
            if (t.text == ";") {
              i = j;
              break;
            }
          }
        } else if (t.kind == TokenKind::Identifier && depth == 0) {
          lastIdent = t.text;
        }
      }
    }
  }

  bool isTypeName(std::string_view name) const {
    return typedefNames_.count(std::string(name)) || looks_type_like(name);
  }

  // ---- top-level scan ---------------------------------------------------

  size_t matchForward(size_t open) const {
    // tokens_[open] is one of ( [ { ; returns index of its match or npos.
    std::string_view o = tokens_[open].text;
    std::string_view c = o == "(" ? ")" : o == "[" ? "]" : "}";
    int depth = 0;
    for (size_t i = open; i < tokens_.size(); ++i) {
      if (tokens_[i].kind != TokenKind::Punct) continue;
      if (tokens_[i].text == o) ++depth;
      if (tokens_[i].text == c && --depth == 0) return i;
    }
    return std::string_view::npos;
  }

  size_t matchBackward(size_t close) const {
    std::string_view c = tokens_[close].text;
    std::string_view o = c == ")" ? "(" : c == "]" ? "[" : "{";
    int depth = 0;
    for (size_t i = close + 1; i-- > 0;) {
      if (tokens_[i].kind != TokenKind::Punct) continue;
      if (tokens_[i].text == c) ++depth;
      if (tokens_[i].text == o && --depth == 0) return i;
    }
    return std::string_view::npos;
  }

  void scanTopLevel(TranslationUnit& unit) {
    size_t i = 0;
    size_t segStart = 0;
    bool segGarbage = false;
    while (i < tokens_.size()) {
      const Token& t = tokens_[i];
      if (t.kind == TokenKind::Garbage) segGarbage = true;
      if (isPunct(t, ";")) {
        if (!segGarbage && i > segStart) ++plausibleDecls_;
        segStart = i + 1;
        segGarbage = false;
        ++i;
        continue;
      }
      if (!isPunct(t, "{")) {
        ++i;
        continue;
      }
      size_t bodyOpen = i;
      size_t fnStart;
      if (looksLikeFunctionHeader(bodyOpen, fnStart)) {
        size_t bodyClose = matchForward(bodyOpen);
        if (bodyClose == std::string_view::npos) {
          bodyClose = tokens_.size() - 1;
          diags_.push_back({Severity::Warning, "unterminated function body",
                            lineAt(bodyOpen)});
        }
        parseFunction(unit, fnStart, bodyOpen, bodyClose);
        i = bodyClose + 1;
      } else {
        size_t close = matchForward(bodyOpen);
        if (close == std::string_view::npos) {
          ++i;
          continue;
        }
        if (!segGarbage) ++plausibleDecls_;  // struct/enum/initializer block
        i = close + 1;
      }
      segStart = i;
      segGarbage = false;
    }
  }

  // Checks the pattern `ident ( ... ) {` backwards from the body brace and
  // locates the start of the declaration prefix.
  bool looksLikeFunctionHeader(size_t bodyOpen, size_t& fnStart) {
    if (bodyOpen == 0) return false;
    size_t j = bodyOpen - 1;
    if (!isPunct(tokens_[j], ")")) {
      // Accommodate `f(a:int):int {` style headers from readability-oriented
      // decompilers: skip a trailing `: type` annotation.
      size_t k = j;
      while (k > 0 && (tokens_[k].kind == TokenKind::Identifier ||
                       tokens_[k].kind == TokenKind::Keyword ||
                       isPunct(tokens_[k], "*")))
        --k;
      if (k == 0 || !isPunct(tokens_[k], ":") || k == 0) return false;
      if (!isPunct(tokens_[k - 1], ")")) return false;
      j = k - 1;
    }
    size_t parenOpen = matchBackward(j);
    if (parenOpen == std::string_view::npos || parenOpen == 0) return false;
    const Token& name = tokens_[parenOpen - 1];
    if (name.kind != TokenKind::Identifier) return false;
    // Walk back over the return-type prefix.
    size_t k = parenOpen - 1;
    while (k > 0) {
      const Token& p = tokens_[k - 1];
      bool typeish =
          (p.kind == TokenKind::Keyword && kSpecifierKeywords.count(p.text)) ||
          p.kind == TokenKind::Identifier || isPunct(p, "*");
      if (!typeish) break;
      --k;
    }
    fnStart = k;
    headerName_ = parenOpen - 1;
    headerParenOpen_ = parenOpen;
    headerParenClose_ = bodyOpen - 1;
    return true;
  }

  void parseFunction(TranslationUnit& unit, size_t fnStart, size_t bodyOpen,
                     size_t bodyClose) {
    FunctionUnit fn;
    fn.name = tokens_[headerName_].text;
    fn.startLine = lineAt(fnStart);
    fn.endLine = lineAt(bodyClose);

    AstNode def;
    def.kind = NodeKind::FunctionDef;
    def.text = fn.name;
    def.line = lineAt(headerName_);
    def.children.push_back(
        parseParamList(headerParenOpen_, headerParenClose_, fn.paramCount));

    pos_ = bodyOpen + 1;
    limit_ = bodyClose;
    AstNode body;
    body.kind = NodeKind::CompoundStmt;
    body.line = lineAt(bodyOpen);
    while (!atEnd()) body.children.push_back(parseStatement());
    def.children.push_back(std::move(body));

    fn.ast = std::move(def);
    unit.functions.push_back(std::move(fn));
  }

  AstNode parseParamList(size_t open, size_t close, int& paramCount) {
    AstNode params;
    params.kind = NodeKind::ParamList;
    params.line = lineAt(open);
    paramCount = 0;
    size_t segBegin = open + 1;
    for (size_t i = open + 1; i <= close; ++i) {
      bool atSplit = i == close;
      if (!atSplit && isPunct(tokens_[i], ",")) {
        // only top-level commas split parameters
        int depth = 0;
        for (size_t j = open + 1; j < i; ++j) {
          if (tokens_[j].kind != TokenKind::Punct) continue;
          std::string_view s = tokens_[j].text;
          if (s == "(" || s == "[") ++depth;
          if (s == ")" || s == "]") --depth;
        }
        atSplit = depth == 0;
      }
      if (!atSplit) continue;
      if (i > segBegin) {
        if (auto p = makeParam(segBegin, i)) {
          ++paramCount;
          params.children.push_back(std::move(*p));
        }
      }
      segBegin = i + 1;
    }
    return params;
  }

  std::optional<AstNode> makeParam(size_t begin, size_t end) {
    // `void` alone and `...` produce no parameter.
    if (end - begin == 1 &&
        (tokens_[begin].text == "void" || tokens_[begin].text == "..."))
      return std::nullopt;
    AstNode decl;
    decl.kind = NodeKind::Decl;
    decl.line = lineAt(begin);
    // Declarator name: last identifier not inside brackets, stopping at a
    // `name:type` annotation when one is present.
    std::string name;
    int depth = 0;
    for (size_t i = begin; i < end; ++i) {
      const Token& t = tokens_[i];
      if (t.kind == TokenKind::Punct) {
        if (t.text == ":" && depth == 0) break;
        if (t.text == "[" || t.text == "(") ++depth;
        if (t.text == "]" || t.text == ")") --depth;
      } else if (t.kind == TokenKind::Identifier && depth == 0) {
        name = t.text;
      }
    }
    if (!name.empty()) {
      AstNode ref;
      ref.kind = NodeKind::VarRef;
      ref.text = name;
      ref.line = lineAt(begin);
      decl.children.push_back(std::move(ref));
    }
    return decl;
  }

  void disambiguateNames(TranslationUnit& unit) {
    std::unordered_set<std::string> seen;
    for (FunctionUnit& fn : unit.functions) {
      if (!seen.count(fn.name)) {
        seen.insert(fn.name);
        continue;
      }
      int ordinal = 2;
      std::string candidate;
      do {
        candidate = fn.name + "__" + std::to_string(ordinal++);
      } while (seen.count(candidate));
      diags_.push_back({Severity::Warning,
                        "duplicate function name '" + fn.name +
                            "' renamed to '" + candidate + "'",
                        fn.startLine});
      fn.name = candidate;
      seen.insert(candidate);
    }
  }

  // ---- statements -------------------------------------------------------

  AstNode parseStatement() {
    size_t start = pos_;
    try {
      return parseStatementInner();
    } catch (const StmtError&) {
      return recoverOther(start);
    }
  }

  AstNode node(NodeKind kind, std::string text = {}) {
    AstNode n;
    n.kind = kind;
    n.text = std::move(text);
    n.line = peek().line;
    return n;
  }

  AstNode parseStatementInner() {
    const Token& t = peek();
    if (t.kind == TokenKind::Punct) {
      if (t.text == "{") return parseCompound();
      if (t.text == ";") {
        AstNode empty = node(NodeKind::CompoundStmt);
        take();
        return empty;
      }
    }
    if (t.kind == TokenKind::Keyword) {
      if (t.text == "if") return parseIf();
      if (t.text == "for") return parseFor();
      if (t.text == "while") return parseWhile();
      if (t.text == "do") return parseDoWhile();
      if (t.text == "switch") return parseSwitch();
      if (t.text == "case" || t.text == "default") return parseCaseLabel();
      if (t.text == "return") return parseReturn();
      if (t.text == "goto") return parseGoto();
      if (t.text == "break" || t.text == "continue") {
        AstNode n = node(t.text == "break" ? NodeKind::Break
                                           : NodeKind::Continue);
        take();
        expect(";");
        return n;
      }
    }
    // Plain label: `ident :` (but not `? :` arms, which never start here).
    if (t.kind == TokenKind::Identifier && isPunct(peek(1), ":")) {
      AstNode label = node(NodeKind::Label, t.text);
      take();
      take();
      return label;
    }
    if (isDeclarationStart()) return parseDeclaration();
    AstNode expr = parseExpression(/*allowComma=*/true);
    expect(";");
    return expr;
  }

  AstNode recoverOther(size_t start) {
    pos_ = start;
    size_t begin = start;
    int depth = 0;
    std::string raw;
    while (!atEnd()) {
      const Token& t = peek();
      if (t.kind == TokenKind::Punct) {
        if (t.text == "(" || t.text == "[" || t.text == "{") ++depth;
        if (t.text == ")" || t.text == "]") --depth;
        if (t.text == "}") {
          if (depth == 0) break;  // let the enclosing block close
          --depth;
        }
      }
      if (!raw.empty()) raw += ' ';
      raw += t.text;
      bool stmtEnd = depth <= 0 && isPunct(t, ";");
      take();
      if (stmtEnd) break;
    }
    if (pos_ == begin) take();  // always make progress
    AstNode other;
    other.kind = NodeKind::Other;
    other.text = raw;
    other.line = lineAt(begin);
    diags_.push_back({Severity::Warning,
                      "unparsed construct retained as Other", other.line});
    return other;
  }

  AstNode parseCompound() {
    AstNode block = node(NodeKind::CompoundStmt);
    expect("{");
    while (!atEnd() && !at("}")) block.children.push_back(parseStatement());
    if (at("}")) {
      take();
    } else {
      diags_.push_back(
          {Severity::Warning, "missing '}' at end of block", peek().line});
    }
    return block;
  }

  AstNode parseIf() {
    AstNode n = node(NodeKind::If);
    take();
    expect("(");
    n.children.push_back(parseExpression(true));
    expect(")");
    n.children.push_back(parseStatement());
    if (atKeyword("else")) {
      take();
      n.children.push_back(parseStatement());
    }
    return n;
  }

  AstNode parseFor() {
    AstNode n = node(NodeKind::For);
    take();
    expect("(");
    char mask[4] = "000";
    if (!at(";")) {
      mask[0] = '1';
      if (isDeclarationStart()) {
        n.children.push_back(parseDeclaration());  // consumes ';'
      } else {
        n.children.push_back(parseExpression(true));
        expect(";");
      }
    } else {
      take();
    }
    if (!at(";")) {
      mask[1] = '1';
      n.children.push_back(parseExpression(true));
    }
    expect(";");
    if (!at(")")) {
      mask[2] = '1';
      n.children.push_back(parseExpression(true));
    }
    expect(")");
    n.children.push_back(parseStatement());
    n.extra = mask;
    return n;
  }

  AstNode parseWhile() {
    AstNode n = node(NodeKind::While);
    take();
    expect("(");
    n.children.push_back(parseExpression(true));
    expect(")");
    n.children.push_back(parseStatement());
    return n;
  }

  AstNode parseDoWhile() {
    AstNode n = node(NodeKind::DoWhile);
    take();
    n.children.push_back(parseStatement());
    if (!atKeyword("while")) throw StmtError{};
    take();
    expect("(");
    n.children.push_back(parseExpression(true));
    expect(")");
    expect(";");
    return n;
  }

  AstNode parseSwitch() {
    AstNode n = node(NodeKind::Switch);
    take();
    expect("(");
    n.children.push_back(parseExpression(true));
    expect(")");
    n.children.push_back(parseStatement());
    return n;
  }

  AstNode parseCaseLabel() {
    AstNode n = node(NodeKind::Case, peek().text);
    bool isDefault = peek().text == "default";
    take();
    if (!isDefault) n.children.push_back(parseConditional());
    expect(":");
    return n;
  }

  AstNode parseReturn() {
    AstNode n = node(NodeKind::Return);
    take();
    if (!at(";")) n.children.push_back(parseExpression(true));
    expect(";");
    return n;
  }

  AstNode parseGoto() {
    AstNode n = node(NodeKind::Goto);
    take();
    if (peek().kind != TokenKind::Identifier) throw StmtError{};
    n.text = take().text;
    expect(";");
    return n;
  }

  // ---- declarations -------------------------------------------------------

  bool isDeclarationStart() const {
    const Token& t = peek();
    if (t.kind == TokenKind::Keyword) return kSpecifierKeywords.count(t.text) > 0;
    if (t.kind != TokenKind::Identifier) return false;
    const Token& n1 = peek(1);
    if (isTypeName(t.text)) {
      if (n1.kind == TokenKind::Identifier) return true;
      if (isPunct(n1, "*")) return true;
    }
    if (n1.kind == TokenKind::Identifier &&
        (isPunct(peek(2), "=") || isPunct(peek(2), ";") ||
         isPunct(peek(2), ",") || isPunct(peek(2), "[")))
      return true;  // `mytype var ...`
    if (isPunct(n1, "*") && peek(2).kind == TokenKind::Identifier &&
        (isPunct(peek(3), ";") || isPunct(peek(3), "=") ||
         isPunct(peek(3), ",")))
      return true;  // `mytype *var ...`
    return false;
  }

  AstNode parseDeclaration() {
    AstNode decl = node(NodeKind::Decl);
    bool sawStruct = false;
    bool isTypedef = false;
    // Specifier phase.
    while (!atEnd()) {
      const Token& t = peek();
      if (t.kind == TokenKind::Keyword && kSpecifierKeywords.count(t.text)) {
        if (t.text == "struct" || t.text == "union" || t.text == "enum") {
          sawStruct = t.text != "enum";
          take();
          if (peek().kind == TokenKind::Identifier) take();  // tag
          if (at("{")) skipBalanced("{");
          continue;
        }
        if (t.text == "typedef") isTypedef = true;
        take();
        continue;
      }
      if (t.kind == TokenKind::Identifier) {
        // An identifier is a specifier only when another declarator-ish token
        // follows; otherwise it is the declarator name itself.
        const Token& n1 = peek(1);
        if (n1.kind == TokenKind::Identifier ||
            (isPunct(n1, "*") && peek(2).kind == TokenKind::Identifier)) {
          take();
          continue;
        }
      }
      break;
    }
    decl.extra = sawStruct ? "struct" : "";
    if (isTypedef) {
      decl.text = "typedef";
      while (!atEnd() && !at(";")) take();
      expect(";");
      return decl;
    }
    // Declarator list.
    while (true) {
      decl.children.push_back(parseDeclarator());
      if (at(",")) {
        take();
        continue;
      }
      expect(";");
      break;
    }
    return decl;
  }

  AstNode parseDeclarator() {
    while (at("*") || atKeyword("const") || atKeyword("volatile") ||
           atKeyword("restrict"))
      take();
    if (peek().kind != TokenKind::Identifier) throw StmtError{};
    AstNode ref = node(NodeKind::VarRef, peek().text);
    take();
    AstNode entry = std::move(ref);
    while (at("[")) {
      AstNode idx = node(NodeKind::Index);
      take();
      idx.children.push_back(std::move(entry));
      if (!at("]")) idx.children.push_back(parseExpression(true));
      expect("]");
      entry = std::move(idx);
    }
    if (at("(")) skipBalanced("(");  // local prototype; keep the name only
    if (at("=")) {
      AstNode assign = node(NodeKind::Assign, "=");
      take();
      AstNode init = at("{") ? parseBracedInitializer() : parseAssignExpr();
      assign.children.push_back(std::move(entry));
      assign.children.push_back(std::move(init));
      return assign;
    }
    return entry;
  }

  AstNode parseBracedInitializer() {
    AstNode init = node(NodeKind::Literal, "{}");
    skipBalanced("{");
    return init;
  }

  void skipBalanced(std::string_view open) {
    std::string_view close = open == "(" ? ")" : open == "[" ? "]" : "}";
    int depth = 0;
    while (!atEnd()) {
      const Token& t = take();
      if (t.kind != TokenKind::Punct) continue;
      if (t.text == open) ++depth;
      if (t.text == close && --depth == 0) return;
    }
    throw StmtError{};
  }

  // ---- expressions --------------------------------------------------------

  struct DepthGuard {
    explicit DepthGuard(int& d) : depth(d) {
      if (++depth > 800) throw StmtError{};
    }
    ~DepthGuard() { --depth; }
    int& depth;
  };

  AstNode parseExpression(bool allowComma) {
    DepthGuard g(exprDepth_);
    AstNode left = parseAssignExpr();
    while (allowComma && at(",")) {
      AstNode seq = node(NodeKind::BinaryOp, ",");
      take();
      AstNode right = parseAssignExpr();
      seq.children.push_back(std::move(left));
      seq.children.push_back(std::move(right));
      left = std::move(seq);
    }
    return left;
  }

  static bool isAssignOp(const Token& t) {
    static const std::unordered_set<std::string_view> ops = {
        "=", "+=", "-=", "*=", "/=", "%=", "<<=", ">>=", "&=", "|=", "^="};
    return t.kind == TokenKind::Punct && ops.count(t.text) > 0;
  }

  AstNode parseAssignExpr() {
    DepthGuard g(exprDepth_);
    AstNode lhs = parseConditional();
    if (isAssignOp(peek())) {
      AstNode assign = node(NodeKind::Assign, peek().text);
      take();
      AstNode rhs = parseAssignExpr();
      assign.children.push_back(std::move(lhs));
      assign.children.push_back(std::move(rhs));
      return assign;
    }
    return lhs;
  }

  AstNode parseConditional() {
    DepthGuard g(exprDepth_);
    AstNode cond = parseBinary(0);
    if (!at("?")) return cond;
    AstNode tern = node(NodeKind::Ternary, "?:");
    take();
    AstNode thenExpr = parseExpression(true);
    expect(":");
    AstNode elseExpr = parseConditional();
    tern.children.push_back(std::move(cond));
    tern.children.push_back(std::move(thenExpr));
    tern.children.push_back(std::move(elseExpr));
    return tern;
  }

  int binaryPrec(const Token& t) const {
    if (t.kind != TokenKind::Punct) return -1;
    std::string_view s = t.text;
    if (s == "||") return 1;
    if (s == "&&") return 2;
    if (s == "|") return 3;
    if (s == "^") return 4;
    if (s == "&") return 5;
    if (s == "==" || s == "!=") return 6;
    if (s == "<" || s == ">" || s == "<=" || s == ">=") return 7;
    if (s == "<<" || s == ">>") return 8;
    if (s == "+" || s == "-") return 9;
    if (s == "*" || s == "/" || s == "%") return 10;
    return -1;
  }

  AstNode parseBinary(int minPrec) {
    DepthGuard g(exprDepth_);
    AstNode left = parseUnary();
    while (true) {
      int prec = binaryPrec(peek());
      if (prec < minPrec || prec == -1) return left;
      AstNode op = node(NodeKind::BinaryOp, peek().text);
      take();
      AstNode right = parseBinary(prec + 1);
      op.children.push_back(std::move(left));
      op.children.push_back(std::move(right));
      left = std::move(op);
    }
  }

  AstNode parseUnary() {
    DepthGuard g(exprDepth_);
    const Token& t = peek();
    if (t.kind == TokenKind::Punct &&
        (t.text == "!" || t.text == "~" || t.text == "+" || t.text == "-" ||
         t.text == "*" || t.text == "&" || t.text == "++" || t.text == "--")) {
      AstNode op = node(NodeKind::UnaryOp, t.text);
      take();
      op.children.push_back(parseUnary());
      return op;
    }
    if (atKeyword("sizeof")) {
      AstNode op = node(NodeKind::UnaryOp, "sizeof");
      take();
      if (at("(") && castLookahead()) {
        skipBalanced("(");  // sizeof(type): no operand node
      } else {
        op.children.push_back(parseUnary());
      }
      return op;
    }
    return parseCastExpr();
  }

  AstNode parseCastExpr() {
    if (at("(") && castLookahead()) {
      AstNode cast = node(NodeKind::Cast);
      size_t open = pos_;
      size_t close = findMatchingParen(open);
      std::string type;
      for (size_t i = open + 1; i < close; ++i) {
        if (!type.empty()) type += ' ';
        type += tokens_[i].text;
      }
      cast.text = type;
      pos_ = close + 1;
      cast.children.push_back(parseCastExpr());
      return cast;
    }
    return parsePostfix();
  }

  size_t findMatchingParen(size_t open) const {
    int depth = 0;
    for (size_t i = open; i < limit_; ++i) {
      if (tokens_[i].kind != TokenKind::Punct) continue;
      if (tokens_[i].text == "(") ++depth;
      if (tokens_[i].text == ")" && --depth == 0) return i;
    }
    return std::string_view::npos;
  }

  // Decides whether `( ... )` at the cursor is a cast.
  bool castLookahead() const {
    size_t close = findMatchingParen(pos_);
    if (close == std::string_view::npos || close == pos_ + 1) return false;
    bool sawTypeKeyword = false;
    bool sawStar = false;
    bool firstIsTypeName = false;
    size_t idents = 0;
    for (size_t i = pos_ + 1; i < close; ++i) {
      const Token& t = tokens_[i];
      if (t.kind == TokenKind::Keyword) {
        if (!kSpecifierKeywords.count(t.text)) return false;
        if (kTypeKeywords.count(t.text)) sawTypeKeyword = true;
        continue;
      }
      if (t.kind == TokenKind::Identifier) {
        if (idents == 0 && i == pos_ + 1) firstIsTypeName = isTypeName(t.text);
        ++idents;
        continue;
      }
      if (t.kind == TokenKind::Number) continue;  // array bound
      if (t.kind != TokenKind::Punct) return false;
      std::string_view s = t.text;
      if (s == "*") {
        sawStar = true;
        continue;
      }
      if (s == "[" || s == "]" || s == "(" || s == ")" || s == ",") continue;
      return false;
    }
    bool typeish = sawTypeKeyword || (firstIsTypeName && idents <= 2) ||
                   (idents == 1 && sawStar);
    if (!typeish) return false;
    if (close + 1 >= limit_) return false;
    const Token& next = tokens_[close + 1];
    if (next.kind == TokenKind::Identifier || next.kind == TokenKind::Number ||
        next.kind == TokenKind::CharLit || next.kind == TokenKind::StringLit)
      return true;
    if (next.kind == TokenKind::Keyword && next.text == "sizeof") return true;
    if (next.kind == TokenKind::Punct) {
      std::string_view s = next.text;
      return s == "(" || s == "!" || s == "~" || s == "&" || s == "*" ||
             s == "++" || s == "--" || s == "+" || s == "-";
    }
    return false;
  }

  AstNode parsePostfix() {
    AstNode base = parsePrimary();
    while (!atEnd()) {
      if (at("(")) {
        AstNode call = node(NodeKind::Call);
        take();
        call.children.push_back(std::move(base));
        if (!at(")")) {
          while (true) {
            call.children.push_back(parseAssignExpr());
            if (at(",")) {
              take();
              continue;
            }
            break;
          }
        }
        expect(")");
        base = std::move(call);
        continue;
      }
      if (at("[")) {
        AstNode idx = node(NodeKind::Index, "[]");
        take();
        idx.children.push_back(std::move(base));
        if (!at("]")) idx.children.push_back(parseExpression(true));
        expect("]");
        base = std::move(idx);
        continue;
      }
      if (at(".") || at("->")) {
        AstNode mem = node(NodeKind::Member, peek().text);
        take();
        if (peek().kind != TokenKind::Identifier) throw StmtError{};
        mem.extra = take().text;
        mem.children.push_back(std::move(base));
        base = std::move(mem);
        continue;
      }
      if (at("++") || at("--")) {
        AstNode op = node(NodeKind::UnaryOp, peek().text);
        op.extra = "post";
        take();
        op.children.push_back(std::move(base));
        base = std::move(op);
        continue;
      }
      break;
    }
    return base;
  }

  AstNode parsePrimary() {
    const Token& t = peek();
    if (t.kind == TokenKind::Identifier) {
      AstNode ref = node(NodeKind::VarRef, t.text);
      take();
      return ref;
    }
    if (t.kind == TokenKind::Number || t.kind == TokenKind::CharLit) {
      AstNode lit = node(NodeKind::Literal, t.text);
      take();
      return lit;
    }
    if (t.kind == TokenKind::StringLit) {
      AstNode lit = node(NodeKind::Literal, t.text);
      take();
      while (peek().kind == TokenKind::StringLit) lit.text += take().text;
      return lit;
    }
    if (at("(")) {
      take();
      AstNode inner = parseExpression(true);
      expect(")");
      return inner;
    }
    throw StmtError{};
  }

  const SourceFile& source_;
  std::vector<Token> tokens_;
  size_t pos_ = 0;
  size_t limit_ = 0;
  int exprDepth_ = 0;
  size_t headerName_ = 0;
  size_t headerParenOpen_ = 0;
  size_t headerParenClose_ = 0;
  int plausibleDecls_ = 0;
  std::unordered_set<std::string> typedefNames_;
  std::vector<Diagnostic> diags_;
};

}  // namespace

TranslationUnit parse_c_source(const SourceFile& file) {
  return Parser(file).run();
}

const std::vector<FunctionUnit>& extract_functions(
    const TranslationUnit& unit) {
  return unit.functions;
}

NormTree normalize(const AstNode& node) {
  NormTree t;
  t.kind = node.kind;
  t.children.reserve(node.children.size());
  for (const AstNode& c : node.children) t.children.push_back(normalize(c));
  return t;
}

}  // namespace decompeval
