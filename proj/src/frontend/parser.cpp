#include <cctype>
#include <charconv>
#include <sstream>

#include "floc/frontend.hpp"

namespace floc::frontend {

namespace {

std::string describe(const std::set<std::string>& expected, const std::string& found) {
  std::ostringstream os;
  os << "expected ";
  if (expected.size() > 1) os << "one of ";
  bool first = true;
  for (const auto& e : expected) {
    if (!first) os << ", ";
    os << '\'' << e << '\'';
    first = false;
  }
  os << " but found '" << found << '\'';
  return os.str();
}

}  // namespace

SyntaxError::SyntaxError(std::string file, int line, int col, std::set<std::string> expected,
                         std::string found)
    : Error(file + ":" + std::to_string(line) + ":" + std::to_string(col) +
            ": syntax error: " + describe(expected, found)),
      file_(std::move(file)),
      line_(line),
      col_(col),
      expected_(std::move(expected)),
      found_(std::move(found)) {}

namespace {

enum class Tok {
  Ident,
  IntLit,
  KwInt,
  KwBool,
  KwVoid,
  KwPure,
  KwIf,
  KwElse,
  KwWhile,
  KwReturn,
  KwTrue,
  KwFalse,
  Result,  // \result
  Old,     // \old
  AnnotStart,
  AnnotEnd,
  LParen,
  RParen,
  LBrace,
  RBrace,
  Semi,
  Comma,
  Assign,
  EqEq,
  NotEq,
  Lt,
  Le,
  Gt,
  Ge,
  Plus,
  Minus,
  Star,
  Bang,
  AndAnd,
  OrOr,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  int line;
  int col;
  int end_line;
  int end_col;
};

class Lexer {
 public:
  Lexer(std::string_view text, std::string file) : text_(text), file_(std::move(file)) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_trivia();
      if (pos_ >= text_.size()) {
        out.push_back({Tok::End, "<end of input>", line_, col_, line_, col_});
        return out;
      }
      out.push_back(next());
    }
  }

 private:
  char peek(std::size_t off = 0) const {
    return pos_ + off < text_.size() ? text_[pos_ + off] : '\0';
  }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  [[noreturn]] void fail(std::set<std::string> expected, std::string found) {
    throw SyntaxError(file_, line_, col_, std::move(expected), std::move(found));
  }

  void skip_trivia() {
    for (;;) {
      char c = peek();
      if (c == '\0') return;
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else if (c == '/' && peek(1) == '/') {
        while (peek() != '\0' && peek() != '\n') advance();
      } else if (c == '/' && peek(1) == '*' && peek(2) != '@') {
        advance();
        advance();
        while (!(peek() == '*' && peek(1) == '/')) {
          if (peek() == '\0') fail({"*/"}, "<end of input>");
          advance();
        }
        advance();
        advance();
      } else if (in_annotation_ && c == '@' && !(peek(1) == '*' && peek(2) == '/')) {
        // ACSL-style leading '@' on continuation lines.
        advance();
      } else {
        return;
      }
    }
  }

  Token make(Tok kind, std::size_t len, int line, int col) {
    std::string text(text_.substr(pos_, len));
    for (std::size_t i = 0; i < len; ++i) advance();
    return {kind, std::move(text), line, col, line_, col_ - 1};
  }

  Token next() {
    const int line = line_;
    const int col = col_;
    const char c = peek();
    if (c == '/' && peek(1) == '*' && peek(2) == '@') {
      if (in_annotation_) fail({"@*/"}, "/*@");
      in_annotation_ = true;
      return make(Tok::AnnotStart, 3, line, col);
    }
    if (c == '@' && peek(1) == '*' && peek(2) == '/') {
      in_annotation_ = false;
      return make(Tok::AnnotEnd, 3, line, col);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t len = 0;
      while (std::isalnum(static_cast<unsigned char>(peek(len))) || peek(len) == '_') ++len;
      const std::string_view word = text_.substr(pos_, len);
      return make(keyword(word), len, line, col);
    }
    if (c == '\\') {
      std::size_t len = 1;
      while (std::isalpha(static_cast<unsigned char>(peek(len)))) ++len;
      const std::string_view word = text_.substr(pos_, len);
      if (word == "\\result") return make(Tok::Result, len, line, col);
      if (word == "\\old") return make(Tok::Old, len, line, col);
      fail({"\\result", "\\old"}, std::string(word));
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t len = 0;
      while (std::isdigit(static_cast<unsigned char>(peek(len)))) ++len;
      return make(Tok::IntLit, len, line, col);
    }
    auto two = [&](char a, char b) { return c == a && peek(1) == b; };
    if (two('=', '=')) return make(Tok::EqEq, 2, line, col);
    if (two('!', '=')) return make(Tok::NotEq, 2, line, col);
    if (two('<', '=')) return make(Tok::Le, 2, line, col);
    if (two('>', '=')) return make(Tok::Ge, 2, line, col);
    if (two('&', '&')) return make(Tok::AndAnd, 2, line, col);
    if (two('|', '|')) return make(Tok::OrOr, 2, line, col);
    switch (c) {
      case '(': return make(Tok::LParen, 1, line, col);
      case ')': return make(Tok::RParen, 1, line, col);
      case '{': return make(Tok::LBrace, 1, line, col);
      case '}': return make(Tok::RBrace, 1, line, col);
      case ';': return make(Tok::Semi, 1, line, col);
      case ',': return make(Tok::Comma, 1, line, col);
      case '=': return make(Tok::Assign, 1, line, col);
      case '<': return make(Tok::Lt, 1, line, col);
      case '>': return make(Tok::Gt, 1, line, col);
      case '+': return make(Tok::Plus, 1, line, col);
      case '-': return make(Tok::Minus, 1, line, col);
      case '*': return make(Tok::Star, 1, line, col);
      case '!': return make(Tok::Bang, 1, line, col);
      default: break;
    }
    fail({"token"}, std::string(1, c));
  }

  static Tok keyword(std::string_view w) {
    if (w == "int") return Tok::KwInt;
    if (w == "bool") return Tok::KwBool;
    if (w == "void") return Tok::KwVoid;
    if (w == "pure") return Tok::KwPure;
    if (w == "if") return Tok::KwIf;
    if (w == "else") return Tok::KwElse;
    if (w == "while") return Tok::KwWhile;
    if (w == "return") return Tok::KwReturn;
    if (w == "true") return Tok::KwTrue;
    if (w == "false") return Tok::KwFalse;
    return Tok::Ident;
  }

  std::string_view text_;
  std::string file_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
  bool in_annotation_ = false;
};

std::string spelling(Tok t) {
  switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::IntLit: return "integer literal";
    case Tok::KwInt: return "int";
    case Tok::KwBool: return "bool";
    case Tok::KwVoid: return "void";
    case Tok::KwPure: return "pure";
    case Tok::KwIf: return "if";
    case Tok::KwElse: return "else";
    case Tok::KwWhile: return "while";
    case Tok::KwReturn: return "return";
    case Tok::KwTrue: return "true";
    case Tok::KwFalse: return "false";
    case Tok::Result: return "\\result";
    case Tok::Old: return "\\old";
    case Tok::AnnotStart: return "/*@";
    case Tok::AnnotEnd: return "@*/";
    case Tok::LParen: return "(";
    case Tok::RParen: return ")";
    case Tok::LBrace: return "{";
    case Tok::RBrace: return "}";
    case Tok::Semi: return ";";
    case Tok::Comma: return ",";
    case Tok::Assign: return "=";
    case Tok::EqEq: return "==";
    case Tok::NotEq: return "!=";
    case Tok::Lt: return "<";
    case Tok::Le: return "<=";
    case Tok::Gt: return ">";
    case Tok::Ge: return ">=";
    case Tok::Plus: return "+";
    case Tok::Minus: return "-";
    case Tok::Star: return "*";
    case Tok::Bang: return "!";
    case Tok::AndAnd: return "&&";
    case Tok::OrOr: return "||";
    case Tok::End: return "<end of input>";
  }
  return "?";
}

const std::set<std::string> kExprStart = {"(",    "!",     "-",       "identifier", "integer literal",
                                          "true", "false", "\\result", "\\old"};

class Parser {
 public:
  Parser(std::vector<Token> toks, std::string file) : toks_(std::move(toks)), file_(std::move(file)) {}

  Program program() {
    Program p;
    p.file = file_;
    while (!at(Tok::End)) top_level(p);
    return p;
  }

  Expr standalone_expr() {
    Expr e = expr();
    expect(Tok::End);
    return e;
  }

 private:
  const Token& cur() const { return toks_[pos_]; }
  bool at(Tok t) const { return cur().kind == t; }
  bool at_word(std::string_view w) const { return at(Tok::Ident) && cur().text == w; }

  const Token& take() { return toks_[pos_++]; }

  [[noreturn]] void fail(std::set<std::string> expected) const {
    throw SyntaxError(file_, cur().line, cur().col, std::move(expected), cur().text);
  }

  const Token& expect(Tok t) {
    if (!at(t)) fail({spelling(t)});
    return take();
  }

  void expect_word(std::string_view w) {
    if (!at_word(w)) fail({std::string(w)});
    take();
  }

  bool accept(Tok t) {
    if (!at(t)) return false;
    ++pos_;
    return true;
  }

  Span span_from(const Token& first) const {
    const Token& last = toks_[pos_ - 1];
    return Span{file_, first.line, first.col, last.end_line, last.end_col};
  }

  Span token_span(const Token& t) const { return Span{file_, t.line, t.col, t.end_line, t.end_col}; }

  bool at_type() const { return at(Tok::KwInt) || at(Tok::KwBool) || at(Tok::KwVoid); }

  Sort type() {
    if (accept(Tok::KwInt)) return Sort::Int;
    if (accept(Tok::KwBool)) return Sort::Bool;
    if (accept(Tok::KwVoid)) return Sort::Void;
    fail({"int", "bool", "void"});
  }

  void top_level(Program& p) {
    const Token& first = cur();
    std::vector<Expr> req, ens;
    bool has_contract = false;
    if (at(Tok::AnnotStart)) {
      has_contract = true;
      contract(req, ens);
    }
    bool is_pure = accept(Tok::KwPure);
    if (!at_type()) {
      if (has_contract || is_pure) fail({"int", "bool", "void"});
      fail({"int", "bool", "void", "/*@", "pure"});
    }
    Sort sort = type();
    const Token& name = expect(Tok::Ident);
    if (!has_contract && !is_pure && !at(Tok::LParen)) {
      GlobalDecl g;
      g.name = name.text;
      g.sort = sort;
      if (accept(Tok::Assign)) g.init = literal();
      expect(Tok::Semi);
      g.span = span_from(first);
      p.globals.push_back(std::move(g));
      return;
    }
    FunctionDef f;
    f.name = name.text;
    f.is_pure = is_pure;
    f.return_sort = sort;
    f.requires_clauses = std::move(req);
    f.ensures_clauses = std::move(ens);
    expect(Tok::LParen);
    if (!at(Tok::RParen)) {
      do {
        const Token& pstart = cur();
        Param prm;
        prm.sort = type();
        prm.name = expect(Tok::Ident).text;
        prm.span = span_from(pstart);
        f.params.push_back(std::move(prm));
      } while (accept(Tok::Comma));
    }
    expect(Tok::RParen);
    f.body = braced_block();
    f.span = span_from(first);
    p.functions.push_back(std::move(f));
  }

  void contract(std::vector<Expr>& req, std::vector<Expr>& ens) {
    expect(Tok::AnnotStart);
    while (!at(Tok::AnnotEnd)) {
      if (at_word("requires")) {
        take();
        req.push_back(expr());
      } else if (at_word("ensures")) {
        take();
        ens.push_back(expr());
      } else {
        fail({"requires", "ensures", "@*/"});
      }
      expect(Tok::Semi);
    }
    expect(Tok::AnnotEnd);
  }

  Expr literal() {
    const Token& first = cur();
    if (accept(Tok::KwTrue)) return Expr::bool_lit(true, token_span(first));
    if (accept(Tok::KwFalse)) return Expr::bool_lit(false, token_span(first));
    bool negative = accept(Tok::Minus);
    if (!at(Tok::IntLit)) fail(negative ? std::set<std::string>{"integer literal"}
                                        : std::set<std::string>{"integer literal", "true", "false", "-"});
    std::int64_t v = int_value(take(), negative);
    return Expr::int_lit(v, span_from(first));
  }

  std::int64_t int_value(const Token& t, bool negative) {
    std::string digits = negative ? "-" + t.text : t.text;
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), v);
    if (ec != std::errc() || ptr != digits.data() + digits.size())
      throw SyntaxError(file_, t.line, t.col, {"integer literal within 64-bit range"}, t.text);
    return v;
  }

  std::vector<Stmt> braced_block() {
    expect(Tok::LBrace);
    std::vector<Stmt> out;
    while (!at(Tok::RBrace)) {
      if (at(Tok::End)) fail({"}"});
      out.push_back(stmt());
    }
    expect(Tok::RBrace);
    return out;
  }

  std::vector<Stmt> branch() {
    if (at(Tok::LBrace)) return braced_block();
    std::vector<Stmt> out;
    out.push_back(stmt());
    return out;
  }

  Stmt stmt() {
    const Token& first = cur();
    if (at(Tok::AnnotStart)) {
      take();
      expect_word("loop");
      expect_word("invariant");
      Expr inv = expr();
      expect(Tok::Semi);
      expect(Tok::AnnotEnd);
      expect(Tok::KwWhile);
      expect(Tok::LParen);
      Expr cond = expr();
      expect(Tok::RParen);
      std::vector<Stmt> body = branch();
      return Stmt::while_(std::move(cond), std::move(inv), std::move(body), span_from(first));
    }
    if (at(Tok::KwInt) || at(Tok::KwBool)) {
      Sort sort = type();
      std::string name = expect(Tok::Ident).text;
      std::optional<Expr> init;
      if (accept(Tok::Assign)) init = expr();
      expect(Tok::Semi);
      return Stmt::var_decl(std::move(name), sort, std::move(init), span_from(first));
    }
    if (accept(Tok::KwIf)) {
      expect(Tok::LParen);
      Expr cond = expr();
      expect(Tok::RParen);
      std::vector<Stmt> then_body = branch();
      std::vector<Stmt> else_body;
      bool has_else = false;
      if (accept(Tok::KwElse)) {
        has_else = true;
        else_body = branch();
      }
      return Stmt::if_(std::move(cond), std::move(then_body), std::move(else_body), has_else,
                       span_from(first));
    }
    if (at(Tok::KwWhile)) fail({"/*@"});
    if (accept(Tok::KwReturn)) {
      std::optional<Expr> value;
      if (!at(Tok::Semi)) value = expr();
      expect(Tok::Semi);
      return Stmt::return_(std::move(value), span_from(first));
    }
    if (at(Tok::LBrace)) {
      std::vector<Stmt> body = braced_block();
      return Stmt::block(std::move(body), span_from(first));
    }
    if (at(Tok::Ident)) {
      std::string target = take().text;
      expect(Tok::Assign);
      Expr rhs = expr();
      expect(Tok::Semi);
      Stmt s = Stmt::assign(std::move(target), std::move(rhs), span_from(first));
      s.sort = Sort::Void;
      return s;
    }
    fail({"int", "bool", "if", "while", "return", "{", "identifier", "/*@"});
  }

  // Precedence climbing, loosest first.
  Expr expr() { return binary_level(0); }

  static constexpr int kLevels = 6;

  static bool op_at_level(Tok t, int level, ExprKind& kind) {
    switch (level) {
      case 0:
        if (t == Tok::OrOr) { kind = ExprKind::Or; return true; }
        return false;
      case 1:
        if (t == Tok::AndAnd) { kind = ExprKind::And; return true; }
        return false;
      case 2:
        if (t == Tok::EqEq) { kind = ExprKind::Eq; return true; }
        if (t == Tok::NotEq) { kind = ExprKind::Ne; return true; }
        return false;
      case 3:
        if (t == Tok::Lt) { kind = ExprKind::Lt; return true; }
        if (t == Tok::Le) { kind = ExprKind::Le; return true; }
        if (t == Tok::Gt) { kind = ExprKind::Gt; return true; }
        if (t == Tok::Ge) { kind = ExprKind::Ge; return true; }
        return false;
      case 4:
        if (t == Tok::Plus) { kind = ExprKind::Add; return true; }
        if (t == Tok::Minus) { kind = ExprKind::Sub; return true; }
        return false;
      case 5:
        if (t == Tok::Star) { kind = ExprKind::Mul; return true; }
        return false;
      default: return false;
    }
  }

  Expr binary_level(int level) {
    if (level == kLevels) return unary();
    const Token& first = cur();
    Expr lhs = binary_level(level + 1);
    ExprKind kind;
    while (op_at_level(cur().kind, level, kind)) {
      take();
      Expr rhs = binary_level(level + 1);
      lhs = Expr::binary(kind, std::move(lhs), std::move(rhs), span_from(first));
    }
    return lhs;
  }

  Expr unary() {
    const Token& first = cur();
    if (accept(Tok::Minus)) {
      if (at(Tok::IntLit)) {
        std::int64_t v = int_value(take(), true);
        return Expr::int_lit(v, span_from(first));
      }
      Expr operand = unary();
      return Expr::unary(ExprKind::Neg, std::move(operand), span_from(first));
    }
    if (accept(Tok::Bang)) {
      Expr operand = unary();
      return Expr::unary(ExprKind::Not, std::move(operand), span_from(first));
    }
    return primary();
  }

  Expr primary() {
    const Token& first = cur();
    switch (cur().kind) {
      case Tok::IntLit: {
        std::int64_t v = int_value(take(), false);
        return Expr::int_lit(v, span_from(first));
      }
      case Tok::KwTrue: take(); return Expr::bool_lit(true, span_from(first));
      case Tok::KwFalse: take(); return Expr::bool_lit(false, span_from(first));
      case Tok::Result: {
        take();
        Expr e;
        e.kind = ExprKind::Result;
        e.span = span_from(first);
        return e;
      }
      case Tok::Old: {
        take();
        expect(Tok::LParen);
        std::string g = expect(Tok::Ident).text;
        expect(Tok::RParen);
        Expr e;
        e.kind = ExprKind::Old;
        e.name = std::move(g);
        e.span = span_from(first);
        return e;
      }
      case Tok::Ident: {
        std::string name = take().text;
        if (accept(Tok::LParen)) {
          std::vector<Expr> args;
          if (!at(Tok::RParen)) {
            do {
              args.push_back(expr());
            } while (accept(Tok::Comma));
          }
          expect(Tok::RParen);
          return Expr::call(std::move(name), std::move(args), span_from(first));
        }
        return Expr::var(std::move(name), Sort::Void, span_from(first));
      }
      case Tok::LParen: {
        take();
        Expr inner = expr();
        expect(Tok::RParen);
        return inner;
      }
      default: fail(kExprStart);
    }
  }

  std::vector<Token> toks_;
  std::string file_;
  std::size_t pos_ = 0;
};

}  // namespace

Program parse(std::string_view text, std::string file) {
  Parser parser(Lexer(text, file).run(), file);
  Program p = parser.program();
  p.source = std::string(text);
  return p;
}

Expr parse_expr(std::string_view text, std::string file) {
  Parser parser(Lexer(text, file).run(), file);
  return parser.standalone_expr();
}

}  // namespace floc::frontend
