#include "lp/parser.hpp"

#include <cctype>
#include <optional>
#include <sstream>

namespace lp {

namespace {

// ---------------------------------------------------------------------------
// Lexer.

enum class Tok {
  Ident, Integer, RationalLit, Decimal,
  LParen, RParen, LBracket, RBracket, LBrace, RBrace,
  Comma, Dot, Semicolon, Colon,
  Plus, Minus, Star, Slash,
  Bang, Amp, Pipe, Arrow,
  Eq, Geq, Leq, Lt, Gt,
  KwForall, KwExists, KwOr, KwIn,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  SourceSpan span;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_ws_and_comments();
      if (pos_ >= src_.size()) {
        out.push_back(make(Tok::End, pos_, pos_));
        return out;
      }
      out.push_back(next());
    }
  }

 private:
  void skip_ws_and_comments() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == '\n') {
        ++line_;
        col_ = 1;
        ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++col_;
        ++pos_;
      } else if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') { ++pos_; ++col_; }
      } else {
        break;
      }
    }
  }

  Token next() {
    std::size_t start = pos_;
    std::uint32_t sl = line_, sc = col_;
    char c = src_[pos_];

    auto tok = [&](Tok k, std::size_t len) {
      pos_ += len;
      col_ += static_cast<std::uint32_t>(len);
      Token t = make(k, start, pos_);
      t.span.line = sl;
      t.span.column = sc;
      return t;
    };

    if (std::isdigit(static_cast<unsigned char>(c))) return lex_number(start, sl, sc);
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return lex_ident(start, sl, sc);

    switch (c) {
      case '(': return tok(Tok::LParen, 1);
      case ')': return tok(Tok::RParen, 1);
      case '[': return tok(Tok::LBracket, 1);
      case ']': return tok(Tok::RBracket, 1);
      case '{': return tok(Tok::LBrace, 1);
      case '}': return tok(Tok::RBrace, 1);
      case ',': return tok(Tok::Comma, 1);
      case '.': return tok(Tok::Dot, 1);
      case ';': return tok(Tok::Semicolon, 1);
      case ':': return tok(Tok::Colon, 1);
      case '+': return tok(Tok::Plus, 1);
      case '*': return tok(Tok::Star, 1);
      case '/': return tok(Tok::Slash, 1);
      case '!': return tok(Tok::Bang, 1);
      case '&': return tok(Tok::Amp, 1);
      case '|': return tok(Tok::Pipe, 1);
      case '-':
        if (pos_ + 1 < src_.size() && src_[pos_ + 1] == '>') return tok(Tok::Arrow, 2);
        return tok(Tok::Minus, 1);
      case '=': return tok(Tok::Eq, 1);
      case '>':
        if (pos_ + 1 < src_.size() && src_[pos_ + 1] == '=') return tok(Tok::Geq, 2);
        return tok(Tok::Gt, 1);
      case '<':
        if (pos_ + 1 < src_.size() && src_[pos_ + 1] == '=') return tok(Tok::Leq, 2);
        return tok(Tok::Lt, 1);
      default: {
        SourceSpan span{start, start + 1, sl, sc, sl, sc + 1};
        throw Error(ErrorKind::LexError,
                    std::string("unexpected character '") + c + "'", span);
      }
    }
  }

  Token lex_number(std::size_t start, std::uint32_t sl, std::uint32_t sc) {
    std::size_t p = pos_;
    while (p < src_.size() && std::isdigit(static_cast<unsigned char>(src_[p]))) ++p;
    Tok kind = Tok::Integer;
    // "3/4" with no spaces is one rational literal; "3 / 4" is division.
    if (p < src_.size() && src_[p] == '/' && p + 1 < src_.size() &&
        std::isdigit(static_cast<unsigned char>(src_[p + 1]))) {
      ++p;
      while (p < src_.size() && std::isdigit(static_cast<unsigned char>(src_[p]))) ++p;
      kind = Tok::RationalLit;
    } else if (p < src_.size() && src_[p] == '.' && p + 1 < src_.size() &&
               std::isdigit(static_cast<unsigned char>(src_[p + 1]))) {
      ++p;
      while (p < src_.size() && std::isdigit(static_cast<unsigned char>(src_[p]))) ++p;
      kind = Tok::Decimal;
    }
    std::size_t len = p - pos_;
    pos_ = p;
    col_ += static_cast<std::uint32_t>(len);
    Token t = make(kind, start, p);
    t.span.line = sl;
    t.span.column = sc;
    return t;
  }

  Token lex_ident(std::size_t start, std::uint32_t sl, std::uint32_t sc) {
    std::size_t p = pos_;
    while (p < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[p])) || src_[p] == '_'))
      ++p;
    std::size_t len = p - pos_;
    pos_ = p;
    col_ += static_cast<std::uint32_t>(len);
    Token t = make(Tok::Ident, start, p);
    t.span.line = sl;
    t.span.column = sc;
    if (t.text == "forall") t.kind = Tok::KwForall;
    else if (t.text == "exists") t.kind = Tok::KwExists;
    else if (t.text == "or") t.kind = Tok::KwOr;
    else if (t.text == "in") t.kind = Tok::KwIn;
    return t;
  }

  Token make(Tok kind, std::size_t begin, std::size_t end) {
    Token t;
    t.kind = kind;
    t.text = std::string(src_.substr(begin, end - begin));
    t.span = SourceSpan{begin, end, line_, col_, line_, col_};
    return t;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::uint32_t line_ = 1;
  std::uint32_t col_ = 1;
};

// ---------------------------------------------------------------------------
// Parser.

// How '|' reads at the current position: disjunction (outside probability
// brackets), the conditioning separator (bracket top level), or forbidden
// (nested inside brackets, where disjunction must be written `or`).
enum class PipeMode { Disjunction, CondSeparator, Forbidden };

struct Operand {
  std::variant<TermPtr, FormulaPtr> v;
  SourceSpan span;
  bool is_formula() const { return v.index() == 1; }
};

class Parser {
 public:
  Parser(std::vector<Token> tokens, Vocabulary& vocab)
      : toks_(std::move(tokens)), vocab_(vocab) {}

  bool at_end() const { return peek().kind == Tok::End; }

  // Declarations: `object|field|measure ...;` — recognized by leading word.
  bool try_declaration() {
    if (peek().kind != Tok::Ident) return false;
    const std::string& w = peek().text;
    if (w != "object" && w != "field" && w != "measure") return false;
    if (w == "measure") {
      advance();
      declare_with_arity([&](const std::string& n, std::uint32_t a) { vocab_.declare_measure(n, a); });
    } else {
      bool object = w == "object";
      advance();
      Token cls = expect(Tok::Ident, "declaration class (pred, func, const, var)");
      if (cls.text == "pred") {
        if (!object)
          throw Error(ErrorKind::SyntaxError,
                      "only object predicates can be declared; field relations are fixed (=, >=)",
                      cls.span);
        declare_with_arity([&](const std::string& n, std::uint32_t a) { vocab_.declare_pred(n, a); });
      } else if (cls.text == "func") {
        declare_with_arity([&](const std::string& n, std::uint32_t a) {
          object ? vocab_.declare_object_func(n, a) : vocab_.declare_field_func(n, a);
        });
      } else if (cls.text == "const") {
        declare_names([&](const std::string& n) {
          object ? vocab_.declare_object_const(n) : vocab_.declare_field_const(n);
        });
      } else if (cls.text == "var") {
        declare_names([&](const std::string& n) {
          object ? vocab_.declare_object_var(n) : vocab_.declare_field_var(n);
        });
      } else {
        throw Error(ErrorKind::SyntaxError,
                    "expected pred, func, const or var after '" + std::string(object ? "object" : "field") + "'",
                    cls.span);
      }
    }
    expect(Tok::Semicolon, "';' after declaration");
    return true;
  }

  Statement statement() {
    Operand op = parse_implies(PipeMode::Disjunction);
    Statement s;
    s.span = op.span;
    if (op.is_formula()) s.node = std::get<FormulaPtr>(op.v);
    else s.node = std::get<TermPtr>(op.v);
    return s;
  }

  void expect_semicolon() { expect(Tok::Semicolon, "';' after sentence"); }

  void expect_end() {
    if (!at_end())
      throw Error(ErrorKind::SyntaxError, "unexpected trailing input", peek().span);
  }

 private:
  template <typename DeclareFn>
  void declare_with_arity(DeclareFn declare) {
    for (;;) {
      Token name = expect(Tok::Ident, "symbol name");
      expect(Tok::Slash, "'/arity'");
      Token arity = expect(Tok::Integer, "arity");
      declare(name.text, static_cast<std::uint32_t>(std::stoul(arity.text)));
      if (peek().kind != Tok::Comma) break;
      advance();
    }
  }

  template <typename DeclareFn>
  void declare_names(DeclareFn declare) {
    for (;;) {
      Token name = expect(Tok::Ident, "symbol name");
      declare(name.text);
      if (peek().kind != Tok::Comma) break;
      advance();
    }
  }

  // formula := or-chain [-> formula]      (right associative)
  Operand parse_implies(PipeMode mode) {
    Operand lhs = parse_or(mode);
    if (peek().kind == Tok::Arrow) {
      Token op = advance();
      Operand rhs = parse_implies(mode);
      return mk_formula(implies(to_formula(lhs), to_formula(rhs), op.span), lhs.span, rhs.span);
    }
    return lhs;
  }

  Operand parse_or(PipeMode mode) {
    Operand lhs = parse_and(mode);
    for (;;) {
      if (peek().kind == Tok::KwOr) {
        Token op = advance();
        Operand rhs = parse_and(mode);
        lhs = mk_formula(lor(to_formula(lhs), to_formula(rhs), op.span), lhs.span, rhs.span);
      } else if (peek().kind == Tok::Pipe) {
        if (mode == PipeMode::CondSeparator) return lhs;  // conditioning bar
        if (mode == PipeMode::Forbidden)
          throw Error(ErrorKind::SyntaxError,
                      "'|' is conditioning inside probability brackets; write disjunction as 'or'",
                      peek().span);
        Token op = advance();
        Operand rhs = parse_and(mode);
        lhs = mk_formula(lor(to_formula(lhs), to_formula(rhs), op.span), lhs.span, rhs.span);
      } else {
        return lhs;
      }
    }
  }

  Operand parse_and(PipeMode mode) {
    Operand lhs = parse_not(mode);
    while (peek().kind == Tok::Amp) {
      Token op = advance();
      Operand rhs = parse_not(mode);
      lhs = mk_formula(land(to_formula(lhs), to_formula(rhs), op.span), lhs.span, rhs.span);
    }
    return lhs;
  }

  Operand parse_not(PipeMode mode) {
    if (peek().kind == Tok::Bang) {
      Token op = advance();
      Operand body = parse_not(mode);
      return mk_formula(lnot(to_formula(body), op.span), op.span, body.span);
    }
    if (peek().kind == Tok::KwForall || peek().kind == Tok::KwExists)
      return parse_quantifier(mode);
    return parse_comparison(mode);
  }

  // forall x, y:field. body — the body extends as far right as possible.
  Operand parse_quantifier(PipeMode mode) {
    Token kw = advance();
    bool existential = kw.kind == Tok::KwExists;
    std::vector<std::pair<std::string, Sort>> vars;
    for (;;) {
      Token name = expect(Tok::Ident, "quantified variable");
      Sort sort = Sort::Object;
      if (peek().kind == Tok::Colon) {
        advance();
        Token s = expect(Tok::Ident, "sort annotation (object or field)");
        if (s.text == "field") sort = Sort::Field;
        else if (s.text == "object") sort = Sort::Object;
        else
          throw Error(ErrorKind::SyntaxError, "unknown sort '" + s.text + "'", s.span);
      } else if (vocab_.kind_of(name.text) == SymbolKind::FieldVar) {
        sort = Sort::Field;
      }
      vars.emplace_back(name.text, sort);
      if (peek().kind != Tok::Comma) break;
      advance();
    }
    expect(Tok::Dot, "'.' after quantified variables");
    for (const auto& [name, sort] : vars) scopes_.emplace_back(name, sort);
    Operand body = parse_implies(mode);
    scopes_.resize(scopes_.size() - vars.size());
    FormulaPtr f = to_formula(body);
    for (auto it = vars.rbegin(); it != vars.rend(); ++it)
      f = existential ? exists(it->first, it->second, f, kw.span)
                      : forall(it->first, it->second, f, kw.span);
    return mk_formula(f, kw.span, body.span);
  }

  Operand parse_comparison(PipeMode mode) {
    Operand lhs = parse_additive(mode);
    Tok k = peek().kind;
    if (k == Tok::KwIn) {
      Token op = advance();
      expect(Tok::LBracket, "'[' to open the interval");
      Operand lo = parse_additive(mode == PipeMode::Disjunction ? mode : PipeMode::Forbidden);
      expect(Tok::Comma, "',' between interval bounds");
      Operand hi = parse_additive(mode == PipeMode::Disjunction ? mode : PipeMode::Forbidden);
      expect(Tok::RBracket, "']' to close the interval");
      return mk_formula(in_interval(to_term(lhs), to_term(lo), to_term(hi), op.span),
                        lhs.span, hi.span);
    }
    if (k != Tok::Eq && k != Tok::Geq && k != Tok::Leq && k != Tok::Lt && k != Tok::Gt)
      return lhs;
    Token op = advance();
    Operand rhs = parse_additive(mode);
    Tok k2 = peek().kind;
    if (k2 == Tok::Eq || k2 == Tok::Geq || k2 == Tok::Leq || k2 == Tok::Lt || k2 == Tok::Gt)
      throw Error(ErrorKind::SyntaxError, "comparisons do not chain", peek().span);

    TermPtr l = to_term(lhs), r = to_term(rhs);
    FormulaPtr f;
    switch (k) {
      case Tok::Eq: {
        if (l->sort() != r->sort())
          throw Error(ErrorKind::SortMismatch,
                      std::string("'=' applied to a ") + sort_name(l->sort()) +
                          " term and a " + sort_name(r->sort()) + " term",
                      op.span);
        f = equal(l, r, l->sort(), op.span);
        break;
      }
      case Tok::Geq: f = geq(l, r, op.span); break;
      case Tok::Leq: f = leq(l, r, op.span); break;
      case Tok::Lt: f = lt(l, r, op.span); break;
      default: f = gt(l, r, op.span); break;
    }
    return mk_formula(std::move(f), lhs.span, rhs.span);
  }

  Operand parse_additive(PipeMode mode) {
    Operand lhs = parse_multiplicative(mode);
    for (;;) {
      Tok k = peek().kind;
      if (k != Tok::Plus && k != Tok::Minus) return lhs;
      Token op = advance();
      Operand rhs = parse_multiplicative(mode);
      lhs = mk_term(field_app(k == Tok::Plus ? "+" : "-", {to_term(lhs), to_term(rhs)}, op.span),
                    lhs.span, rhs.span);
    }
  }

  Operand parse_multiplicative(PipeMode mode) {
    Operand lhs = parse_unary(mode);
    for (;;) {
      Tok k = peek().kind;
      if (k != Tok::Star && k != Tok::Slash) return lhs;
      Token op = advance();
      Operand rhs = parse_unary(mode);
      lhs = mk_term(field_app(k == Tok::Star ? "*" : "/", {to_term(lhs), to_term(rhs)}, op.span),
                    lhs.span, rhs.span);
    }
  }

  Operand parse_unary(PipeMode mode) {
    if (peek().kind == Tok::Minus) {
      Token op = advance();
      Operand body = parse_unary(mode);
      TermPtr t = to_term(body);
      if (const auto* fc = t->get_if<FieldConst>(); fc && fc->is_literal())
        return mk_term(field_const(-fc->literal(), op.span), op.span, body.span);
      return mk_term(field_app("-", {field_const(Rational(0), op.span), t}, op.span),
                     op.span, body.span);
    }
    return parse_primary(mode);
  }

  Operand parse_primary(PipeMode mode) {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Integer:
      case Tok::RationalLit:
      case Tok::Decimal: {
        Token tok = advance();
        return mk_term(field_const(Rational::from_string(tok.text), tok.span), tok.span, tok.span);
      }
      case Tok::LBracket:
        return parse_prob_term();
      case Tok::LParen: {
        Token open = advance();
        Operand inner = parse_implies(mode == PipeMode::Disjunction ? mode : PipeMode::Forbidden);
        Token close = expect(Tok::RParen, "')'");
        inner.span = join(open.span, close.span);
        return inner;
      }
      case Tok::Ident:
        return parse_ident(mode);
      default:
        throw Error(ErrorKind::SyntaxError,
                    "expected a formula or term, found '" + t.text + "'", t.span);
    }
  }

  // [ body ]{x, y}  or  [ body | given ]{x}
  Operand parse_prob_term() {
    Token open = expect(Tok::LBracket, "'['");
    Operand body = parse_implies(PipeMode::CondSeparator);
    FormulaPtr given;
    if (peek().kind == Tok::Pipe) {
      advance();
      Operand g = parse_implies(PipeMode::CondSeparator);
      if (peek().kind == Tok::Pipe)
        throw Error(ErrorKind::SyntaxError, "only one conditioning bar per probability term",
                    peek().span);
      given = to_formula(g);
    }
    expect(Tok::RBracket, "']'");
    if (peek().kind != Tok::LBrace)
      throw Error(ErrorKind::SyntaxError,
                  "probability term requires a binder vector, e.g. [ ... ]{x}", peek().span);
    advance();
    std::vector<std::string> binders;
    for (;;) {
      Token name = expect(Tok::Ident, "bound object variable");
      if (!vocab_.is_declared(name.text)) vocab_.declare_object_var(name.text);
      binders.push_back(name.text);
      if (peek().kind != Tok::Comma) break;
      advance();
    }
    Token close = expect(Tok::RBrace, "'}'");
    SourceSpan span = join(open.span, close.span);
    TermPtr pt = given ? cond_prob_term(to_formula(body), given, std::move(binders), span)
                       : prob_term(to_formula(body), std::move(binders), span);
    return mk_term(std::move(pt), open.span, close.span);
  }

  Operand parse_ident(PipeMode mode) {
    Token name = advance();
    auto kind = vocab_.kind_of(name.text);

    // Quantifier binders shadow the vocabulary (innermost wins).
    if (peek().kind != Tok::LParen) {
      for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it) {
        if (it->first != name.text) continue;
        TermPtr v = it->second == Sort::Object ? object_var(name.text, name.span)
                                               : field_var(name.text, name.span);
        return mk_term(std::move(v), name.span, name.span);
      }
    }

    if (peek().kind == Tok::LParen) {
      if (!kind)
        throw Error(ErrorKind::UnknownSymbol,
                    "undeclared symbol '" + name.text + "' applied to arguments", name.span);
      advance();
      std::vector<TermPtr> args;
      if (peek().kind != Tok::RParen) {
        for (;;) {
          Operand a = parse_additive(mode == PipeMode::Disjunction ? mode : PipeMode::Forbidden);
          args.push_back(to_term(a));
          if (peek().kind != Tok::Comma) break;
          advance();
        }
      }
      Token close = expect(Tok::RParen, "')'");
      SourceSpan span = join(name.span, close.span);
      switch (*kind) {
        case SymbolKind::Pred:
          return mk_formula(pred(name.text, std::move(args), span), name.span, close.span);
        case SymbolKind::ObjectFunc:
          return mk_term(object_app(name.text, std::move(args), span), name.span, close.span);
        case SymbolKind::FieldFunc:
          return mk_term(field_app(name.text, std::move(args), span), name.span, close.span);
        case SymbolKind::Measure:
          return mk_term(measure_app(name.text, std::move(args), span), name.span, close.span);
        default:
          throw Error(ErrorKind::SortMismatch,
                      "'" + name.text + "' is declared as " + symbol_kind_name(*kind) +
                          " and cannot take arguments",
                      name.span);
      }
    }

    if (!kind) {
      // Bare undeclared identifier: an implicitly introduced object variable.
      vocab_.declare_object_var(name.text);
      return mk_term(object_var(name.text, name.span), name.span, name.span);
    }
    switch (*kind) {
      case SymbolKind::ObjectVar:
        return mk_term(object_var(name.text, name.span), name.span, name.span);
      case SymbolKind::FieldVar:
        return mk_term(field_var(name.text, name.span), name.span, name.span);
      case SymbolKind::ObjectConst:
        return mk_term(object_const(name.text, name.span), name.span, name.span);
      case SymbolKind::FieldConst:
        return mk_term(named_field_const(name.text, name.span), name.span, name.span);
      default:
        throw Error(ErrorKind::SyntaxError,
                    "'" + name.text + "' (" + symbol_kind_name(*kind) + ") needs arguments",
                    name.span);
    }
  }

  // -- helpers --

  FormulaPtr to_formula(const Operand& op) {
    if (!op.is_formula())
      throw Error(ErrorKind::SyntaxError, "expected a formula, found a term", op.span);
    return std::get<FormulaPtr>(op.v);
  }

  TermPtr to_term(const Operand& op) {
    if (op.is_formula())
      throw Error(ErrorKind::SyntaxError, "expected a term, found a formula", op.span);
    return std::get<TermPtr>(op.v);
  }

  static SourceSpan join(const SourceSpan& a, const SourceSpan& b) {
    SourceSpan s = a;
    s.end = b.end;
    s.end_line = b.end_line;
    s.end_column = b.end_column;
    return s;
  }

  Operand mk_formula(FormulaPtr f, const SourceSpan& from, const SourceSpan& to) {
    Operand op;
    op.span = join(from, to);
    op.v = std::make_shared<Formula>(f->node(), op.span);
    return op;
  }

  Operand mk_term(TermPtr t, const SourceSpan& from, const SourceSpan& to) {
    Operand op;
    op.span = join(from, to);
    op.v = std::make_shared<Term>(t->node(), op.span);
    return op;
  }

  const Token& peek() const { return toks_[pos_]; }

  Token advance() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

  Token expect(Tok kind, const char* what) {
    if (peek().kind != kind)
      throw Error(ErrorKind::SyntaxError,
                  std::string("expected ") + what + ", found '" +
                      (peek().kind == Tok::End ? "end of input" : peek().text) + "'",
                  peek().span);
    return advance();
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  Vocabulary& vocab_;
  std::vector<std::pair<std::string, Sort>> scopes_;
};

}  // namespace

ParsedFile parse_file(std::string_view text, const Vocabulary& base) {
  ParsedFile out;
  out.vocab = base;
  Parser p(Lexer(text).run(), out.vocab);
  while (p.try_declaration()) {
  }
  while (!p.at_end()) {
    Statement s = p.statement();
    p.expect_semicolon();
    if (s.is_formula()) well_formed(*s.formula(), out.vocab);
    else well_formed(*s.term(), out.vocab);
    out.statements.push_back(std::move(s));
  }
  return out;
}

Statement parse_statement(std::string_view text, Vocabulary& vocab) {
  Parser p(Lexer(text).run(), vocab);
  Statement s = p.statement();
  p.expect_end();
  if (s.is_formula()) well_formed(*s.formula(), vocab);
  else well_formed(*s.term(), vocab);
  return s;
}

FormulaPtr parse_formula(std::string_view text, Vocabulary& vocab) {
  Statement s = parse_statement(text, vocab);
  if (!s.is_formula())
    throw Error(ErrorKind::SyntaxError, "expected a formula, found a term", s.span);
  return s.formula();
}

TermPtr parse_term(std::string_view text, Vocabulary& vocab) {
  Statement s = parse_statement(text, vocab);
  if (s.is_formula())
    throw Error(ErrorKind::SyntaxError, "expected a term, found a formula", s.span);
  return s.term();
}

}  // namespace lp
