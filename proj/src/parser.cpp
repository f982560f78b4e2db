#include "hcspdc/parser.hpp"

#include <cctype>
#include <vector>

namespace hcspdc {

namespace {

enum class Tok {
  End,
  Ident,
  Number,
  KwSkip,
  KwEps,
  KwWait,
  KwAwait,
  KwIf,
  KwThen,
  KwElse,
  KwWhile,
  KwDo,
  KwMu,
  KwTrue,
  KwFalse,
  KwDefault,
  Assign,     // :=
  Comma,
  Semi,
  Par,        // ||
  IntChoice,  // |~|
  Interrupt,  // |>
  ChoiceSep,  // []
  LBracket,
  RBracket,
  LParen,
  RParen,
  LBrace,
  RBrace,
  Lt,
  Gt,
  Le,
  Ge,
  EqEq,
  Ne,
  AndAnd,
  OrOr,
  Not,
  Amp,
  Arrow,  // ->
  Plus,
  Minus,
  Star,
  Slash,
  Question,
  Bang,
  Dot,
};

struct Token {
  Tok kind;
  std::string text;
  double number = 0;
  int line, col;
};

struct Lexer {
  const std::string &src;
  size_t pos = 0;
  int line = 1, col = 1;

  explicit Lexer(const std::string &s) : src(s) {}

  [[noreturn]] void fail(const std::string &msg) const {
    throw ParseError(msg, line, col);
  }

  void advance(size_t n) {
    for (size_t i = 0; i < n && pos < src.size(); ++i, ++pos) {
      if (src[pos] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  }

  void skip_ws() {
    for (;;) {
      while (pos < src.size() && std::isspace((unsigned char)src[pos]))
        advance(1);
      if (pos + 1 < src.size() && src[pos] == '-' && src[pos + 1] == '-') {
        while (pos < src.size() && src[pos] != '\n') advance(1);
        continue;
      }
      break;
    }
  }

  Token next() {
    skip_ws();
    Token t;
    t.line = line;
    t.col = col;
    if (pos >= src.size()) {
      t.kind = Tok::End;
      return t;
    }
    char c = src[pos];
    auto two = [&](char a, char b) {
      return c == a && pos + 1 < src.size() && src[pos + 1] == b;
    };
    if (std::isalpha((unsigned char)c) || c == '_') {
      size_t start = pos;
      while (pos < src.size() &&
             (std::isalnum((unsigned char)src[pos]) || src[pos] == '_' ||
              src[pos] == '#'))
        advance(1);
      // handshake flag variables are named ch? / ch!; the suffix belongs to
      // the identifier only when what follows cannot start an operand (so
      // c?x stays an input and c!e+1 stays an output)
      if (pos < src.size() && (src[pos] == '?' || src[pos] == '!')) {
        char nx = pos + 1 < src.size() ? src[pos + 1] : ' ';
        if (!(std::isalnum((unsigned char)nx) || nx == '_' || nx == '(' ||
              nx == '-' || nx == '.' || nx == '='))
          advance(1);
      }
      t.text = src.substr(start, pos - start);
      if (t.text == "skip") t.kind = Tok::KwSkip;
      else if (t.text == "eps") t.kind = Tok::KwEps;
      else if (t.text == "wait") t.kind = Tok::KwWait;
      else if (t.text == "await") t.kind = Tok::KwAwait;
      else if (t.text == "if") t.kind = Tok::KwIf;
      else if (t.text == "then") t.kind = Tok::KwThen;
      else if (t.text == "else") t.kind = Tok::KwElse;
      else if (t.text == "while") t.kind = Tok::KwWhile;
      else if (t.text == "do") t.kind = Tok::KwDo;
      else if (t.text == "mu") t.kind = Tok::KwMu;
      else if (t.text == "true") t.kind = Tok::KwTrue;
      else if (t.text == "false") t.kind = Tok::KwFalse;
      else if (t.text == "default") t.kind = Tok::KwDefault;
      else t.kind = Tok::Ident;
      return t;
    }
    if (std::isdigit((unsigned char)c)) {
      size_t start = pos;
      while (pos < src.size() && std::isdigit((unsigned char)src[pos]))
        advance(1);
      if (pos + 1 < src.size() && src[pos] == '.' &&
          std::isdigit((unsigned char)src[pos + 1])) {
        advance(1);
        while (pos < src.size() && std::isdigit((unsigned char)src[pos]))
          advance(1);
      }
      t.text = src.substr(start, pos - start);
      t.kind = Tok::Number;
      t.number = std::stod(t.text);
      return t;
    }
    if (two(':', '=')) { advance(2); t.kind = Tok::Assign; return t; }
    if (c == '|' && pos + 2 < src.size() && src[pos + 1] == '~' &&
        src[pos + 2] == '|') {
      advance(3); t.kind = Tok::IntChoice; return t;
    }
    if (two('|', '|')) { advance(2); t.kind = Tok::Par; return t; }
    if (two('|', '>')) { advance(2); t.kind = Tok::Interrupt; return t; }
    if (two('[', ']')) { advance(2); t.kind = Tok::ChoiceSep; return t; }
    if (two('-', '>')) { advance(2); t.kind = Tok::Arrow; return t; }
    if (two('<', '=')) { advance(2); t.kind = Tok::Le; return t; }
    if (two('>', '=')) { advance(2); t.kind = Tok::Ge; return t; }
    if (two('=', '=')) { advance(2); t.kind = Tok::EqEq; return t; }
    if (two('!', '=')) { advance(2); t.kind = Tok::Ne; return t; }
    if (two('&', '&')) { advance(2); t.kind = Tok::AndAnd; return t; }
    switch (c) {
      case ',': advance(1); t.kind = Tok::Comma; return t;
      case ';': advance(1); t.kind = Tok::Semi; return t;
      case '[': advance(1); t.kind = Tok::LBracket; return t;
      case ']': advance(1); t.kind = Tok::RBracket; return t;
      case '(': advance(1); t.kind = Tok::LParen; return t;
      case ')': advance(1); t.kind = Tok::RParen; return t;
      case '{': advance(1); t.kind = Tok::LBrace; return t;
      case '}': advance(1); t.kind = Tok::RBrace; return t;
      case '<': advance(1); t.kind = Tok::Lt; return t;
      case '>': advance(1); t.kind = Tok::Gt; return t;
      case '&': advance(1); t.kind = Tok::Amp; return t;
      case '+': advance(1); t.kind = Tok::Plus; return t;
      case '-': advance(1); t.kind = Tok::Minus; return t;
      case '*': advance(1); t.kind = Tok::Star; return t;
      case '/': advance(1); t.kind = Tok::Slash; return t;
      case '?': advance(1); t.kind = Tok::Question; return t;
      case '!': advance(1); t.kind = Tok::Bang; return t;
      case '.': advance(1); t.kind = Tok::Dot; return t;
      case '=': advance(1); t.kind = Tok::EqEq; t.text = "="; return t;
      default:
        fail(std::string("unexpected character '") + c + "'");
    }
  }
};

struct Parser {
  std::vector<Token> toks;
  size_t i = 0;

  explicit Parser(const std::string &src) {
    Lexer lx(src);
    for (;;) {
      Token t = lx.next();
      toks.push_back(t);
      if (t.kind == Tok::End) break;
    }
  }

  const Token &peek(size_t k = 0) const {
    size_t j = i + k;
    return j < toks.size() ? toks[j] : toks.back();
  }
  const Token &cur() const { return peek(0); }
  Token take() { return toks[i < toks.size() - 1 ? i++ : i]; }

  [[noreturn]] void fail(const std::string &msg) const {
    throw ParseError(msg, cur().line, cur().col);
  }

  bool accept(Tok k) {
    if (cur().kind == k) {
      take();
      return true;
    }
    return false;
  }

  void expect(Tok k, const std::string &what) {
    if (!accept(k)) fail("expected " + what);
  }

  // ---- expressions ----

  bool starts_expr(const Token &t) const {
    switch (t.kind) {
      case Tok::Ident:
      case Tok::Number:
      case Tok::KwTrue:
      case Tok::KwFalse:
      case Tok::LParen:
      case Tok::Not:
      case Tok::Bang:
      case Tok::Minus:
        return true;
      default:
        return false;
    }
  }

  ExprPtr parse_expr() { return parse_or(); }

  // '||' doubles as boolean disjunction and parallel composition. In an
  // expression we take it as Or when the right-hand side reads as an
  // expression that is not itself the start of a process term (assignment,
  // channel operation, guarded branch); otherwise the expression ends and
  // the '||' is left for the term parser.
  ExprPtr parse_or() {
    ExprPtr e = parse_and();
    while (cur().kind == Tok::Par || cur().kind == Tok::OrOr) {
      size_t mark = i;
      take();
      ExprPtr rhs;
      try {
        rhs = parse_and();
      } catch (const ParseError &) {
        i = mark;
        return e;
      }
      switch (cur().kind) {
        case Tok::Assign:
        case Tok::Bang:
        case Tok::Question:
        case Tok::Arrow:
        case Tok::Comma:
          i = mark;
          return e;
        default:
          break;
      }
      e = mk(ExprKind::Or, e, rhs);
    }
    return e;
  }

  ExprPtr parse_and() {
    ExprPtr e = parse_cmp();
    while (accept(Tok::AndAnd)) e = mk(ExprKind::And, e, parse_cmp());
    return e;
  }

  ExprPtr parse_cmp() {
    ExprPtr e = parse_add();
    for (;;) {
      Tok k = cur().kind;
      ExprKind op;
      switch (k) {
        case Tok::Lt: op = ExprKind::Lt; break;
        case Tok::Le: op = ExprKind::Le; break;
        case Tok::Ge: op = ExprKind::Ge; break;
        case Tok::EqEq: op = ExprKind::Eq; break;
        case Tok::Ne: op = ExprKind::Ne; break;
        case Tok::Gt:
          // inside evolve constraints a trailing '>' closes the term
          if (!starts_expr(peek(1))) return e;
          op = ExprKind::Gt;
          break;
        default:
          return e;
      }
      take();
      e = mk(op, e, parse_add());
    }
  }

  ExprPtr parse_add() {
    ExprPtr e = parse_mul();
    for (;;) {
      if (accept(Tok::Plus)) e = mk(ExprKind::Add, e, parse_mul());
      else if (accept(Tok::Minus)) e = mk(ExprKind::Sub, e, parse_mul());
      else return e;
    }
  }

  ExprPtr parse_mul() {
    ExprPtr e = parse_unary();
    for (;;) {
      if (accept(Tok::Star)) e = mk(ExprKind::Mul, e, parse_unary());
      else if (accept(Tok::Slash)) e = mk(ExprKind::Div, e, parse_unary());
      else return e;
    }
  }

  ExprPtr parse_unary() {
    if (accept(Tok::Minus)) return mk(ExprKind::Neg, parse_unary(), nullptr);
    if (accept(Tok::Bang) || accept(Tok::Not))
      return mk(ExprKind::Not, parse_unary(), nullptr);
    return parse_atom();
  }

  ExprPtr parse_atom() {
    const Token &t = cur();
    switch (t.kind) {
      case Tok::Number: {
        take();
        return num(t.number);
      }
      case Tok::KwTrue:
        take();
        return boolc(true);
      case Tok::KwFalse:
        take();
        return boolc(false);
      case Tok::Ident: {
        take();
        return var(t.text);
      }
      case Tok::LParen: {
        take();
        ExprPtr e = parse_expr();
        expect(Tok::RParen, "')'");
        return e;
      }
      default:
        fail("expected expression");
    }
  }

  // ---- process terms ----

  TermPtr parse_term() { return parse_par_level(); }

  TermPtr parse_par_level() {
    TermPtr t = parse_choice_level();
    while (accept(Tok::Par)) t = par(t, parse_choice_level());
    return t;
  }

  TermPtr parse_choice_level() {
    TermPtr t = parse_seq_level();
    while (accept(Tok::IntChoice)) t = int_choice(t, parse_seq_level());
    return t;
  }

  TermPtr parse_seq_level() {
    TermPtr t = parse_postfix();
    while (accept(Tok::Semi)) t = seq(t, parse_postfix());
    return t;
  }

  TermPtr parse_postfix() {
    TermPtr t = parse_primary();
    while (accept(Tok::Star)) t = star(t);
    return t;
  }

  TermPtr parse_braced() {
    expect(Tok::LBrace, "'{'");
    TermPtr t = parse_term();
    expect(Tok::RBrace, "'}'");
    return t;
  }

  IoBranch parse_io_branch() {
    IoBranch br;
    if (cur().kind != Tok::Ident) fail("expected channel name");
    br.channel = take().text;
    if (accept(Tok::Question)) {
      br.is_input = true;
      if (cur().kind != Tok::Ident) fail("expected input variable");
      br.input_var = take().text;
    } else if (accept(Tok::Bang)) {
      br.is_input = false;
      br.output_expr = parse_expr();
    } else {
      fail("expected '?' or '!' in communication guard");
    }
    expect(Tok::Arrow, "'->'");
    br.cont = parse_postfix();
    return br;
  }

  TermPtr parse_choice_body() {
    std::vector<IoBranch> branches;
    TermPtr def;
    for (;;) {
      if (accept(Tok::KwDefault)) {
        expect(Tok::Arrow, "'->'");
        def = parse_postfix();
      } else {
        branches.push_back(parse_io_branch());
      }
      if (accept(Tok::ChoiceSep)) continue;
      break;
    }
    expect(Tok::RBracket, "']'");
    return ext_choice(std::move(branches), def);
  }

  TermPtr parse_evolve() {
    // after '<'
    std::vector<Ode> odes;
    if (cur().kind == Tok::Ident && is_dotted(cur().text)) {
      for (;;) {
        if (cur().kind != Tok::Ident || !is_dotted(cur().text))
          fail("expected dotted variable in ODE");
        std::string name = take().text;
        name.resize(name.size() - 4);  // strip _dot
        expect(Tok::EqEq, "'='");
        Ode o;
        o.var = name;
        o.rhs = parse_expr();
        odes.push_back(std::move(o));
        if (accept(Tok::Comma)) continue;
        break;
      }
    }
    expect(Tok::Amp, "'&'");
    ExprPtr b = parse_expr();
    expect(Tok::Gt, "'>'");
    if (accept(Tok::Interrupt)) {
      if (accept(Tok::LParen)) {
        ExprPtr d = parse_expr();
        expect(Tok::RParen, "')'");
        TermPtr handler = parse_braced();
        return evolve_timeout(std::move(odes), b, d, handler);
      }
      expect(Tok::LBracket, "'['");
      std::vector<IoBranch> branches;
      for (;;) {
        branches.push_back(parse_io_branch());
        if (accept(Tok::ChoiceSep)) continue;
        break;
      }
      expect(Tok::RBracket, "']'");
      return evolve_interrupt(std::move(odes), b, std::move(branches));
    }
    return evolve(std::move(odes), b);
  }

  TermPtr parse_primary() {
    const Token t = cur();
    switch (t.kind) {
      case Tok::KwSkip:
        take();
        return skip();
      case Tok::KwEps:
        take();
        return terminated();
      case Tok::KwWait:
        take();
        return wait_term(parse_expr());
      case Tok::KwAwait:
        take();
        return await_term(parse_expr());
      case Tok::KwIf: {
        take();
        ExprPtr b = parse_expr();
        expect(Tok::KwThen, "'then'");
        TermPtr p = parse_braced();
        expect(Tok::KwElse, "'else'");
        TermPtr q = parse_braced();
        return if_term(b, p, q);
      }
      case Tok::KwWhile: {
        take();
        ExprPtr b = parse_expr();
        expect(Tok::KwDo, "'do'");
        TermPtr body =
            cur().kind == Tok::LBrace ? parse_braced() : parse_postfix();
        return while_term(b, body);
      }
      case Tok::KwMu: {
        take();
        if (cur().kind != Tok::Ident) fail("expected recursion variable");
        std::string x = take().text;
        expect(Tok::Dot, "'.'");
        TermPtr body = parse_braced();
        return mu(x, body);
      }
      case Tok::LParen: {
        take();
        TermPtr p = parse_term();
        expect(Tok::RParen, "')'");
        return p;
      }
      case Tok::LBracket:
        take();
        return parse_choice_body();
      case Tok::Lt:
        take();
        return parse_evolve();
      case Tok::Ident: {
        // assignment, channel op, or recursion variable
        if (peek(1).kind == Tok::Question && peek(2).kind == Tok::Ident) {
          std::string ch = take().text;
          take();
          std::string x = take().text;
          return input(ch, x);
        }
        if (peek(1).kind == Tok::Bang) {
          std::string ch = take().text;
          take();
          return output(ch, parse_expr());
        }
        if (peek(1).kind == Tok::Assign || peek(1).kind == Tok::Comma) {
          std::vector<std::string> targets;
          targets.push_back(take().text);
          while (accept(Tok::Comma)) {
            if (cur().kind != Tok::Ident) fail("expected assignment target");
            targets.push_back(take().text);
          }
          expect(Tok::Assign, "':='");
          std::vector<ExprPtr> exprs;
          exprs.push_back(parse_expr());
          while (exprs.size() < targets.size()) {
            expect(Tok::Comma, "','");
            exprs.push_back(parse_expr());
          }
          if (cur().kind == Tok::Comma)
            fail("arity mismatch in simultaneous assignment");
          return assign(std::move(targets), std::move(exprs));
        }
        take();
        return rec_var(t.text);
      }
      default:
        fail("expected process term");
    }
  }
};

}  // namespace

TermPtr parse_process(const std::string &text) {
  Parser p(text);
  TermPtr t = p.parse_term();
  if (p.cur().kind != Tok::End) p.fail("trailing input");
  return t;
}

ExprPtr parse_expression(const std::string &text) {
  Parser p(text);
  ExprPtr e = p.parse_expr();
  if (p.cur().kind != Tok::End) p.fail("trailing input");
  return e;
}

}  // namespace hcspdc
