#include "hcspdc/expr.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace hcspdc {

ExprPtr num(double v) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::Number;
  e->value = v;
  return e;
}

ExprPtr boolc(bool v) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::BoolConst;
  e->value = v ? 1.0 : 0.0;
  return e;
}

ExprPtr var(const std::string &name) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::Var;
  e->name = name;
  return e;
}

ExprPtr mk(ExprKind k, ExprPtr a, ExprPtr b) {
  auto e = std::make_shared<Expr>();
  e->kind = k;
  e->a = std::move(a);
  e->b = std::move(b);
  return e;
}

ExprPtr operator+(ExprPtr a, ExprPtr b) { return mk(ExprKind::Add, a, b); }
ExprPtr operator-(ExprPtr a, ExprPtr b) { return mk(ExprKind::Sub, a, b); }
ExprPtr operator*(ExprPtr a, ExprPtr b) { return mk(ExprKind::Mul, a, b); }

bool expr_equal(const ExprPtr &a, const ExprPtr &b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case ExprKind::Number:
    case ExprKind::BoolConst:
      return a->value == b->value;
    case ExprKind::Var:
      return a->name == b->name;
    default:
      return expr_equal(a->a, b->a) && expr_equal(a->b, b->b);
  }
}

bool is_boolean_expr(const ExprPtr &e) {
  switch (e->kind) {
    case ExprKind::BoolConst:
    case ExprKind::Not:
    case ExprKind::And:
    case ExprKind::Or:
    case ExprKind::Lt:
    case ExprKind::Le:
    case ExprKind::Gt:
    case ExprKind::Ge:
    case ExprKind::Eq:
    case ExprKind::Ne:
      return true;
    default:
      return false;
  }
}

double eval_expr(const ExprPtr &e, const Valuation &v) {
  switch (e->kind) {
    case ExprKind::Number:
    case ExprKind::BoolConst:
      return e->value;
    case ExprKind::Var: {
      auto it = v.find(e->name);
      if (it == v.end())
        throw std::runtime_error("unbound variable: " + e->name);
      return it->second;
    }
    case ExprKind::Add:
      return eval_expr(e->a, v) + eval_expr(e->b, v);
    case ExprKind::Sub:
      return eval_expr(e->a, v) - eval_expr(e->b, v);
    case ExprKind::Mul:
      return eval_expr(e->a, v) * eval_expr(e->b, v);
    case ExprKind::Div: {
      double d = eval_expr(e->b, v);
      if (std::abs(d) < 1e-300) throw std::runtime_error("division by zero");
      return eval_expr(e->a, v) / d;
    }
    case ExprKind::Neg:
      return -eval_expr(e->a, v);
    case ExprKind::Not:
      return eval_bool(e->a, v) ? 0.0 : 1.0;
    case ExprKind::And:
      return (eval_bool(e->a, v) && eval_bool(e->b, v)) ? 1.0 : 0.0;
    case ExprKind::Or:
      return (eval_bool(e->a, v) || eval_bool(e->b, v)) ? 1.0 : 0.0;
    case ExprKind::Lt:
      return eval_expr(e->a, v) < eval_expr(e->b, v) ? 1.0 : 0.0;
    case ExprKind::Le:
      return eval_expr(e->a, v) <= eval_expr(e->b, v) ? 1.0 : 0.0;
    case ExprKind::Gt:
      return eval_expr(e->a, v) > eval_expr(e->b, v) ? 1.0 : 0.0;
    case ExprKind::Ge:
      return eval_expr(e->a, v) >= eval_expr(e->b, v) ? 1.0 : 0.0;
    case ExprKind::Eq:
      return eval_expr(e->a, v) == eval_expr(e->b, v) ? 1.0 : 0.0;
    case ExprKind::Ne:
      return eval_expr(e->a, v) != eval_expr(e->b, v) ? 1.0 : 0.0;
  }
  throw std::logic_error("bad expr kind");
}

bool eval_bool(const ExprPtr &e, const Valuation &v) {
  return eval_expr(e, v) != 0.0;
}

void collect_vars(const ExprPtr &e, std::set<std::string> &out) {
  if (!e) return;
  if (e->kind == ExprKind::Var) out.insert(e->name);
  collect_vars(e->a, out);
  collect_vars(e->b, out);
}

std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

namespace {

int prec_of(ExprKind k) {
  switch (k) {
    case ExprKind::Or: return 1;
    case ExprKind::And: return 2;
    case ExprKind::Not: return 3;
    case ExprKind::Lt:
    case ExprKind::Le:
    case ExprKind::Gt:
    case ExprKind::Ge:
    case ExprKind::Eq:
    case ExprKind::Ne: return 4;
    case ExprKind::Add:
    case ExprKind::Sub: return 5;
    case ExprKind::Mul:
    case ExprKind::Div: return 6;
    case ExprKind::Neg: return 7;
    default: return 8;
  }
}

const char *op_of(ExprKind k) {
  switch (k) {
    case ExprKind::Add: return " + ";
    case ExprKind::Sub: return " - ";
    case ExprKind::Mul: return " * ";
    case ExprKind::Div: return " / ";
    case ExprKind::And: return " && ";
    case ExprKind::Or: return " || ";
    case ExprKind::Lt: return " < ";
    case ExprKind::Le: return " <= ";
    case ExprKind::Gt: return " > ";
    case ExprKind::Ge: return " >= ";
    case ExprKind::Eq: return " == ";
    case ExprKind::Ne: return " != ";
    default: return "?";
  }
}

void print_rec(const ExprPtr &e, int parent_prec, std::string &out) {
  int p = prec_of(e->kind);
  switch (e->kind) {
    case ExprKind::Number:
      out += format_double(e->value);
      return;
    case ExprKind::BoolConst:
      out += e->value != 0.0 ? "true" : "false";
      return;
    case ExprKind::Var:
      out += e->name;
      return;
    case ExprKind::Neg:
    case ExprKind::Not: {
      out += e->kind == ExprKind::Neg ? "-" : "!";
      bool atom = e->a->kind == ExprKind::Number ||
                  e->a->kind == ExprKind::BoolConst ||
                  e->a->kind == ExprKind::Var;
      if (!atom) out += "(";
      print_rec(e->a, 0, out);
      if (!atom) out += ")";
      return;
    }
    default: {
      bool paren = p <= parent_prec;
      if (paren) out += "(";
      print_rec(e->a, p, out);
      out += op_of(e->kind);
      print_rec(e->b, p, out);
      if (paren) out += ")";
      return;
    }
  }
}

}  // namespace

std::string print_expr(const ExprPtr &e) {
  std::string out;
  print_rec(e, 0, out);
  return out;
}

ExprPtr nnf(const ExprPtr &e, bool negate) {
  switch (e->kind) {
    case ExprKind::BoolConst:
      return boolc(negate ? e->value == 0.0 : e->value != 0.0);
    case ExprKind::Not:
      return nnf(e->a, !negate);
    case ExprKind::And:
      return mk(negate ? ExprKind::Or : ExprKind::And, nnf(e->a, negate),
                nnf(e->b, negate));
    case ExprKind::Or:
      return mk(negate ? ExprKind::And : ExprKind::Or, nnf(e->a, negate),
                nnf(e->b, negate));
    case ExprKind::Lt:
      return mk(negate ? ExprKind::Ge : ExprKind::Lt, e->a, e->b);
    case ExprKind::Le:
      return mk(negate ? ExprKind::Gt : ExprKind::Le, e->a, e->b);
    case ExprKind::Gt:
      return mk(negate ? ExprKind::Le : ExprKind::Gt, e->a, e->b);
    case ExprKind::Ge:
      return mk(negate ? ExprKind::Lt : ExprKind::Ge, e->a, e->b);
    case ExprKind::Eq:
      return mk(negate ? ExprKind::Ne : ExprKind::Eq, e->a, e->b);
    case ExprKind::Ne:
      return mk(negate ? ExprKind::Eq : ExprKind::Ne, e->a, e->b);
    case ExprKind::Var:
      // boolean process variable as an atom
      return negate ? mk(ExprKind::Not, e) : e;
    default:
      if (negate) throw std::runtime_error("cannot negate arithmetic term");
      return e;
  }
}

ExprPtr closure(const ExprPtr &e) {
  switch (e->kind) {
    case ExprKind::BoolConst:
      return e;
    case ExprKind::And:
    case ExprKind::Or:
      return mk(e->kind, closure(e->a), closure(e->b));
    case ExprKind::Lt:
      return mk(ExprKind::Le, e->a, e->b);
    case ExprKind::Gt:
      return mk(ExprKind::Ge, e->a, e->b);
    case ExprKind::Le:
    case ExprKind::Ge:
    case ExprKind::Eq:
      return e;
    case ExprKind::Ne:
      // closure of R \ {c} is R
      return boolc(true);
    case ExprKind::Var:
      return e;  // boolean atoms are their own closure
    case ExprKind::Not:
      if (e->a->kind == ExprKind::Var) return e;
      return closure(nnf(e));
    default:
      throw std::runtime_error("closure: unsupported atom shape: " +
                               print_expr(e));
  }
}

ExprPtr substitute_expr(const ExprPtr &e,
                        const std::map<std::string, ExprPtr> &subst) {
  if (!e) return e;
  if (e->kind == ExprKind::Var) {
    auto it = subst.find(e->name);
    return it != subst.end() ? it->second : e;
  }
  if (!e->a && !e->b) return e;
  auto c = std::make_shared<Expr>(*e);
  c->a = substitute_expr(e->a, subst);
  c->b = substitute_expr(e->b, subst);
  return c;
}

}  // namespace hcspdc
