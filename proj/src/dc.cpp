#include "hcspdc/dc.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

#include "hcspdc/parser.hpp"

namespace hcspdc {

// ---------------------------------------------------------------------------
// builders
// ---------------------------------------------------------------------------

namespace {
std::shared_ptr<StateExpr> snode(StateKind k) {
  auto s = std::make_shared<StateExpr>();
  s->kind = k;
  return s;
}
std::shared_ptr<DcTerm> tnode(DcTermKind k) {
  auto t = std::make_shared<DcTerm>();
  t->kind = k;
  return t;
}
std::shared_ptr<DcFormula> fnode(DcKind k) {
  auto f = std::make_shared<DcFormula>();
  f->kind = k;
  return f;
}
}  // namespace

StatePtr sv(const std::string &name) {
  auto s = snode(StateKind::Var);
  s->name = name;
  return s;
}
StatePtr slit(bool v) {
  auto s = snode(StateKind::Lit);
  s->value = v;
  return s;
}
StatePtr snot(StatePtr a) {
  auto s = snode(StateKind::Not);
  s->a = std::move(a);
  return s;
}
StatePtr sand(StatePtr a, StatePtr b) {
  auto s = snode(StateKind::And);
  s->a = std::move(a);
  s->b = std::move(b);
  return s;
}
StatePtr sor(StatePtr a, StatePtr b) {
  auto s = snode(StateKind::Or);
  s->a = std::move(a);
  s->b = std::move(b);
  return s;
}
StatePtr simp(StatePtr a, StatePtr b) {
  auto s = snode(StateKind::Imp);
  s->a = std::move(a);
  s->b = std::move(b);
  return s;
}

bool state_equal(const StatePtr &a, const StatePtr &b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case StateKind::Var:
      return a->name == b->name;
    case StateKind::Lit:
      return a->value == b->value;
    default:
      return state_equal(a->a, b->a) &&
             (a->kind == StateKind::Not || state_equal(a->b, b->b));
  }
}

void collect_state_vars(const StatePtr &s, std::set<std::string> &out) {
  if (!s) return;
  if (s->kind == StateKind::Var) out.insert(s->name);
  collect_state_vars(s->a, out);
  collect_state_vars(s->b, out);
}

DcTermPtr dc_len() { return tnode(DcTermKind::Length); }
DcTermPtr dc_dur(StatePtr s) {
  auto t = tnode(DcTermKind::Duration);
  t->state = std::move(s);
  return t;
}
DcTermPtr tvar(const std::string &x) {
  auto t = tnode(DcTermKind::TempVar);
  t->name = x;
  return t;
}
DcTermPtr tvar_p(const std::string &x) {
  auto t = tnode(DcTermKind::TempVarPrimed);
  t->name = x;
  return t;
}
DcTermPtr rigid(const std::string &z) {
  auto t = tnode(DcTermKind::RigidVar);
  t->name = z;
  return t;
}
DcTermPtr dc_const(double v) {
  auto t = tnode(DcTermKind::Const);
  t->value = v;
  return t;
}
DcTermPtr dc_term(DcTermKind k, DcTermPtr a, DcTermPtr b) {
  auto t = tnode(k);
  t->a = std::move(a);
  t->b = std::move(b);
  return t;
}

DcPtr dc_top() { return fnode(DcKind::Top); }
DcPtr dc_bot() { return fnode(DcKind::Bot); }
DcPtr dc_cmp(CmpOp op, DcTermPtr t1, DcTermPtr t2) {
  auto f = fnode(DcKind::Cmp);
  f->cmp = op;
  f->t1 = std::move(t1);
  f->t2 = std::move(t2);
  return f;
}
DcPtr temp_prop(const std::string &x, bool primed) {
  auto f = fnode(DcKind::TempProp);
  f->name = x;
  f->primed = primed;
  return f;
}
DcPtr dc_not(DcPtr a) {
  auto f = fnode(DcKind::Not);
  f->a = std::move(a);
  return f;
}
namespace {
DcPtr binary(DcKind k, DcPtr a, DcPtr b) {
  auto f = fnode(k);
  f->a = std::move(a);
  f->b = std::move(b);
  return f;
}
}  // namespace
DcPtr dc_and(DcPtr a, DcPtr b) { return binary(DcKind::And, a, b); }
DcPtr dc_or(DcPtr a, DcPtr b) { return binary(DcKind::Or, a, b); }
DcPtr dc_imp(DcPtr a, DcPtr b) { return binary(DcKind::Imp, a, b); }
DcPtr dc_chop(DcPtr a, DcPtr b) { return binary(DcKind::Chop, a, b); }
DcPtr dc_box(DcPtr a) {
  auto f = fnode(DcKind::Box);
  f->a = std::move(a);
  return f;
}
DcPtr dc_boxdot(DcPtr a) {
  auto f = fnode(DcKind::BoxPrefix);
  f->a = std::move(a);
  return f;
}
DcPtr dc_boxpt(ExprPtr cond) {
  auto f = fnode(DcKind::BoxPoint);
  f->point_cond = std::move(cond);
  return f;
}
DcPtr dc_diamond_lc(DcPtr a) {
  auto f = fnode(DcKind::DiamondLC);
  f->a = std::move(a);
  return f;
}
DcPtr dc_star(DcPtr a) {
  auto f = fnode(DcKind::Star);
  f->a = std::move(a);
  return f;
}
DcPtr dc_mu(const std::string &x, DcPtr body) {
  check_positive(body, x);
  auto f = fnode(DcKind::Mu);
  f->name = x;
  f->a = std::move(body);
  return f;
}
DcPtr fvar(const std::string &x) {
  auto f = fnode(DcKind::FormulaVar);
  f->name = x;
  return f;
}
DcPtr dc_forall(const std::string &z, DcPtr body) {
  auto f = fnode(DcKind::Forall);
  f->name = z;
  f->a = std::move(body);
  return f;
}
DcPtr dc_evolves_by(const std::string &x, const std::string &xdot,
                    StatePtr n) {
  auto f = fnode(DcKind::EvolvesBy);
  f->name = x;
  f->dot = xdot;
  f->state = std::move(n);
  return f;
}
DcPtr dc_esplit(StatePtr split, const std::string &s1, const std::string &s2,
                DcPtr body) {
  auto f = fnode(DcKind::ExistsSplit);
  f->state = std::move(split);
  f->name = s1;
  f->dot = s2;
  f->a = std::move(body);
  return f;
}

DcPtr almost(StatePtr s) {
  return dc_and(dc_cmp(CmpOp::Ne, dc_len(), dc_const(0)),
                dc_cmp(CmpOp::Eq, dc_dur(std::move(s)), dc_len()));
}
DcPtr almost0(StatePtr s) {
  return dc_cmp(CmpOp::Eq, dc_dur(std::move(s)), dc_len());
}
DcPtr len_eq(double v) { return dc_cmp(CmpOp::Eq, dc_len(), dc_const(v)); }
DcPtr dc_fin() {
  return dc_cmp(CmpOp::Lt, dc_len(),
                dc_const(std::numeric_limits<double>::infinity()));
}
DcPtr dc_inf() {
  return dc_cmp(CmpOp::Eq, dc_len(),
                dc_const(std::numeric_limits<double>::infinity()));
}
DcPtr with_fin(DcPtr a) { return dc_and(std::move(a), dc_fin()); }

DcTermPtr term_of_expr(const ExprPtr &e, bool primed) {
  switch (e->kind) {
    case ExprKind::Number:
      return dc_const(e->value);
    case ExprKind::Var:
      return primed ? tvar_p(e->name) : tvar(e->name);
    case ExprKind::Add:
      return dc_term(DcTermKind::Add, term_of_expr(e->a, primed),
                     term_of_expr(e->b, primed));
    case ExprKind::Sub:
      return dc_term(DcTermKind::Sub, term_of_expr(e->a, primed),
                     term_of_expr(e->b, primed));
    case ExprKind::Mul:
      return dc_term(DcTermKind::Mul, term_of_expr(e->a, primed),
                     term_of_expr(e->b, primed));
    case ExprKind::Div:
      return dc_term(DcTermKind::Div, term_of_expr(e->a, primed),
                     term_of_expr(e->b, primed));
    case ExprKind::Neg:
      return dc_term(DcTermKind::Sub, dc_const(0), term_of_expr(e->a, primed));
    default:
      throw std::runtime_error("not an arithmetic expression: " +
                               print_expr(e));
  }
}

DcPtr formula_of_expr(const ExprPtr &b, bool primed) {
  switch (b->kind) {
    case ExprKind::BoolConst:
      return b->value != 0.0 ? dc_top() : dc_bot();
    case ExprKind::Var:
      return temp_prop(b->name, primed);
    case ExprKind::Not:
      return dc_not(formula_of_expr(b->a, primed));
    case ExprKind::And:
      return dc_and(formula_of_expr(b->a, primed),
                    formula_of_expr(b->b, primed));
    case ExprKind::Or:
      return dc_or(formula_of_expr(b->a, primed),
                   formula_of_expr(b->b, primed));
    case ExprKind::Lt:
      return dc_cmp(CmpOp::Lt, term_of_expr(b->a, primed),
                    term_of_expr(b->b, primed));
    case ExprKind::Le:
      return dc_cmp(CmpOp::Le, term_of_expr(b->a, primed),
                    term_of_expr(b->b, primed));
    case ExprKind::Gt:
      return dc_cmp(CmpOp::Gt, term_of_expr(b->a, primed),
                    term_of_expr(b->b, primed));
    case ExprKind::Ge:
      return dc_cmp(CmpOp::Ge, term_of_expr(b->a, primed),
                    term_of_expr(b->b, primed));
    case ExprKind::Eq:
      return dc_cmp(CmpOp::Eq, term_of_expr(b->a, primed),
                    term_of_expr(b->b, primed));
    case ExprKind::Ne:
      return dc_cmp(CmpOp::Ne, term_of_expr(b->a, primed),
                    term_of_expr(b->b, primed));
    default:
      throw std::runtime_error("not a boolean expression: " + print_expr(b));
  }
}

// ---------------------------------------------------------------------------
// structural operations
// ---------------------------------------------------------------------------

namespace {
bool term_eq(const DcTermPtr &a, const DcTermPtr &b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case DcTermKind::Const:
      return a->value == b->value;
    case DcTermKind::TempVar:
    case DcTermKind::TempVarPrimed:
    case DcTermKind::RigidVar:
      return a->name == b->name;
    case DcTermKind::Duration:
      return state_equal(a->state, b->state);
    case DcTermKind::Length:
      return true;
    default:
      return term_eq(a->a, b->a) && term_eq(a->b, b->b);
  }
}
}  // namespace

bool dc_equal(const DcPtr &a, const DcPtr &b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind) return false;
  if (a->cmp != b->cmp) return false;
  if (!term_eq(a->t1, b->t1) || !term_eq(a->t2, b->t2)) return false;
  if (a->name != b->name || a->primed != b->primed || a->dot != b->dot)
    return false;
  if (!state_equal(a->state, b->state)) return false;
  if ((a->point_cond || b->point_cond) &&
      !(a->point_cond && b->point_cond &&
        expr_equal(a->point_cond, b->point_cond)))
    return false;
  if (!a->a != !b->a || !a->b != !b->b) return false;
  if (a->a && !dc_equal(a->a, b->a)) return false;
  if (a->b && !dc_equal(a->b, b->b)) return false;
  return true;
}

namespace {
void free_vars_rec(const DcPtr &f, std::set<std::string> &bound,
                   std::set<std::string> &out) {
  if (!f) return;
  if (f->kind == DcKind::FormulaVar) {
    if (!bound.count(f->name)) out.insert(f->name);
    return;
  }
  if (f->kind == DcKind::Mu) {
    bool had = bound.count(f->name) != 0;
    bound.insert(f->name);
    free_vars_rec(f->a, bound, out);
    if (!had) bound.erase(f->name);
    return;
  }
  free_vars_rec(f->a, bound, out);
  free_vars_rec(f->b, bound, out);
}

void positive_rec(const DcPtr &f, const std::string &x, bool positive) {
  if (!f) return;
  switch (f->kind) {
    case DcKind::FormulaVar:
      if (f->name == x && !positive)
        throw std::runtime_error("negative occurrence of formula variable " +
                                 x);
      return;
    case DcKind::Not:
      positive_rec(f->a, x, !positive);
      return;
    case DcKind::Imp:
      positive_rec(f->a, x, !positive);
      positive_rec(f->b, x, positive);
      return;
    case DcKind::Mu:
      if (f->name == x) return;  // shadowed
      positive_rec(f->a, x, positive);
      return;
    default:
      positive_rec(f->a, x, positive);
      positive_rec(f->b, x, positive);
      return;
  }
}
}  // namespace

std::set<std::string> free_formula_vars(const DcPtr &f) {
  std::set<std::string> bound, out;
  free_vars_rec(f, bound, out);
  return out;
}

void check_positive(const DcPtr &f, const std::string &x) {
  positive_rec(f, x, true);
}

DcPtr subst_formula_var(const DcPtr &f, const std::string &x,
                        const DcPtr &by) {
  if (!f) return f;
  if (f->kind == DcKind::FormulaVar) return f->name == x ? by : f;
  if (f->kind == DcKind::Mu && f->name == x) return f;
  if (!f->a && !f->b) return f;
  auto c = std::make_shared<DcFormula>(*f);
  c->a = subst_formula_var(f->a, x, by);
  c->b = subst_formula_var(f->b, x, by);
  return c;
}

namespace {
StatePtr subst_state(const StatePtr &s, const std::string &from,
                     const std::string &to) {
  if (!s) return s;
  if (s->kind == StateKind::Var) return s->name == from ? sv(to) : s;
  if (!s->a && !s->b) return s;
  auto c = std::make_shared<StateExpr>(*s);
  c->a = subst_state(s->a, from, to);
  c->b = subst_state(s->b, from, to);
  return c;
}

DcTermPtr subst_state_term(const DcTermPtr &t, const std::string &from,
                           const std::string &to) {
  if (!t) return t;
  auto c = std::make_shared<DcTerm>(*t);
  c->state = subst_state(t->state, from, to);
  c->a = subst_state_term(t->a, from, to);
  c->b = subst_state_term(t->b, from, to);
  return c;
}
}  // namespace

DcPtr subst_state_var(const DcPtr &f, const std::string &from,
                      const std::string &to) {
  if (!f) return f;
  auto c = std::make_shared<DcFormula>(*f);
  c->t1 = subst_state_term(f->t1, from, to);
  c->t2 = subst_state_term(f->t2, from, to);
  c->state = subst_state(f->state, from, to);
  if (f->kind == DcKind::ExistsSplit &&
      (f->name == from || f->dot == from)) {
    // the bound witness names shadow; only the split state is renamed
    c->a = f->a;
    c->b = f->b;
    return c;
  }
  c->a = subst_state_var(f->a, from, to);
  c->b = subst_state_var(f->b, from, to);
  return c;
}

DcPtr unfold_mu(const DcPtr &m, int k) {
  if (!m || m->kind != DcKind::Mu)
    throw std::runtime_error("unfold_mu: not a mu formula");
  DcPtr acc = dc_bot();
  for (int i = 0; i < k; ++i) acc = subst_formula_var(m->a, m->name, acc);
  return acc;
}

// ---------------------------------------------------------------------------
// s-expressions
// ---------------------------------------------------------------------------

std::string print_state(const StatePtr &s) {
  switch (s->kind) {
    case StateKind::Var:
      return s->name;
    case StateKind::Lit:
      return s->value ? "1" : "0";
    case StateKind::Not:
      return "(! " + print_state(s->a) + ")";
    case StateKind::And:
      return "(& " + print_state(s->a) + " " + print_state(s->b) + ")";
    case StateKind::Or:
      return "(| " + print_state(s->a) + " " + print_state(s->b) + ")";
    case StateKind::Imp:
      return "(=> " + print_state(s->a) + " " + print_state(s->b) + ")";
  }
  throw std::logic_error("bad state kind");
}

std::string print_dc_term(const DcTermPtr &t) {
  switch (t->kind) {
    case DcTermKind::Length:
      return "len";
    case DcTermKind::Duration:
      return "(dur " + print_state(t->state) + ")";
    case DcTermKind::TempVar:
      return "(v " + t->name + ")";
    case DcTermKind::TempVarPrimed:
      return "(v' " + t->name + ")";
    case DcTermKind::RigidVar:
      return "(z " + t->name + ")";
    case DcTermKind::Const:
      return format_double(t->value);
    case DcTermKind::Add:
      return "(+ " + print_dc_term(t->a) + " " + print_dc_term(t->b) + ")";
    case DcTermKind::Sub:
      return "(- " + print_dc_term(t->a) + " " + print_dc_term(t->b) + ")";
    case DcTermKind::Mul:
      return "(* " + print_dc_term(t->a) + " " + print_dc_term(t->b) + ")";
    case DcTermKind::Div:
      return "(/ " + print_dc_term(t->a) + " " + print_dc_term(t->b) + ")";
  }
  throw std::logic_error("bad term kind");
}

namespace {
const char *cmp_name(CmpOp op) {
  switch (op) {
    case CmpOp::Eq: return "=";
    case CmpOp::Ne: return "!=";
    case CmpOp::Lt: return "<";
    case CmpOp::Le: return "<=";
    case CmpOp::Gt: return ">";
    case CmpOp::Ge: return ">=";
  }
  return "?";
}
}  // namespace

std::string print_dc(const DcPtr &f) {
  switch (f->kind) {
    case DcKind::Top:
      return "true";
    case DcKind::Bot:
      return "false";
    case DcKind::Cmp:
      return std::string("(") + cmp_name(f->cmp) + " " + print_dc_term(f->t1) +
             " " + print_dc_term(f->t2) + ")";
    case DcKind::TempProp:
      return std::string(f->primed ? "(prop' " : "(prop ") + f->name + ")";
    case DcKind::Not:
      return "(not " + print_dc(f->a) + ")";
    case DcKind::And:
      return "(and " + print_dc(f->a) + " " + print_dc(f->b) + ")";
    case DcKind::Or:
      return "(or " + print_dc(f->a) + " " + print_dc(f->b) + ")";
    case DcKind::Imp:
      return "(imp " + print_dc(f->a) + " " + print_dc(f->b) + ")";
    case DcKind::Chop:
      return "(chop " + print_dc(f->a) + " " + print_dc(f->b) + ")";
    case DcKind::Box:
      return "(box " + print_dc(f->a) + ")";
    case DcKind::BoxPrefix:
      return "(boxdot " + print_dc(f->a) + ")";
    case DcKind::BoxPoint:
      return "(boxpt \"" + print_expr(f->point_cond) + "\")";
    case DcKind::DiamondLC:
      return "(dialc " + print_dc(f->a) + ")";
    case DcKind::Star:
      return "(star " + print_dc(f->a) + ")";
    case DcKind::Mu:
      return "(mu " + f->name + " " + print_dc(f->a) + ")";
    case DcKind::FormulaVar:
      return "(fv " + f->name + ")";
    case DcKind::Forall:
      return "(forall " + f->name + " " + print_dc(f->a) + ")";
    case DcKind::EvolvesBy:
      return "(evolves " + f->name + " " + f->dot + " " +
             print_state(f->state) + ")";
    case DcKind::ExistsSplit:
      return "(esplit " + print_state(f->state) + " " + f->name + " " +
             f->dot + " " + print_dc(f->a) + ")";
  }
  throw std::logic_error("bad formula kind");
}

namespace {

struct Sexp {
  // leaf if children empty and !is_list
  bool is_list = false;
  bool is_string = false;
  std::string atom;
  std::vector<Sexp> children;
};

struct SexpParser {
  const std::string &s;
  size_t pos = 0;
  explicit SexpParser(const std::string &text) : s(text) {}

  [[noreturn]] void fail(const std::string &msg) {
    throw ParseError(msg, 1, (int)pos + 1);
  }

  void skip() {
    while (pos < s.size() &&
           (std::isspace((unsigned char)s[pos]) || s[pos] == ';')) {
      if (s[pos] == ';')
        while (pos < s.size() && s[pos] != '\n') ++pos;
      else
        ++pos;
    }
  }

  Sexp parse() {
    skip();
    if (pos >= s.size()) fail("unexpected end of input");
    Sexp e;
    if (s[pos] == '(') {
      ++pos;
      e.is_list = true;
      for (;;) {
        skip();
        if (pos >= s.size()) fail("missing ')'");
        if (s[pos] == ')') {
          ++pos;
          return e;
        }
        e.children.push_back(parse());
      }
    }
    if (s[pos] == '"') {
      ++pos;
      size_t start = pos;
      while (pos < s.size() && s[pos] != '"') ++pos;
      if (pos >= s.size()) fail("unterminated string");
      e.is_string = true;
      e.atom = s.substr(start, pos - start);
      ++pos;
      return e;
    }
    size_t start = pos;
    while (pos < s.size() && !std::isspace((unsigned char)s[pos]) &&
           s[pos] != '(' && s[pos] != ')')
      ++pos;
    e.atom = s.substr(start, pos - start);
    if (e.atom.empty()) fail("empty atom");
    return e;
  }
};

[[noreturn]] void bad(const Sexp &e, const std::string &what) {
  throw std::runtime_error("malformed " + what + " near '" +
                           (e.is_list ? std::string("(...)") : e.atom) + "'");
}

StatePtr state_of(const Sexp &e) {
  if (!e.is_list) {
    if (e.atom == "1") return slit(true);
    if (e.atom == "0") return slit(false);
    return sv(e.atom);
  }
  if (e.children.empty()) bad(e, "state expression");
  const std::string &h = e.children[0].atom;
  if (h == "!" && e.children.size() == 2)
    return snot(state_of(e.children[1]));
  if (e.children.size() == 3) {
    StatePtr a = state_of(e.children[1]), b = state_of(e.children[2]);
    if (h == "&") return sand(a, b);
    if (h == "|") return sor(a, b);
    if (h == "=>") return simp(a, b);
  }
  bad(e, "state expression");
}

DcTermPtr term_of(const Sexp &e) {
  if (!e.is_list) {
    if (e.atom == "len") return dc_len();
    if (e.atom == "inf") return dc_const(INFINITY);
    try {
      size_t used = 0;
      double v = std::stod(e.atom, &used);
      if (used == e.atom.size()) return dc_const(v);
    } catch (...) {
    }
    bad(e, "term");
  }
  if (e.children.empty()) bad(e, "term");
  const std::string &h = e.children[0].atom;
  if (e.children.size() == 2) {
    if (h == "dur") return dc_dur(state_of(e.children[1]));
    if (h == "v") return tvar(e.children[1].atom);
    if (h == "v'") return tvar_p(e.children[1].atom);
    if (h == "z") return rigid(e.children[1].atom);
  }
  if (e.children.size() == 3) {
    DcTermPtr a = term_of(e.children[1]), b = term_of(e.children[2]);
    if (h == "+") return dc_term(DcTermKind::Add, a, b);
    if (h == "-") return dc_term(DcTermKind::Sub, a, b);
    if (h == "*") return dc_term(DcTermKind::Mul, a, b);
    if (h == "/") return dc_term(DcTermKind::Div, a, b);
  }
  bad(e, "term");
}

DcPtr formula_of(const Sexp &e) {
  if (!e.is_list) {
    if (e.atom == "true") return dc_top();
    if (e.atom == "false") return dc_bot();
    bad(e, "formula");
  }
  if (e.children.empty()) bad(e, "formula");
  const std::string &h = e.children[0].atom;
  size_t n = e.children.size();
  auto sub = [&](size_t i) { return formula_of(e.children[i]); };
  if (n == 3) {
    for (CmpOp op : {CmpOp::Eq, CmpOp::Ne, CmpOp::Lt, CmpOp::Le, CmpOp::Gt,
                     CmpOp::Ge})
      if (h == cmp_name(op))
        return dc_cmp(op, term_of(e.children[1]), term_of(e.children[2]));
    if (h == "and") return dc_and(sub(1), sub(2));
    if (h == "or") return dc_or(sub(1), sub(2));
    if (h == "imp") return dc_imp(sub(1), sub(2));
    if (h == "chop") return dc_chop(sub(1), sub(2));
    if (h == "mu") return dc_mu(e.children[1].atom, sub(2));
    if (h == "forall") return dc_forall(e.children[1].atom, sub(2));
  }
  if (n == 2) {
    if (h == "not") return dc_not(sub(1));
    if (h == "box") return dc_box(sub(1));
    if (h == "boxdot") return dc_boxdot(sub(1));
    if (h == "dialc") return dc_diamond_lc(sub(1));
    if (h == "star") return dc_star(sub(1));
    if (h == "fv") return fvar(e.children[1].atom);
    if (h == "prop") return temp_prop(e.children[1].atom, false);
    if (h == "prop'") return temp_prop(e.children[1].atom, true);
    if (h == "boxpt") return dc_boxpt(parse_expression(e.children[1].atom));
  }
  if (n == 4 && h == "evolves")
    return dc_evolves_by(e.children[1].atom, e.children[2].atom,
                         state_of(e.children[3]));
  if (n == 5 && h == "esplit")
    return dc_esplit(state_of(e.children[1]), e.children[2].atom,
                     e.children[3].atom, formula_of(e.children[4]));
  bad(e, "formula");
}

}  // namespace

DcPtr parse_dc(const std::string &text) {
  SexpParser p(text);
  Sexp e = p.parse();
  p.skip();
  if (p.pos != text.size()) p.fail("trailing input");
  return formula_of(e);
}

void collect_dc_state_vars(const DcPtr &f, std::set<std::string> &out) {
  if (!f) return;
  std::function<void(const DcTermPtr &)> from_term =
      [&](const DcTermPtr &t) {
        if (!t) return;
        collect_state_vars(t->state, out);
        from_term(t->a);
        from_term(t->b);
      };
  from_term(f->t1);
  from_term(f->t2);
  collect_state_vars(f->state, out);
  collect_dc_state_vars(f->a, out);
  collect_dc_state_vars(f->b, out);
}

void collect_dc_temp_vars(const DcPtr &f, std::set<std::string> &out) {
  if (!f) return;
  std::function<void(const DcTermPtr &)> from_term =
      [&](const DcTermPtr &t) {
        if (!t) return;
        if (t->kind == DcTermKind::TempVar ||
            t->kind == DcTermKind::TempVarPrimed)
          out.insert(t->name);
        from_term(t->a);
        from_term(t->b);
      };
  from_term(f->t1);
  from_term(f->t2);
  if (f->kind == DcKind::TempProp) out.insert(f->name);
  if (f->kind == DcKind::EvolvesBy) {
    out.insert(f->name);
    out.insert(f->dot);
  }
  if (f->point_cond) collect_vars(f->point_cond, out);
  collect_dc_temp_vars(f->a, out);
  collect_dc_temp_vars(f->b, out);
}

}  // namespace hcspdc
