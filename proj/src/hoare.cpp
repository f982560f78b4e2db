#include "hcspdc/hoare.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <mutex>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "hcspdc/desugar.hpp"
#include "hcspdc/parser.hpp"
#include "json.hpp"

namespace hcspdc {

namespace {

using nlohmann::json;

// ---------------------------------------------------------------------------
// shared formula pieces
// ---------------------------------------------------------------------------

DcPtr rn0() { return almost0(simp(sv("R"), sv("N"))); }

/// loc(V) ∧ ⌈R⇒N⌉⁰ — the standing hypotheses of every side condition
DcPtr loc_rn(const VarSet &v) { return dc_and(loc_formula(v), rn0()); }

/// the precondition reading: A⌢⊤ (classic) or ◇ˡᶜA (diamond)
DcPtr reading(TripleMode m, const DcPtr &a) {
  return m == TripleMode::Classic ? dc_chop(a, dc_top()) : dc_diamond_lc(a);
}

DcPtr ant(const VarSet &v, TripleMode m, const DcPtr &a) {
  return dc_and(loc_rn(v), reading(m, a));
}

/// the ◇ˡᶜ-based antecedent used by (N) and (K) in both modes
DcPtr ant_dlc(const VarSet &v, const DcPtr &a) {
  return dc_and(loc_rn(v), dc_diamond_lc(a));
}

DcPtr gapfin() { return sync_gap_formula("N", "R"); }

DcPtr compile_with(const TermPtr &p, const VarSet &v) {
  SemContext ctx;
  ctx.V = v;
  ctx.par_names = par_markers(p);
  ctx.counter = 1 + 2 * (int)ctx.par_names.size();
  return compile_semantics(p, ctx);
}

bool vars_equal(const VarSet &a, const VarSet &b) { return a == b; }

bool vars_subset(const VarSet &a, const VarSet &b) {
  for (const auto &[x, k] : a) {
    auto it = b.find(x);
    if (it == b.end() || it->second != k) return false;
  }
  return true;
}

bool is_primitive(const TermPtr &p) {
  switch (p->kind) {
    case TermKind::Skip:
    case TermKind::Terminated:
    case TermKind::Assign:
    case TermKind::Await:
    case TermKind::Evolve:
    case TermKind::RecVar:
      return true;
    default:
      return false;
  }
}

}  // namespace

bool triple_equal(const Triple &a, const Triple &b) {
  return a.mode == b.mode && dc_equal(a.pre, b.pre) &&
         dc_equal(a.post, b.post) && term_equal(a.proc, b.proc) &&
         vars_equal(a.vars, b.vars);
}

DcPtr triple_validity(const Triple &t) {
  DcPtr sem = compile_with(desugar(t.proc), t.vars);
  if (t.mode == TripleMode::Classic)
    return dc_imp(ant(t.vars, t.mode, t.pre),
                  dc_not(dc_chop(dc_and(sem, dc_not(t.post)), dc_top())));
  return dc_imp(dc_and(ant(t.vars, t.mode, t.pre), sem), t.post);
}

const char *rule_name(Rule r) {
  switch (r) {
    case Rule::AxiomPrim: return "AXIOM-PRIM";
    case Rule::Seq: return "SEQ";
    case Rule::Choice: return "CHOICE";
    case Rule::If: return "IF";
    case Rule::While: return "WHILE";
    case Rule::Par: return "PAR";
    case Rule::N: return "N";
    case Rule::K: return "K";
    case Rule::Mu: return "MU";
    case Rule::ParEvolve: return "PAR-EVOLVE";
  }
  return "?";
}

Rule rule_from_name(const std::string &s) {
  for (Rule r : {Rule::AxiomPrim, Rule::Seq, Rule::Choice, Rule::If,
                 Rule::While, Rule::Par, Rule::N, Rule::K, Rule::Mu,
                 Rule::ParEvolve})
    if (s == rule_name(r)) return r;
  throw std::invalid_argument("unknown rule name: " + s);
}

// ---------------------------------------------------------------------------
// sound simplification and the tautology strategy
// ---------------------------------------------------------------------------

namespace {

/// value of an interval term at a degenerate interval [t,t]: a number, a
/// symbol (a process variable, same at both endpoints), or unknown
struct PointVal {
  enum { Num, Sym, Unknown } kind = Unknown;
  double num = 0;
  std::string sym;
};

PointVal point_term(const DcTermPtr &t) {
  if (!t) return {};
  switch (t->kind) {
    case DcTermKind::Length:
    case DcTermKind::Duration:
      return {PointVal::Num, 0, ""};
    case DcTermKind::Const:
      return {PointVal::Num, t->value, ""};
    case DcTermKind::TempVar:
    case DcTermKind::TempVarPrimed:
      return {PointVal::Sym, 0, t->name};
    default: {
      PointVal a = point_term(t->a), b = point_term(t->b);
      if (a.kind == PointVal::Num && b.kind == PointVal::Num) {
        switch (t->kind) {
          case DcTermKind::Add: return {PointVal::Num, a.num + b.num, ""};
          case DcTermKind::Sub: return {PointVal::Num, a.num - b.num, ""};
          case DcTermKind::Mul: return {PointVal::Num, a.num * b.num, ""};
          case DcTermKind::Div:
            if (b.num != 0) return {PointVal::Num, a.num / b.num, ""};
            return {};
          default: return {};
        }
      }
      if (t->kind == DcTermKind::Sub && a.kind == PointVal::Sym &&
          b.kind == PointVal::Sym && a.sym == b.sym)
        return {PointVal::Num, 0, ""};
      return {};
    }
  }
}

/// truth of a comparison at every degenerate interval, when decidable
int cmp_at_point(const DcPtr &f) {  // 1 true, 0 false, -1 unknown
  PointVal a = point_term(f->t1), b = point_term(f->t2);
  bool eq, lt;
  if (a.kind == PointVal::Num && b.kind == PointVal::Num) {
    eq = a.num == b.num;
    lt = a.num < b.num;
  } else if (a.kind == PointVal::Sym && b.kind == PointVal::Sym &&
             a.sym == b.sym) {
    eq = true;
    lt = false;
  } else {
    return -1;
  }
  switch (f->cmp) {
    case CmpOp::Eq: return eq;
    case CmpOp::Ne: return !eq;
    case CmpOp::Lt: return lt;
    case CmpOp::Le: return lt || eq;
    case CmpOp::Gt: return !lt && !eq;
    case CmpOp::Ge: return !lt;
  }
  return -1;
}

/// conservatively: f holds at every degenerate interval [t,t]
bool point_taut(const DcPtr &f) {
  if (!f) return false;
  switch (f->kind) {
    case DcKind::Top: return true;
    case DcKind::Bot: return false;
    case DcKind::Cmp: return cmp_at_point(f) == 1;
    case DcKind::Not:
      return f->a->kind == DcKind::Cmp && cmp_at_point(f->a) == 0;
    case DcKind::And: return point_taut(f->a) && point_taut(f->b);
    case DcKind::Or: return point_taut(f->a) || point_taut(f->b);
    case DcKind::Imp:
      return point_taut(f->b) ||
             (f->a->kind == DcKind::Cmp && cmp_at_point(f->a) == 0);
    case DcKind::Chop: return point_taut(f->a) && point_taut(f->b);
    case DcKind::Box: return point_taut(f->a);
    case DcKind::BoxPrefix: return true;  // no proper prefixes of a point
    case DcKind::BoxPoint: return true;   // no points left of the right end
    case DcKind::DiamondLC: return point_taut(f->a);
    case DcKind::Star: return true;  // ℓ=0 base case
    case DcKind::EvolvesBy: return true;  // x′−x = 0 = ∫ at a point
    default: return false;
  }
}

/// f depends only on the left endpoint (unprimed symbols, no interval
/// features), so ◇ˡᶜ f ⇔ f
bool left_local_term(const DcTermPtr &t) {
  if (!t) return true;
  switch (t->kind) {
    case DcTermKind::Length:
    case DcTermKind::Duration:
    case DcTermKind::TempVarPrimed:
    case DcTermKind::RigidVar:
      return false;
    default:
      return left_local_term(t->a) && left_local_term(t->b);
  }
}

bool left_local(const DcPtr &f) {
  if (!f) return false;
  switch (f->kind) {
    case DcKind::Top:
    case DcKind::Bot:
      return true;
    case DcKind::Cmp:
      return left_local_term(f->t1) && left_local_term(f->t2);
    case DcKind::TempProp:
      return !f->primed;
    case DcKind::Not:
      return left_local(f->a);
    case DcKind::And:
    case DcKind::Or:
    case DcKind::Imp:
      return left_local(f->a) && left_local(f->b);
    default:
      return false;
  }
}

bool is_top(const DcPtr &f) { return f->kind == DcKind::Top; }
bool is_bot(const DcPtr &f) { return f->kind == DcKind::Bot; }

/// f entails ℓ<∞ by carrying a finite-length conjunct
bool has_fin_conjunct(const DcPtr &f) {
  if (!f) return false;
  if (f->kind == DcKind::And)
    return has_fin_conjunct(f->a) || has_fin_conjunct(f->b);
  if (f->kind != DcKind::Cmp) return false;
  if (!f->t1 || f->t1->kind != DcTermKind::Length) return false;
  if (!f->t2 || f->t2->kind != DcTermKind::Const) return false;
  double c = f->t2->value;
  return (f->cmp == CmpOp::Lt && std::isinf(c) && c > 0) ||
         (f->cmp == CmpOp::Eq && std::isfinite(c)) ||
         (f->cmp == CmpOp::Le && std::isfinite(c)) ||
         (f->cmp == CmpOp::Lt && std::isfinite(c));
}

/// comparisons of ℓ against a constant, as a range [lo, hi] of lengths
struct LenRange {
  bool ok = false;
  double lo = 0, hi = 0;
  bool lo_open = false, hi_open = false;
};

LenRange len_range(const DcPtr &f) {
  LenRange r;
  if (!f || f->kind != DcKind::Cmp) return r;
  if (!f->t1 || f->t1->kind != DcTermKind::Length) return r;
  if (!f->t2 || f->t2->kind != DcTermKind::Const) return r;
  double c = f->t2->value;
  r.hi = std::numeric_limits<double>::infinity();
  switch (f->cmp) {
    case CmpOp::Eq: r.lo = r.hi = c; break;
    case CmpOp::Lt: r.hi = c; r.hi_open = true; break;
    case CmpOp::Le: r.hi = c; break;
    case CmpOp::Gt: r.lo = c; r.lo_open = true; break;
    case CmpOp::Ge: r.lo = c; break;
    case CmpOp::Ne: return r;
  }
  r.ok = true;
  return r;
}

/// a's length range is contained in b's, so a ⇒ b is valid
bool len_cmp_entails(const DcPtr &a, const DcPtr &b) {
  LenRange ra = len_range(a), rb = len_range(b);
  if (!ra.ok || !rb.ok) return false;
  bool lo_ok = ra.lo > rb.lo || (ra.lo == rb.lo && (!rb.lo_open || ra.lo_open));
  bool hi_ok = ra.hi < rb.hi || (ra.hi == rb.hi && (!rb.hi_open || ra.hi_open));
  return lo_ok && hi_ok;
}

DcPtr simp_rec(const DcPtr &f) {
  if (!f) return f;
  auto c = std::make_shared<DcFormula>(*f);
  c->a = simp_rec(f->a);
  c->b = simp_rec(f->b);
  DcPtr g = c;
  switch (g->kind) {
    case DcKind::Not:
      if (is_top(g->a)) return dc_bot();
      if (is_bot(g->a)) return dc_top();
      return g;
    case DcKind::And:
      if (is_bot(g->a) || is_bot(g->b)) return dc_bot();
      if (is_top(g->a)) return g->b;
      if (is_top(g->b)) return g->a;
      return g;
    case DcKind::Or:
      if (is_top(g->a) || is_top(g->b)) return dc_top();
      if (is_bot(g->a)) return g->b;
      if (is_bot(g->b)) return g->a;
      return g;
    case DcKind::Imp:
      if (is_bot(g->a) || is_top(g->b)) return dc_top();
      if (is_top(g->a)) return g->b;
      if (len_cmp_entails(g->a, g->b)) return dc_top();
      return g;
    case DcKind::Chop:
      if (is_bot(g->a)) return dc_bot();
      // a chop into ⊥ can only be satisfied by the infinite-left clause,
      // which a finite-length left conjunct rules out
      if (is_bot(g->b) && has_fin_conjunct(g->a)) return dc_bot();
      if (is_top(g->b) && point_taut(g->a)) return dc_top();
      return g;
    case DcKind::DiamondLC:
      if (point_taut(g->a)) return dc_top();
      if (left_local(g->a)) return g->a;
      return g;
    case DcKind::Box:
    case DcKind::BoxPrefix:
      if (is_top(g->a)) return dc_top();
      return g;
    case DcKind::ExistsSplit:
      if (is_bot(g->a)) return dc_bot();
      if (is_top(g->a)) return dc_top();
      return g;
    case DcKind::Mu:
      if (!free_formula_vars(g->a).count(g->name)) return g->a;
      return g;
    default:
      return g;
  }
}

}  // namespace

DcPtr simplify_dc(const DcPtr &f) { return simp_rec(f); }

namespace {

/// propositional skeleton: non-boolean subformulas become opaque letters
struct Skeleton {
  std::map<std::string, int> ids;
  std::vector<const DcFormula *> order;

  int letter(const DcPtr &f) {
    std::string key = print_dc(f);
    auto it = ids.find(key);
    if (it != ids.end()) return it->second;
    int id = (int)ids.size();
    ids.emplace(key, id);
    return id;
  }

  // evaluates under assignment; collects letters on the way
  bool eval(const DcPtr &f, unsigned long long bits) {
    switch (f->kind) {
      case DcKind::Top: return true;
      case DcKind::Bot: return false;
      case DcKind::Not: return !eval(f->a, bits);
      case DcKind::And: return eval(f->a, bits) && eval(f->b, bits);
      case DcKind::Or: return eval(f->a, bits) || eval(f->b, bits);
      case DcKind::Imp: return !eval(f->a, bits) || eval(f->b, bits);
      default: return (bits >> letter(f)) & 1;
    }
  }

  void collect(const DcPtr &f) {
    switch (f->kind) {
      case DcKind::Top:
      case DcKind::Bot:
        return;
      case DcKind::Not:
        collect(f->a);
        return;
      case DcKind::And:
      case DcKind::Or:
      case DcKind::Imp:
        collect(f->a);
        collect(f->b);
        return;
      default:
        letter(f);
        return;
    }
  }
};

}  // namespace

bool is_tautology(const DcPtr &f) {
  DcPtr g = simplify_dc(f);
  Skeleton sk;
  sk.collect(g);
  size_t n = sk.ids.size();
  if (n > 18) return false;  // enumeration would be too large
  for (unsigned long long bits = 0; bits < (1ull << n); ++bits)
    if (!sk.eval(g, bits)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// rule schemas
// ---------------------------------------------------------------------------

namespace {

RuleMatch fail(const std::string &msg) { return {false, {}, msg}; }

RuleMatch ok(std::vector<DcPtr> obs = {}) { return {true, std::move(obs), ""}; }

std::string expect(const std::string &what, const DcPtr &want,
                   const DcPtr &got) {
  return what + ": expected " + print_dc(want) + ", got " + print_dc(got);
}

RuleMatch match_axiom(const Triple &c) {
  if (!is_primitive(c.proc))
    return fail("axiom applies to primitive processes only, got " +
                print_term(c.proc));
  if (!vars_subset(controlled_vars(c.proc), c.vars))
    return fail("axiom frame must contain the written variables");
  if (!is_top(c.pre)) return fail("axiom precondition must be true");
  DcPtr sem = compile_with(c.proc, c.vars);
  if (!dc_equal(c.post, sem))
    return fail(expect("axiom postcondition", sem, c.post));
  return ok();
}

RuleMatch match_seq(const std::vector<Triple> &ps, const Triple &c) {
  if (ps.size() != 2) return fail("sequencing takes two premises");
  const Triple &p1 = ps[0], &p2 = ps[1];
  if (c.proc->kind != TermKind::Seq)
    return fail("conclusion process is not a sequential composition");
  if (!term_equal(c.proc->a, p1.proc) || !term_equal(c.proc->b, p2.proc))
    return fail("premises do not cover the composed processes");
  if (!vars_equal(p1.vars, c.vars) || !vars_equal(p2.vars, c.vars))
    return fail("premise frames differ from the conclusion frame");
  if (!dc_equal(c.pre, p1.pre))
    return fail(expect("conclusion precondition", p1.pre, c.pre));
  DcPtr post = dc_chop(p1.post, dc_chop(gapfin(), p2.post));
  if (!dc_equal(c.post, post))
    return fail(expect("conclusion postcondition", post, c.post));
  // every finite G-prefix must be extendable by a sync gap into a B-interval
  DcPtr inner =
      c.mode == TripleMode::Classic
          ? dc_chop(gapfin(), dc_chop(p2.pre, dc_top()))
          : DcPtr(dc_diamond_lc(dc_chop(gapfin(), p2.pre)));
  DcPtr ob = dc_imp(ant(c.vars, c.mode, p1.pre),
                    dc_not(dc_chop(with_fin(p1.post), dc_not(inner))));
  return ok({ob});
}

RuleMatch match_choice(const std::vector<Triple> &ps, const Triple &c) {
  if (ps.size() != 2) return fail("choice takes two premises");
  if (c.proc->kind != TermKind::IntChoice)
    return fail("conclusion process is not an internal choice");
  if (!term_equal(c.proc->a, ps[0].proc) ||
      !term_equal(c.proc->b, ps[1].proc))
    return fail("premises do not cover the chosen processes");
  if (!vars_equal(ps[0].vars, c.vars) || !vars_equal(ps[1].vars, c.vars))
    return fail("premise frames differ from the conclusion frame");
  DcPtr pre = dc_and(ps[0].pre, ps[1].pre);
  if (!dc_equal(c.pre, pre))
    return fail(expect("conclusion precondition", pre, c.pre));
  DcPtr post = dc_or(ps[0].post, ps[1].post);
  if (!dc_equal(c.post, post))
    return fail(expect("conclusion postcondition", post, c.post));
  return ok();
}

RuleMatch match_if(const std::vector<Triple> &ps, const Triple &c) {
  if (ps.size() != 2) return fail("conditional takes two premises");
  if (c.proc->kind != TermKind::If)
    return fail("conclusion process is not a conditional");
  if (!term_equal(c.proc->a, ps[0].proc) ||
      !term_equal(c.proc->b, ps[1].proc))
    return fail("premises do not cover the branches");
  if (!vars_equal(ps[0].vars, c.vars) || !vars_equal(ps[1].vars, c.vars))
    return fail("premise frames differ from the conclusion frame");
  DcPtr bhat = formula_of_expr(c.proc->cond, false);
  DcPtr nbhat = formula_of_expr(nnf(c.proc->cond, true), false);
  DcPtr pre1 = dc_and(c.pre, bhat), pre2 = dc_and(c.pre, nbhat);
  if (!dc_equal(ps[0].pre, pre1))
    return fail(expect("then-premise precondition", pre1, ps[0].pre));
  if (!dc_equal(ps[1].pre, pre2))
    return fail(expect("else-premise precondition", pre2, ps[1].pre));
  if (!dc_equal(ps[0].post, c.post) || !dc_equal(ps[1].post, c.post))
    return fail("both branch postconditions must equal the conclusion's");
  return ok();
}

RuleMatch match_while(const std::vector<Triple> &ps, const Triple &c) {
  if (c.mode != TripleMode::Classic)
    return fail("the loop rule is available in classic mode only");
  if (ps.size() != 1) return fail("loop takes one premise");
  if (c.proc->kind != TermKind::While)
    return fail("conclusion process is not a loop");
  if (!term_equal(c.proc->a, ps[0].proc))
    return fail("premise does not cover the loop body");
  if (!vars_equal(ps[0].vars, c.vars))
    return fail("premise frame differs from the conclusion frame");
  if (!dc_equal(c.pre, ps[0].pre))
    return fail(expect("conclusion precondition", ps[0].pre, c.pre));
  DcPtr bhat = formula_of_expr(c.proc->cond, false);
  DcPtr nbhat = formula_of_expr(nnf(c.proc->cond, true), false);
  DcPtr silent = almost0(snot(sv("R")));
  DcPtr post = dc_chop(dc_star(dc_chop(dc_and(bhat, ps[0].post), silent)),
                       dc_and(nbhat, len_eq(0)));
  if (!dc_equal(c.post, post))
    return fail(expect("conclusion postcondition", post, c.post));
  // every finite round re-establishes the loop assumption
  DcPtr ob = dc_imp(
      ant(c.vars, c.mode, ps[0].pre),
      dc_not(dc_chop(with_fin(ps[0].post),
                     dc_not(dc_diamond_lc(dc_chop(silent, ps[0].pre))))));
  return ok({ob});
}

DcPtr par_pre_body(const DcPtr &a1, const DcPtr &a2, const std::string &r1,
                   const std::string &r2) {
  const DcPtr as[2] = {subst_state_var(a1, "R", r1),
                       subst_state_var(a2, "R", r2)};
  const std::string rs[2] = {r1, r2};
  DcPtr body;
  for (int i = 0; i < 2; ++i) {
    int j = 1 - i;
    DcPtr no_block = dc_not(dc_chop(
        sync_gap_formula("N", rs[i]), dc_chop(dc_not(as[i]), dc_top())));
    DcPtr d = dc_and(no_block, dc_chop(as[j], dc_top()));
    body = body ? dc_or(body, d) : d;
  }
  return body;
}

RuleMatch match_par(const std::vector<Triple> &ps, const Triple &c) {
  if (ps.size() != 2) return fail("parallel takes two premises");
  if (c.proc->kind != TermKind::Par)
    return fail("conclusion process is not a parallel composition");
  if (!term_equal(c.proc->a, ps[0].proc) ||
      !term_equal(c.proc->b, ps[1].proc))
    return fail("premises do not cover the operands");
  VarSet v1 = controlled_vars(c.proc->a), v2 = controlled_vars(c.proc->b);
  if (!vars_equal(ps[0].vars, v1) || !vars_equal(ps[1].vars, v2))
    return fail("premise frames must be the operands' written variables");
  if (c.post->kind != DcKind::ExistsSplit ||
      !state_equal(c.post->state, sv("R")))
    return fail("conclusion postcondition must be a split of R");
  const std::string s1 = c.post->name, s2 = c.post->dot;
  DcPtr g1 = subst_state_var(ps[0].post, "R", s1);
  DcPtr g2 = subst_state_var(ps[1].post, "R", s2);
  DcPtr body = dc_and(split_constraints("R", s1, s2, c.vars, v1, v2),
                      par_phi(g1, g2, s1, s2, "N"));
  DcPtr post = dc_esplit(sv("R"), s1, s2, body);
  if (!dc_equal(c.post, post))
    return fail(expect("conclusion postcondition", post, c.post));
  if (c.pre->kind != DcKind::Not || c.pre->a->kind != DcKind::ExistsSplit ||
      !state_equal(c.pre->a->state, sv("R")))
    return fail("conclusion precondition must be a universal split of R");
  const std::string t1 = c.pre->a->name, t2 = c.pre->a->dot;
  DcPtr pre_body = par_pre_body(ps[0].pre, ps[1].pre, t1, t2);
  DcPtr pre = dc_not(
      dc_esplit(sv("R"), t1, t2,
                dc_and(split_constraints("R", t1, t2, c.vars, v1, v2),
                       dc_not(pre_body))));
  if (!dc_equal(c.pre, pre))
    return fail(expect("conclusion precondition", pre, c.pre));
  return ok();
}

RuleMatch match_n(const std::vector<Triple> &ps, const Triple &c) {
  if (!ps.empty()) return fail("necessitation takes no triple premises");
  if (!vars_subset(controlled_vars(c.proc), c.vars))
    return fail("frame must contain the process's written variables");
  return ok({dc_imp(ant_dlc(c.vars, c.pre), c.post)});
}

RuleMatch match_k(const std::vector<Triple> &ps, const Triple &c) {
  if (ps.size() != 2) return fail("modal K takes two premises");
  const Triple &imp = ps[0], &base = ps[1];
  if (!term_equal(imp.proc, c.proc) || !term_equal(base.proc, c.proc))
    return fail("all triples must concern the same process");
  if (!vars_equal(imp.vars, c.vars) || !vars_equal(base.vars, c.vars))
    return fail("premise frames differ from the conclusion frame");
  if (!dc_equal(imp.pre, c.pre))
    return fail(expect("conclusion precondition", imp.pre, c.pre));
  if (imp.post->kind != DcKind::Imp)
    return fail("first premise's postcondition must be an implication");
  if (!dc_equal(imp.post->a, base.post))
    return fail(
        expect("implication antecedent", base.post, imp.post->a));
  if (!dc_equal(imp.post->b, c.post))
    return fail(expect("conclusion postcondition", imp.post->b, c.post));
  return ok({dc_imp(ant_dlc(c.vars, c.pre), dc_diamond_lc(base.pre))});
}

RuleMatch match_mu(const std::vector<Triple> &ps, const Triple &c) {
  if (c.mode != TripleMode::Diamond)
    return fail("the recursion rule is available in diamond mode only");
  if (ps.size() != 1) return fail("recursion takes one premise");
  if (c.proc->kind != TermKind::Mu)
    return fail("conclusion process is not a recursion");
  const std::string &x = c.proc->rec_var;
  if (!term_equal(c.proc->a, ps[0].proc))
    return fail("premise does not cover the recursion body");
  if (!vars_equal(ps[0].vars, c.vars))
    return fail("premise frame differs from the conclusion frame");
  if (!dc_equal(c.pre, ps[0].pre))
    return fail(expect("conclusion precondition", ps[0].pre, c.pre));
  if (free_formula_vars(c.pre).count(x))
    return fail("the recursion variable must not occur in the assumption");
  DcPtr post = dc_mu(x, ps[0].post);
  if (!dc_equal(c.post, post))
    return fail(expect("conclusion postcondition", post, c.post));
  DcPtr shifted = subst_formula_var(
      ps[0].post, x, dc_and(dc_diamond_lc(c.pre), fvar(x)));
  DcPtr ob = dc_imp(dc_and(ant_dlc(c.vars, c.pre), ps[0].post), shifted);
  return ok({ob});
}

RuleMatch match_par_evolve(const std::vector<Triple> &ps, const Triple &c) {
  if (ps.size() != 4) return fail("the evolution pair rule takes 4 premises");
  const TermPtr &p = c.proc;
  if (p->kind != TermKind::Par || p->a->kind != TermKind::Seq ||
      p->b->kind != TermKind::Seq || p->a->a->kind != TermKind::Evolve ||
      p->b->a->kind != TermKind::Evolve)
    return fail(
        "conclusion must compose two evolution-guarded sequents in parallel");
  const TermPtr &e1 = p->a->a, &e2 = p->b->a;
  const TermPtr &p1 = p->a->b, &p2 = p->b->b;
  std::vector<Ode> odes = e1->odes;
  odes.insert(odes.end(), e2->odes.begin(), e2->odes.end());
  TermPtr joint = evolve(std::move(odes),
                         mk(ExprKind::And, e1->cond, e2->cond));
  if (!term_equal(ps[0].proc, joint))
    return fail("first premise must concern the joint evolution " +
                print_term(joint));
  if (!dc_equal(ps[0].pre, c.pre))
    return fail(expect("first premise precondition", c.pre, ps[0].pre));
  for (const Triple &t : ps)
    if (!vars_equal(t.vars, c.vars))
      return fail("premise frames differ from the conclusion frame");
  DcPtr r0 = ps[0].post;
  DcPtr b1 = formula_of_expr(e1->cond, false);
  DcPtr b2 = formula_of_expr(e2->cond, false);
  struct Case {
    DcPtr pre;
    TermPtr proc;
  };
  Case cases[3] = {
      {dc_and(dc_and(r0, b1), dc_not(b2)), par(seq(e1, p1), p2)},
      {dc_and(dc_and(r0, b2), dc_not(b1)), par(p1, seq(e2, p2))},
      {dc_and(dc_and(r0, dc_not(b1)), dc_not(b2)), par(p1, p2)}};
  for (int i = 0; i < 3; ++i) {
    const Triple &t = ps[i + 1];
    if (!term_equal(t.proc, cases[i].proc))
      return fail("premise " + std::to_string(i + 2) +
                  " must concern " + print_term(cases[i].proc));
    if (!dc_equal(t.pre, cases[i].pre))
      return fail(expect("premise " + std::to_string(i + 2) +
                             " precondition",
                         cases[i].pre, t.pre));
    if (!dc_equal(t.post, c.post))
      return fail("case postconditions must equal the conclusion's");
  }
  return ok();
}

}  // namespace

RuleMatch apply_rule(Rule rule, const std::vector<Triple> &premises,
                     const Triple &conclusion) {
  for (const Triple &t : premises)
    if (t.mode != conclusion.mode)
      return fail("premises and conclusion must share one mode");
  switch (rule) {
    case Rule::AxiomPrim: return match_axiom(conclusion);
    case Rule::Seq: return match_seq(premises, conclusion);
    case Rule::Choice: return match_choice(premises, conclusion);
    case Rule::If: return match_if(premises, conclusion);
    case Rule::While: return match_while(premises, conclusion);
    case Rule::Par: return match_par(premises, conclusion);
    case Rule::N: return match_n(premises, conclusion);
    case Rule::K: return match_k(premises, conclusion);
    case Rule::Mu: return match_mu(premises, conclusion);
    case Rule::ParEvolve: return match_par_evolve(premises, conclusion);
  }
  return fail("unknown rule");
}

Triple semantics_axiom(const TermPtr &p, const VarSet &vars,
                       TripleMode mode) {
  if (!is_primitive(p))
    throw std::invalid_argument("semantics_axiom: not a primitive process: " +
                                print_term(p));
  if (!vars_subset(controlled_vars(p), vars))
    throw std::invalid_argument(
        "semantics_axiom: frame misses written variables");
  return {dc_top(), p, compile_with(p, vars), vars, mode};
}

// ---------------------------------------------------------------------------
// discharge: tautology checking and bounded falsification
// ---------------------------------------------------------------------------

namespace {

struct SampleVars {
  std::set<std::string> bools, reals;
};

void collect_sample_vars(const DcPtr &f, std::set<std::string> &bound,
                         SampleVars &out) {
  if (!f) return;
  std::function<void(const StatePtr &)> from_state =
      [&](const StatePtr &s) {
        if (!s) return;
        if (s->kind == StateKind::Var && !bound.count(s->name))
          out.bools.insert(s->name);
        from_state(s->a);
        from_state(s->b);
      };
  std::function<void(const DcTermPtr &)> from_term =
      [&](const DcTermPtr &t) {
        if (!t) return;
        if (t->kind == DcTermKind::TempVar ||
            t->kind == DcTermKind::TempVarPrimed)
          out.reals.insert(t->name);
        from_state(t->state);
        from_term(t->a);
        from_term(t->b);
      };
  from_term(f->t1);
  from_term(f->t2);
  from_state(f->state);
  if (f->kind == DcKind::TempProp) out.bools.insert(f->name);
  if (f->kind == DcKind::EvolvesBy) {
    out.reals.insert(f->name);
    out.reals.insert(f->dot);
  }
  if (f->point_cond) {
    std::set<std::string> vs;
    collect_vars(f->point_cond, vs);
    for (const std::string &x : vs)
      if (!out.bools.count(x)) out.reals.insert(x);
  }
  if (f->kind == DcKind::ExistsSplit) {
    bool n1 = bound.insert(f->name).second;
    bool n2 = bound.insert(f->dot).second;
    collect_sample_vars(f->a, bound, out);
    collect_sample_vars(f->b, bound, out);
    if (n1) bound.erase(f->name);
    if (n2) bound.erase(f->dot);
    return;
  }
  collect_sample_vars(f->a, bound, out);
  collect_sample_vars(f->b, bound, out);
}

Trajectory sample_trajectory(std::mt19937 &rng, const SampleVars &vars,
                             const FalsifyConfig &cfg) {
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  int nseg = 1 + (int)(rng() % (unsigned)std::max(1, cfg.max_segments));
  std::vector<double> dur(nseg);
  for (double &d : dur)
    d = 0.05 + u01(rng) * std::max(0.0, cfg.horizon / nseg - 0.05);
  // per-variable value sequences; some variables stay constant throughout,
  // which makes frame/constancy antecedents reachable
  std::map<std::string, std::vector<double>> rv;
  for (const std::string &x : vars.reals) {
    std::vector<double> vs(nseg + 1);
    bool constant = u01(rng) < 0.4;
    double v0 = (2 * u01(rng) - 1) * cfg.amplitude;
    for (int i = 0; i <= nseg; ++i)
      vs[i] = constant ? v0 : (2 * u01(rng) - 1) * cfg.amplitude;
    rv.emplace(x, std::move(vs));
  }
  std::map<std::string, std::vector<bool>> bv;
  for (const std::string &x : vars.bools) {
    std::vector<bool> vs(nseg);
    bool constant = u01(rng) < 0.4;
    bool v0 = rng() & 1;
    for (int i = 0; i < nseg; ++i) vs[i] = constant ? v0 : (rng() & 1);
    bv.emplace(x, std::move(vs));
  }
  // bias towards the standing hypothesis ⌈R⇒N⌉⁰
  if (bv.count("R") && bv.count("N") && (rng() & 1)) {
    for (int i = 0; i < nseg; ++i)
      if (bv["R"][i]) bv["N"][i] = true;
  }
  Trajectory tr;
  double t = 0;
  for (int i = 0; i < nseg; ++i) {
    Segment s;
    s.t0 = t;
    t += dur[i];
    s.t1 = t;
    for (const auto &[x, vs] : rv) {
      s.reals.emplace(x, RealFn::constant(vs[i]));
      s.end.emplace(x, vs[i + 1]);
    }
    for (const auto &[x, vs] : bv) s.bools.emplace(x, vs[i]);
    tr.segments.push_back(std::move(s));
  }
  // make the last right values single-valued with the tail
  if (!tr.segments.empty())
    for (auto &[x, v] : tr.segments.back().end)
      v = rv.at(x)[nseg - 1];
  tr.T = t;
  tr.infinite_tail = rng() & 1;
  return tr;
}

}  // namespace

Obligation discharge(Obligation ob, const FalsifyConfig &cfg) {
  switch (ob.strategy) {
    case Strategy::Assumed:
      ob.status = ObStatus::Assumed;
      return ob;
    case Strategy::Tautology:
      ob.status = is_tautology(ob.formula) ? ObStatus::DischargedTautology
                                           : ObStatus::Failed;
      return ob;
    case Strategy::Falsify:
      break;
  }
  SampleVars vars;
  std::set<std::string> bound;
  collect_sample_vars(ob.formula, bound, vars);
  // constants compared against ℓ make good candidate interval lengths
  std::vector<double> lens;
  std::function<void(const DcPtr &)> find_lens = [&](const DcPtr &f) {
    if (!f) return;
    if (f->kind == DcKind::Cmp)
      for (const auto &[t, o] : {std::pair(f->t1, f->t2),
                                 std::pair(f->t2, f->t1)})
        if (t && o && t->kind == DcTermKind::Length &&
            o->kind == DcTermKind::Const && std::isfinite(o->value) &&
            o->value >= 0)
          lens.push_back(o->value);
    find_lens(f->a);
    find_lens(f->b);
  };
  find_lens(ob.formula);
  EvalConfig ec = cfg.eval;
  ec.strict = true;  // only definite falsity counts as a counterexample
  // one RNG per sample index: the outcome is the lowest refuting index,
  // independent of how samples are distributed over threads
  auto try_sample = [&](int k, Counterexample &out) {
    std::mt19937 rng(cfg.seed + 0x9e3779b9u * (unsigned)k);
    Trajectory tr = sample_trajectory(rng, vars, cfg);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    double lo = (rng() & 1) ? 0.0 : u01(rng) * tr.T;
    double hi;
    switch (rng() % 5) {
      case 0: hi = lo; break;  // point intervals matter (ℓ = 0 behaviour)
      case 1:
        if (tr.infinite_tail) {
          hi = std::numeric_limits<double>::infinity();
          break;
        }
        [[fallthrough]];
      case 2:
        if (!lens.empty()) {  // exact lengths the formula talks about
          double c = lens[rng() % lens.size()];
          if (c <= tr.T) {
            lo = u01(rng) * (tr.T - c);
            hi = lo + c;
            break;
          }
        }
        [[fallthrough]];
      default: hi = lo + u01(rng) * (tr.T - lo); break;
    }
    if (eval_formula(ob.formula, tr, lo, hi, ec) != TV::False) return false;
    out = Counterexample{std::move(tr), lo, hi};
    return true;
  };
  int jobs = std::max(1, cfg.jobs);
  int first_hit = ob.budget;
  Counterexample hit;
  if (jobs == 1) {
    for (int k = 0; k < ob.budget; ++k)
      if (try_sample(k, hit)) {
        first_hit = k;
        break;
      }
  } else {
    std::mutex m;
    std::atomic<int> next{0}, best{ob.budget};
    auto worker = [&] {
      Counterexample local;
      for (int k = next.fetch_add(1); k < ob.budget; k = next.fetch_add(1)) {
        if (k >= best.load()) break;
        if (try_sample(k, local)) {
          std::lock_guard<std::mutex> g(m);
          if (k < best.load()) {
            best.store(k);
            hit = std::move(local);
          }
        }
      }
    };
    std::vector<std::thread> pool;
    for (int i = 0; i < jobs; ++i) pool.emplace_back(worker);
    for (std::thread &t : pool) t.join();
    first_hit = best.load();
  }
  if (first_hit < ob.budget) {
    ob.status = ObStatus::Failed;
    ob.cex = std::make_shared<Counterexample>(std::move(hit));
  } else {
    ob.status = ObStatus::DischargedEmpirically;
  }
  return ob;
}

// ---------------------------------------------------------------------------
// proof checking
// ---------------------------------------------------------------------------

namespace {

bool check_rec(const ProofNode &node, const std::string &path,
               const FalsifyConfig &cfg, ProofReport &rep) {
  for (size_t i = 0; i < node.premises.size(); ++i)
    if (!check_rec(node.premises[i],
                   path + ".premise[" + std::to_string(i) + "]", cfg, rep))
      return false;
  std::vector<Triple> ps;
  for (const ProofNode &p : node.premises) ps.push_back(p.conclusion);
  RuleMatch rm = apply_rule(node.rule, ps, node.conclusion);
  if (!rm.ok) {
    rep.verdict = ProofReport::Verdict::Invalid;
    rep.failure = path + ": " + std::string(rule_name(node.rule)) +
                  " schema mismatch: " + rm.diff;
    return false;
  }
  std::vector<bool> used(node.side_conditions.size(), false);
  for (const DcPtr &f : rm.obligations) {
    Obligation ob{f, Strategy::Falsify, 1000, ObStatus::Pending, nullptr};
    for (size_t j = 0; j < node.side_conditions.size(); ++j) {
      if (!used[j] && dc_equal(node.side_conditions[j].formula, f)) {
        ob.strategy = node.side_conditions[j].strategy;
        ob.budget = node.side_conditions[j].budget;
        used[j] = true;
        break;
      }
    }
    ob = discharge(ob, cfg);
    rep.obligations.push_back({path, f, ob.strategy, ob.status, ob.cex});
    if (ob.status == ObStatus::Failed) {
      rep.verdict = ProofReport::Verdict::Invalid;
      rep.failure = path + ": side condition not established: " + print_dc(f);
      return false;
    }
    if (ob.status == ObStatus::Assumed &&
        rep.verdict == ProofReport::Verdict::Valid)
      rep.verdict = ProofReport::Verdict::ValidModuloAssumptions;
  }
  for (size_t j = 0; j < node.side_conditions.size(); ++j) {
    if (!used[j]) {
      rep.verdict = ProofReport::Verdict::Invalid;
      rep.failure = path + ": side condition does not belong to the rule: " +
                    print_dc(node.side_conditions[j].formula);
      return false;
    }
  }
  return true;
}

}  // namespace

ProofReport check_proof(const ProofNode &root, const FalsifyConfig &cfg) {
  ProofReport rep;
  check_rec(root, "root", cfg, rep);
  return rep;
}

// ---------------------------------------------------------------------------
// constructive derivations
// ---------------------------------------------------------------------------

namespace {

DcPtr compile_in(const TermPtr &p, const VarSet &v, const ParMarkers &names) {
  SemContext ctx;
  ctx.V = v;
  ctx.par_names = names;
  ctx.counter = 1 + 2 * (int)names.size();
  return compile_semantics(p, ctx);
}

Strategy pick_strategy(const DcPtr &f) {
  return is_tautology(f) ? Strategy::Tautology : Strategy::Falsify;
}

ProofNode make_node(Rule rule, Triple conclusion,
                    std::vector<ProofNode> premises) {
  std::vector<Triple> ps;
  for (const ProofNode &p : premises) ps.push_back(p.conclusion);
  RuleMatch rm = apply_rule(rule, ps, conclusion);
  if (!rm.ok)
    throw std::logic_error(std::string("derivation produced a bad ") +
                           rule_name(rule) + " instance: " + rm.diff);
  ProofNode node{rule, std::move(conclusion), std::move(premises), {}};
  for (const DcPtr &f : rm.obligations)
    node.side_conditions.push_back(
        {f, pick_strategy(f), 1000, ObStatus::Pending, nullptr});
  return node;
}

/// {A} P {H} from inner = {A0} P {G0}: a necessitation premise for
/// G0 ⇒ H under A, combined with inner through the modal K rule.
ProofNode consequence(ProofNode inner, DcPtr a, DcPtr h) {
  const Triple &t = inner.conclusion;
  Triple imp{a, t.proc, dc_imp(t.post, h), t.vars, t.mode};
  ProofNode n_node = make_node(Rule::N, imp, {});
  Triple conc{std::move(a), t.proc, std::move(h), t.vars, t.mode};
  return make_node(Rule::K, std::move(conc),
                   {std::move(n_node), std::move(inner)});
}

ProofNode derive_rec(const TermPtr &p, const VarSet &v,
                     const ParMarkers &names) {
  const TripleMode mode = TripleMode::Diamond;
  DcPtr sem = compile_in(p, v, names);
  if (is_primitive(p))
    return make_node(Rule::AxiomPrim, {dc_top(), p, sem, v, mode}, {});
  switch (p->kind) {
    case TermKind::Seq: {
      ProofNode n1 = derive_rec(p->a, v, names);
      ProofNode n2 = derive_rec(p->b, v, names);
      return make_node(Rule::Seq, {dc_top(), p, sem, v, mode},
                       {std::move(n1), std::move(n2)});
    }
    case TermKind::IntChoice: {
      ProofNode n1 = derive_rec(p->a, v, names);
      ProofNode n2 = derive_rec(p->b, v, names);
      Triple conc{dc_and(dc_top(), dc_top()), p, sem, v, mode};
      ProofNode inner = make_node(Rule::Choice, std::move(conc),
                                  {std::move(n1), std::move(n2)});
      return consequence(std::move(inner), dc_top(), sem);
    }
    case TermKind::If: {
      DcPtr bhat = formula_of_expr(p->cond, false);
      DcPtr nbhat = formula_of_expr(nnf(p->cond, true), false);
      ProofNode n1 = consequence(derive_rec(p->a, v, names),
                                 dc_and(dc_top(), bhat), sem);
      ProofNode n2 = consequence(derive_rec(p->b, v, names),
                                 dc_and(dc_top(), nbhat), sem);
      return make_node(Rule::If, {dc_top(), p, sem, v, mode},
                       {std::move(n1), std::move(n2)});
    }
    case TermKind::Mu: {
      ProofNode body = derive_rec(p->a, v, names);
      return make_node(Rule::Mu, {dc_top(), p, sem, v, mode},
                       {std::move(body)});
    }
    case TermKind::Par: {
      VarSet v1 = controlled_vars(p->a), v2 = controlled_vars(p->b);
      ProofNode n1 = derive_rec(p->a, v1, names);
      ProofNode n2 = derive_rec(p->b, v2, names);
      // conclusion of the parallel rule: the split postcondition is the
      // semantics itself; the precondition is the universal-split form
      if (sem->kind != DcKind::ExistsSplit)
        throw std::logic_error("parallel semantics is not a split formula");
      const std::string s1 = sem->name, s2 = sem->dot;
      DcPtr pre_body = par_pre_body(dc_top(), dc_top(), s1, s2);
      DcPtr pre = dc_not(
          dc_esplit(sv("R"), s1, s2,
                    dc_and(split_constraints("R", s1, s2, v, v1, v2),
                           dc_not(pre_body))));
      Triple conc{pre, p, sem, v, mode};
      ProofNode inner = make_node(Rule::Par, std::move(conc),
                                  {std::move(n1), std::move(n2)});
      return consequence(std::move(inner), dc_top(), sem);
    }
    default:
      throw std::invalid_argument(
          "derive_semantics_triple: unsupported construct: " +
          print_term(p));
  }
}

}  // namespace

ProofNode derive_semantics_triple(const TermPtr &p, const VarSet &vars) {
  TermPtr q = desugar(p);
  if (!vars_subset(controlled_vars(q), vars))
    throw std::invalid_argument(
        "derive_semantics_triple: frame misses written variables");
  return derive_rec(q, vars, par_markers(q));
}

ProofNode derive_any(const Triple &t, Strategy validity_strategy) {
  TermPtr q = desugar(t.proc);
  ProofNode base = derive_semantics_triple(t.proc, t.vars);
  DcPtr sem = base.conclusion.post;
  Triple imp{t.pre, q, dc_imp(sem, t.post), t.vars, TripleMode::Diamond};
  ProofNode n_node = make_node(Rule::N, imp, {});
  // the necessitation obligation is exactly the triple's validity claim;
  // it carries the caller's chosen strategy
  for (Obligation &ob : n_node.side_conditions) ob.strategy = validity_strategy;
  Triple conc{t.pre, q, t.post, t.vars, TripleMode::Diamond};
  return make_node(Rule::K, std::move(conc),
                   {std::move(n_node), std::move(base)});
}

// ---------------------------------------------------------------------------
// serialization
// ---------------------------------------------------------------------------

namespace {

const char *strategy_name(Strategy s) {
  switch (s) {
    case Strategy::Assumed: return "assumed";
    case Strategy::Tautology: return "tautology";
    case Strategy::Falsify: return "falsify";
  }
  return "?";
}

Strategy strategy_from_name(const std::string &s) {
  if (s == "assumed") return Strategy::Assumed;
  if (s == "tautology") return Strategy::Tautology;
  if (s == "falsify") return Strategy::Falsify;
  throw std::invalid_argument("unknown strategy: " + s);
}

const char *status_name(ObStatus s) {
  switch (s) {
    case ObStatus::Pending: return "pending";
    case ObStatus::DischargedTautology: return "discharged-tautology";
    case ObStatus::DischargedEmpirically: return "discharged-empirically";
    case ObStatus::Assumed: return "assumed";
    case ObStatus::Failed: return "failed";
  }
  return "?";
}

json triple_to_json(const Triple &t) {
  json vars = json::object();
  for (const auto &[x, k] : t.vars)
    vars[x] = k == VarKind::Real ? "real" : "bool";
  return json{{"pre", print_dc(t.pre)},
              {"proc", print_term(t.proc)},
              {"post", print_dc(t.post)},
              {"vars", vars},
              {"mode", t.mode == TripleMode::Classic ? "classic" : "diamond"}};
}

Triple triple_from_json(const json &j) {
  Triple t;
  t.pre = parse_dc(j.at("pre").get<std::string>());
  t.proc = parse_process(j.at("proc").get<std::string>());
  t.post = parse_dc(j.at("post").get<std::string>());
  for (const auto &[x, k] : j.at("vars").items())
    t.vars[x] = k.get<std::string>() == "bool" ? VarKind::Boolean
                                               : VarKind::Real;
  std::string mode = j.value("mode", "classic");
  t.mode = mode == "diamond" ? TripleMode::Diamond : TripleMode::Classic;
  return t;
}

json node_to_json(const ProofNode &n) {
  json prem = json::array();
  for (const ProofNode &p : n.premises) prem.push_back(node_to_json(p));
  json obs = json::array();
  for (const Obligation &ob : n.side_conditions)
    obs.push_back(json{{"formula", print_dc(ob.formula)},
                       {"strategy", strategy_name(ob.strategy)},
                       {"budget", ob.budget}});
  return json{{"rule", rule_name(n.rule)},
              {"triple", triple_to_json(n.conclusion)},
              {"premises", prem},
              {"side_conditions", obs}};
}

ProofNode node_from_json(const json &j) {
  ProofNode n;
  n.rule = rule_from_name(j.at("rule").get<std::string>());
  n.conclusion = triple_from_json(j.at("triple"));
  for (const json &p : j.value("premises", json::array()))
    n.premises.push_back(node_from_json(p));
  for (const json &ob : j.value("side_conditions", json::array()))
    n.side_conditions.push_back(
        {parse_dc(ob.at("formula").get<std::string>()),
         strategy_from_name(ob.at("strategy").get<std::string>()),
         ob.value("budget", 1000), ObStatus::Pending, nullptr});
  return n;
}

}  // namespace

std::string proof_to_json(const ProofNode &root) {
  return node_to_json(root).dump(1);
}

ProofNode proof_from_json(const std::string &text) {
  return node_from_json(json::parse(text));
}

std::string report_to_text(const ProofReport &r) {
  std::ostringstream os;
  switch (r.verdict) {
    case ProofReport::Verdict::Valid: os << "valid\n"; break;
    case ProofReport::Verdict::ValidModuloAssumptions:
      os << "valid modulo assumptions\n";
      break;
    case ProofReport::Verdict::Invalid:
      os << "invalid: " << r.failure << "\n";
      break;
  }
  for (const ObligationReport &ob : r.obligations) {
    os << ob.path << ": " << strategy_name(ob.strategy) << " -> "
       << status_name(ob.status);
    if (ob.cex)
      os << " (counterexample on [" << ob.cex->lo << ", " << ob.cex->hi
         << "])";
    os << ": " << print_dc(ob.formula) << "\n";
  }
  return os.str();
}

std::string report_to_json(const ProofReport &r) {
  json obs = json::array();
  for (const ObligationReport &ob : r.obligations) {
    json o{{"path", ob.path},
           {"formula", print_dc(ob.formula)},
           {"strategy", strategy_name(ob.strategy)},
           {"status", status_name(ob.status)}};
    if (ob.cex)
      o["counterexample"] = json{{"trajectory",
                                  json::parse(trajectory_to_json(
                                      ob.cex->trajectory))},
                                 {"lo", ob.cex->lo},
                                 {"hi", ob.cex->hi}};
    obs.push_back(std::move(o));
  }
  const char *verdict =
      r.verdict == ProofReport::Verdict::Valid
          ? "valid"
          : r.verdict == ProofReport::Verdict::ValidModuloAssumptions
                ? "valid-modulo-assumptions"
                : "invalid";
  json out{{"verdict", verdict}, {"obligations", obs}};
  if (!r.failure.empty()) out["failure"] = r.failure;
  return out.dump(1);
}

}  // namespace hcspdc
