#pragma once

#include <iosfwd>

#include "hcspdc/expr.hpp"

namespace hcspdc {

// ---------------------------------------------------------------------------
// State expressions: boolean combinations of state variables, constant 0/1
// ---------------------------------------------------------------------------

struct StateExpr;
using StatePtr = std::shared_ptr<const StateExpr>;

enum class StateKind { Var, Lit, Not, And, Or, Imp };

struct StateExpr {
  StateKind kind;
  bool value = false;  // Lit
  std::string name;    // Var
  StatePtr a, b;
};

StatePtr sv(const std::string &name);
StatePtr slit(bool v);
StatePtr snot(StatePtr a);
StatePtr sand(StatePtr a, StatePtr b);
StatePtr sor(StatePtr a, StatePtr b);
StatePtr simp(StatePtr a, StatePtr b);

bool state_equal(const StatePtr &a, const StatePtr &b);
void collect_state_vars(const StatePtr &s, std::set<std::string> &out);

// ---------------------------------------------------------------------------
// Interval terms
// ---------------------------------------------------------------------------

struct DcTerm;
using DcTermPtr = std::shared_ptr<const DcTerm>;

enum class DcTermKind {
  Length,         // ℓ
  Duration,       // ∫S
  TempVar,        // x  (process variable at min of the interval)
  TempVarPrimed,  // x' (process variable at max of the interval)
  RigidVar,       // quantified rigid real
  Const,
  Add,
  Sub,
  Mul,
  Div,
};

struct DcTerm {
  DcTermKind kind;
  double value = 0.0;  // Const
  std::string name;    // TempVar / TempVarPrimed / RigidVar
  StatePtr state;      // Duration
  DcTermPtr a, b;
};

DcTermPtr dc_len();
DcTermPtr dc_dur(StatePtr s);
DcTermPtr tvar(const std::string &x);
DcTermPtr tvar_p(const std::string &x);
DcTermPtr rigid(const std::string &z);
DcTermPtr dc_const(double v);
DcTermPtr dc_term(DcTermKind k, DcTermPtr a, DcTermPtr b);

// ---------------------------------------------------------------------------
// Formulas
// ---------------------------------------------------------------------------

struct DcFormula;
using DcPtr = std::shared_ptr<const DcFormula>;

enum class DcKind {
  Top,
  Bot,
  Cmp,        // comparison of two interval terms
  TempProp,   // boolean process variable at min (or max if primed)
  Not,
  And,
  Or,
  Imp,
  Chop,
  Box,        // all subintervals
  BoxPrefix,  // all proper prefix subintervals [lo, t], t < hi
  BoxPoint,   // process condition at every point except possibly max
  DiamondLC,  // converse left-neighbourhood: some [lo, t], t ≥ lo
  Star,
  Mu,
  FormulaVar,
  Forall,     // over a rigid real; evaluated in recognized patterns only
  EvolvesBy,  // primitive: x changes exactly by ∫ ẋ(1−N) (see eval)
  ExistsSplit,  // ∃S1 ∃S2 over state variables splitting a given state
};

enum class CmpOp { Eq, Ne, Lt, Le, Gt, Ge };

struct DcFormula {
  DcKind kind;
  CmpOp cmp = CmpOp::Eq;
  DcTermPtr t1, t2;     // Cmp
  std::string name;     // TempProp / FormulaVar / Mu / Forall / EvolvesBy x /
                        // ExistsSplit first bound name
  bool primed = false;  // TempProp
  std::string dot;      // EvolvesBy: name of ẋ / ExistsSplit second bound name
  StatePtr state;       // EvolvesBy: N / ExistsSplit: the state being split
  ExprPtr point_cond;   // BoxPoint
  DcPtr a, b;
};

DcPtr dc_top();
DcPtr dc_bot();
DcPtr dc_cmp(CmpOp op, DcTermPtr t1, DcTermPtr t2);
DcPtr temp_prop(const std::string &x, bool primed);
DcPtr dc_not(DcPtr a);
DcPtr dc_and(DcPtr a, DcPtr b);
DcPtr dc_or(DcPtr a, DcPtr b);
DcPtr dc_imp(DcPtr a, DcPtr b);
DcPtr dc_chop(DcPtr a, DcPtr b);
DcPtr dc_box(DcPtr a);
DcPtr dc_boxdot(DcPtr a);
DcPtr dc_boxpt(ExprPtr cond);
DcPtr dc_diamond_lc(DcPtr a);
DcPtr dc_star(DcPtr a);
DcPtr dc_mu(const std::string &x, DcPtr body);
DcPtr fvar(const std::string &x);
DcPtr dc_forall(const std::string &z, DcPtr body);
DcPtr dc_evolves_by(const std::string &x, const std::string &xdot, StatePtr n);
DcPtr dc_esplit(StatePtr split, const std::string &s1, const std::string &s2,
                DcPtr body);

// idioms
DcPtr almost(StatePtr s);         // ⌈S⌉  =  ℓ≠0 ∧ ∫S=ℓ
DcPtr almost0(StatePtr s);        // ⌈S⌉⁰ =  ∫S=ℓ
DcPtr len_eq(double v);           // ℓ = v
DcPtr dc_fin();                   // ℓ < ∞
DcPtr dc_inf();                   // ℓ = ∞
DcPtr with_fin(DcPtr a);          // a ∧ ℓ<∞

/// Process boolean condition as a DC formula over temporal variables
/// (primed: values at max of the interval; unprimed: at min).
DcPtr formula_of_expr(const ExprPtr &b, bool primed);
DcTermPtr term_of_expr(const ExprPtr &e, bool primed);

bool dc_equal(const DcPtr &a, const DcPtr &b);
std::set<std::string> free_formula_vars(const DcPtr &f);
/// throws if x occurs negatively in f
void check_positive(const DcPtr &f, const std::string &x);

DcPtr subst_formula_var(const DcPtr &f, const std::string &x, const DcPtr &by);
/// rename a state variable everywhere (split binders shadow their names)
DcPtr subst_state_var(const DcPtr &f, const std::string &from,
                      const std::string &to);
/// k-fold unfolding of Mu(x, body) with ⊥ at the base
DcPtr unfold_mu(const DcPtr &mu_formula, int k);

// s-expression round trip
std::string print_dc(const DcPtr &f);
std::string print_dc_term(const DcTermPtr &t);
std::string print_state(const StatePtr &s);
DcPtr parse_dc(const std::string &text);

void collect_dc_state_vars(const DcPtr &f, std::set<std::string> &out);
void collect_dc_temp_vars(const DcPtr &f, std::set<std::string> &out);

}  // namespace hcspdc
