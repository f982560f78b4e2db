#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hcspdc/expr.hpp"

namespace hcspdc {

enum class TermKind {
  Skip,
  Terminated,  // the process that has finished all its actions
  Assign,
  Wait,
  Await,
  Input,
  Output,
  ExtChoice,
  Evolve,
  EvolveTimeout,
  EvolveInterrupt,
  Seq,
  Par,
  If,
  IntChoice,
  While,
  Star,
  Mu,
  RecVar,
};

struct ProcessTerm;
using TermPtr = std::shared_ptr<const ProcessTerm>;

struct Ode {
  std::string var;  // evolving variable x; the equation is x_dot = rhs
  ExprPtr rhs;
};

/// One guarded branch of a communication choice: ch?x -> cont or
/// ch!e -> cont.
struct IoBranch {
  bool is_input = true;
  std::string channel;
  std::string input_var;  // input
  ExprPtr output_expr;    // output
  TermPtr cont;
};

struct ProcessTerm {
  TermKind kind;
  // Assign
  std::vector<std::string> targets;
  std::vector<ExprPtr> exprs;
  // Wait duration / EvolveTimeout deadline
  ExprPtr duration;
  // Await / Evolve / If / While boundary or guard condition
  ExprPtr cond;
  // Input / Output
  std::string channel;
  std::string comm_var;  // input target
  ExprPtr comm_expr;     // output payload
  // ExtChoice / EvolveInterrupt
  std::vector<IoBranch> branches;
  TermPtr default_branch;  // extended choice: taken when no partner is ready
  // Evolve family
  std::vector<Ode> odes;
  // Mu / RecVar
  std::string rec_var;
  // children: Seq/Par/If/IntChoice use a,b; unary use a
  TermPtr a, b;
};

TermPtr skip();
TermPtr terminated();
TermPtr assign(std::vector<std::string> targets, std::vector<ExprPtr> exprs);
TermPtr wait_term(ExprPtr d);
TermPtr await_term(ExprPtr b);
TermPtr input(std::string ch, std::string x);
TermPtr output(std::string ch, ExprPtr e);
TermPtr ext_choice(std::vector<IoBranch> branches,
                   TermPtr default_branch = nullptr);
TermPtr evolve(std::vector<Ode> odes, ExprPtr b);
TermPtr evolve_timeout(std::vector<Ode> odes, ExprPtr b, ExprPtr d, TermPtr q);
TermPtr evolve_interrupt(std::vector<Ode> odes, ExprPtr b,
                         std::vector<IoBranch> branches);
TermPtr seq(TermPtr p, TermPtr q);
TermPtr par(TermPtr p, TermPtr q);
TermPtr if_term(ExprPtr b, TermPtr p, TermPtr q);
TermPtr int_choice(TermPtr p, TermPtr q);
TermPtr while_term(ExprPtr b, TermPtr p);
TermPtr star(TermPtr p);
TermPtr mu(std::string x, TermPtr body);
TermPtr rec_var(std::string x);

bool term_equal(const TermPtr &a, const TermPtr &b);
std::string print_term(const TermPtr &t);

enum class VarKind { Real, Boolean };
using VarSet = std::map<std::string, VarKind>;

std::string dotted(const std::string &x);  // name of the ẋ variable
bool is_dotted(const std::string &x);

/// Var(P): every process variable occurring in P.
VarSet all_vars(const TermPtr &t);
/// VarA(P): variables P controls (assignment/input targets, evolved
/// variables and their dots, channel handshake variables).
VarSet controlled_vars(const TermPtr &t);

std::set<std::string> free_rec_vars(const TermPtr &t);

/// t[x := by], stopping at a shadowing mu binder; unchanged subterms are
/// shared, so node identities (e.g. parallel markers) survive unfolding.
TermPtr subst_term(const TermPtr &t, const std::string &x, const TermPtr &by);

}  // namespace hcspdc
