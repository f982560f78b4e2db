#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>

namespace hcspdc {

/// Arithmetic/boolean expression over process variables.
enum class ExprKind {
  Number,
  BoolConst,
  Var,
  Add,
  Sub,
  Mul,
  Div,
  Neg,
  Not,
  And,
  Or,
  Lt,
  Le,
  Gt,
  Ge,
  Eq,
  Ne,
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  ExprKind kind;
  double value = 0.0;   // Number
  std::string name;     // Var
  ExprPtr a, b;
};

ExprPtr num(double v);
ExprPtr boolc(bool v);
ExprPtr var(const std::string &name);
ExprPtr mk(ExprKind k, ExprPtr a, ExprPtr b = nullptr);

ExprPtr operator+(ExprPtr a, ExprPtr b);
ExprPtr operator-(ExprPtr a, ExprPtr b);
ExprPtr operator*(ExprPtr a, ExprPtr b);

bool expr_equal(const ExprPtr &a, const ExprPtr &b);
bool is_boolean_expr(const ExprPtr &e);

using Valuation = std::map<std::string, double>;

/// Booleans are represented as 0/1 doubles. Throws on unbound variables
/// and on division by (near-)zero.
double eval_expr(const ExprPtr &e, const Valuation &v);
bool eval_bool(const ExprPtr &e, const Valuation &v);

void collect_vars(const ExprPtr &e, std::set<std::string> &out);

std::string print_expr(const ExprPtr &e);
std::string format_double(double v);  // shortest round-trip decimal

/// Negation normal form: Not pushed into comparison atoms.
ExprPtr nnf(const ExprPtr &e, bool negate = false);

/// Syntactic topological closure of an NNF condition: < becomes <=,
/// > becomes >=, != over reals becomes true. Throws on atoms it cannot
/// close.
ExprPtr closure(const ExprPtr &e);

ExprPtr substitute_expr(const ExprPtr &e,
                        const std::map<std::string, ExprPtr> &subst);

}  // namespace hcspdc
