#include "hcspdc/process.hpp"

#include <stdexcept>

namespace hcspdc {

namespace {
std::shared_ptr<ProcessTerm> node(TermKind k) {
  auto t = std::make_shared<ProcessTerm>();
  t->kind = k;
  return t;
}
}  // namespace

TermPtr skip() { return node(TermKind::Skip); }
TermPtr terminated() { return node(TermKind::Terminated); }

TermPtr assign(std::vector<std::string> targets, std::vector<ExprPtr> exprs) {
  if (targets.size() != exprs.size())
    throw std::runtime_error("assignment arity mismatch");
  auto t = node(TermKind::Assign);
  t->targets = std::move(targets);
  t->exprs = std::move(exprs);
  return t;
}

TermPtr wait_term(ExprPtr d) {
  auto t = node(TermKind::Wait);
  t->duration = std::move(d);
  return t;
}

TermPtr await_term(ExprPtr b) {
  auto t = node(TermKind::Await);
  t->cond = std::move(b);
  return t;
}

TermPtr input(std::string ch, std::string x) {
  auto t = node(TermKind::Input);
  t->channel = std::move(ch);
  t->comm_var = std::move(x);
  return t;
}

TermPtr output(std::string ch, ExprPtr e) {
  auto t = node(TermKind::Output);
  t->channel = std::move(ch);
  t->comm_expr = std::move(e);
  return t;
}

TermPtr ext_choice(std::vector<IoBranch> branches, TermPtr default_branch) {
  auto t = node(TermKind::ExtChoice);
  t->branches = std::move(branches);
  t->default_branch = std::move(default_branch);
  return t;
}

TermPtr evolve(std::vector<Ode> odes, ExprPtr b) {
  auto t = node(TermKind::Evolve);
  t->odes = std::move(odes);
  t->cond = std::move(b);
  return t;
}

TermPtr evolve_timeout(std::vector<Ode> odes, ExprPtr b, ExprPtr d, TermPtr q) {
  auto t = node(TermKind::EvolveTimeout);
  t->odes = std::move(odes);
  t->cond = std::move(b);
  t->duration = std::move(d);
  t->a = std::move(q);
  return t;
}

TermPtr evolve_interrupt(std::vector<Ode> odes, ExprPtr b,
                         std::vector<IoBranch> branches) {
  auto t = node(TermKind::EvolveInterrupt);
  t->odes = std::move(odes);
  t->cond = std::move(b);
  t->branches = std::move(branches);
  return t;
}

TermPtr seq(TermPtr p, TermPtr q) {
  auto t = node(TermKind::Seq);
  t->a = std::move(p);
  t->b = std::move(q);
  return t;
}

TermPtr par(TermPtr p, TermPtr q) {
  auto t = node(TermKind::Par);
  t->a = std::move(p);
  t->b = std::move(q);
  return t;
}

TermPtr if_term(ExprPtr b, TermPtr p, TermPtr q) {
  auto t = node(TermKind::If);
  t->cond = std::move(b);
  t->a = std::move(p);
  t->b = std::move(q);
  return t;
}

TermPtr int_choice(TermPtr p, TermPtr q) {
  auto t = node(TermKind::IntChoice);
  t->a = std::move(p);
  t->b = std::move(q);
  return t;
}

TermPtr while_term(ExprPtr b, TermPtr p) {
  auto t = node(TermKind::While);
  t->cond = std::move(b);
  t->a = std::move(p);
  return t;
}

TermPtr star(TermPtr p) {
  auto t = node(TermKind::Star);
  t->a = std::move(p);
  return t;
}

TermPtr mu(std::string x, TermPtr body) {
  auto t = node(TermKind::Mu);
  t->rec_var = std::move(x);
  t->a = std::move(body);
  return t;
}

TermPtr rec_var(std::string x) {
  auto t = node(TermKind::RecVar);
  t->rec_var = std::move(x);
  return t;
}

static bool branch_equal(const IoBranch &a, const IoBranch &b) {
  if (a.is_input != b.is_input || a.channel != b.channel) return false;
  if (a.is_input && a.input_var != b.input_var) return false;
  if (!a.is_input && !expr_equal(a.output_expr, b.output_expr)) return false;
  if (!a.cont != !b.cont) return false;
  return !a.cont || term_equal(a.cont, b.cont);
}

bool term_equal(const TermPtr &a, const TermPtr &b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind) return false;
  if (a->targets != b->targets) return false;
  if (a->exprs.size() != b->exprs.size()) return false;
  for (size_t i = 0; i < a->exprs.size(); ++i)
    if (!expr_equal(a->exprs[i], b->exprs[i])) return false;
  if (!expr_equal(a->duration, b->duration) && (a->duration || b->duration))
    return false;
  if ((a->cond || b->cond) && !expr_equal(a->cond, b->cond)) return false;
  if (a->channel != b->channel || a->comm_var != b->comm_var) return false;
  if ((a->comm_expr || b->comm_expr) && !expr_equal(a->comm_expr, b->comm_expr))
    return false;
  if (a->branches.size() != b->branches.size()) return false;
  for (size_t i = 0; i < a->branches.size(); ++i)
    if (!branch_equal(a->branches[i], b->branches[i])) return false;
  if (!a->default_branch != !b->default_branch) return false;
  if (a->default_branch && !term_equal(a->default_branch, b->default_branch))
    return false;
  if (a->odes.size() != b->odes.size()) return false;
  for (size_t i = 0; i < a->odes.size(); ++i) {
    if (a->odes[i].var != b->odes[i].var) return false;
    if (!expr_equal(a->odes[i].rhs, b->odes[i].rhs)) return false;
  }
  if (a->rec_var != b->rec_var) return false;
  if (!a->a != !b->a || !a->b != !b->b) return false;
  if (a->a && !term_equal(a->a, b->a)) return false;
  if (a->b && !term_equal(a->b, b->b)) return false;
  return true;
}

namespace {

// precedence: Par 1 < IntChoice 2 < Seq 3 < postfix 4
int term_prec(TermKind k) {
  switch (k) {
    case TermKind::Par: return 1;
    case TermKind::IntChoice: return 2;
    case TermKind::Seq: return 3;
    case TermKind::Star: return 4;
    default: return 5;
  }
}

void print_io(const IoBranch &br, std::string &out);

void print_rec(const TermPtr &t, int parent_prec, std::string &out) {
  int p = term_prec(t->kind);
  bool paren = p < parent_prec;
  if (paren) out += "(";
  switch (t->kind) {
    case TermKind::Skip:
      out += "skip";
      break;
    case TermKind::Terminated:
      out += "eps";
      break;
    case TermKind::Assign: {
      for (size_t i = 0; i < t->targets.size(); ++i) {
        if (i) out += ", ";
        out += t->targets[i];
      }
      out += " := ";
      for (size_t i = 0; i < t->exprs.size(); ++i) {
        if (i) out += ", ";
        out += print_expr(t->exprs[i]);
      }
      break;
    }
    case TermKind::Wait:
      out += "wait " + print_expr(t->duration);
      break;
    case TermKind::Await:
      out += "await " + print_expr(t->cond);
      break;
    case TermKind::Input:
      out += t->channel + "?" + t->comm_var;
      break;
    case TermKind::Output:
      out += t->channel + "!" + print_expr(t->comm_expr);
      break;
    case TermKind::ExtChoice: {
      out += "[ ";
      for (size_t i = 0; i < t->branches.size(); ++i) {
        if (i) out += " [] ";
        print_io(t->branches[i], out);
      }
      if (t->default_branch) {
        if (!t->branches.empty()) out += " [] ";
        out += "default -> ";
        print_rec(t->default_branch, 4, out);
      }
      out += " ]";
      break;
    }
    case TermKind::Evolve:
    case TermKind::EvolveTimeout:
    case TermKind::EvolveInterrupt: {
      out += "< ";
      for (size_t i = 0; i < t->odes.size(); ++i) {
        if (i) out += ", ";
        out += dotted(t->odes[i].var) + " = " + print_expr(t->odes[i].rhs);
      }
      if (!t->odes.empty()) out += " ";
      out += "& " + print_expr(t->cond) + " >";
      if (t->kind == TermKind::EvolveTimeout) {
        out += " |>(" + print_expr(t->duration) + ") { ";
        print_rec(t->a, 0, out);
        out += " }";
      } else if (t->kind == TermKind::EvolveInterrupt) {
        out += " |> [ ";
        for (size_t i = 0; i < t->branches.size(); ++i) {
          if (i) out += " [] ";
          print_io(t->branches[i], out);
        }
        out += " ]";
      }
      break;
    }
    case TermKind::Seq:
      print_rec(t->a, p, out);
      out += "; ";
      print_rec(t->b, p + 1, out);
      break;
    case TermKind::Par:
      print_rec(t->a, p, out);
      out += " || ";
      print_rec(t->b, p + 1, out);
      break;
    case TermKind::IntChoice:
      print_rec(t->a, p, out);
      out += " |~| ";
      print_rec(t->b, p + 1, out);
      break;
    case TermKind::If:
      out += "if " + print_expr(t->cond) + " then { ";
      print_rec(t->a, 0, out);
      out += " } else { ";
      print_rec(t->b, 0, out);
      out += " }";
      break;
    case TermKind::While:
      out += "while " + print_expr(t->cond) + " do { ";
      print_rec(t->a, 0, out);
      out += " }";
      break;
    case TermKind::Star: {
      // parenthesize bodies that end in an expression, else the '*' would
      // be read as multiplication
      bool wrap = t->a->kind == TermKind::Assign ||
                  t->a->kind == TermKind::Wait ||
                  t->a->kind == TermKind::Await ||
                  t->a->kind == TermKind::Output || term_prec(t->a->kind) < 4;
      if (wrap) out += "(";
      print_rec(t->a, wrap ? 0 : 5, out);
      if (wrap) out += ")";
      out += "*";
      break;
    }
    case TermKind::Mu:
      out += "mu " + t->rec_var + " . { ";
      print_rec(t->a, 0, out);
      out += " }";
      break;
    case TermKind::RecVar:
      out += t->rec_var;
      break;
  }
  if (paren) out += ")";
}

void print_io(const IoBranch &br, std::string &out) {
  if (br.is_input)
    out += br.channel + "?" + br.input_var;
  else
    out += br.channel + "!" + print_expr(br.output_expr);
  out += " -> ";
  print_rec(br.cont, 4, out);
}

}  // namespace

std::string print_term(const TermPtr &t) {
  std::string out;
  print_rec(t, 0, out);
  return out;
}

std::string dotted(const std::string &x) { return x + "_dot"; }

bool is_dotted(const std::string &x) {
  return x.size() > 4 && x.compare(x.size() - 4, 4, "_dot") == 0;
}

namespace {

void add_var(VarSet &vs, const std::string &name, VarKind k) {
  auto it = vs.find(name);
  if (it == vs.end())
    vs[name] = k;
  else if (it->second != k)
    it->second = k;  // later tag wins; checker flags misuse separately
}

void expr_vars(const ExprPtr &e, VarSet &vs, bool boolean_ctx) {
  if (!e) return;
  if (e->kind == ExprKind::Var) {
    add_var(vs, e->name, boolean_ctx ? VarKind::Boolean : VarKind::Real);
    return;
  }
  bool operands_bool = e->kind == ExprKind::Not || e->kind == ExprKind::And ||
                       e->kind == ExprKind::Or;
  expr_vars(e->a, vs, operands_bool);
  expr_vars(e->b, vs, operands_bool);
}

void all_vars_rec(const TermPtr &t, VarSet &vs) {
  if (!t) return;
  switch (t->kind) {
    case TermKind::Assign:
      for (size_t i = 0; i < t->targets.size(); ++i) {
        bool is_bool = is_boolean_expr(t->exprs[i]) ||
                       (t->exprs[i]->kind == ExprKind::Var &&
                        vs.count(t->exprs[i]->name) &&
                        vs.at(t->exprs[i]->name) == VarKind::Boolean);
        add_var(vs, t->targets[i], is_bool ? VarKind::Boolean : VarKind::Real);
        expr_vars(t->exprs[i], vs, is_bool);
      }
      break;
    case TermKind::Input:
      add_var(vs, t->comm_var, VarKind::Real);
      add_var(vs, t->channel, VarKind::Real);
      add_var(vs, t->channel + "?", VarKind::Boolean);
      add_var(vs, t->channel + "!", VarKind::Boolean);
      break;
    case TermKind::Output:
      expr_vars(t->comm_expr, vs, false);
      add_var(vs, t->channel, VarKind::Real);
      add_var(vs, t->channel + "?", VarKind::Boolean);
      add_var(vs, t->channel + "!", VarKind::Boolean);
      break;
    default:
      break;
  }
  if (t->cond) expr_vars(t->cond, vs, true);
  if (t->duration) expr_vars(t->duration, vs, false);
  for (const auto &o : t->odes) {
    add_var(vs, o.var, VarKind::Real);
    add_var(vs, dotted(o.var), VarKind::Real);
    expr_vars(o.rhs, vs, false);
  }
  for (const auto &br : t->branches) {
    add_var(vs, br.channel, VarKind::Real);
    add_var(vs, br.channel + "?", VarKind::Boolean);
    add_var(vs, br.channel + "!", VarKind::Boolean);
    if (br.is_input)
      add_var(vs, br.input_var, VarKind::Real);
    else
      expr_vars(br.output_expr, vs, false);
    all_vars_rec(br.cont, vs);
  }
  all_vars_rec(t->default_branch, vs);
  all_vars_rec(t->a, vs);
  all_vars_rec(t->b, vs);
}

void controlled_rec(const TermPtr &t, VarSet &vs, const VarSet &all) {
  if (!t) return;
  auto kind_of = [&](const std::string &n) {
    auto it = all.find(n);
    return it == all.end() ? VarKind::Real : it->second;
  };
  switch (t->kind) {
    case TermKind::Assign:
      for (const auto &x : t->targets) add_var(vs, x, kind_of(x));
      break;
    case TermKind::Input:
      add_var(vs, t->comm_var, kind_of(t->comm_var));
      add_var(vs, t->channel + "?", VarKind::Boolean);
      break;
    case TermKind::Output:
      add_var(vs, t->channel, VarKind::Real);
      add_var(vs, t->channel + "!", VarKind::Boolean);
      break;
    default:
      break;
  }
  for (const auto &o : t->odes) {
    add_var(vs, o.var, VarKind::Real);
    add_var(vs, dotted(o.var), VarKind::Real);
  }
  for (const auto &br : t->branches) {
    if (br.is_input) {
      add_var(vs, br.input_var, kind_of(br.input_var));
      add_var(vs, br.channel + "?", VarKind::Boolean);
    } else {
      add_var(vs, br.channel, VarKind::Real);
      add_var(vs, br.channel + "!", VarKind::Boolean);
    }
    controlled_rec(br.cont, vs, all);
  }
  controlled_rec(t->default_branch, vs, all);
  controlled_rec(t->a, vs, all);
  controlled_rec(t->b, vs, all);
}

}  // namespace

VarSet all_vars(const TermPtr &t) {
  VarSet vs;
  all_vars_rec(t, vs);
  return vs;
}

VarSet controlled_vars(const TermPtr &t) {
  VarSet all = all_vars(t);
  VarSet vs;
  controlled_rec(t, vs, all);
  return vs;
}

namespace {
void free_rec(const TermPtr &t, std::set<std::string> &bound,
              std::set<std::string> &out) {
  if (!t) return;
  if (t->kind == TermKind::RecVar) {
    if (!bound.count(t->rec_var)) out.insert(t->rec_var);
    return;
  }
  if (t->kind == TermKind::Mu) {
    bool inserted = bound.insert(t->rec_var).second;
    free_rec(t->a, bound, out);
    if (inserted) bound.erase(t->rec_var);
    return;
  }
  for (const auto &br : t->branches) free_rec(br.cont, bound, out);
  free_rec(t->default_branch, bound, out);
  free_rec(t->a, bound, out);
  free_rec(t->b, bound, out);
}
}  // namespace

std::set<std::string> free_rec_vars(const TermPtr &t) {
  std::set<std::string> bound, out;
  free_rec(t, bound, out);
  return out;
}

TermPtr subst_term(const TermPtr &t, const std::string &x, const TermPtr &by) {
  if (!t) return t;
  if (t->kind == TermKind::RecVar) return t->rec_var == x ? by : t;
  if (t->kind == TermKind::Mu && t->rec_var == x) return t;
  TermPtr a = subst_term(t->a, x, by);
  TermPtr b = subst_term(t->b, x, by);
  bool changed = a != t->a || b != t->b;
  std::vector<IoBranch> brs = t->branches;
  for (IoBranch &br : brs) {
    TermPtr c = subst_term(br.cont, x, by);
    if (c != br.cont) changed = true;
    br.cont = c;
  }
  TermPtr def = subst_term(t->default_branch, x, by);
  changed = changed || def != t->default_branch;
  if (!changed) return t;
  auto c = std::make_shared<ProcessTerm>(*t);
  c->a = a;
  c->b = b;
  c->branches = std::move(brs);
  c->default_branch = def;
  return c;
}

}  // namespace hcspdc
