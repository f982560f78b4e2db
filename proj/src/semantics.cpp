#include "hcspdc/semantics.hpp"

#include <stdexcept>

namespace hcspdc {

namespace {

void collect_pars(const TermPtr &t, ParMarkers &out, int &counter) {
  if (!t) return;
  if (t->kind == TermKind::Par) {
    std::string a = "R#" + std::to_string(counter);
    std::string b = "R#" + std::to_string(counter + 1);
    counter += 2;
    out.emplace(t.get(), std::make_pair(a, b));
  }
  collect_pars(t->a, out, counter);
  collect_pars(t->b, out, counter);
  for (const IoBranch &br : t->branches) collect_pars(br.cont, out, counter);
  collect_pars(t->default_branch, out, counter);
}

StatePtr siff(StatePtr a, StatePtr b) {
  return sand(simp(a, b), simp(b, a));
}

DcPtr const_atom(const std::string &x) {
  return dc_cmp(CmpOp::Eq, tvar_p(x), tvar(x));
}

DcPtr conj(DcPtr acc, DcPtr f) {
  if (!acc) return f;
  return dc_and(std::move(acc), std::move(f));
}

DcPtr dc_iff(DcPtr a, DcPtr b) {
  return dc_and(dc_imp(a, b), dc_imp(b, a));
}

}  // namespace

DcPtr sync_gap_formula(const std::string &n, const std::string &r) {
  return with_fin(almost0(sand(sv(n), snot(sv(r)))));
}

DcPtr split_constraints(const std::string &r, const std::string &r1,
                        const std::string &r2, const VarSet &v,
                        const VarSet &v1, const VarSet &v2) {
  StatePtr s1 = sv(r1), s2 = sv(r2);
  DcPtr out = almost0(sand(siff(sor(s1, s2), sv(r)), snot(sand(s1, s2))));
  const std::string rs[2] = {r1, r2};
  const VarSet *vs[2] = {&v1, &v2};
  for (int i = 0; i < 2; ++i) {
    VarSet frame = v;
    for (const auto &[x, k] : *vs[i]) frame.erase(x);
    out = dc_and(out, dc_box(dc_imp(almost(sv(rs[i])),
                                    const_formula(frame, {}))));
  }
  return out;
}

DcPtr par_phi(const DcPtr &g1, const DcPtr &g2, const std::string &r1,
              const std::string &r2, const std::string &n) {
  const DcPtr gs[2] = {g1, g2};
  const std::string rs[2] = {r1, r2};
  DcPtr phi;
  for (int i = 0; i < 2; ++i) {
    int j = 1 - i;
    DcPtr other_framed =
        dc_chop(sync_gap_formula(n, rs[j]),
                dc_chop(gs[j], almost0(snot(sv(rs[j])))));
    DcPtr first = dc_and(gs[i], other_framed);
    DcPtr second = dc_and(dc_chop(sync_gap_formula(n, rs[i]), gs[i]),
                          dc_chop(gs[j], almost0(snot(sv(rs[j])))));
    DcPtr both = dc_or(first, second);
    phi = phi ? dc_or(phi, both) : both;
  }
  return phi;
}

ParMarkers par_markers(const TermPtr &t) {
  ParMarkers out;
  int counter = 1;
  collect_pars(t, out, counter);
  return out;
}

DcPtr loc_formula(const VarSet &v) {
  DcPtr out;
  for (const auto &[x, kind] : v) {
    DcPtr one;
    if (kind == VarKind::Real) {
      one = dc_box(dc_forall(
          "z", dc_not(dc_chop(dc_cmp(CmpOp::Eq, tvar_p(x), rigid("z")),
                              dc_cmp(CmpOp::Ne, tvar(x), rigid("z"))))));
    } else {
      one = dc_box(dc_not(
          dc_or(dc_chop(temp_prop(x, true), dc_not(temp_prop(x, false))),
                dc_chop(dc_not(temp_prop(x, true)), temp_prop(x, false)))));
    }
    out = conj(std::move(out), std::move(one));
  }
  return out ? out : dc_top();
}

DcPtr const_formula(const VarSet &v, const std::set<std::string> &x) {
  DcPtr out;
  for (const auto &[name, kind] : v) {
    DcPtr atom = const_atom(name);
    // dotted variables may jump at the right end of any subinterval (a new
    // evolution fixes them to its right-hand side), so they only get the
    // prefix-closed frame
    bool prefix_only = x.count(name) || is_dotted(name);
    out = conj(std::move(out),
               prefix_only ? dc_boxdot(atom) : dc_box(atom));
  }
  return out ? out : dc_top();
}

namespace {

DcPtr compile_rec(const TermPtr &p, SemContext &ctx);

DcPtr compile_assign(const TermPtr &p, SemContext &ctx) {
  std::set<std::string> targets(p->targets.begin(), p->targets.end());
  DcPtr out = with_fin(almost(sv(ctx.R)));
  out = dc_and(out, const_formula(ctx.V, targets));
  for (size_t i = 0; i < p->targets.size(); ++i) {
    const std::string &x = p->targets[i];
    const ExprPtr &e = p->exprs[i];
    auto it = ctx.V.find(x);
    bool boolean = it != ctx.V.end() ? it->second == VarKind::Boolean
                                     : is_boolean_expr(e);
    DcPtr eq = boolean ? dc_iff(temp_prop(x, true), formula_of_expr(e, false))
                       : dc_cmp(CmpOp::Eq, tvar_p(x), term_of_expr(e, false));
    out = dc_and(out, eq);
  }
  return out;
}

DcPtr compile_await(const TermPtr &p, SemContext &ctx) {
  ExprPtr closed = closure(nnf(p->cond));
  DcPtr bprime = formula_of_expr(closed, true);
  DcPtr out = const_formula(ctx.V, {});
  out = dc_and(out, dc_or(almost(snot(sv(ctx.R))), len_eq(0)));
  out = dc_and(out, dc_boxdot(dc_not(bprime)));
  out = dc_and(out, dc_or(bprime, dc_inf()));
  return out;
}

DcPtr compile_evolve(const TermPtr &p, SemContext &ctx) {
  VarSet rest = ctx.V;
  VarSet evolving;
  for (const Ode &ode : p->odes) {
    for (const std::string &x : {ode.var, dotted(ode.var)}) {
      rest.erase(x);
      evolving[x] = VarKind::Real;
    }
  }
  DcPtr out = const_formula(rest, {});
  // ⌈¬R⌉ weakened with ℓ=0 so that an evolution whose boundary fails
  // from the start can exit immediately
  out = dc_and(out, dc_or(almost(snot(sv(ctx.R))), len_eq(0)));
  out = dc_and(out, dc_box(dc_imp(almost(sv(ctx.N)),
                                  const_formula(evolving, {}))));
  for (const Ode &ode : p->odes)
    out = dc_and(out,
                 dc_evolves_by(ode.var, dotted(ode.var), sv(ctx.N)));
  ExprPtr f_zero;
  for (const Ode &ode : p->odes) {
    ExprPtr eq = mk(ExprKind::Eq, var(dotted(ode.var)), ode.rhs);
    f_zero = f_zero ? mk(ExprKind::And, f_zero, eq) : eq;
  }
  if (f_zero) out = dc_and(out, dc_boxpt(f_zero));
  out = dc_and(out, dc_boxpt(p->cond));
  DcPtr exit =
      dc_and(formula_of_expr(nnf(p->cond, true), false), len_eq(0));
  return dc_chop(out, exit);
}

DcPtr compile_par(const TermPtr &p, SemContext &ctx) {
  auto it = ctx.par_names.find(p.get());
  std::pair<std::string, std::string> names;
  if (it != ctx.par_names.end()) {
    names = it->second;
  } else {
    names = {"R#" + std::to_string(ctx.counter),
             "R#" + std::to_string(ctx.counter + 1)};
    ctx.counter += 2;
    ctx.par_names.emplace(p.get(), names);
  }
  const TermPtr kids[2] = {p->a, p->b};
  const std::string rs[2] = {names.first, names.second};
  VarSet vs[2] = {controlled_vars(p->a), controlled_vars(p->b)};
  DcPtr sem[2];
  for (int i = 0; i < 2; ++i) {
    SemContext sub = ctx;
    sub.R = rs[i];
    sub.V = vs[i];
    sem[i] = compile_rec(kids[i], sub);
    ctx.par_names = sub.par_names;
    ctx.counter = sub.counter;
  }
  DcPtr body = split_constraints(ctx.R, names.first, names.second, ctx.V,
                                 vs[0], vs[1]);
  body = dc_and(body, par_phi(sem[0], sem[1], rs[0], rs[1], ctx.N));
  return dc_esplit(sv(ctx.R), names.first, names.second, body);
}

DcPtr compile_rec(const TermPtr &p, SemContext &ctx) {
  switch (p->kind) {
    case TermKind::Skip:
      return len_eq(0);
    case TermKind::Terminated:
      return dc_and(const_formula(ctx.V, {}), almost0(snot(sv(ctx.R))));
    case TermKind::Assign:
      return compile_assign(p, ctx);
    case TermKind::Await:
      return compile_await(p, ctx);
    case TermKind::Evolve:
      return compile_evolve(p, ctx);
    case TermKind::Seq:
      return dc_chop(compile_rec(p->a, ctx),
                     dc_chop(sync_gap_formula(ctx.N, ctx.R),
                             compile_rec(p->b, ctx)));
    case TermKind::IntChoice:
      return dc_or(compile_rec(p->a, ctx), compile_rec(p->b, ctx));
    case TermKind::If:
      return dc_or(
          dc_and(formula_of_expr(p->cond, false), compile_rec(p->a, ctx)),
          dc_and(formula_of_expr(nnf(p->cond, true), false),
                 compile_rec(p->b, ctx)));
    case TermKind::While:
      return dc_chop(
          dc_star(dc_chop(dc_and(formula_of_expr(p->cond, false),
                                 compile_rec(p->a, ctx)),
                          almost0(snot(sv(ctx.R))))),
          dc_and(formula_of_expr(nnf(p->cond, true), false), len_eq(0)));
    case TermKind::Par:
      return compile_par(p, ctx);
    case TermKind::Mu:
      return dc_mu(p->rec_var, compile_rec(p->a, ctx));
    case TermKind::RecVar:
      return fvar(p->rec_var);
    default:
      throw std::runtime_error(
          "cannot compile a sugared construct; desugar first: " +
          print_term(p));
  }
}

}  // namespace

DcPtr compile_semantics(const TermPtr &p, SemContext &ctx) {
  return compile_rec(p, ctx);
}

DcPtr compile_semantics(const TermPtr &p) {
  SemContext ctx;
  ctx.V = controlled_vars(p);
  ctx.par_names = par_markers(p);
  ctx.counter += 2 * (int)ctx.par_names.size();
  return compile_rec(p, ctx);
}

}  // namespace hcspdc
