#include "hcspdc/gnf.hpp"

#include <stdexcept>

#include "hcspdc/desugar.hpp"

namespace hcspdc {

namespace {

constexpr int kDepth = 64;  // guard-exposure recursion limit

bool is_guard(const TermPtr &t) {
  return t->kind == TermKind::Assign || t->kind == TermKind::Await ||
         t->kind == TermKind::Evolve;
}

bool is_unit(const TermPtr &t) {
  return t->kind == TermKind::Skip || t->kind == TermKind::Terminated;
}

bool contains_par(const TermPtr &t) {
  if (!t) return false;
  if (t->kind == TermKind::Par) return true;
  for (const IoBranch &br : t->branches)
    if (contains_par(br.cont)) return true;
  return contains_par(t->default_branch) || contains_par(t->a) ||
         contains_par(t->b);
}

ExprPtr closed(const ExprPtr &b) { return closure(nnf(b)); }

TermPtr gnf_rec(const TermPtr &p, int depth);
TermPtr combine(const TermPtr &p, const TermPtr &q, int depth);

/// g is guard-exposed; run q after every continuation of g.
TermPtr attach(const TermPtr &g, const TermPtr &q, int depth) {
  if (is_unit(g)) return gnf_rec(q, depth);
  switch (g->kind) {
    case TermKind::Seq:
      return seq(g->a, seq(g->b, q));
    case TermKind::If:
      return if_term(g->cond, attach(g->a, q, depth), attach(g->b, q, depth));
    case TermKind::IntChoice:
      return int_choice(attach(g->a, q, depth), attach(g->b, q, depth));
    case TermKind::ExtChoice: {
      std::vector<IoBranch> brs = g->branches;
      for (IoBranch &br : brs) br.cont = br.cont ? seq(br.cont, q) : q;
      return ext_choice(std::move(brs),
                        g->default_branch ? seq(g->default_branch, q)
                                          : nullptr);
    }
    default:
      return seq(g, q);
  }
}

/// guard and continuation of an A;R shape (continuation = ε for a bare A)
std::pair<TermPtr, TermPtr> split_guard(const TermPtr &t) {
  if (is_guard(t)) return {t, terminated()};
  if (t->kind == TermKind::Seq && is_guard(t->a)) return {t->a, t->b};
  return {nullptr, nullptr};
}

TermPtr gnf_rec(const TermPtr &p, int depth) {
  if (depth <= 0)
    throw std::runtime_error(
        "to_gnf: recursion produced no guard (unproductive loop)");
  switch (p->kind) {
    case TermKind::Skip:
    case TermKind::Terminated:
    case TermKind::Assign:
    case TermKind::Await:
    case TermKind::Evolve:
    case TermKind::ExtChoice:
      return p;
    case TermKind::Seq:
      return attach(gnf_rec(p->a, depth - 1), p->b, depth - 1);
    case TermKind::If:
      return if_term(p->cond, gnf_rec(p->a, depth - 1),
                     gnf_rec(p->b, depth - 1));
    case TermKind::IntChoice:
      return int_choice(gnf_rec(p->a, depth - 1), gnf_rec(p->b, depth - 1));
    case TermKind::While:
      // while b do P ≡ if b then (P; while b do P) else skip
      return if_term(p->cond, attach(gnf_rec(p->a, depth - 1), p, depth - 1),
                     skip());
    case TermKind::Star:
      return int_choice(skip(),
                        attach(gnf_rec(p->a, depth - 1), p, depth - 1));
    case TermKind::Mu:
      return gnf_rec(subst_term(p->a, p->rec_var, p), depth - 1);
    case TermKind::Par: {
      TermPtr a = gnf_rec(p->a, depth - 1);
      TermPtr b = gnf_rec(p->b, depth - 1);
      TermPtr c = combine(a, b, depth - 1);
      return c ? c : par(a, b);
    }
    case TermKind::RecVar:
      throw std::runtime_error("to_gnf: unbound recursion variable " +
                               p->rec_var);
    default:
      // communication sugar exposes its guards after desugaring
      return gnf_rec(desugar(p), depth - 1);
  }
}

/// One application of the guard-pair rule table; nullptr when the pair has
/// no rule. Both operands must be guard-exposed.
TermPtr combine(const TermPtr &p, const TermPtr &q, int depth) {
  if (depth <= 0)
    throw std::runtime_error("parallel elimination: recursion limit");
  if (is_unit(p)) return q;
  if (is_unit(q)) return p;
  // entry conditionals and choices commute with the composition
  if (p->kind == TermKind::If)
    return if_term(p->cond, combine(p->a, q, depth - 1),
                   combine(p->b, q, depth - 1));
  if (q->kind == TermKind::If)
    return if_term(q->cond, combine(p, q->a, depth - 1),
                   combine(p, q->b, depth - 1));
  if (p->kind == TermKind::IntChoice)
    return int_choice(combine(p->a, q, depth - 1),
                      combine(p->b, q, depth - 1));
  if (q->kind == TermKind::IntChoice)
    return int_choice(combine(p, q->a, depth - 1),
                      combine(p, q->b, depth - 1));
  if (p->kind == TermKind::ExtChoice)
    return combine(gnf_rec(desugar(p), depth - 1), q, depth - 1);
  if (q->kind == TermKind::ExtChoice)
    return combine(p, gnf_rec(desugar(q), depth - 1), depth - 1);
  auto [a1, r1] = split_guard(p);
  auto [a2, r2] = split_guard(q);
  if (!a1 || !a2) return nullptr;

  auto passes_first = [&](const TermPtr &rest, const TermPtr &other,
                          bool left) {
    TermPtr g = gnf_rec(rest, depth - 1);
    return left ? combine(g, other, depth - 1)
                : combine(other, g, depth - 1);
  };

  if (a1->kind == TermKind::Await && a2->kind == TermKind::Await) {
    ExprPtr b1 = closed(a1->cond);
    ExprPtr b2 = closed(a2->cond);
    // enabled awaits pass immediately (left first); otherwise both block
    // until either closure holds
    return if_term(
        b1, passes_first(r1, q, true),
        if_term(b2, passes_first(r2, p, false),
                seq(await_term(mk(ExprKind::Or, a1->cond, a2->cond)),
                    if_term(b1, par(r1, q), par(p, r2)))));
  }
  if (a1->kind == TermKind::Await || a2->kind == TermKind::Await) {
    bool left = a1->kind == TermKind::Await;
    const TermPtr &aw = left ? a1 : a2, &other = left ? a2 : a1;
    const TermPtr &rw = left ? r1 : r2, &ro = left ? r2 : r1;
    const TermPtr &pw = left ? p : q, &po = left ? q : p;
    ExprPtr bw = closed(aw->cond);
    TermPtr blocked;
    if (other->kind == TermKind::Assign) {
      // a pending computation step preempts the blocked await
      blocked = left ? seq(other, par(p, ro)) : seq(other, par(ro, q));
    } else {
      // evolve beside a blocked await: run until the boundary fails or the
      // await's closure becomes true
      ExprPtr guard = mk(ExprKind::And, other->cond, nnf(bw, true));
      TermPtr after = if_term(bw, left ? par(rw, po) : par(po, rw),
                              left ? par(pw, ro) : par(ro, pw));
      blocked = seq(evolve(other->odes, guard), after);
    }
    return if_term(bw, passes_first(rw, po, left), blocked);
  }

  if (a1->kind == TermKind::Assign && a2->kind == TermKind::Assign)
    return int_choice(seq(a1, par(r1, q)), seq(a2, par(p, r2)));
  if (a1->kind == TermKind::Assign)  // assign beside evolve: discrete first
    return seq(a1, par(r1, q));
  if (a2->kind == TermKind::Assign)
    return seq(a2, par(p, r2));

  // evolve beside evolve: joint evolution until either boundary fails,
  // then the survivor continues
  std::vector<Ode> odes = a1->odes;
  odes.insert(odes.end(), a2->odes.begin(), a2->odes.end());
  TermPtr joint = evolve(std::move(odes),
                         mk(ExprKind::And, a1->cond, a2->cond));
  return seq(joint, if_term(a1->cond, par(p, r2),
                            if_term(a2->cond, par(r1, q), par(r1, r2))));
}

}  // namespace

bool is_gnf(const TermPtr &p) {
  switch (p->kind) {
    case TermKind::Skip:
    case TermKind::Terminated:
    case TermKind::Assign:
    case TermKind::Await:
    case TermKind::Evolve:
    case TermKind::ExtChoice:
      return true;
    case TermKind::Seq:
      return is_guard(p->a);
    case TermKind::If:
      return is_gnf(p->a) && is_gnf(p->b);
    case TermKind::IntChoice:
      return is_gnf(p->a) && is_gnf(p->b);
    default:
      return false;
  }
}

TermPtr to_gnf(const TermPtr &p) { return gnf_rec(p, kDepth); }

namespace {

struct ElimCtx {
  int fuel;
  std::vector<std::string> residue;
  std::map<std::string, std::pair<std::string, bool>> open;
  int fresh = 0;
};

TermPtr elim(const TermPtr &p, ElimCtx &ctx) {
  if (!p || !contains_par(p)) return p;
  if (p->kind != TermKind::Par) {
    auto c = std::make_shared<ProcessTerm>(*p);
    c->a = elim(p->a, ctx);
    c->b = elim(p->b, ctx);
    for (IoBranch &br : c->branches) br.cont = elim(br.cont, ctx);
    c->default_branch = elim(p->default_branch, ctx);
    return c;
  }
  std::string key = print_term(p);
  auto it = ctx.open.find(key);
  if (it != ctx.open.end()) {
    // the same configuration reappeared: fold into the enclosing binder
    it->second.second = true;
    return rec_var(it->second.first);
  }
  if (ctx.fuel <= 0) {
    ctx.residue.push_back(key);
    return p;
  }
  --ctx.fuel;
  std::string name = "L#" + std::to_string(ctx.fresh++);
  ctx.open.emplace(key, std::make_pair(name, false));
  TermPtr out;
  try {
    TermPtr one = combine(gnf_rec(p->a, kDepth), gnf_rec(p->b, kDepth),
                          kDepth);
    out = one ? elim(one, ctx) : nullptr;
  } catch (const std::runtime_error &) {
    out = nullptr;
  }
  bool used = ctx.open.at(key).second;
  ctx.open.erase(key);
  if (!out) {
    ctx.residue.push_back(key);
    return p;
  }
  return used ? mu(name, out) : out;
}

}  // namespace

ElimResult eliminate_parallel(const TermPtr &p, int fuel) {
  ElimCtx ctx{fuel, {}, {}, 0};
  ElimResult res;
  res.term = elim(p, ctx);
  res.residue = std::move(ctx.residue);
  res.complete = !contains_par(res.term);
  return res;
}

namespace {

/// mu X. if b then (P; X) else skip is rendered as while b do P
TermPtr prettify_mu(const std::string &x, const TermPtr &body) {
  if (body->kind == TermKind::If && is_unit(body->b) &&
      body->a->kind == TermKind::Seq &&
      body->a->b->kind == TermKind::RecVar && body->a->b->rec_var == x)
    return while_term(body->cond, body->a->a);
  return mu(x, body);
}

/// ancestors of the first free occurrence of X in t, innermost first
bool ancestors_of(const TermPtr &t, const std::string &x,
                  std::vector<TermPtr> &path) {
  if (!t) return false;
  if (t->kind == TermKind::Mu && t->rec_var == x) return false;
  if (t->kind == TermKind::RecVar && t->rec_var == x) return true;
  auto descend = [&](const TermPtr &c) {
    if (!ancestors_of(c, x, path)) return false;
    path.push_back(t);
    return true;
  };
  if (descend(t->a) || descend(t->b)) return true;
  for (const IoBranch &br : t->branches)
    if (descend(br.cont)) return true;
  return descend(t->default_branch);
}

/// t is a chain of ≤ bound unfoldings of some ancestor c of the free X,
/// i.e. t = c[X := c[X := … X]]; fold the chain into mu X. c.
TermPtr fold_chain(const TermPtr &t, int bound) {
  for (const std::string &x : free_rec_vars(t)) {
    std::vector<TermPtr> path;
    if (!ancestors_of(t, x, path)) continue;
    for (const TermPtr &c : path) {
      // at least one actual repetition: start from one unfolding of c
      TermPtr u = subst_term(c, x, c);
      for (int k = 1; k <= bound; ++k) {
        if (term_equal(t, u)) return prettify_mu(x, c);
        u = subst_term(c, x, u);
      }
    }
  }
  return nullptr;
}

TermPtr refold_rec(const TermPtr &t, int bound, bool &folded) {
  if (!t) return t;
  if (TermPtr f = fold_chain(t, bound)) {
    folded = true;
    return f;
  }
  auto c = std::make_shared<ProcessTerm>(*t);
  c->a = refold_rec(t->a, bound, folded);
  c->b = refold_rec(t->b, bound, folded);
  for (IoBranch &br : c->branches)
    br.cont = refold_rec(br.cont, bound, folded);
  c->default_branch = refold_rec(t->default_branch, bound, folded);
  return c;
}

}  // namespace

TermPtr refold_loops(const TermPtr &p, int bound) {
  bool folded = false;
  TermPtr out = refold_rec(p, bound, folded);
  if (!folded)
    throw std::runtime_error(
        "refold_loops: no repeated configuration within the bound");
  return out;
}

}  // namespace hcspdc
