#include "hcspdc/desugar.hpp"

#include <algorithm>

namespace hcspdc {

std::string input_flag(const std::string &ch) { return ch + "?"; }
std::string output_flag(const std::string &ch) { return ch + "!"; }

namespace {

// flag the partner sets when it becomes ready for the given action: our
// input is served by a partner's output (which raises ch!) and vice versa
std::string partner_flag(const IoBranch &br) {
  return br.is_input ? output_flag(br.channel) : input_flag(br.channel);
}

TermPtr set_flag(const std::string &name, bool v) {
  return assign({name}, {boolc(v)});
}

struct Desugarer {
  std::set<std::string> used;
  int counter = 0;

  std::string fresh(const std::string &prefix) {
    for (;;) {
      std::string name = prefix + "#" + std::to_string(counter++);
      if (!used.count(name)) {
        used.insert(name);
        return name;
      }
    }
  }

  TermPtr output_seq(const std::string &ch, const ExprPtr &e) {
    TermPtr t = assign({ch}, {e});
    t = seq(t, set_flag(output_flag(ch), true));
    t = seq(t, await_term(var(input_flag(ch))));
    t = seq(t, await_term(mk(ExprKind::Not, var(input_flag(ch)))));
    return seq(t, set_flag(output_flag(ch), false));
  }

  TermPtr input_seq(const std::string &ch, const std::string &x) {
    TermPtr t = set_flag(input_flag(ch), true);
    t = seq(t, await_term(var(output_flag(ch))));
    t = seq(t, input_commit(ch, x));
    return t;
  }

  // the tail of the input handshake, after ch! has been observed
  TermPtr input_commit(const std::string &ch, const std::string &x) {
    TermPtr t = assign({x}, {var(ch)});
    t = seq(t, set_flag(input_flag(ch), false));
    return seq(t, await_term(mk(ExprKind::Not, var(output_flag(ch)))));
  }

  // [ io1 -> P1 [] ... [] default -> Q ]: raise our input-readiness flags,
  // wait until some partner is ready (with a default branch: check once,
  // immediately), then commit to the least-index ready branch.
  TermPtr ext_choice_seq(const std::vector<IoBranch> &branches,
                         const TermPtr &def) {
    auto reset_inputs = [&](size_t keep, TermPtr tail) {
      for (size_t j = branches.size(); j-- > 0;) {
        if (j == keep || !branches[j].is_input) continue;
        TermPtr r = set_flag(input_flag(branches[j].channel), false);
        tail = tail ? seq(r, tail) : r;
      }
      return tail ? tail : skip();
    };

    auto commit = [&](size_t i) {
      const IoBranch &br = branches[i];
      TermPtr rest;
      if (br.is_input) {
        rest = seq(input_commit(br.channel, br.input_var),
                   rewrite(br.cont));
      } else {
        rest = seq(output_seq(br.channel, br.output_expr), rewrite(br.cont));
      }
      return reset_inputs(br.is_input ? i : branches.size(), rest);
    };

    TermPtr chain = commit(branches.size() - 1);
    for (size_t i = branches.size() - 1; i-- > 0;)
      chain = if_term(var(partner_flag(branches[i])), commit(i), chain);

    ExprPtr ready;
    for (const IoBranch &br : branches) {
      ExprPtr f = var(partner_flag(br));
      ready = ready ? mk(ExprKind::Or, ready, f) : f;
    }

    TermPtr body;
    if (def) {
      body = if_term(ready, chain,
                     reset_inputs(branches.size(), rewrite(def)));
    } else {
      body = seq(await_term(ready), chain);
    }

    TermPtr setup;
    for (const IoBranch &br : branches) {
      if (!br.is_input) continue;
      TermPtr s = set_flag(input_flag(br.channel), true);
      setup = setup ? seq(setup, s) : s;
    }
    return setup ? seq(setup, body) : body;
  }

  // ⟨odes ∧ b⟩ |>(d) { Q }: run with a fresh clock until b fails or the
  // clock passes d, then dispatch on whether the boundary was left
  TermPtr timeout_seq(const std::vector<Ode> &odes, const ExprPtr &b,
                      const ExprPtr &d, const TermPtr &q) {
    std::string t = fresh("t");
    std::vector<Ode> odes2 = odes;
    odes2.push_back({t, num(1)});
    ExprPtr b2 = mk(ExprKind::And, b, mk(ExprKind::Le, var(t), d));
    ExprPtr still_inside = nnf(mk(ExprKind::Not, closure(nnf(b, true))));
    return seq(assign({t}, {num(0)}),
               seq(evolve(std::move(odes2), b2),
                   if_term(still_inside, rewrite(q), skip())));
  }

  TermPtr interrupt_seq(const std::vector<Ode> &odes, const ExprPtr &b,
                        const std::vector<IoBranch> &branches) {
    ExprPtr quiet;
    for (const IoBranch &br : branches) {
      ExprPtr f = mk(ExprKind::Not, var(partner_flag(br)));
      quiet = quiet ? mk(ExprKind::And, quiet, f) : f;
    }
    TermPtr io = ext_choice_seq(branches, nullptr);
    return seq(evolve(odes, mk(ExprKind::And, b, quiet)),
               if_term(quiet, skip(), io));
  }

  TermPtr rewrite(const TermPtr &p) {
    switch (p->kind) {
      case TermKind::Skip:
      case TermKind::Terminated:
      case TermKind::Assign:
      case TermKind::Await:
      case TermKind::Evolve:
      case TermKind::RecVar:
        return p;
      case TermKind::Wait:
        return timeout_seq({}, boolc(true), p->duration, skip());
      case TermKind::Input:
        return input_seq(p->channel, p->comm_var);
      case TermKind::Output:
        return output_seq(p->channel, p->comm_expr);
      case TermKind::ExtChoice:
        return ext_choice_seq(p->branches, p->default_branch);
      case TermKind::EvolveTimeout:
        return timeout_seq(p->odes, p->cond, p->duration, p->a);
      case TermKind::EvolveInterrupt:
        return interrupt_seq(p->odes, p->cond, p->branches);
      case TermKind::Seq:
        return seq(rewrite(p->a), rewrite(p->b));
      case TermKind::Par:
        return par(rewrite(p->a), rewrite(p->b));
      case TermKind::If:
        return if_term(p->cond, rewrite(p->a), rewrite(p->b));
      case TermKind::IntChoice:
        return int_choice(rewrite(p->a), rewrite(p->b));
      case TermKind::While: {
        std::string x = fresh("X");
        return mu(x, if_term(p->cond, seq(rewrite(p->a), rec_var(x)), skip()));
      }
      case TermKind::Star: {
        std::string x = fresh("X");
        return mu(x, int_choice(skip(), seq(rewrite(p->a), rec_var(x))));
      }
      case TermKind::Mu:
        return mu(p->rec_var, rewrite(p->a));
    }
    throw std::logic_error("bad term kind");
  }
};

}  // namespace

TermPtr desugar(const TermPtr &p) {
  Desugarer d;
  for (auto &[v, k] : all_vars(p)) d.used.insert(v);
  return d.rewrite(p);
}

namespace {

struct Checker {
  std::vector<std::string> out;
  std::set<std::string> bound;

  void report(const std::string &msg) {
    if (std::find(out.begin(), out.end(), msg) == out.end()) out.push_back(msg);
  }

  bool has_free(const TermPtr &t, const std::string &x) {
    return free_rec_vars(t).count(x) != 0;
  }

  void check_no_par(const TermPtr &t, const std::string &x) {
    if (!t || !has_free(t, x)) return;
    if (t->kind == TermKind::Par)
      report("recursion variable " + x + " occurs under ||");
    for (const IoBranch &br : t->branches) check_no_par(br.cont, x);
    check_no_par(t->default_branch, x);
    check_no_par(t->a, x);
    check_no_par(t->b, x);
  }

  // guardedness of x in a mu-body: every occurrence of x must come after a
  // statement, so unfolding consumes time
  bool guarded(const TermPtr &t, const std::string &x) {
    if (!has_free(t, x)) return true;
    switch (t->kind) {
      case TermKind::RecVar:
        return false;  // bare occurrence
      case TermKind::Seq:
        // first component guarded (an x-free head statement guards the rest)
        return guarded(t->a, x);
      case TermKind::If:
      case TermKind::IntChoice:
        return guarded(t->a, x) && guarded(t->b, x);
      case TermKind::Mu:
        return guarded(t->a, x);
      case TermKind::Par:
        return false;  // reported separately by check_no_par
      case TermKind::ExtChoice:
        // the communication guards each branch continuation; the default
        // branch runs immediately, so it must be guarded itself
        return t->default_branch ? guarded(t->default_branch, x) : true;
      case TermKind::EvolveTimeout:
      case TermKind::EvolveInterrupt:
        return true;  // the evolution guards what follows
      case TermKind::While:
      case TermKind::Star:
        return guarded(t->a, x);
      default:
        return false;
    }
  }

  void check_dots_expr(const ExprPtr &e, const char *where) {
    if (!e) return;
    std::set<std::string> vars;
    collect_vars(e, vars);
    for (const std::string &v : vars)
      if (is_dotted(v))
        report("dotted variable " + v + " used in " + where);
  }

  void visit(const TermPtr &t) {
    if (!t) return;
    switch (t->kind) {
      case TermKind::Assign:
        for (const std::string &x : t->targets)
          if (is_dotted(x)) report("dotted variable " + x + " assigned");
        for (const ExprPtr &e : t->exprs) check_dots_expr(e, "an assignment");
        break;
      case TermKind::Wait:
        check_dots_expr(t->duration, "a duration");
        break;
      case TermKind::Await:
      case TermKind::If:
      case TermKind::While:
        check_dots_expr(t->cond, "a condition");
        break;
      case TermKind::Output:
        check_dots_expr(t->comm_expr, "a message");
        break;
      case TermKind::Evolve:
      case TermKind::EvolveTimeout:
      case TermKind::EvolveInterrupt:
        check_dots_expr(t->cond, "a condition");
        if (t->kind == TermKind::EvolveTimeout)
          check_dots_expr(t->duration, "a duration");
        break;
      case TermKind::Par: {
        VarSet va = controlled_vars(t->a), vb = controlled_vars(t->b);
        for (auto &[v, k] : va)
          if (vb.count(v))
            report("controlled variable " + v + " shared across ||");
        break;
      }
      case TermKind::Mu: {
        if (!guarded(t->a, t->rec_var))
          report("recursion variable " + t->rec_var + " is not guarded");
        check_no_par(t->a, t->rec_var);
        bool shadowed = bound.count(t->rec_var) != 0;
        bound.insert(t->rec_var);
        visit(t->a);
        if (!shadowed) bound.erase(t->rec_var);
        return;
      }
      case TermKind::RecVar:
        if (!bound.count(t->rec_var))
          report("unbound recursion variable " + t->rec_var);
        break;
      default:
        break;
    }
    for (const IoBranch &br : t->branches) {
      if (!br.is_input) check_dots_expr(br.output_expr, "a message");
      visit(br.cont);
    }
    visit(t->default_branch);
    visit(t->a);
    visit(t->b);
  }
};

}  // namespace

WellFormednessReport check_wellformed(const TermPtr &p) {
  Checker c;
  c.visit(p);
  return {std::move(c.out)};
}

}  // namespace hcspdc
