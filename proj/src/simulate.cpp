#include "hcspdc/simulate.hpp"

#include <algorithm>
#include <memory>
#include <random>
#include <stdexcept>

#include "hcspdc/desugar.hpp"
#include "hcspdc/semantics.hpp"

namespace hcspdc {

bool Run::terminated() const {
  return final_term && final_term->kind == TermKind::Terminated;
}

namespace {

const ProcessTerm *head_of(const TermPtr &t) {
  return t->kind == TermKind::Seq ? head_of(t->a) : t.get();
}

TermPtr head_term(const TermPtr &t) {
  return t->kind == TermKind::Seq ? head_term(t->a) : t;
}

TermPtr replace_head(const TermPtr &t, TermPtr nw) {
  if (t->kind == TermKind::Seq) return seq(replace_head(t->a, nw), t->b);
  return nw;
}

/// Runtime tree of threads: leaves hold residual sequential terms; a
/// parallel node owns the two marker names of its operands and the
/// continuation that resumes once both finish.
struct PNode {
  bool is_par = false;
  std::string m1, m2;
  std::unique_ptr<PNode> l, r;
  TermPtr cont;  // parallel nodes only
  TermPtr leaf;  // leaves only
};

struct Front {
  PNode *node = nullptr;
  TermPtr term;  // head action: Assign, Await, Evolve or Terminated
  std::vector<std::string> marks;
};

class Simulator {
 public:
  Simulator(const TermPtr &p, const Valuation &init, const SimConfig &cfg)
      : cfg_(cfg), rng_(cfg.seed) {
    term_ = desugar(p);
    markers_ = par_markers(term_);
    kinds_ = all_vars(term_);
    for (const auto &[x, k] : kinds_) {
      auto it = init.find(x);
      state_[x] = it == init.end() ? 0.0 : it->second;
    }
    for (const auto &[x, v] : init)
      if (!state_.count(x)) {
        state_[x] = v;
        kinds_[x] = VarKind::Real;
      }
    marker_names_ = {"R", "N"};
    for (const auto &[node, pr] : markers_) {
      marker_names_.insert(pr.first);
      marker_names_.insert(pr.second);
    }
  }

  Run run() {
    PNode root;
    root.leaf = term_;
    bool done = false;
    for (;;) {
      norm_tree(root);
      if (!root.is_par && root.leaf->kind == TermKind::Terminated) {
        done = true;
        break;
      }
      if (t_ >= cfg_.horizon - 1e-12) break;
      std::vector<Front> fronts;
      collect_fronts(&root, {"R", "N"}, fronts);
      std::vector<Front> assigns, evolves, awaits;
      for (const Front &f : fronts) {
        switch (f.term->kind) {
          case TermKind::Assign: assigns.push_back(f); break;
          case TermKind::Evolve: evolves.push_back(f); break;
          case TermKind::Await: awaits.push_back(f); break;
          default: break;
        }
      }
      if (!assigns.empty()) {
        exec_assign(assigns[pick(assigns.size())]);
        continue;
      }
      if (evolves.empty()) {
        // every live thread waits on a condition no thread can change
        event("all threads blocked");
        if (cfg_.horizon > t_) push_const_segment(t_, cfg_.horizon);
        t_ = cfg_.horizon;
        break;
      }
      continuous_phase(evolves, awaits);
    }
    if (done) {
      // closing point segment so the final (right) values are recorded
      push_const_segment(t_, t_);
    } else {
      // frozen-world tail: one unit of N (computation elsewhere, R never),
      // extended to infinity by the constant-tail convention, so cut-off
      // evolutions/awaits still satisfy their infinite-interval semantics
      Segment s;
      s.t0 = t_;
      s.t1 = t_ + 1;
      s.bools = bool_map({"N"});
      for (const auto &[x, k] : kinds_)
        if (k == VarKind::Real) {
          s.reals[x] = RealFn::constant(state_.at(x));
          s.end[x] = state_.at(x);
        }
      segments_.push_back(std::move(s));
      t_ += 1;
    }
    Run out;
    out.trajectory.segments = std::move(segments_);
    out.trajectory.T = t_;
    out.trajectory.infinite_tail = !done;
    out.trajectory.validate();
    out.final_term = residual(root);
    out.events = std::move(events_);
    return out;
  }

 private:
  SimConfig cfg_;
  std::mt19937_64 rng_;
  TermPtr term_;
  ParMarkers markers_;
  VarSet kinds_;
  Valuation state_;
  std::set<std::string> marker_names_;
  std::vector<Segment> segments_;
  std::vector<SimEvent> events_;
  double t_ = 0;
  long steps_ = 0;

  void tick() {
    if (++steps_ > cfg_.max_steps)
      throw std::runtime_error(
          "simulate: step budget exhausted (Zeno or diverging recursion)");
  }

  void event(const std::string &what) { events_.push_back({t_, what}); }

  size_t pick(size_t n) {
    if (n <= 1 || cfg_.scheduler == SimConfig::LeastIndex) return 0;
    return std::uniform_int_distribution<size_t>(0, n - 1)(rng_);
  }

  bool pick_left() {
    if (cfg_.scheduler == SimConfig::LeastIndex) return true;
    return std::uniform_int_distribution<int>(0, 1)(rng_) == 0;
  }

  bool await_enabled(const ExprPtr &cond, const Valuation &s) const {
    return eval_bool(closure(nnf(cond)), s);
  }

  /// Zero-time structural steps at the head position.
  TermPtr normalize(TermPtr p) {
    for (;;) {
      tick();
      switch (p->kind) {
        case TermKind::Skip:
          p = terminated();
          break;
        case TermKind::Seq: {
          TermPtr a = normalize(p->a);
          if (a->kind == TermKind::Terminated) {
            p = p->b;
            break;
          }
          return a == p->a ? p : seq(a, p->b);
        }
        case TermKind::If:
          event(std::string("branch ") +
                (eval_bool(p->cond, state_) ? "then" : "else"));
          p = eval_bool(p->cond, state_) ? p->a : p->b;
          break;
        case TermKind::IntChoice:
          p = pick_left() ? p->a : p->b;
          break;
        case TermKind::While:
          p = eval_bool(p->cond, state_) ? seq(p->a, p) : terminated();
          break;
        case TermKind::Star:
          p = pick_left() ? terminated() : seq(p->a, p);
          break;
        case TermKind::Mu:
          p = subst_term(p->a, p->rec_var, p);
          break;
        case TermKind::Await:
          if (!await_enabled(p->cond, state_)) return p;
          event("await passed: " + print_expr(p->cond));
          p = terminated();
          break;
        case TermKind::Evolve:
          if (eval_bool(p->cond, state_)) return p;
          p = terminated();
          break;
        case TermKind::RecVar:
          throw std::runtime_error("simulate: unbound recursion variable " +
                                   p->rec_var);
        case TermKind::Terminated:
        case TermKind::Assign:
        case TermKind::Par:
          return p;
        default:
          throw std::runtime_error(
              "simulate: construct not in the core fragment: " +
              print_term(p));
      }
    }
  }

  void split_par(PNode &n) {
    TermPtr h = head_term(n.leaf);
    auto it = markers_.find(h.get());
    if (it == markers_.end())
      throw std::runtime_error("simulate: unregistered parallel node");
    n.cont = replace_head(n.leaf, terminated());
    n.m1 = it->second.first;
    n.m2 = it->second.second;
    n.l = std::make_unique<PNode>();
    n.l->leaf = h->a;
    n.r = std::make_unique<PNode>();
    n.r->leaf = h->b;
    n.leaf = nullptr;
    n.is_par = true;
  }

  void norm_tree(PNode &n) {
    if (n.is_par) {
      norm_tree(*n.l);
      norm_tree(*n.r);
      bool l_done = !n.l->is_par && n.l->leaf->kind == TermKind::Terminated;
      bool r_done = !n.r->is_par && n.r->leaf->kind == TermKind::Terminated;
      if (l_done && r_done) {
        n.is_par = false;
        n.l.reset();
        n.r.reset();
        n.leaf = n.cont;
        n.cont = nullptr;
        norm_tree(n);
      }
      return;
    }
    n.leaf = normalize(n.leaf);
    if (head_of(n.leaf)->kind == TermKind::Par) {
      split_par(n);
      norm_tree(n);
    }
  }

  void collect_fronts(PNode *n, std::vector<std::string> marks,
                      std::vector<Front> &out) {
    if (n->is_par) {
      auto ml = marks;
      ml.push_back(n->m1);
      collect_fronts(n->l.get(), std::move(ml), out);
      marks.push_back(n->m2);
      collect_fronts(n->r.get(), std::move(marks), out);
      return;
    }
    out.push_back({n, head_term(n->leaf), std::move(marks)});
  }

  TermPtr residual(const PNode &n) const {
    if (!n.is_par) return n.leaf;
    TermPtr p = par(residual(*n.l), residual(*n.r));
    return n.cont && n.cont->kind != TermKind::Terminated ? seq(p, n.cont)
                                                          : p;
  }

  std::map<std::string, bool> bool_map(
      const std::set<std::string> &active) const {
    std::map<std::string, bool> out;
    for (const std::string &m : marker_names_) out[m] = active.count(m) > 0;
    for (const auto &[x, k] : kinds_)
      if (k == VarKind::Boolean) out[x] = state_.at(x) != 0;
    return out;
  }

  void push_const_segment(double t0, double t1) {
    Segment s;
    s.t0 = t0;
    s.t1 = t1;
    s.bools = bool_map({});
    for (const auto &[x, k] : kinds_)
      if (k == VarKind::Real) {
        s.reals[x] = RealFn::constant(state_.at(x));
        s.end[x] = state_.at(x);
      }
    segments_.push_back(std::move(s));
  }

  void exec_assign(const Front &f) {
    tick();
    const ProcessTerm *a = f.term.get();
    Valuation nw;
    for (size_t i = 0; i < a->targets.size(); ++i)
      nw[a->targets[i]] = eval_expr(a->exprs[i], state_);
    Segment s;
    s.t0 = t_;
    s.t1 = t_ + cfg_.negligible_eps;
    s.bools = bool_map({f.marks.begin(), f.marks.end()});
    for (const auto &[x, k] : kinds_)
      if (k == VarKind::Real) {
        s.reals[x] = RealFn::constant(state_.at(x));
        auto it = nw.find(x);
        s.end[x] = it == nw.end() ? state_.at(x) : it->second;
      }
    segments_.push_back(std::move(s));
    event("assign " + print_term(f.term));
    for (const auto &[x, v] : nw) state_[x] = v;
    t_ += cfg_.negligible_eps;
    f.node->leaf = replace_head(f.node->leaf, terminated());
  }

  Valuation with_offsets(const Valuation &base, const std::vector<Ode> &odes,
                         const std::map<std::string, double> &k,
                         double f) const {
    Valuation r = base;
    for (const Ode &o : odes) r[o.var] = base.at(o.var) + f * k.at(o.var);
    return r;
  }

  std::map<std::string, double> deriv(const std::vector<Ode> &odes,
                                      const Valuation &s) const {
    std::map<std::string, double> out;
    for (const Ode &o : odes) out[o.var] = eval_expr(o.rhs, s);
    return out;
  }

  Valuation rk4_step(const Valuation &s, const std::vector<Ode> &odes,
                     double h) const {
    auto k1 = deriv(odes, s);
    auto k2 = deriv(odes, with_offsets(s, odes, k1, h / 2));
    auto k3 = deriv(odes, with_offsets(s, odes, k2, h / 2));
    auto k4 = deriv(odes, with_offsets(s, odes, k3, h));
    Valuation r = s;
    for (const Ode &o : odes)
      r[o.var] = s.at(o.var) + h / 6 *
                                   (k1.at(o.var) + 2 * k2.at(o.var) +
                                    2 * k3.at(o.var) + k4.at(o.var));
    for (const Ode &o : odes) r[dotted(o.var)] = eval_expr(o.rhs, r);
    return r;
  }

  void continuous_phase(const std::vector<Front> &evolves,
                        const std::vector<Front> &awaits) {
    std::vector<Ode> odes;
    for (const Front &f : evolves)
      odes.insert(odes.end(), f.term->odes.begin(), f.term->odes.end());

    // the derivatives jump to their new right-hand sides at phase entry;
    // the previous segment's recorded right values must agree
    for (const Ode &o : odes) {
      double d = eval_expr(o.rhs, state_);
      state_[dotted(o.var)] = d;
      if (!segments_.empty()) segments_.back().end[dotted(o.var)] = d;
    }

    auto fired = [&](const Valuation &s) -> const Front * {
      for (const Front &f : evolves)
        if (!eval_bool(f.term->cond, s)) return &f;
      for (const Front &f : awaits)
        if (await_enabled(f.term->cond, s)) return &f;
      return nullptr;
    };

    std::map<std::string, std::vector<double>> samples;
    std::vector<double> ts;
    auto record = [&](double tau) {
      ts.push_back(tau);
      for (const Ode &o : odes) {
        samples[o.var].push_back(state_.at(o.var));
        samples[dotted(o.var)].push_back(state_.at(dotted(o.var)));
      }
    };

    double tau = t_;
    record(tau);
    const Front *hit = nullptr;
    while (tau < cfg_.horizon - 1e-12) {
      tick();
      double h = std::min(cfg_.ode_step, cfg_.horizon - tau);
      Valuation next = rk4_step(state_, odes, h);
      if (fired(next)) {
        // bisect for the earliest firing time in (tau, tau+h]
        double lo = 0, hi = h;
        for (int i = 0; i < 200 && hi - lo > 1e-13; ++i) {
          double mid = (lo + hi) / 2;
          if (fired(rk4_step(state_, odes, mid)))
            hi = mid;
          else
            lo = mid;
        }
        Valuation at_hit = rk4_step(state_, odes, hi);
        hit = fired(at_hit);
        state_ = std::move(at_hit);
        tau += hi;
        record(tau);
        break;
      }
      state_ = std::move(next);
      tau += h;
      record(tau);
    }

    Segment s;
    s.t0 = t_;
    s.t1 = tau;
    s.bools = bool_map({});
    std::set<std::string> evolving;
    for (const Ode &o : odes) {
      evolving.insert(o.var);
      evolving.insert(dotted(o.var));
    }
    for (const auto &[x, k] : kinds_) {
      if (k != VarKind::Real) continue;
      if (evolving.count(x)) {
        RealFn fn;
        fn.kind = RealFn::Samples;
        fn.ts = ts;
        fn.vs = samples.at(x);
        s.reals[x] = std::move(fn);
      } else {
        s.reals[x] = RealFn::constant(state_.at(x));
      }
      s.end[x] = state_.at(x);
    }
    segments_.push_back(std::move(s));
    t_ = tau;
    if (hit) {
      if (hit->term->kind == TermKind::Evolve)
        event("evolution boundary: " + print_expr(hit->term->cond));
      else
        event("await enabled: " + print_expr(hit->term->cond));
    } else {
      event("horizon reached during evolution");
    }
  }
};

}  // namespace

Run simulate(const TermPtr &p, const Valuation &init, const SimConfig &cfg) {
  return Simulator(p, init, cfg).run();
}

}  // namespace hcspdc
