#include "hcspdc/eval.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <tuple>

namespace hcspdc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

const char *kNames[] = {"false", "unknown", "true"};

/// Free names of a formula, used to decide whether a node's truth can
/// depend on the evaluator's current dynamic bindings.
struct FreeNames {
  std::set<std::string> fvars;    // formula variables
  std::set<std::string> rigids;   // rigid reals
  std::set<std::string> signals;  // state and temporal variables
};

void names_of_term(const DcTermPtr &t, FreeNames &out) {
  if (!t) return;
  if (t->kind == DcTermKind::RigidVar) out.rigids.insert(t->name);
  if (t->kind == DcTermKind::TempVar || t->kind == DcTermKind::TempVarPrimed)
    out.signals.insert(t->name);
  collect_state_vars(t->state, out.signals);
  names_of_term(t->a, out);
  names_of_term(t->b, out);
}

void names_of(const DcPtr &f, FreeNames &out) {
  if (!f) return;
  if (f->kind == DcKind::FormulaVar) out.fvars.insert(f->name);
  names_of_term(f->t1, out);
  names_of_term(f->t2, out);
  collect_state_vars(f->state, out.signals);
  if (f->kind == DcKind::TempProp) out.signals.insert(f->name);
  if (f->kind == DcKind::EvolvesBy) {
    out.signals.insert(f->name);
    out.signals.insert(f->dot);
  }
  if (f->kind == DcKind::ExistsSplit) {
    out.signals.insert(f->name);
    out.signals.insert(f->dot);
  }
  if (f->point_cond) collect_vars(f->point_cond, out.signals);
  names_of(f->a, out);
  names_of(f->b, out);
}

void len_consts_of(const DcPtr &f, std::set<double> &out) {
  if (!f) return;
  if (f->kind == DcKind::Cmp) {
    auto grab = [&](const DcTermPtr &l, const DcTermPtr &c) {
      if (l && c && l->kind == DcTermKind::Length &&
          c->kind == DcTermKind::Const && std::isfinite(c->value) &&
          c->value >= 0)
        out.insert(c->value);
    };
    grab(f->t1, f->t2);
    grab(f->t2, f->t1);
  }
  len_consts_of(f->a, out);
  len_consts_of(f->b, out);
}

/// ⌈S⌉: And(ℓ≠0, ∫S=ℓ) — recognized to restrict □(⌈S⌉⇒φ) to S-blocks.
StatePtr match_almost(const DcPtr &f) {
  if (!f || f->kind != DcKind::And) return nullptr;
  auto is_len_ne0 = [](const DcPtr &g) {
    return g->kind == DcKind::Cmp && g->cmp == CmpOp::Ne &&
           g->t1->kind == DcTermKind::Length &&
           g->t2->kind == DcTermKind::Const && g->t2->value == 0;
  };
  auto dur_of = [](const DcPtr &g) -> StatePtr {
    if (g->kind != DcKind::Cmp || g->cmp != CmpOp::Eq) return nullptr;
    if (g->t1->kind == DcTermKind::Duration &&
        g->t2->kind == DcTermKind::Length)
      return g->t1->state;
    if (g->t2->kind == DcTermKind::Duration &&
        g->t1->kind == DcTermKind::Length)
      return g->t2->state;
    return nullptr;
  };
  if (is_len_ne0(f->a)) return dur_of(f->b);
  if (is_len_ne0(f->b)) return dur_of(f->a);
  return nullptr;
}

/// x′ = x (or x′ ⇔ x for 0/1 signals): constancy atom under □.
const std::string *match_const_atom(const DcPtr &f) {
  if (!f || f->kind != DcKind::Cmp || f->cmp != CmpOp::Eq) return nullptr;
  if (f->t1->kind == DcTermKind::TempVarPrimed &&
      f->t2->kind == DcTermKind::TempVar && f->t1->name == f->t2->name)
    return &f->t1->name;
  return nullptr;
}

/// ∀z ¬(x′=z ⌢ x≠z): single-valuedness of the recorded right values.
const std::string *match_loc_forall(const DcFormula &f) {
  if (f.kind != DcKind::Forall) return nullptr;
  const DcPtr &n = f.a;
  if (!n || n->kind != DcKind::Not || n->a->kind != DcKind::Chop)
    return nullptr;
  const DcPtr &c1 = n->a->a, &c2 = n->a->b;
  if (c1->kind != DcKind::Cmp || c1->cmp != CmpOp::Eq) return nullptr;
  if (c2->kind != DcKind::Cmp || c2->cmp != CmpOp::Ne) return nullptr;
  if (c1->t1->kind != DcTermKind::TempVarPrimed ||
      c1->t2->kind != DcTermKind::RigidVar || c1->t2->name != f.name)
    return nullptr;
  if (c2->t1->kind != DcTermKind::TempVar ||
      c2->t2->kind != DcTermKind::RigidVar || c2->t2->name != f.name)
    return nullptr;
  if (c1->t1->name != c2->t1->name) return nullptr;
  return &c1->t1->name;
}

/// ∀z (□(v ≤ z) ⇒ ψ) or ∀z (□(v ≥ z) ⇒ ψ): monotone bound, instantiated
/// at the extremal value of v over the interval.
struct BoundPattern {
  std::string var;
  bool upper = true;  // □(v ≤ z) ⇒ ψ, else □(v ≥ z) ⇒ ψ
  DcPtr body;
};

bool match_bound_forall(const DcFormula &f, BoundPattern &out) {
  if (f.kind != DcKind::Forall || !f.a || f.a->kind != DcKind::Imp)
    return false;
  const DcPtr &hyp = f.a->a;
  if (hyp->kind != DcKind::Box || hyp->a->kind != DcKind::Cmp) return false;
  const DcPtr &c = hyp->a;
  if ((c->cmp != CmpOp::Le && c->cmp != CmpOp::Ge)) return false;
  if (c->t1->kind != DcTermKind::TempVar &&
      c->t1->kind != DcTermKind::TempVarPrimed)
    return false;
  if (c->t2->kind != DcTermKind::RigidVar || c->t2->name != f.name)
    return false;
  out.var = c->t1->name;
  out.upper = c->cmp == CmpOp::Le;
  out.body = f.a->b;
  return true;
}

/// Boolean condition evaluated with slack `tol` on comparisons.
bool eval_bool_tol(const ExprPtr &e, const Valuation &v, double tol) {
  switch (e->kind) {
    case ExprKind::BoolConst:
      return e->value != 0.0;
    case ExprKind::Var: {
      auto it = v.find(e->name);
      if (it == v.end())
        throw std::runtime_error("unknown variable: " + e->name);
      return it->second != 0.0;
    }
    case ExprKind::Not:
      return !eval_bool_tol(e->a, v, tol);
    case ExprKind::And:
      return eval_bool_tol(e->a, v, tol) && eval_bool_tol(e->b, v, tol);
    case ExprKind::Or:
      return eval_bool_tol(e->a, v, tol) || eval_bool_tol(e->b, v, tol);
    default: {
      double a = eval_expr(e->a, v), b = eval_expr(e->b, v);
      switch (e->kind) {
        case ExprKind::Lt:
        case ExprKind::Le:
          return a <= b + tol;
        case ExprKind::Gt:
        case ExprKind::Ge:
          return a >= b - tol;
        case ExprKind::Eq:
          return a == b || std::abs(a - b) <= tol;
        case ExprKind::Ne:
          return !(a == b || std::abs(a - b) <= tol);
        default:
          throw std::runtime_error("not a boolean expression: " +
                                   print_expr(e));
      }
    }
  }
}

TV cmp_tv(CmpOp op, double a, double b, double tol) {
  if (std::isnan(a) || std::isnan(b)) return TV::Unknown;
  bool eq = a == b || std::abs(a - b) <= tol;
  switch (op) {
    case CmpOp::Eq:
      return tv_of(eq);
    case CmpOp::Ne:
      return tv_of(!eq);
    case CmpOp::Lt:
      return tv_of(a < b + tol);
    case CmpOp::Le:
      return tv_of(a <= b + tol);
    case CmpOp::Gt:
      return tv_of(a > b - tol);
    case CmpOp::Ge:
      return tv_of(a >= b - tol);
  }
  return TV::Unknown;
}

struct IntervalSet {
  std::vector<std::pair<double, double>> items;
  bool contains(double lo, double hi, double tol) const {
    for (auto &[a, b] : items) {
      bool lo_ok = a == lo || std::abs(a - lo) <= tol;
      bool hi_ok = b == hi || std::abs(b - hi) <= tol ||
                   (std::isinf(b) && std::isinf(hi));
      if (lo_ok && hi_ok) return true;
    }
    return false;
  }
};

class Evaluator {
 public:
  Evaluator(const Trajectory &tr, const EvalConfig &cfg) : tr_(tr), cfg_(cfg) {
    tr_.validate();
  }

  TV eval(const DcPtr &f, double lo, double hi);
  double term(const DcTermPtr &t, double lo, double hi);
  std::vector<double> candidates(const DcPtr &f, double lo, double hi);

 private:
  const Trajectory &tr_;
  EvalConfig cfg_;

  std::map<std::string, std::vector<char>> overlay_;
  std::map<std::string, double> rigid_env_;
  std::map<std::string, const IntervalSet *> fvar_env_;
  std::map<const DcFormula *, FreeNames> names_cache_;
  std::map<const DcFormula *, std::vector<double>> lens_cache_;
  std::map<const DcFormula *, DcPtr> star_as_mu_;
  std::map<const DcFormula *, DcPtr> box_of_;
  std::map<std::tuple<const DcFormula *, double, double>, TV> memo_;
  int fresh_ = 0;

  const FreeNames &free_names(const DcPtr &f) {
    auto it = names_cache_.find(f.get());
    if (it != names_cache_.end()) return it->second;
    FreeNames n;
    names_of(f, n);
    return names_cache_.emplace(f.get(), std::move(n)).first->second;
  }

  bool is_safe(const DcPtr &f) {
    const FreeNames &n = free_names(f);
    if (!fvar_env_.empty())
      for (auto &[k, v] : fvar_env_)
        if (n.fvars.count(k)) return false;
    if (!rigid_env_.empty())
      for (auto &[k, v] : rigid_env_)
        if (n.rigids.count(k)) return false;
    if (!overlay_.empty())
      for (auto &[k, v] : overlay_)
        if (n.signals.count(k)) return false;
    return true;
  }

  const std::vector<double> &len_consts(const DcPtr &f) {
    auto it = lens_cache_.find(f.get());
    if (it != lens_cache_.end()) return it->second;
    std::set<double> s;
    len_consts_of(f, s);
    return lens_cache_
        .emplace(f.get(), std::vector<double>(s.begin(), s.end()))
        .first->second;
  }

  bool seg_state(const StatePtr &s, size_t i) const {
    size_t j = std::min(i, tr_.segments.size() - 1);
    std::function<bool(const StatePtr &)> ev =
        [&](const StatePtr &e) -> bool {
      switch (e->kind) {
        case StateKind::Var: {
          auto ov = overlay_.find(e->name);
          if (ov != overlay_.end()) return ov->second[j] != 0;
          auto it = tr_.segments[j].bools.find(e->name);
          if (it == tr_.segments[j].bools.end())
            throw std::runtime_error("unknown state variable: " + e->name);
          return it->second;
        }
        case StateKind::Lit:
          return e->value;
        case StateKind::Not:
          return !ev(e->a);
        case StateKind::And:
          return ev(e->a) && ev(e->b);
        case StateKind::Or:
          return ev(e->a) || ev(e->b);
        case StateKind::Imp:
          return !ev(e->a) || ev(e->b);
      }
      throw std::logic_error("bad state kind");
    };
    return ev(s);
  }

  double duration(const StatePtr &s, double lo, double hi) const {
    double total = 0;
    if (std::isinf(hi)) {
      if (!tr_.infinite_tail)
        throw std::runtime_error("infinite interval on a finite trajectory");
      if (seg_state(s, tr_.segments.size())) return kInf;
      hi = tr_.T;
      if (lo > hi) return 0;
    }
    if (hi > tr_.T && seg_state(s, tr_.segments.size()))
      total += hi - std::max(lo, tr_.T);
    for (size_t i = 0; i < tr_.segments.size(); ++i) {
      double a = std::max(lo, tr_.segments[i].t0);
      double b = std::min(hi, tr_.segments[i].t1);
      if (b > a && seg_state(s, i)) total += b - a;
    }
    return total;
  }

  double value_at(const std::string &x, double t) const {
    auto ov = overlay_.find(x);
    if (ov != overlay_.end()) {
      size_t i = std::isinf(t) || t >= tr_.T ? tr_.segments.size() - 1
                                             : tr_.segment_at(t);
      return ov->second[i] ? 1 : 0;
    }
    if (tr_.has_real(x)) return tr_.val(x, t);
    if (tr_.has_bool(x)) return tr_.bval(x, t) ? 1 : 0;
    throw std::runtime_error("unknown variable: " + x);
  }

  std::vector<double> sample_points(double lo, double hi) const;
  Valuation point_valuation(const ExprPtr &cond, double t) const;

  TV eval_raw(const DcPtr &f, double lo, double hi);
  TV eval_chop(const DcPtr &f, double lo, double hi);
  TV eval_box(const DcPtr &f, double lo, double hi);
  TV eval_box_prefix(const DcPtr &f, double lo, double hi);
  TV eval_box_point(const DcPtr &f, double lo, double hi);
  TV eval_diamond_lc(const DcPtr &f, double lo, double hi);
  TV eval_mu(const DcPtr &f, double lo, double hi);
  TV eval_forall(const DcPtr &f, double lo, double hi);
  TV eval_evolves(const DcPtr &f, double lo, double hi);
  TV eval_esplit(const DcPtr &f, double lo, double hi);
  bool real_locality(const std::string &x, double lo, double hi) const;
};

TV Evaluator::eval(const DcPtr &f, double lo, double hi) {
  bool safe = is_safe(f);
  std::tuple<const DcFormula *, double, double> key{f.get(), lo, hi};
  if (safe) {
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
  }
  TV r = eval_raw(f, lo, hi);
  if (safe) memo_.emplace(key, r);
  return r;
}

TV Evaluator::eval_raw(const DcPtr &f, double lo, double hi) {
  switch (f->kind) {
    case DcKind::Top:
      return TV::True;
    case DcKind::Bot:
      return TV::False;
    case DcKind::Cmp:
      return cmp_tv(f->cmp, term(f->t1, lo, hi), term(f->t2, lo, hi),
                    cfg_.tol);
    case DcKind::TempProp: {
      double t = f->primed ? hi : lo;
      return tv_of(tr_.bval(f->name, t));
    }
    case DcKind::Not:
      return tv_not(eval(f->a, lo, hi));
    case DcKind::And:
      return tv_and(eval(f->a, lo, hi), eval(f->b, lo, hi));
    case DcKind::Or:
      return tv_or(eval(f->a, lo, hi), eval(f->b, lo, hi));
    case DcKind::Imp:
      return tv_or(tv_not(eval(f->a, lo, hi)), eval(f->b, lo, hi));
    case DcKind::Chop:
      return eval_chop(f, lo, hi);
    case DcKind::Box:
      return eval_box(f, lo, hi);
    case DcKind::BoxPrefix:
      return eval_box_prefix(f, lo, hi);
    case DcKind::BoxPoint:
      return eval_box_point(f, lo, hi);
    case DcKind::DiamondLC:
      return eval_diamond_lc(f, lo, hi);
    case DcKind::Star: {
      auto it = star_as_mu_.find(f.get());
      if (it == star_as_mu_.end()) {
        std::string x = "%star" + std::to_string(fresh_++);
        DcPtr mu = dc_mu(x, dc_or(len_eq(0), dc_chop(f->a, fvar(x))));
        it = star_as_mu_.emplace(f.get(), mu).first;
      }
      return eval(it->second, lo, hi);
    }
    case DcKind::Mu:
      return eval_mu(f, lo, hi);
    case DcKind::FormulaVar: {
      auto it = fvar_env_.find(f->name);
      if (it == fvar_env_.end())
        throw std::runtime_error("unbound formula variable: " + f->name);
      return tv_of(it->second->contains(lo, hi, cfg_.tol));
    }
    case DcKind::Forall:
      return eval_forall(f, lo, hi);
    case DcKind::EvolvesBy:
      return eval_evolves(f, lo, hi);
    case DcKind::ExistsSplit:
      return eval_esplit(f, lo, hi);
  }
  throw std::logic_error("bad formula kind");
}

double Evaluator::term(const DcTermPtr &t, double lo, double hi) {
  switch (t->kind) {
    case DcTermKind::Length:
      return hi - lo;
    case DcTermKind::Duration:
      return duration(t->state, lo, hi);
    case DcTermKind::TempVar:
      return value_at(t->name, lo);
    case DcTermKind::TempVarPrimed:
      return value_at(t->name, hi);
    case DcTermKind::RigidVar: {
      auto it = rigid_env_.find(t->name);
      if (it == rigid_env_.end())
        throw std::runtime_error("unbound rigid variable: " + t->name);
      return it->second;
    }
    case DcTermKind::Const:
      return t->value;
    case DcTermKind::Add:
      return term(t->a, lo, hi) + term(t->b, lo, hi);
    case DcTermKind::Sub:
      return term(t->a, lo, hi) - term(t->b, lo, hi);
    case DcTermKind::Mul:
      return term(t->a, lo, hi) * term(t->b, lo, hi);
    case DcTermKind::Div: {
      double d = term(t->b, lo, hi);
      if (std::abs(d) < 1e-300)
        throw std::runtime_error("division by zero in interval term");
      return term(t->a, lo, hi) / d;
    }
  }
  throw std::logic_error("bad term kind");
}

std::vector<double> Evaluator::candidates(const DcPtr &f, double lo,
                                          double hi) {
  double hiF = std::max(lo, std::min(hi, tr_.T));
  std::vector<double> pts{lo, hiF};
  for (double t : tr_.breakpoints())
    if (t > lo && t < hiF) pts.push_back(t);
  const std::vector<double> &lens = len_consts(f);
  double cap = std::isinf(hi) ? tr_.T : hi;
  double far_cap = cap;
  if (std::isinf(hi)) {
    // beyond-horizon witnesses for the constant tail
    pts.push_back(tr_.T + 1);
    for (double c : lens)
      if (c > cfg_.tol) pts.push_back(tr_.T + c);
    far_cap = tr_.T + 1;
    for (double c : lens) far_cap = std::max(far_cap, tr_.T + c);
  }
  for (double c : lens) {
    if (lo + c <= far_cap + cfg_.tol) pts.push_back(lo + c);
    if (std::isfinite(hi) && hi - c >= lo - cfg_.tol)
      pts.push_back(std::max(lo, hi - c));
  }
  if (cfg_.grid > 0 && hiF > lo)
    for (int i = 1; i < cfg_.grid; ++i)
      pts.push_back(lo + (hiF - lo) * i / cfg_.grid);
  // closure under +c so that iterated chops land on the lattice
  std::vector<double> positive;
  for (double c : lens)
    if (c > cfg_.tol) positive.push_back(c);
  if (!positive.empty()) {
    size_t head = 0;
    while (head < pts.size() && pts.size() < 2048) {
      double p = pts[head++];
      for (double c : positive) {
        double q = p + c;
        if (q > far_cap + cfg_.tol) continue;
        bool seen = false;
        for (double r : pts)
          if (std::abs(r - q) <= 1e-12) {
            seen = true;
            break;
          }
        if (!seen) pts.push_back(q);
      }
    }
  }
  std::sort(pts.begin(), pts.end());
  std::vector<double> out;
  for (double p : pts) {
    if (p < lo || p > far_cap + cfg_.tol) continue;
    if (out.empty() || p - out.back() > 1e-12) out.push_back(p);
  }
  return out;
}

std::vector<double> Evaluator::sample_points(double lo, double hi) const {
  double hiF = std::max(lo, std::min(hi, tr_.T));
  std::vector<double> pts;
  for (const Segment &s : tr_.segments) {
    double a = std::max(lo, s.t0), b = std::min(hiF, s.t1);
    if (b < a) continue;
    pts.push_back(a);
    pts.push_back((a + b) / 2);
    pts.push_back(b);
    for (auto &[x, fn] : s.reals)
      if (fn.kind == RealFn::Samples)
        for (double t : fn.ts)
          if (t >= a && t <= b) pts.push_back(t);
  }
  if (std::isinf(hi) || hi > tr_.T) pts.push_back(tr_.T + 1);
  std::sort(pts.begin(), pts.end());
  std::vector<double> out;
  for (double p : pts)
    if (out.empty() || p - out.back() > 1e-12) out.push_back(p);
  return out;
}

Valuation Evaluator::point_valuation(const ExprPtr &cond, double t) const {
  std::set<std::string> vars;
  collect_vars(cond, vars);
  Valuation v;
  for (const std::string &x : vars) v[x] = value_at(x, t);
  return v;
}

TV Evaluator::eval_chop(const DcPtr &f, double lo, double hi) {
  TV best = TV::False;
  if (std::isinf(hi)) {
    best = eval(f->a, lo, kInf);
    if (best == TV::True) return TV::True;
  }
  for (double t : candidates(f, lo, hi)) {
    if (std::isfinite(hi) && t > hi + cfg_.tol) break;
    TV r1 = eval(f->a, lo, t);
    if (r1 == TV::False) continue;
    TV r2 = eval(f->b, t, hi);
    best = tv_or(best, tv_and(r1, r2));
    if (best == TV::True) return TV::True;
  }
  if (best == TV::False && cfg_.strict) return TV::Unknown;
  return best;
}

TV Evaluator::eval_box(const DcPtr &f, double lo, double hi) {
  const DcPtr &body = f->a;
  // □(⌈S⌉ ⇒ φ): only subintervals inside maximal S-blocks matter
  if (body->kind == DcKind::Imp) {
    if (StatePtr sp = match_almost(body->a)) {
      TV out = TV::True;
      double hiF = std::max(lo, std::min(hi, tr_.T));
      size_t n = tr_.segments.size();
      size_t i = 0;
      while (i < n) {
        double a = std::max(lo, tr_.segments[i].t0);
        double b = std::min(hiF, tr_.segments[i].t1);
        if (b <= a || !seg_state(sp, i)) {
          ++i;
          continue;
        }
        size_t j = i;
        double blk_hi = b;
        while (j + 1 < n && seg_state(sp, j + 1) &&
               tr_.segments[j + 1].t0 < hiF) {
          ++j;
          blk_hi = std::min(hiF, tr_.segments[j].t1);
        }
        double blk_hi2 = blk_hi;
        if (std::isinf(hi) && j == n - 1 && seg_state(sp, n)) blk_hi2 = kInf;
        // the wrapper must outlive the evaluator: memo entries are keyed
        // by node address, so a freed node's address must not be recycled
        auto it = box_of_.find(body->b.get());
        if (it == box_of_.end())
          it = box_of_.emplace(body->b.get(), dc_box(body->b)).first;
        const DcPtr &inner = it->second;
        TV r = eval(inner, a, blk_hi2);
        if (r == TV::False) return TV::False;
        out = tv_and(out, r);
        i = j + 1;
      }
      return out;
    }
  }
  // □(x′ = x): constancy, checked at the sample points
  if (const std::string *x = match_const_atom(body)) {
    std::vector<double> pts = sample_points(lo, hi);
    if (pts.empty()) return TV::True;
    double v0 = value_at(*x, pts.front());
    for (double t : pts)
      if (std::abs(value_at(*x, t) - v0) > cfg_.tol) return TV::False;
    if (std::isfinite(hi) && std::abs(value_at(*x, hi) - v0) > cfg_.tol)
      return TV::False;
    return TV::True;
  }
  // □(∀z ...): the locality pattern is closed under subintervals
  if (body->kind == DcKind::Forall && match_loc_forall(*body))
    return eval(body, lo, hi);
  std::vector<double> pts = candidates(f, lo, hi);
  TV out = TV::True;
  for (size_t i = 0; i < pts.size(); ++i) {
    for (size_t j = i; j < pts.size(); ++j) {
      if (std::isfinite(hi) && pts[j] > hi + cfg_.tol) break;
      TV r = eval(body, pts[i], pts[j]);
      if (r == TV::False) return TV::False;
      out = tv_and(out, r);
    }
    if (std::isinf(hi)) {
      TV r = eval(body, pts[i], kInf);
      if (r == TV::False) return TV::False;
      out = tv_and(out, r);
    }
  }
  return out;
}

TV Evaluator::eval_box_prefix(const DcPtr &f, double lo, double hi) {
  TV out = TV::True;
  for (double t : candidates(f, lo, hi)) {
    if (std::isfinite(hi) && t >= hi) break;  // proper prefixes only
    TV r = eval(f->a, lo, t);
    if (r == TV::False) return TV::False;
    out = tv_and(out, r);
  }
  return out;
}

TV Evaluator::eval_box_point(const DcPtr &f, double lo, double hi) {
  double slack = std::max(cfg_.tol, cfg_.ode_tol);
  for (double t : sample_points(lo, hi)) {
    if (std::isfinite(hi) && t >= hi) continue;  // max of σ is exempt
    if (!eval_bool_tol(f->point_cond, point_valuation(f->point_cond, t),
                       slack))
      return TV::False;
  }
  return TV::True;
}

TV Evaluator::eval_diamond_lc(const DcPtr &f, double lo, double hi) {
  (void)hi;  // expansions may extend past the current interval
  TV best = TV::False;
  for (double t : candidates(f, lo, kInf)) {
    TV r = eval(f->a, lo, t);
    best = tv_or(best, r);
    if (best == TV::True) return TV::True;
  }
  if (tr_.infinite_tail) {
    best = tv_or(best, eval(f->a, lo, kInf));
    if (best == TV::True) return TV::True;
  }
  if (best == TV::False && cfg_.strict) return TV::Unknown;
  return best;
}

TV Evaluator::eval_mu(const DcPtr &f, double lo, double hi) {
  std::vector<double> pts = candidates(f, lo, hi);
  struct Item {
    double a, b;
  };
  std::vector<Item> intervals;
  for (size_t i = 0; i < pts.size(); ++i) {
    for (size_t j = i; j < pts.size(); ++j)
      intervals.push_back({pts[i], pts[j]});
    if (std::isinf(hi)) intervals.push_back({pts[i], kInf});
  }
  std::sort(intervals.begin(), intervals.end(),
            [](const Item &x, const Item &y) {
              double lx = x.b - x.a, ly = y.b - y.a;
              if (lx != ly) return lx < ly;
              return x.a < y.a;
            });
  IntervalSet set;
  const IntervalSet *saved = nullptr;
  bool had = false;
  if (auto it = fvar_env_.find(f->name); it != fvar_env_.end()) {
    saved = it->second;
    had = true;
  }
  fvar_env_[f->name] = &set;
  bool unknown_seen = false;
  bool converged = false;
  std::vector<char> in(intervals.size(), 0);
  for (int sweep = 0; sweep < cfg_.mu_depth; ++sweep) {
    bool changed = false;
    for (size_t k = 0; k < intervals.size(); ++k) {
      if (in[k]) continue;
      TV r = eval(f->a, intervals[k].a, intervals[k].b);
      if (r == TV::True) {
        in[k] = 1;
        set.items.emplace_back(intervals[k].a, intervals[k].b);
        changed = true;
      } else if (r == TV::Unknown) {
        unknown_seen = true;
      }
    }
    if (!changed) {
      converged = true;
      break;
    }
  }
  if (had)
    fvar_env_[f->name] = saved;
  else
    fvar_env_.erase(f->name);
  if (set.contains(lo, hi, cfg_.tol)) return TV::True;
  if (!converged || unknown_seen || cfg_.strict) return TV::Unknown;
  return TV::False;
}

bool Evaluator::real_locality(const std::string &x, double lo,
                              double hi) const {
  double hiF = std::min(hi, tr_.T);
  for (size_t i = 0; i + 1 < tr_.segments.size(); ++i) {
    double t = tr_.segments[i].t1;
    if (t <= lo || t >= hiF) continue;
    auto e = tr_.segments[i].end.find(x);
    auto fn = tr_.segments[i + 1].reals.find(x);
    if (e == tr_.segments[i].end.end() ||
        fn == tr_.segments[i + 1].reals.end())
      throw std::runtime_error("unknown variable: " + x);
    double right = fn->second.at(t, t);
    if (std::abs(e->second - right) > cfg_.tol) return false;
  }
  return true;
}

TV Evaluator::eval_forall(const DcPtr &f, double lo, double hi) {
  if (const std::string *x = match_loc_forall(*f))
    return tv_of(real_locality(*x, lo, hi));
  BoundPattern bp;
  if (match_bound_forall(*f, bp)) {
    std::vector<double> pts = sample_points(lo, hi);
    if (std::isfinite(hi)) pts.push_back(std::min(hi, tr_.T));
    double m = bp.upper ? -kInf : kInf;
    for (double t : pts) {
      double v = value_at(bp.var, t);
      m = bp.upper ? std::max(m, v) : std::min(m, v);
    }
    double saved = 0;
    bool had = false;
    if (auto it = rigid_env_.find(f->name); it != rigid_env_.end()) {
      saved = it->second;
      had = true;
    }
    rigid_env_[f->name] = m;
    TV r = eval(bp.body, lo, hi);
    if (had)
      rigid_env_[f->name] = saved;
    else
      rigid_env_.erase(f->name);
    return r;
  }
  throw std::runtime_error("unsupported quantifier pattern: " + print_dc(f));
}

TV Evaluator::eval_evolves(const DcPtr &f, double lo, double hi) {
  const std::string &x = f->name, &xd = f->dot;
  double hiF = std::min(hi, tr_.T);
  if (std::isinf(hi)) {
    if (!tr_.infinite_tail)
      throw std::runtime_error("infinite interval on a finite trajectory");
    // on the constant tail x is frozen, so ẋ must be negligible unless N
    if (!seg_state(f->state, tr_.segments.size()) &&
        std::abs(value_at(xd, tr_.T)) > cfg_.ode_tol)
      return TV::False;
  }
  if (hiF <= lo) return TV::True;
  // checkpoints: segment boundaries plus every sample time of x and ẋ
  std::vector<double> cps{lo, hiF};
  for (const Segment &s : tr_.segments) {
    for (double t : {s.t0, s.t1})
      if (t > lo && t < hiF) cps.push_back(t);
    for (const std::string &v : {x, xd}) {
      auto it = s.reals.find(v);
      if (it != s.reals.end() && it->second.kind == RealFn::Samples)
        for (double t : it->second.ts)
          if (t > lo && t < hiF) cps.push_back(t);
    }
  }
  std::sort(cps.begin(), cps.end());
  cps.erase(std::unique(cps.begin(), cps.end()), cps.end());
  double integral = 0;
  double dmin = value_at(x, lo), dmax = dmin;
  for (size_t k = 1; k < cps.size(); ++k) {
    double a = cps[k - 1], b = cps[k];
    size_t i = tr_.segment_at((a + b) / 2);
    if (!seg_state(f->state, i)) {
      auto it = tr_.segments[i].reals.find(xd);
      if (it == tr_.segments[i].reals.end())
        throw std::runtime_error("unknown variable: " + xd);
      const RealFn &fn = it->second;
      switch (fn.kind) {
        case RealFn::Const:
          integral += fn.c0 * (b - a);
          break;
        case RealFn::Affine:
          integral +=
              (fn.at(a, tr_.segments[i].t0) + fn.at(b, tr_.segments[i].t0)) /
              2 * (b - a);
          break;
        case RealFn::Samples: {
          // trapezoid over the sample grid clipped to [a, b]
          double prev_t = a, prev_v = fn.at(a, tr_.segments[i].t0);
          for (size_t s2 = 0; s2 < fn.ts.size(); ++s2) {
            double t = fn.ts[s2];
            if (t <= a || t >= b) continue;
            integral += (prev_v + fn.vs[s2]) / 2 * (t - prev_t);
            prev_t = t;
            prev_v = fn.vs[s2];
          }
          double vb = fn.at(b, tr_.segments[i].t0);
          integral += (prev_v + vb) / 2 * (b - prev_t);
          break;
        }
      }
    }
    double d = value_at(x, b) - integral;
    dmin = std::min(dmin, d);
    dmax = std::max(dmax, d);
  }
  return tv_of(dmax - dmin <= cfg_.ode_tol + cfg_.tol);
}

TV Evaluator::eval_esplit(const DcPtr &f, double lo, double hi) {
  const std::string &r1 = f->name, &r2 = f->dot;
  TV best = TV::False;
  if (tr_.has_bool(r1) && tr_.has_bool(r2) && !overlay_.count(r1) &&
      !overlay_.count(r2)) {
    best = eval(f->a, lo, hi);  // the recorded signals as witnesses
    if (best == TV::True) return TV::True;
  }
  // enumerate block-aligned splits of the maximal runs of the split state
  double hiF = std::max(lo, std::min(hi, tr_.T));
  size_t n = tr_.segments.size();
  std::vector<std::pair<size_t, size_t>> units;  // [first, last] seg indices
  size_t i = 0;
  while (i < n) {
    double a = std::max(lo, tr_.segments[i].t0);
    double b = std::min(hiF, tr_.segments[i].t1);
    if (b <= a || !seg_state(f->state, i)) {
      ++i;
      continue;
    }
    size_t j = i;
    while (j + 1 < n && seg_state(f->state, j + 1) &&
           tr_.segments[j + 1].t0 < hiF)
      ++j;
    units.emplace_back(i, j);
    i = j + 1;
  }
  if ((int)units.size() > cfg_.split_budget)
    return best == TV::True ? TV::True : TV::Unknown;
  std::vector<char> v1(n, 0), v2(n, 0);
  for (uint64_t mask = 0; mask < (uint64_t(1) << units.size()); ++mask) {
    std::fill(v1.begin(), v1.end(), 0);
    std::fill(v2.begin(), v2.end(), 0);
    for (size_t u = 0; u < units.size(); ++u)
      for (size_t k = units[u].first; k <= units[u].second; ++k)
        ((mask >> u) & 1 ? v1 : v2)[k] = 1;
    overlay_[r1] = v1;
    overlay_[r2] = v2;
    TV r = eval(f->a, lo, hi);
    overlay_.erase(r1);
    overlay_.erase(r2);
    best = tv_or(best, r);
    if (best == TV::True) return TV::True;
  }
  if (best == TV::False && cfg_.strict) return TV::Unknown;
  return best;
}

}  // namespace

const char *tv_name(TV v) { return kNames[(int)v]; }

TV eval_formula(const DcPtr &f, const Trajectory &tr, double lo, double hi,
                const EvalConfig &cfg) {
  if (lo < 0 || hi < lo)
    throw std::runtime_error("bad evaluation interval");
  if (std::isinf(hi) && !tr.infinite_tail)
    throw std::runtime_error("infinite interval on a finite trajectory");
  Evaluator ev(tr, cfg);
  return ev.eval(f, lo, hi);
}

double eval_term(const DcTermPtr &t, const Trajectory &tr, double lo,
                 double hi) {
  Evaluator ev(tr, EvalConfig{});
  double v = ev.term(t, lo, hi);
  if (std::isnan(v))
    throw std::runtime_error("indeterminate interval term");
  return v;
}

std::vector<double> chop_candidates(const DcPtr &f, const Trajectory &tr,
                                    double lo, double hi,
                                    const EvalConfig &cfg) {
  Evaluator ev(tr, cfg);
  return ev.candidates(f, lo, hi);
}

}  // namespace hcspdc
