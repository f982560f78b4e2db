// Acceptance gate: one pass/fail line per criterion, nonzero exit on any
// failure.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "hcspdc/desugar.hpp"
#include "hcspdc/dc.hpp"
#include "hcspdc/eval.hpp"
#include "hcspdc/gnf.hpp"
#include "hcspdc/hoare.hpp"
#include "hcspdc/parser.hpp"
#include "hcspdc/semantics.hpp"
#include "hcspdc/simulate.hpp"

using namespace hcspdc;

namespace {

int failures = 0;

struct Criterion {
  const char *label;
  double limit_s;
  std::chrono::steady_clock::time_point start;
  std::vector<std::string> problems;

  explicit Criterion(const char *l, double limit)
      : label(l), limit_s(limit), start(std::chrono::steady_clock::now()) {}

  void expect(bool ok, const std::string &what) {
    if (!ok && problems.size() < 5) problems.push_back(what);
    if (!ok && problems.size() == 5) problems.push_back("...");
  }

  ~Criterion() {
    double s = std::chrono::duration<double>(
                   std::chrono::steady_clock::now() - start)
                   .count();
    bool ok = problems.empty() && s < limit_s;
    std::printf("%s %s (%.1fs / limit %.0fs)\n", ok ? "PASS" : "FAIL", label,
                s, limit_s);
    for (const std::string &p : problems) std::printf("       %s\n", p.c_str());
    if (!problems.empty() && s >= limit_s)
      std::printf("       over time limit\n");
    if (!ok) ++failures;
  }
};

struct Program {
  const char *src;
  Valuation init;
  double horizon = 10;
};

// ≥20 programs covering every core construct, the channel handshake and a
// sampled plant-controller loop (x follows u, u resampled to −x each unit)
const std::vector<Program> &corpus() {
  static const std::vector<Program> c = {
      {"skip", {}},
      {"eps", {}},
      {"x := 1", {}},
      {"x, y := y, x + 1", {{"x", 1}, {"y", 2}}},
      {"await x >= 1", {{"x", 0}}, 3},
      {"await x >= 0", {{"x", 0}}},
      {"< x_dot = 1 & x < 2 >", {{"x", 0}}},
      {"< x_dot = 0 - x & true >", {{"x", 1}}, 2},
      {"x := 1; y := x + 1", {}},
      {"x := 1 |~| x := 2", {}},
      {"if x < 0 then { x := 0 } else { y := 1 }", {{"x", -1}}},
      {"while x < 3 do { x := x + 1 }", {{"x", 0}}},
      {"(x := x + 1)*", {{"x", 0}}},
      {"mu X . { if x < 2 then { x := x + 1; X } else { skip } }",
       {{"x", 0}}},
      {"x := 1 || y := 2", {}},
      {"(a := 1 || b := 2) || c := 3", {}},
      {"c!5 || c?y", {}},
      {"(x := 1 |~| x := 2); (c!x || c?y)", {}},
      {"c!7 || [ c?u -> y := u [] d!x -> skip ]", {}},
      {"(< x_dot = 1 & x < 5 > |> [ c?u -> y := u ]) || c!2", {{"x", 0}}},
      {"wait 2", {}},
      {"< x_dot = 1 & x < 5 > |>(1) { y := 1 }", {{"x", 0}}},
      {"< x_dot = 1 & x < 1 >; < x_dot = 2 & x < 3 >", {{"x", 0}}},
      {"(await x >= 1; y := 3) || < x_dot = y & x < 2 >",
       {{"x", 0}, {"y", 1}}},
      {"while n < 3 do { u := 0 - x; c := 0;"
       " < x_dot = u, c_dot = 1 & c < 1 >; n := n + 1 }",
       {{"x", 1}}, 6},
  };
  return c;
}

void criterion1() {
  Criterion c("1 operational-denotational agreement (corpus x 10 seeds)",
              120);
  for (const Program &pr : corpus()) {
    TermPtr p = desugar(parse_process(pr.src));
    DcPtr f = compile_semantics(p);
    for (uint64_t seed = 0; seed < 10; ++seed) {
      SimConfig cfg;
      cfg.seed = seed;
      cfg.horizon = pr.horizon;
      Run r = simulate(p, pr.init, cfg);
      TV v = eval_formula(f, r.trajectory, 0, r.trajectory.end_time(),
                          EvalConfig{});
      c.expect(v == TV::True, std::string(pr.src) + " seed " +
                                  std::to_string(seed) + ": " + tv_name(v));
    }
  }
}

void criterion2() {
  Criterion c("2 semantics triples derived and checked (zero assumptions)",
              60);
  for (const Program &pr : corpus()) {
    TermPtr p = parse_process(pr.src);
    ProofNode n = derive_semantics_triple(p, controlled_vars(desugar(p)));
    ProofReport r = check_proof(n);
    c.expect(r.verdict == ProofReport::Verdict::Valid,
             std::string(pr.src) + ": " + r.failure);
    for (const ObligationReport &ob : r.obligations)
      c.expect(ob.status != ObStatus::Assumed,
               std::string(pr.src) + ": assumed obligation");
  }
}

// --- criterion 3: rule instances and mutations ------------------------------

const ProofNode *find_rule(const ProofNode &n, Rule r) {
  if (n.rule == r) return &n;
  for (const ProofNode &p : n.premises)
    if (const ProofNode *hit = find_rule(p, r)) return hit;
  return nullptr;
}

std::vector<Triple> prems(const ProofNode &n) {
  std::vector<Triple> out;
  for (const ProofNode &p : n.premises) out.push_back(p.conclusion);
  return out;
}

struct Instance {
  std::vector<Triple> premises;
  Triple conclusion;
};

TermPtr prim(int n) {
  int k = n % 5 + 1;
  switch (n % 6) {
    case 0: return assign({"x"}, {num(k)});
    case 1: return await_term(parse_expression("x >= " + std::to_string(k)));
    case 2:
      return parse_process("< x_dot = " + std::to_string(k) + " & x < " +
                           std::to_string(k + 1) + " >");
    case 3: return skip();
    case 4: return terminated();
    default: return assign({"x"}, {var("x") + num(k)});
  }
}

Instance from_derived(const TermPtr &p, Rule r) {
  ProofNode root = derive_semantics_triple(p, controlled_vars(desugar(p)));
  const ProofNode *hit = find_rule(root, r);
  if (!hit) throw std::runtime_error("rule not found in derivation");
  return {prems(*hit), hit->conclusion};
}

Instance make_instance(Rule r, int n) {
  std::string k = std::to_string(n % 5 + 1);
  std::string k2 = std::to_string(n % 4 + 2);
  switch (r) {
    case Rule::AxiomPrim: {
      TermPtr p = prim(n);
      VarSet v = controlled_vars(p);
      v.emplace("x", VarKind::Real);
      return {{}, semantics_axiom(p, v, n % 2 ? TripleMode::Diamond
                                              : TripleMode::Classic)};
    }
    case Rule::Seq:
      return from_derived(seq(prim(n), prim(n + 1)), Rule::Seq);
    case Rule::Choice:
      return from_derived(int_choice(prim(n), prim(n + 2)), Rule::Choice);
    case Rule::If:
      return from_derived(
          if_term(parse_expression("x < " + k), prim(n), prim(n + 3)),
          Rule::If);
    case Rule::While: {
      // manual classic instance following the loop schema
      ExprPtr b = parse_expression("x < " + k2);
      TermPtr body = prim(n);
      VarSet v = controlled_vars(body);
      v.emplace("x", VarKind::Real);
      Triple p = semantics_axiom(body, v);
      DcPtr bhat = formula_of_expr(b, false);
      DcPtr nbhat = formula_of_expr(nnf(b, true), false);
      DcPtr silent = almost0(snot(sv("R")));
      DcPtr post = dc_chop(dc_star(dc_chop(dc_and(bhat, p.post), silent)),
                           dc_and(nbhat, len_eq(0)));
      return {{p}, {dc_top(), while_term(b, body), post, v,
                    TripleMode::Classic}};
    }
    case Rule::Par:
      if (n % 3 == 2)
        return from_derived(parse_process("< x_dot = 1 & x < " + k +
                                          " > || < y_dot = 2 & y < " + k2 +
                                          " >"),
                            Rule::Par);
      return from_derived(
          par(assign({"x"}, {num(n % 5 + 1)}), assign({"y"}, {num(n % 4)})),
          Rule::Par);
    case Rule::N: {
      TermPtr p = prim(n);
      VarSet v = controlled_vars(p);
      v.emplace("x", VarKind::Real);
      return {{}, {dc_top(), p, dc_top(), v, TripleMode::Diamond}};
    }
    case Rule::K: {
      TermPtr p = prim(n);
      VarSet v = controlled_vars(p);
      v.emplace("x", VarKind::Real);
      ProofNode root = derive_any({dc_top(), p, dc_top(), v,
                                   TripleMode::Diamond},
                                  Strategy::Tautology);
      return {prems(root), root.conclusion};
    }
    case Rule::Mu:
      return from_derived(
          while_term(parse_expression("x < " + k2),
                     assign({"x"}, {var("x") + num(1)})),
          Rule::Mu);
    case Rule::ParEvolve: {
      TermPtr e1 = parse_process("< x_dot = " + k + " & x < 2 >");
      TermPtr e2 = parse_process("< y_dot = " + k2 + " & y < 3 >");
      TermPtr p1 = assign({"x"}, {num(0)}), p2 = assign({"y"}, {num(0)});
      std::vector<Ode> odes = e1->odes;
      odes.insert(odes.end(), e2->odes.begin(), e2->odes.end());
      TermPtr joint =
          evolve(std::move(odes), mk(ExprKind::And, e1->cond, e2->cond));
      VarSet v{{"x", VarKind::Real}, {"x_dot", VarKind::Real},
               {"y", VarKind::Real}, {"y_dot", VarKind::Real}};
      DcPtr pre = dc_top(), mid = dc_top(), post = dc_top();
      DcPtr b1 = formula_of_expr(e1->cond, false);
      DcPtr b2 = formula_of_expr(e2->cond, false);
      TripleMode m = TripleMode::Classic;
      return {{{pre, joint, mid, v, m},
               {dc_and(dc_and(mid, b1), dc_not(b2)), par(seq(e1, p1), p2),
                post, v, m},
               {dc_and(dc_and(mid, b2), dc_not(b1)), par(p1, seq(e2, p2)),
                post, v, m},
               {dc_and(dc_and(mid, dc_not(b1)), dc_not(b2)), par(p1, p2),
                post, v, m}},
              {pre, par(seq(e1, p1), seq(e2, p2)), post, v, m}};
    }
  }
  throw std::logic_error("unreachable");
}

/// a mutated instance counts as rejected when the schema match fails or,
/// failing that, when falsification refutes the conclusion's validity
bool rejected(Rule r, const Instance &inst, unsigned seed) {
  RuleMatch rm = apply_rule(r, inst.premises, inst.conclusion);
  if (!rm.ok) return true;
  FalsifyConfig cfg;
  cfg.seed = seed;
  Obligation ob{triple_validity(inst.conclusion), Strategy::Falsify, 400,
                ObStatus::Pending, nullptr};
  return discharge(ob, cfg).status == ObStatus::Failed;
}

std::vector<Instance> mutations(Rule r) {
  // the N mutations are caught by falsification, which needs a process
  // whose behaviour random trajectories can actually exhibit: skip
  Instance base = make_instance(r, r == Rule::N ? 3 : 0);
  std::vector<Instance> out;
  auto push = [&](std::function<void(Instance &)> f) {
    Instance m = base;
    f(m);
    out.push_back(std::move(m));
  };
  switch (r) {
    case Rule::AxiomPrim:
      push([](Instance &m) { m.conclusion.post = dc_top(); });
      push([](Instance &m) { m.conclusion.pre = len_eq(0); });
      push([](Instance &m) {  // dropped conjunct of the behaviour
        if (m.conclusion.post->kind == DcKind::And)
          m.conclusion.post = m.conclusion.post->a;
        else
          m.conclusion.post = dc_fin();
      });
      push([](Instance &m) { m.conclusion.proc = assign({"x"}, {num(99)}); });
      push([](Instance &m) { m.conclusion.vars = {}; });
      break;
    case Rule::Seq:
      push([](Instance &m) {  // dropped sync gap
        m.conclusion.post = dc_chop(m.premises[0].post, m.premises[1].post);
      });
      push([](Instance &m) { std::swap(m.premises[0], m.premises[1]); });
      push([](Instance &m) { m.conclusion.pre = len_eq(0); });
      push([](Instance &m) { m.premises[0].vars = {}; });
      push([](Instance &m) {  // reversed composition order
        m.conclusion.post =
            dc_chop(m.premises[1].post,
                    dc_chop(sync_gap_formula("N", "R"), m.premises[0].post));
      });
      break;
    case Rule::Choice:
      push([](Instance &m) { m.conclusion.pre = dc_top(); });
      push([](Instance &m) {
        m.conclusion.post = dc_and(m.premises[0].post, m.premises[1].post);
      });
      push([](Instance &m) { std::swap(m.premises[0], m.premises[1]); });
      push([](Instance &m) { m.premises[1].vars = {}; });
      push([](Instance &m) {
        m.conclusion.post = dc_or(m.premises[1].post, m.premises[0].post);
      });
      break;
    case Rule::If:
      push([](Instance &m) { std::swap(m.premises[0], m.premises[1]); });
      push([](Instance &m) { m.premises[0].pre = dc_top(); });
      push([](Instance &m) {
        m.premises[0].post = dc_and(m.premises[0].post, dc_fin());
      });
      push([](Instance &m) { m.premises[1].pre = m.premises[0].pre; });
      push([](Instance &m) { m.conclusion.pre = dc_fin(); });
      break;
    case Rule::While:
      push([](Instance &m) {
        m.conclusion.mode = m.premises[0].mode = TripleMode::Diamond;
      });
      push([](Instance &m) {  // no silent gap between rounds
        const DcPtr &g = m.premises[0].post;
        DcPtr bhat = formula_of_expr(m.conclusion.proc->cond, false);
        DcPtr nbhat =
            formula_of_expr(nnf(m.conclusion.proc->cond, true), false);
        m.conclusion.post = dc_chop(dc_star(dc_and(bhat, g)),
                                    dc_and(nbhat, len_eq(0)));
      });
      push([](Instance &m) {  // missing exit conjunct
        m.conclusion.post = dc_star(m.premises[0].post);
      });
      push([](Instance &m) { m.premises[0].pre = len_eq(0); });
      push([](Instance &m) { m.premises[0].vars = {}; });
      break;
    case Rule::Par:
      push([](Instance &m) { m.premises[0].vars = m.conclusion.vars; });
      push([](Instance &m) { m.conclusion.post = dc_top(); });
      push([](Instance &m) {  // wrong split marker inside the body
        auto c = std::make_shared<DcFormula>(*m.conclusion.post);
        c->a = subst_state_var(m.conclusion.post->a, m.conclusion.post->name,
                               m.conclusion.post->dot);
        m.conclusion.post = c;
      });
      push([](Instance &m) { m.conclusion.pre = dc_top(); });
      push([](Instance &m) { std::swap(m.premises[0], m.premises[1]); });
      break;
    case Rule::N:  // schema-light: mutations must be caught semantically
      push([](Instance &m) { m.conclusion.post = dc_bot(); });
      push([](Instance &m) { m.conclusion.post = len_eq(1); });
      push([](Instance &m) {
        m.conclusion.post = dc_cmp(CmpOp::Ge, dc_len(), dc_const(1));
      });
      push([](Instance &m) { m.conclusion.post = almost(sv("R")); });
      push([](Instance &m) { m.conclusion.post = dc_inf(); });
      break;
    case Rule::K:
      push([](Instance &m) { std::swap(m.premises[0], m.premises[1]); });
      push([](Instance &m) { m.premises[1].post = dc_fin(); });
      push([](Instance &m) { m.conclusion.post = dc_bot(); });
      push([](Instance &m) { m.conclusion.pre = len_eq(0); });
      push([](Instance &m) { m.premises[0].proc = skip(); });
      break;
    case Rule::Mu:
      push([](Instance &m) {
        m.conclusion.mode = m.premises[0].mode = TripleMode::Classic;
      });
      push([](Instance &m) {
        m.conclusion.pre = m.premises[0].pre =
            fvar(m.conclusion.proc->rec_var);
      });
      push([](Instance &m) { m.conclusion.post = m.premises[0].post; });
      push([](Instance &m) { m.premises[0].proc = skip(); });
      push([](Instance &m) {
        m.conclusion.post = dc_mu("Y#wrong", m.premises[0].post);
      });
      break;
    case Rule::ParEvolve:
      push([](Instance &m) { std::swap(m.premises[1], m.premises[2]); });
      push([](Instance &m) {  // wrong joint boundary
        m.premises[0].proc =
            evolve(m.premises[0].proc->odes, m.conclusion.proc->a->a->cond);
      });
      push([](Instance &m) { m.premises.pop_back(); });
      push([](Instance &m) { m.premises[3].post = dc_bot(); });
      push([](Instance &m) {  // case guard missing a negation
        m.premises[1].pre = dc_and(m.premises[0].post,
                                   formula_of_expr(
                                       m.conclusion.proc->a->a->cond, false));
      });
      break;
  }
  return out;
}

void criterion3() {
  Criterion c("3 rule soundness: 10 rules x 20 instances falsified, "
              "5 mutations each rejected",
              600);
  const Rule rules[] = {Rule::AxiomPrim, Rule::Seq,  Rule::Choice, Rule::If,
                        Rule::While,     Rule::Par,  Rule::N,      Rule::K,
                        Rule::Mu,        Rule::ParEvolve};
  for (Rule r : rules) {
    for (int n = 0; n < 20; ++n) {
      Instance inst = make_instance(r, n);
      RuleMatch rm = apply_rule(r, inst.premises, inst.conclusion);
      c.expect(rm.ok, std::string(rule_name(r)) + " instance " +
                          std::to_string(n) + " schema: " + rm.diff);
      if (!rm.ok) continue;
      FalsifyConfig cfg;
      cfg.seed = 1000u * (unsigned)r + (unsigned)n;
      Obligation ob{triple_validity(inst.conclusion), Strategy::Falsify,
                    1000, ObStatus::Pending, nullptr};
      ob = discharge(ob, cfg);
      c.expect(ob.status == ObStatus::DischargedEmpirically,
               std::string(rule_name(r)) + " instance " + std::to_string(n) +
                   ": conclusion validity falsified");
    }
    std::vector<Instance> muts = mutations(r);
    c.expect(muts.size() == 5, std::string(rule_name(r)) + ": wrong number "
                                                           "of mutations");
    for (size_t i = 0; i < muts.size(); ++i)
      c.expect(rejected(r, muts[i], 77 + (unsigned)i),
               std::string(rule_name(r)) + " mutation " + std::to_string(i) +
                   " accepted");
  }
}

void criterion4() {
  Criterion c("4 parallel elimination preserves behaviour (100 schedules)",
              30);
  TermPtr p =
      parse_process("< x1_dot = 1 & x1 < 2 > || < x2_dot = 2 & x2 < 3 >");
  ElimResult er = eliminate_parallel(p, 2000);
  c.expect(er.complete, "elimination incomplete");
  for (uint64_t seed = 0; seed < 100; ++seed) {
    SimConfig cfg;
    cfg.seed = seed;
    Run a = simulate(p, {}, cfg);
    Run b = simulate(er.term, {}, cfg);
    c.expect(a.terminated() == b.terminated(),
             "termination differs at seed " + std::to_string(seed));
    for (double t : a.trajectory.breakpoints()) {
      bool shared = false;
      for (double u : b.trajectory.breakpoints())
        if (std::abs(t - u) < 1e-9) shared = true;
      if (!shared) continue;
      for (const char *v : {"x1", "x2"})
        c.expect(std::abs(a.trajectory.val(v, t) - b.trajectory.val(v, t)) <
                     1e-6,
                 std::string(v) + " differs at t=" + std::to_string(t) +
                     " seed " + std::to_string(seed));
    }
  }
}

void criterion5() {
  Criterion c("5 channel handshake transfers the value (100 seeds)", 5);
  TermPtr p = desugar(parse_process("c!5 || c?y"));
  DcPtr f = compile_semantics(p);
  for (uint64_t seed = 0; seed < 100; ++seed) {
    SimConfig cfg;
    cfg.seed = seed;
    Run r = simulate(p, {}, cfg);
    std::string tag = " at seed " + std::to_string(seed);
    c.expect(r.terminated(), "did not terminate" + tag);
    c.expect(r.trajectory.val("y", r.trajectory.T) == 5, "y != 5" + tag);
    c.expect(!r.trajectory.bval("c!", r.trajectory.T),
             "output flag still raised" + tag);
    c.expect(!r.trajectory.bval("c?", r.trajectory.T),
             "input flag still raised" + tag);
    c.expect(eval_formula(f, r.trajectory, 0, r.trajectory.end_time(),
                          EvalConfig{}) == TV::True,
             "run does not satisfy the compiled semantics" + tag);
  }
}

void criterion6() {
  Criterion c("6 ODE accuracy (e^-1 to 1e-6, boundary to 1e-9)", 1);
  Run decay = simulate(parse_process("< x_dot = 0 - x, t_dot = 1 & t < 1 >"),
                       {{"x", 1}}, {});
  c.expect(std::abs(decay.trajectory.val("x", decay.trajectory.T) -
                    std::exp(-1.0)) < 1e-6,
           "exponential decay misses e^-1");
  Run bound = simulate(parse_process("< x_dot = 1 & x < 2 >"), {{"x", 0}},
                       {});
  c.expect(std::abs(bound.trajectory.T - 2.0) < 1e-9,
           "boundary crossing not localized to 1e-9");
}

// --- criterion 7: randomized dc-core properties ------------------------------

Trajectory random_traj(std::mt19937 &rng) {
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  Trajectory tr;
  int nseg = 1 + (int)(rng() % 6);
  double t = 0;
  double x = 10 * u01(rng) - 5;
  for (int i = 0; i < nseg; ++i) {
    Segment s;
    s.t0 = t;
    t += 0.1 + 3 * u01(rng);
    s.t1 = t;
    s.bools = {{"R", (rng() & 1) != 0}, {"N", (rng() & 1) != 0},
               {"b", (rng() & 1) != 0}};
    double nx = 10 * u01(rng) - 5;
    s.reals = {{"x", RealFn::constant(x)}};
    s.end = {{"x", nx}};
    x = nx;
    tr.segments.push_back(s);
  }
  tr.segments.back().end["x"] =
      tr.segments.back().reals.at("x").at(t, tr.segments.back().t0);
  tr.T = t;
  tr.infinite_tail = true;
  return tr;
}

StatePtr random_state(std::mt19937 &rng, int depth) {
  const char *names[] = {"R", "N", "b"};
  if (depth == 0 || rng() % 3 == 0) return sv(names[rng() % 3]);
  switch (rng() % 3) {
    case 0: return snot(random_state(rng, depth - 1));
    case 1:
      return sand(random_state(rng, depth - 1), random_state(rng, depth - 1));
    default:
      return sor(random_state(rng, depth - 1), random_state(rng, depth - 1));
  }
}

DcPtr random_formula(std::mt19937 &rng, int depth) {
  if (depth == 0 || rng() % 4 == 0) {
    switch (rng() % 5) {
      case 0: return almost(random_state(rng, 1));
      case 1: return almost0(random_state(rng, 1));
      case 2:
        return dc_cmp(CmpOp::Le, dc_len(), dc_const((double)(rng() % 8)));
      case 3:
        return dc_cmp(rng() % 2 ? CmpOp::Ge : CmpOp::Lt, tvar("x"),
                      dc_const((double)(rng() % 6) - 3));
      default: return temp_prop("b", rng() % 2 == 0);
    }
  }
  switch (rng() % 6) {
    case 0: return dc_not(random_formula(rng, depth - 1));
    case 1:
      return dc_and(random_formula(rng, depth - 1),
                    random_formula(rng, depth - 1));
    case 2:
      return dc_or(random_formula(rng, depth - 1),
                   random_formula(rng, depth - 1));
    case 3:
      return dc_chop(random_formula(rng, depth - 1),
                     random_formula(rng, depth - 1));
    case 4: return dc_diamond_lc(random_formula(rng, depth - 1));
    default: return dc_box(random_formula(rng, depth - 1));
  }
}

void criterion7() {
  Criterion c("7 dc-core randomized properties (4 x 1000 cases)", 30);
  std::mt19937 rng(2026);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  // durations of S and ¬S partition the interval
  for (int i = 0; i < 1000; ++i) {
    Trajectory tr = random_traj(rng);
    StatePtr s = random_state(rng, 2);
    double lo = u01(rng) * tr.T, hi = lo + u01(rng) * (tr.T - lo);
    double d = tr.duration_of(s, lo, hi) + tr.duration_of(snot(s), lo, hi);
    if (!(std::abs(d - (hi - lo)) < 1e-9)) {
      c.expect(false, "duration partition violated at case " +
                          std::to_string(i));
      break;
    }
  }
  // negation is three-valued complement
  for (int i = 0; i < 1000; ++i) {
    Trajectory tr = random_traj(rng);
    DcPtr f = random_formula(rng, 2);
    double lo = u01(rng) * tr.T, hi = lo + u01(rng) * (tr.T - lo);
    TV a = eval_formula(f, tr, lo, hi, EvalConfig{});
    TV b = eval_formula(dc_not(f), tr, lo, hi, EvalConfig{});
    if (b != tv_not(a)) {
      c.expect(false, "negation mismatch at case " + std::to_string(i));
      break;
    }
  }
  // deeper fixpoint unfolding never loses established truth
  for (int i = 0; i < 1000; ++i) {
    Trajectory tr = random_traj(rng);
    DcPtr body = random_formula(rng, 1);
    DcPtr f = dc_mu("X", dc_or(len_eq(0), dc_chop(body, fvar("X"))));
    double lo = u01(rng) * tr.T, hi = lo + u01(rng) * (tr.T - lo);
    EvalConfig shallow, deep;
    shallow.mu_depth = 3;
    deep.mu_depth = 9;
    TV a = eval_formula(f, tr, lo, hi, shallow);
    TV b = eval_formula(f, tr, lo, hi, deep);
    if (a == TV::True && b != TV::True) {
      c.expect(false, "fixpoint truth lost at case " + std::to_string(i));
      break;
    }
  }
  // on infinite intervals a chop is already satisfied by its left operand
  for (int i = 0; i < 1000; ++i) {
    Trajectory tr = random_traj(rng);
    DcPtr f = random_formula(rng, 2);
    double lo = u01(rng) * tr.T;
    double inf = std::numeric_limits<double>::infinity();
    if (eval_formula(f, tr, lo, inf, EvalConfig{}) != TV::True) continue;
    if (eval_formula(dc_chop(f, dc_bot()), tr, lo, inf, EvalConfig{}) !=
        TV::True) {
      c.expect(false, "infinite-chop clause violated at case " +
                          std::to_string(i));
      break;
    }
  }
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  return failures;
}
