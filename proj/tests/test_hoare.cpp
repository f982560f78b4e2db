#include <string>
#include <vector>

#include "doctest.h"
#include "hcspdc/desugar.hpp"
#include "hcspdc/hoare.hpp"
#include "hcspdc/parser.hpp"

using namespace hcspdc;

namespace {

TermPtr P(const std::string &s) { return parse_process(s); }

VarSet reals(std::initializer_list<const char *> xs) {
  VarSet v;
  for (const char *x : xs) v.emplace(x, VarKind::Real);
  return v;
}

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

}  // namespace

TEST_CASE("primitive axiom accepts the compiled behaviour and nothing else") {
  VarSet v = reals({"x", "x_dot"});
  for (const char *src : {"skip", "eps", "x := 1", "await x >= 2",
                          "< x_dot = 1 & x < 2 >"}) {
    Triple t = semantics_axiom(P(src), v);
    RuleMatch rm = apply_rule(Rule::AxiomPrim, {}, t);
    CHECK_MESSAGE(rm.ok, src, ": ", rm.diff);
    CHECK(rm.obligations.empty());

    Triple wrong_post = t;
    wrong_post.post = dc_top();
    CHECK_FALSE(apply_rule(Rule::AxiomPrim, {}, wrong_post).ok);

    Triple wrong_pre = t;
    wrong_pre.pre = len_eq(0);
    CHECK_FALSE(apply_rule(Rule::AxiomPrim, {}, wrong_pre).ok);
  }
  // not primitive
  Triple comp{dc_top(), P("x := 1; x := 2"), dc_top(), v,
              TripleMode::Classic};
  CHECK_FALSE(apply_rule(Rule::AxiomPrim, {}, comp).ok);
  // frame misses the written variable
  CHECK_THROWS_AS(semantics_axiom(P("y := 1"), v), std::invalid_argument);
}

TEST_CASE("sequencing composes posts across a silent gap") {
  VarSet v = reals({"x"});
  Triple t1 = semantics_axiom(P("x := 1"), v);
  Triple t2 = semantics_axiom(P("x := 2"), v);
  DcPtr gap = sync_gap_formula("N", "R");
  Triple c{dc_top(), P("x := 1; x := 2"),
           dc_chop(t1.post, dc_chop(gap, t2.post)), v, TripleMode::Classic};
  RuleMatch rm = apply_rule(Rule::Seq, {t1, t2}, c);
  CHECK_MESSAGE(rm.ok, rm.diff);
  CHECK(rm.obligations.size() == 1);

  SUBCASE("dropped gap is rejected") {
    Triple bad = c;
    bad.post = dc_chop(t1.post, t2.post);
    CHECK_FALSE(apply_rule(Rule::Seq, {t1, t2}, bad).ok);
  }
  SUBCASE("swapped premises are rejected") {
    CHECK_FALSE(apply_rule(Rule::Seq, {t2, t1}, c).ok);
  }
  SUBCASE("changed precondition is rejected") {
    Triple bad = c;
    bad.pre = len_eq(0);
    CHECK_FALSE(apply_rule(Rule::Seq, {t1, t2}, bad).ok);
  }
  SUBCASE("mixed modes are rejected") {
    Triple bad = c;
    bad.mode = TripleMode::Diamond;
    CHECK_FALSE(apply_rule(Rule::Seq, {t1, t2}, bad).ok);
  }
  SUBCASE("diamond and classic instances produce different obligations") {
    Triple d1 = t1, d2 = t2, dc = c;
    d1.mode = d2.mode = dc.mode = TripleMode::Diamond;
    RuleMatch rmd = apply_rule(Rule::Seq, {d1, d2}, dc);
    CHECK(rmd.ok);
    REQUIRE(rmd.obligations.size() == 1);
    CHECK_FALSE(dc_equal(rmd.obligations[0], rm.obligations[0]));
  }
}

TEST_CASE("internal choice conjoins assumptions and disjoins guarantees") {
  VarSet v = reals({"x"});
  Triple t1 = semantics_axiom(P("x := 1"), v);
  Triple t2 = semantics_axiom(P("x := 2"), v);
  Triple c{dc_and(dc_top(), dc_top()), P("x := 1 |~| x := 2"),
           dc_or(t1.post, t2.post), v, TripleMode::Classic};
  CHECK(apply_rule(Rule::Choice, {t1, t2}, c).ok);

  Triple bad = c;
  bad.post = dc_and(t1.post, t2.post);
  CHECK_FALSE(apply_rule(Rule::Choice, {t1, t2}, bad).ok);
  bad = c;
  bad.pre = dc_top();
  CHECK_FALSE(apply_rule(Rule::Choice, {t1, t2}, bad).ok);
}

TEST_CASE("conditional splits the assumption on the guard") {
  VarSet v = reals({"x"});
  ExprPtr b = parse_expression("x < 1");
  DcPtr bhat = formula_of_expr(b, false);
  DcPtr nbhat = formula_of_expr(nnf(b, true), false);
  DcPtr g = len_eq(0);
  TermPtr body1 = P("x := 1"), body2 = P("x := 2");
  Triple p1{dc_and(dc_top(), bhat), body1, g, v, TripleMode::Classic};
  Triple p2{dc_and(dc_top(), nbhat), body2, g, v, TripleMode::Classic};
  Triple c{dc_top(), if_term(b, body1, body2), g, v, TripleMode::Classic};
  CHECK(apply_rule(Rule::If, {p1, p2}, c).ok);

  SUBCASE("swapped branch premises are rejected") {
    CHECK_FALSE(apply_rule(Rule::If, {p2, p1}, c).ok);
  }
  SUBCASE("unguarded branch assumption is rejected") {
    Triple bad1 = p1;
    bad1.pre = dc_top();
    CHECK_FALSE(apply_rule(Rule::If, {bad1, p2}, c).ok);
  }
  SUBCASE("branch-specific postconditions are rejected") {
    Triple bad1 = p1;
    bad1.post = dc_and(g, bhat);
    CHECK_FALSE(apply_rule(Rule::If, {bad1, p2}, c).ok);
  }
}

TEST_CASE("loop rule is classic-only and iterates body rounds") {
  VarSet v = reals({"x"});
  ExprPtr b = parse_expression("x < 3");
  TermPtr body = P("x := x + 1");
  Triple p = semantics_axiom(body, v);
  DcPtr bhat = formula_of_expr(b, false);
  DcPtr nbhat = formula_of_expr(nnf(b, true), false);
  DcPtr silent = almost0(snot(sv("R")));
  DcPtr post = dc_chop(dc_star(dc_chop(dc_and(bhat, p.post), silent)),
                       dc_and(nbhat, len_eq(0)));
  Triple c{dc_top(), while_term(b, body), post, v, TripleMode::Classic};
  RuleMatch rm = apply_rule(Rule::While, {p}, c);
  CHECK_MESSAGE(rm.ok, rm.diff);
  CHECK(rm.obligations.size() == 1);

  SUBCASE("diamond mode is rejected") {
    Triple pd = p, cd = c;
    pd.mode = cd.mode = TripleMode::Diamond;
    RuleMatch bad = apply_rule(Rule::While, {pd}, cd);
    CHECK_FALSE(bad.ok);
    CHECK(bad.diff.find("classic") != std::string::npos);
  }
  SUBCASE("missing silent gap in the iteration is rejected") {
    Triple bad = c;
    bad.post = dc_chop(dc_star(dc_and(bhat, p.post)),
                       dc_and(nbhat, len_eq(0)));
    CHECK_FALSE(apply_rule(Rule::While, {p}, bad).ok);
  }
}

TEST_CASE("recursion rule is diamond-only") {
  // a loop desugars to a recursion, so the derived proof's root is (mu)
  ProofNode root =
      derive_semantics_triple(P("while x < 3 do { x := x + 1 }"),
                              reals({"x"}));
  REQUIRE(root.rule == Rule::Mu);
  RuleMatch rm = apply_rule(Rule::Mu, prems(root), root.conclusion);
  CHECK_MESSAGE(rm.ok, rm.diff);
  CHECK(rm.obligations.size() == 1);

  SUBCASE("classic mode is rejected") {
    ProofNode bad = root;
    bad.conclusion.mode = TripleMode::Classic;
    for (ProofNode &p : bad.premises) p.conclusion.mode = TripleMode::Classic;
    CHECK_FALSE(
        apply_rule(Rule::Mu, prems(bad), bad.conclusion).ok);
  }
  SUBCASE("assumption naming the recursion variable is rejected") {
    ProofNode bad = root;
    const std::string &x = bad.conclusion.proc->rec_var;
    bad.conclusion.pre = fvar(x);
    bad.premises[0].conclusion.pre = fvar(x);
    CHECK_FALSE(apply_rule(Rule::Mu, prems(bad), bad.conclusion).ok);
  }
  SUBCASE("unfolded postcondition instead of the fixpoint is rejected") {
    ProofNode bad = root;
    bad.conclusion.post = bad.premises[0].conclusion.post;
    CHECK_FALSE(apply_rule(Rule::Mu, prems(bad), bad.conclusion).ok);
  }
}

TEST_CASE("parallel rule demands operand frames and exact split shape") {
  ProofNode root = derive_semantics_triple(P("x := 1 || y := 2"),
                                           reals({"x", "y"}));
  const ProofNode *par = find_rule(root, Rule::Par);
  REQUIRE(par);
  RuleMatch rm = apply_rule(Rule::Par, prems(*par), par->conclusion);
  CHECK_MESSAGE(rm.ok, rm.diff);

  SUBCASE("premise frames other than the written variables are rejected") {
    ProofNode bad = *par;
    bad.premises[0].conclusion.vars = reals({"x", "y"});
    CHECK_FALSE(apply_rule(Rule::Par, prems(bad), bad.conclusion).ok);
  }
  SUBCASE("wrong split marker inside a guarantee is rejected") {
    ProofNode bad = *par;
    Triple &c = bad.conclusion;
    // rename one bound split name inside the body only
    auto mutated = std::make_shared<DcFormula>(*c.post);
    mutated->a = subst_state_var(c.post->a, c.post->name, c.post->dot);
    c.post = mutated;
    CHECK_FALSE(apply_rule(Rule::Par, prems(bad), bad.conclusion).ok);
  }
  SUBCASE("a non-split postcondition is rejected") {
    ProofNode bad = *par;
    bad.conclusion.post = dc_top();
    CHECK_FALSE(apply_rule(Rule::Par, prems(bad), bad.conclusion).ok);
  }
}

TEST_CASE("necessitation turns a validity claim into a triple") {
  VarSet v = reals({"x"});
  Triple c{len_eq(0), P("x := 1"), dc_fin(), v, TripleMode::Classic};
  RuleMatch rm = apply_rule(Rule::N, {}, c);
  CHECK(rm.ok);
  REQUIRE(rm.obligations.size() == 1);
  // the obligation is an implication ending in the postcondition
  CHECK(rm.obligations[0]->kind == DcKind::Imp);
  CHECK(dc_equal(rm.obligations[0]->b, c.post));

  Triple bad = c;
  bad.vars = {};
  CHECK_FALSE(apply_rule(Rule::N, {}, bad).ok);  // frame misses x
}

TEST_CASE("modal K chains an implication triple with its antecedent") {
  Triple goal{dc_top(), P("x := 1; x := x + 1"), dc_top(), reals({"x"}),
              TripleMode::Diamond};
  ProofNode root = derive_any(goal, Strategy::Tautology);
  REQUIRE(root.rule == Rule::K);
  RuleMatch rm = apply_rule(Rule::K, prems(root), root.conclusion);
  CHECK_MESSAGE(rm.ok, rm.diff);
  CHECK(rm.obligations.size() == 1);

  SUBCASE("swapped premises are rejected") {
    std::vector<Triple> sw = prems(root);
    std::swap(sw[0], sw[1]);
    CHECK_FALSE(apply_rule(Rule::K, sw, root.conclusion).ok);
  }
  SUBCASE("implication antecedent must match the base guarantee") {
    std::vector<Triple> ps = prems(root);
    ps[1].post = dc_top();
    CHECK_FALSE(apply_rule(Rule::K, ps, root.conclusion).ok);
  }
}

TEST_CASE("evolution pair rule enumerates the boundary cases") {
  VarSet v = reals({"x", "x_dot", "y", "y_dot"});
  TermPtr e1 = P("< x_dot = 1 & x < 2 >"), e2 = P("< y_dot = 2 & y < 3 >");
  TermPtr p1 = P("x := 0"), p2 = P("y := 0");
  TermPtr whole = par(seq(e1, p1), seq(e2, p2));
  TermPtr joint = P("< x_dot = 1, y_dot = 2 & x < 2 && y < 3 >");
  DcPtr pre = dc_top(), mid = dc_fin(), post = dc_fin();
  DcPtr b1 = formula_of_expr(e1->cond, false);
  DcPtr b2 = formula_of_expr(e2->cond, false);
  TripleMode m = TripleMode::Classic;
  Triple t0{pre, joint, mid, v, m};
  Triple t1{dc_and(dc_and(mid, b1), dc_not(b2)), par(seq(e1, p1), p2), post,
            v, m};
  Triple t2{dc_and(dc_and(mid, b2), dc_not(b1)), par(p1, seq(e2, p2)), post,
            v, m};
  Triple t3{dc_and(dc_and(mid, dc_not(b1)), dc_not(b2)), par(p1, p2), post,
            v, m};
  Triple c{pre, whole, post, v, m};
  RuleMatch rm = apply_rule(Rule::ParEvolve, {t0, t1, t2, t3}, c);
  CHECK_MESSAGE(rm.ok, rm.diff);

  SUBCASE("cases out of order are rejected") {
    CHECK_FALSE(apply_rule(Rule::ParEvolve, {t0, t2, t1, t3}, c).ok);
  }
  SUBCASE("wrong joint boundary is rejected") {
    Triple bad0 = t0;
    bad0.proc = P("< x_dot = 1, y_dot = 2 & x < 2 >");
    CHECK_FALSE(apply_rule(Rule::ParEvolve, {bad0, t1, t2, t3}, c).ok);
  }
  SUBCASE("case with a divergent postcondition is rejected") {
    Triple bad3 = t3;
    bad3.post = dc_top();
    CHECK_FALSE(apply_rule(Rule::ParEvolve, {t0, t1, t2, bad3}, c).ok);
  }
}

TEST_CASE("tautology strategy recognizes structural validities") {
  DcPtr sem = compile_semantics(P("x := 1"));
  CHECK(is_tautology(dc_imp(sem, sem)));
  CHECK(is_tautology(dc_or(sem, dc_not(sem))));
  CHECK_FALSE(is_tautology(sem));
  CHECK_FALSE(is_tautology(dc_imp(sem, compile_semantics(P("x := 2")))));
  // length-range containment: ℓ=0 ⇒ ℓ<∞
  CHECK(is_tautology(dc_imp(len_eq(0), dc_fin())));
  CHECK_FALSE(is_tautology(dc_imp(dc_fin(), len_eq(0))));
  // a silent gap holds at a point, so chopping anything after it is free
  DcPtr gap = sync_gap_formula("N", "R");
  CHECK(simplify_dc(dc_chop(gap, dc_top()))->kind == DcKind::Top);
  // a finite-length left part cannot absorb an impossible right part
  CHECK(simplify_dc(dc_chop(gap, dc_bot()))->kind == DcKind::Bot);
  // but an unbounded left part can (the chop may take the infinite branch)
  CHECK(simplify_dc(dc_chop(dc_top(), dc_bot()))->kind != DcKind::Bot);
}

TEST_CASE("falsification finds counterexamples and reports exhaustion") {
  FalsifyConfig cfg;
  cfg.seed = 7;
  SUBCASE("an invalid claim yields a replayable counterexample") {
    Obligation ob{dc_imp(dc_top(), temp_prop("b0", false)),
                  Strategy::Falsify, 200, ObStatus::Pending, nullptr};
    ob = discharge(ob, cfg);
    REQUIRE(ob.status == ObStatus::Failed);
    REQUIRE(ob.cex);
    EvalConfig ec;
    ec.strict = true;
    CHECK(eval_formula(ob.formula, ob.cex->trajectory, ob.cex->lo,
                       ob.cex->hi, ec) == TV::False);
  }
  SUBCASE("length claims are refuted with intervals of the named length") {
    Obligation ob{dc_imp(len_eq(1), len_eq(2)), Strategy::Falsify, 500,
                  ObStatus::Pending, nullptr};
    ob = discharge(ob, cfg);
    REQUIRE(ob.status == ObStatus::Failed);
    REQUIRE(ob.cex);
    CHECK(ob.cex->hi - ob.cex->lo == doctest::Approx(1.0));
  }
  SUBCASE("a valid but non-structural claim is discharged empirically") {
    Obligation ob{dc_cmp(CmpOp::Ge, dc_len(), dc_const(0)),
                  Strategy::Falsify, 100, ObStatus::Pending, nullptr};
    ob = discharge(ob, cfg);
    CHECK(ob.status == ObStatus::DischargedEmpirically);
    CHECK_FALSE(ob.cex);
  }
  SUBCASE("assumed obligations pass through unexamined") {
    Obligation ob{dc_bot(), Strategy::Assumed, 0, ObStatus::Pending,
                  nullptr};
    CHECK(discharge(ob, cfg).status == ObStatus::Assumed);
  }
  SUBCASE("the sampler is deterministic in the seed") {
    Obligation ob{dc_imp(dc_top(), temp_prop("b0", false)),
                  Strategy::Falsify, 200, ObStatus::Pending, nullptr};
    Obligation a = discharge(ob, cfg), b = discharge(ob, cfg);
    REQUIRE(a.cex);
    REQUIRE(b.cex);
    CHECK(trajectory_to_json(a.cex->trajectory) ==
          trajectory_to_json(b.cex->trajectory));
  }
  SUBCASE("parallel sampling returns the same counterexample") {
    Obligation ob{dc_imp(dc_top(), temp_prop("b0", false)),
                  Strategy::Falsify, 200, ObStatus::Pending, nullptr};
    Obligation serial = discharge(ob, cfg);
    FalsifyConfig wide = cfg;
    wide.jobs = 4;
    Obligation parallel = discharge(ob, wide);
    REQUIRE(serial.cex);
    REQUIRE(parallel.cex);
    CHECK(trajectory_to_json(serial.cex->trajectory) ==
          trajectory_to_json(parallel.cex->trajectory));
    CHECK(serial.cex->lo == parallel.cex->lo);
    CHECK(serial.cex->hi == parallel.cex->hi);
  }
}

TEST_CASE("an invalid triple is refuted through its validity claim") {
  Triple t{dc_top(), P("skip"), dc_bot(), {}, TripleMode::Classic};
  Obligation ob{triple_validity(t), Strategy::Falsify, 100,
                ObStatus::Pending, nullptr};
  ob = discharge(ob, {});
  CHECK(ob.status == ObStatus::Failed);
}

TEST_CASE("derived semantics proofs validate without assumptions") {
  for (const char *src :
       {"x := 1; x := x + 1", "if x < 0 then { x := 0 - x } else { skip }",
        "while x < 3 do { x := x + 1 }", "x := 1 |~| x := 2",
        "< x_dot = u & x < 5 > || (u := 0 - x)"}) {
    TermPtr p = P(src);
    ProofNode n = derive_semantics_triple(p, controlled_vars(desugar(p)));
    ProofReport r = check_proof(n);
    CHECK_MESSAGE(r.verdict == ProofReport::Verdict::Valid, src, ": ",
                  r.failure);
    for (const ObligationReport &ob : r.obligations)
      CHECK_MESSAGE(ob.status == ObStatus::DischargedTautology, src, ": ",
                    print_dc(ob.formula));
  }
}

TEST_CASE("proof checking rejects tampered trees") {
  TermPtr p = P("x := 1; x := 2");
  VarSet v = reals({"x"});
  ProofNode good = derive_semantics_triple(p, v);
  REQUIRE(check_proof(good).ok());

  SUBCASE("a strengthened conclusion fails the schema") {
    ProofNode bad = good;
    bad.conclusion.post = dc_bot();
    ProofReport r = check_proof(bad);
    CHECK(r.verdict == ProofReport::Verdict::Invalid);
    CHECK(r.failure.find("root") != std::string::npos);
  }
  SUBCASE("a tampered premise is blamed by path") {
    ProofNode bad = good;
    bad.premises[0].conclusion.post = dc_top();
    ProofReport r = check_proof(bad);
    CHECK(r.verdict == ProofReport::Verdict::Invalid);
    CHECK(r.failure.find("root.premise[0]") != std::string::npos);
  }
  SUBCASE("side conditions not demanded by the rule are rejected") {
    ProofNode bad = good;
    bad.side_conditions.push_back({dc_top(), Strategy::Tautology, 0,
                                   ObStatus::Pending, nullptr});
    CHECK(check_proof(bad).verdict == ProofReport::Verdict::Invalid);
  }
  SUBCASE("assumed side conditions downgrade the verdict") {
    ProofNode soft = good;
    REQUIRE(!soft.side_conditions.empty());
    soft.side_conditions[0].strategy = Strategy::Assumed;
    CHECK(check_proof(soft).verdict ==
          ProofReport::Verdict::ValidModuloAssumptions);
  }
}

TEST_CASE("derive_any proves arbitrary valid triples via the semantics") {
  Triple goal{dc_top(), P("x := 1; x := x + 1"), dc_top(), reals({"x"}),
              TripleMode::Diamond};
  ProofNode root = derive_any(goal, Strategy::Tautology);
  ProofReport r = check_proof(root);
  CHECK_MESSAGE(r.verdict == ProofReport::Verdict::Valid, r.failure);

  SUBCASE("assumed validity downgrades the verdict") {
    ProofNode soft = derive_any(goal, Strategy::Assumed);
    CHECK(check_proof(soft).verdict ==
          ProofReport::Verdict::ValidModuloAssumptions);
  }
  SUBCASE("an invalid goal is refuted by falsification") {
    Triple bad{dc_top(), P("skip"), dc_bot(), {}, TripleMode::Diamond};
    ProofReport rb = check_proof(derive_any(bad, Strategy::Falsify));
    CHECK(rb.verdict == ProofReport::Verdict::Invalid);
  }
}

TEST_CASE("proof scripts round-trip through JSON") {
  for (const char *src : {"x := 1; x := 2", "x := 1 || y := 2",
                          "while x < 3 do { x := x + 1 }"}) {
    TermPtr p = P(src);
    ProofNode n = derive_semantics_triple(p, controlled_vars(desugar(p)));
    std::string text = proof_to_json(n);
    ProofNode back = proof_from_json(text);
    CHECK_MESSAGE(proof_to_json(back) == text, src);
    CHECK(check_proof(back).ok());
  }
}

TEST_CASE("reports render both as text and JSON") {
  ProofNode n = derive_semantics_triple(P("x := 1; x := 2"), reals({"x"}));
  ProofReport r = check_proof(n);
  std::string text = report_to_text(r);
  CHECK(text.find("valid") == 0);
  CHECK(text.find("root") != std::string::npos);
  std::string js = report_to_json(r);
  CHECK(js.find("\"verdict\"") != std::string::npos);
}
