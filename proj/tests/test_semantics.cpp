#include <fstream>
#include <sstream>

#include "doctest.h"
#include "hcspdc/desugar.hpp"
#include "hcspdc/eval.hpp"
#include "hcspdc/parser.hpp"
#include "hcspdc/semantics.hpp"

using namespace hcspdc;

namespace {

std::string golden(const std::string &name) {
  std::ifstream in(std::string(TEST_DATA_DIR) + "/golden/sem/" + name +
                   ".txt");
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  std::string s = ss.str();
  while (!s.empty() && (s.back() == '\n' || s.back() == '\r')) s.pop_back();
  return s;
}

std::string compiled(const std::string &src) {
  return print_dc(compile_semantics(desugar(parse_process(src))));
}

}  // namespace

TEST_CASE("compiled formulas match their golden files") {
  const std::pair<const char *, const char *> progs[] = {
      {"assign", "x := 1"},
      {"multi_assign", "x, b := x + 1, y < 3"},
      {"skip", "skip"},
      {"await", "await x >= 1"},
      {"evolve", "< x_dot = 1 & x < 2 >"},
      {"evolve_frame", "y := 0; < x_dot = y & x < 2 >"},
      {"seq", "x := 1; x := x + 1"},
      {"int_choice", "x := 1 |~| x := 2"},
      {"if", "if x < 0 then { x := 0 } else { skip }"},
      {"while", "while x < 3 do { x := x + 1 }"},
      {"par", "x := 1 || y := 2"},
      {"output", "c!5"},
      {"handshake", "c!5 || c?y"},
  };
  for (auto &[name, src] : progs) {
    CAPTURE(name);
    CHECK(compiled(src) == golden(name));
  }
}

TEST_CASE("compiled formulas parse back") {
  for (const char *src : {"x := 1", "< x_dot = 1 & x < 2 >", "c!5 || c?y",
                          "while x < 3 do { x := x + 1 }"}) {
    DcPtr f = compile_semantics(desugar(parse_process(src)));
    CHECK(dc_equal(parse_dc(print_dc(f)), f));
  }
}

TEST_CASE("structural shape of key clauses") {
  // nontermination: a choice is a disjunction, a conditional splits on the
  // guard, skip is the empty interval
  CHECK(compiled("skip") == "(= len 0)");
  CHECK(compiled("x := 1 |~| x := 2") ==
        "(or " + compiled("x := 1") + " " + compiled("x := 2") + ")");
  std::string par = compiled("x := 1 || y := 2");
  CHECK(par.substr(0, 16) == "(esplit R R#1 R#");
}

TEST_CASE("parallel marker names are assigned in preorder") {
  TermPtr t = parse_process("(a := 1 || b := 2) || c := 3");
  ParMarkers m = par_markers(t);
  REQUIRE(m.size() == 2);
  CHECK(m.at(t.get()) == std::make_pair(std::string("R#1"),
                                        std::string("R#2")));
  CHECK(m.at(t->a.get()) == std::make_pair(std::string("R#3"),
                                           std::string("R#4")));
  // deterministic across invocations
  CHECK(par_markers(t) == m);
}

TEST_CASE("locality and frame formulas") {
  VarSet v{{"x", VarKind::Real}, {"b", VarKind::Boolean}};
  std::string loc = print_dc(loc_formula(v));
  CHECK(loc.find("(forall z (not (chop (= (v' x) (z z)) (!= (v x) (z z)))))") !=
        std::string::npos);
  CHECK(loc.find("(chop (prop' b) (not (prop b)))") != std::string::npos);
  // frame: boxdot for excluded variables and for dotted variables
  VarSet w{{"x", VarKind::Real}, {"x_dot", VarKind::Real}};
  std::string c = print_dc(const_formula(w, {"x"}));
  CHECK(c == "(and (boxdot (= (v' x) (v x))) "
             "(boxdot (= (v' x_dot) (v x_dot))))");
  std::string c2 = print_dc(const_formula({{"y", VarKind::Real}}, {}));
  CHECK(c2 == "(box (= (v' y) (v y)))");
}

TEST_CASE("sugared constructs are rejected") {
  CHECK_THROWS(compile_semantics(parse_process("c!5")));
  CHECK_THROWS(compile_semantics(parse_process("wait 2")));
}

// ---------------------------------------------------------------------------
// conformance against hand-built behaviours
// ---------------------------------------------------------------------------

namespace {

/// [0,eps] computation stretch where x jumps to `xe`, then a point segment
/// holding the result.
Trajectory assign_run(double x0, double xe, bool stretch_r) {
  Trajectory tr;
  Segment s;
  s.t0 = 0;
  s.t1 = 1e-3;
  s.bools = {{"R", stretch_r}, {"N", true}};
  s.reals = {{"x", RealFn::constant(x0)}};
  s.end = {{"x", xe}};
  tr.segments.push_back(s);
  Segment c;
  c.t0 = c.t1 = 1e-3;
  c.bools = {{"R", false}, {"N", false}};
  c.reals = {{"x", RealFn::constant(xe)}};
  c.end = {{"x", xe}};
  tr.segments.push_back(c);
  tr.T = 1e-3;
  tr.validate();
  return tr;
}

TV conforms(const char *src, const Trajectory &tr) {
  DcPtr f = compile_semantics(desugar(parse_process(src)));
  return eval_formula(f, tr, 0, tr.end_time(), EvalConfig{});
}

}  // namespace

TEST_CASE("assignment conformance on a hand-built run") {
  CHECK(conforms("x := 1", assign_run(0, 1, true)) == TV::True);
  // wrong final value
  CHECK(conforms("x := 1", assign_run(0, 2, true)) == TV::False);
  // no computation marker during the stretch
  CHECK(conforms("x := 1", assign_run(0, 1, false)) == TV::False);
}

TEST_CASE("evolution conformance on a hand-built run") {
  auto run = [](double slope) {
    Trajectory tr;
    Segment s;
    s.t0 = 0;
    s.t1 = 2;
    s.bools = {{"R", false}, {"N", false}};
    s.reals = {{"x", RealFn::affine(0, slope)},
               {"x_dot", RealFn::constant(slope)}};
    s.end = {{"x", 2 * slope}, {"x_dot", slope}};
    tr.segments.push_back(s);
    tr.T = 2;
    tr.validate();
    return tr;
  };
  CHECK(conforms("< x_dot = 1 & x < 2 >", run(1)) == TV::True);
  // wrong slope: the boundary x = 2 is not reached, the recorded
  // derivative contradicts the equation
  CHECK(conforms("< x_dot = 1 & x < 2 >", run(0.5)) == TV::False);
}

TEST_CASE("blocked await conformance on a constant run") {
  Trajectory tr = constant_trajectory({{"x", 0}}, {{"R", false}, {"N", false}},
                                      5, true);
  CHECK(conforms("await x >= 1", tr) == TV::True);
  // an await that should have fired immediately cannot span the interval
  CHECK(conforms("await x <= 1", tr) == TV::False);
}
