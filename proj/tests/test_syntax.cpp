#include <doctest.h>

#include "hcspdc/parser.hpp"
#include "hcspdc/process.hpp"

using namespace hcspdc;

TEST_CASE("expression parse/eval") {
  Valuation v{{"x", 3.0}, {"y", -2.0}};
  CHECK(eval_expr(parse_expression("x + 2 * y"), v) == doctest::Approx(-1.0));
  CHECK(eval_expr(parse_expression("(x + 2) * y"), v) == doctest::Approx(-10.0));
  CHECK(eval_bool(parse_expression("x < 4 && !(y >= 0)"), v));
  CHECK(eval_bool(parse_expression("x == 3 || false"), v));
  CHECK(!eval_bool(parse_expression("x != 3"), v));
  CHECK(eval_expr(parse_expression("-x * 2"), v) == doctest::Approx(-6.0));
}

TEST_CASE("expression print round-trip") {
  const char *cases[] = {
      "x + 2 * y",      "(x + 2) * y",        "x - (y - 1)",
      "x / (y + 5)",    "x < 4 && y >= 0",    "!(x < 1) || y == 2",
      "true && x <= 0", "-x",                 "1 - 2 - 3",
  };
  for (const char *s : cases) {
    ExprPtr e = parse_expression(s);
    ExprPtr e2 = parse_expression(print_expr(e));
    CHECK_MESSAGE(expr_equal(e, e2), s, " -> ", print_expr(e));
  }
}

TEST_CASE("nnf pushes negation to atoms") {
  ExprPtr e = parse_expression("!(x < 2 && y >= 1)");
  CHECK(print_expr(nnf(e)) == "x >= 2 || y < 1");
  CHECK(print_expr(nnf(parse_expression("x < 2"), true)) == "x >= 2");
  CHECK(print_expr(nnf(parse_expression("!!(x == 1)"))) == "x == 1");
}

TEST_CASE("closure relaxes strict comparisons") {
  CHECK(print_expr(closure(parse_expression("x < 2"))) == "x <= 2");
  CHECK(print_expr(closure(parse_expression("x > 2 || x <= 0"))) ==
        "x >= 2 || x <= 0");
  CHECK(print_expr(closure(parse_expression("x != 2"))) == "true");
}

// closure(b) must hold on the topological closure of {b}: sample a dense
// 1-D grid, and wherever b holds at a point adjacent to a sample, closure(b)
// must hold at that sample too.
TEST_CASE("closure against grid oracle") {
  const char *conds[] = {"x < 2", "x > -1 && x < 1", "x <= 0 || x > 3",
                         "x == 1 || x < 0"};
  for (const char *s : conds) {
    ExprPtr b = parse_expression(s);
    ExprPtr cb = closure(b);
    const double h = 1e-3;
    for (int i = -5000; i <= 5000; ++i) {
      double x = i * h;
      bool near = false;
      for (double d : {-h, 0.0, h})
        if (eval_bool(b, {{"x", x + d}})) near = true;
      if (near) {
        // closure contains every point with b-points arbitrarily close by
        if (eval_bool(b, {{"x", x}}))
          CHECK_MESSAGE(eval_bool(cb, {{"x", x}}), s, " at x=", x);
      }
      // closure never holds strictly outside a neighbourhood of {b}
      if (!near) CHECK_MESSAGE(!eval_bool(cb, {{"x", x}}), s, " at x=", x);
    }
  }
}

TEST_CASE("process parse and print round-trip") {
  const char *cases[] = {
      "skip",
      "eps",
      "x := 1",
      "x, y := y, x",
      "wait 2",
      "await x >= 1",
      "c?x",
      "c!x + 1",
      "x := 1; y := 2",
      "x := 1 |~| y := 2",
      "x := 0; (x := 1 |~| skip) || y := 2",
      "if x < 1 then { x := 1 } else { skip }",
      "while x < 10 do { x := x + 1 }",
      "(x := x + 1)*",
      "mu X . { x := x + 1; X }",
      "< x_dot = u & true >",
      "< x_dot = -x, y_dot = x & x > 0 >",
      "< x_dot = 1 & x < 2 > |>(3) { y := 1 }",
      "< x_dot = 1 & x < 2 > |> [ c?u -> y := u [] d!x -> skip ]",
      "[ c?u -> y := u [] d!x + 1 -> skip [] default -> wait 1 ]",
      "< & x < 2 >",
  };
  for (const char *s : cases) {
    TermPtr t = parse_process(s);
    std::string printed = print_term(t);
    TermPtr t2 = parse_process(printed);
    CHECK_MESSAGE(term_equal(t, t2), s, " -> ", printed);
  }
}

TEST_CASE("unbraced while body and interrupt from running text") {
  TermPtr t = parse_process(
      "x := 0; u := 1; "
      "(while true do <x_dot = u & true> |> [s!x -> a?u]"
      " || while true do (s?y; if y < 1 then { b := 1 } else { b := 0 };"
      " a!(0 - y)))");
  REQUIRE(t->kind == TermKind::Seq);
  TermPtr t2 = parse_process(print_term(t));
  CHECK(term_equal(t, t2));
}

TEST_CASE("parse errors carry position") {
  CHECK_THROWS_AS(parse_process("x := 1 ;"), ParseError);
  CHECK_THROWS_AS(parse_process("x :="), ParseError);
  CHECK_THROWS_AS(parse_process("if x then x := 1"), ParseError);
  CHECK_THROWS_AS(parse_expression("1 + "), ParseError);
  CHECK_THROWS_AS(parse_process("x, y := 1"), ParseError);
  try {
    parse_process("x := 1 ;\n y :=");
  } catch (const ParseError &e) {
    CHECK(e.line == 2);
  }
}

TEST_CASE("comments are skipped") {
  TermPtr t = parse_process("x := 1 -- set up\n; y := 2 -- done");
  CHECK(t->kind == TermKind::Seq);
}

TEST_CASE("controlled variables of communication primitives") {
  auto va = controlled_vars(parse_process("c!x + 1"));
  CHECK(va.count("c!"));
  CHECK(va.count("c"));
  CHECK(!va.count("x"));
  auto vb = controlled_vars(parse_process("c?x"));
  CHECK(vb.count("c?"));
  CHECK(vb.count("x"));
  CHECK(!vb.count("c"));
  auto vc = controlled_vars(parse_process("< x_dot = u & x < 2 >"));
  CHECK(vc.count("x"));
  CHECK(vc.count("x_dot"));
  CHECK(!vc.count("u"));
}

TEST_CASE("free recursion variables") {
  CHECK(free_rec_vars(parse_process("mu X . { x := 1; X }")).empty());
  auto fr = free_rec_vars(parse_process("x := 1; X"));
  CHECK(fr.count("X"));
}

#include "hcspdc/desugar.hpp"

namespace {
bool is_core(const hcspdc::TermPtr &t) {
  using hcspdc::TermKind;
  if (!t) return true;
  switch (t->kind) {
    case TermKind::Wait:
    case TermKind::Input:
    case TermKind::Output:
    case TermKind::ExtChoice:
    case TermKind::EvolveTimeout:
    case TermKind::EvolveInterrupt:
    case TermKind::While:
    case TermKind::Star:
      return false;
    default:
      return is_core(t->a) && is_core(t->b);
  }
}
}  // namespace

TEST_CASE("output desugars to the five-statement handshake") {
  TermPtr t = desugar(parse_process("c!x + 1"));
  CHECK(print_term(t) ==
        "c := x + 1; c! := true; await c?; await !c?; c! := false");
  CHECK(term_equal(parse_process(print_term(t)), t));
}

TEST_CASE("input desugars to the five-statement handshake") {
  TermPtr t = desugar(parse_process("c?y"));
  CHECK(print_term(t) ==
        "c? := true; await c!; (y := c; c? := false; await !c!)");
  CHECK(term_equal(parse_process(print_term(t)), t));
}

TEST_CASE("wait desugars to a clocked evolution") {
  TermPtr t = desugar(parse_process("wait 2"));
  REQUIRE(t->kind == TermKind::Seq);
  std::string s = print_term(t);
  CHECK(s.find("t#0 := 0") != std::string::npos);
  CHECK(s.find("t#0_dot = 1") != std::string::npos);
  CHECK(s.find("t#0 <= 2") != std::string::npos);
  CHECK(is_core(t));
}

TEST_CASE("while desugars to guarded recursion") {
  TermPtr t = desugar(parse_process("while x < 2 do { x := x + 1 }"));
  REQUIRE(t->kind == TermKind::Mu);
  REQUIRE(t->a->kind == TermKind::If);
  CHECK(t->a->b->kind == TermKind::Skip);
  CHECK(check_wellformed(t).ok());
  TermPtr st = desugar(parse_process("(x := x + 1)*"));
  REQUIRE(st->kind == TermKind::Mu);
  CHECK(st->a->kind == TermKind::IntChoice);
}

TEST_CASE("desugar yields core constructs and is idempotent") {
  const char *cases[] = {
      "c!5 || c?y",
      "wait 1; x := 2",
      "< x_dot = 1 & x < 2 > |>(3) { y := 1 }",
      "< x_dot = 1 & x < 2 > |> [ c?u -> y := u [] d!x -> skip ]",
      "[ c?u -> y := u [] d!x -> skip [] default -> x := 0 ]",
      "while x < 1 do { c!x }",
      "(wait 1)*",
  };
  for (const char *s : cases) {
    TermPtr d = desugar(parse_process(s));
    CHECK_MESSAGE(is_core(d), s);
    CHECK_MESSAGE(term_equal(desugar(d), d), s, " not idempotent: ",
                  print_term(desugar(d)));
    TermPtr re = parse_process(print_term(d));
    CHECK_MESSAGE(term_equal(re, d), s, " desugared form not re-parsable");
  }
}

TEST_CASE("desugar preserves controlled variables up to channel flags") {
  TermPtr p = parse_process("c!x + 1; d?y");
  VarSet before = controlled_vars(p);
  VarSet after = controlled_vars(desugar(p));
  for (auto &[v, k] : before) CHECK(after.count(v));
  for (auto &[v, k] : after) {
    bool known = before.count(v) || v == "c" || v == "c!" || v == "d?" ||
                 v.find('#') != std::string::npos;
    CHECK_MESSAGE(known, "unexpected controlled variable ", v);
  }
}

TEST_CASE("well-formedness violations") {
  CHECK(check_wellformed(parse_process("mu X . { x := 1; X }")).ok());
  CHECK(!check_wellformed(parse_process("mu X . { X }")).ok());
  CHECK(!check_wellformed(parse_process("x := 1 || x := 2")).ok());
  CHECK(!check_wellformed(parse_process("x := 1; X")).ok());
  CHECK(!check_wellformed(parse_process("mu X . { x := 1; (X || y := 2) }")).ok());
  CHECK(check_wellformed(parse_process("x := 1 || y := 2")).ok());
  // dotted variables belong to evolution right-hand sides only
  CHECK(!check_wellformed(parse_process("x_dot := 1")).ok());
  CHECK(!check_wellformed(parse_process("y := x_dot + 1")).ok());
  CHECK(check_wellformed(parse_process("< x_dot = u & x < 1 >")).ok());
  // evolving x and assigning x in parallel collide on x
  CHECK(!check_wellformed(
             parse_process("< x_dot = 1 & true > || x := 2"))
             .ok());
}

TEST_CASE("desugaring a clean term stays clean") {
  const char *cases[] = {
      "while x < 1 do { c!x }",
      "mu X . { x := 1; c!x; X }",
      "c!5 || c?y",
      "[ c?u -> skip [] default -> skip ]",
  };
  for (const char *s : cases) {
    TermPtr p = parse_process(s);
    REQUIRE_MESSAGE(check_wellformed(p).ok(), s);
    auto rep = check_wellformed(desugar(p));
    CHECK_MESSAGE(rep.ok(), s, " -> ",
                  rep.ok() ? "" : rep.violations.front());
  }
}
