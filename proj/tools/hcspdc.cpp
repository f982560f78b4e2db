// Command-line front end: parse / desugar / gnf / elim-par / simulate /
// compile / check-trace / check-proof / derive.
//
// Exit codes: 0 success or valid; 1 invalid, counterexample or incomplete
// result; 2 usage or input error.
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "hcspdc/desugar.hpp"
#include "hcspdc/gnf.hpp"
#include "hcspdc/hoare.hpp"
#include "hcspdc/parser.hpp"
#include "hcspdc/simulate.hpp"
#include "json.hpp"

using namespace hcspdc;
using nlohmann::json;

namespace {

std::string slurp(const std::string &path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const std::string &out, const std::string &text) {
  if (out.empty() || out == "-") {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << "\n";
    return;
  }
  std::ofstream os(out);
  if (!os) throw std::runtime_error("cannot write " + out);
  os << text;
}

Valuation parse_init(const std::vector<std::string> &kvs) {
  Valuation v;
  for (const std::string &kv : kvs) {
    size_t eq = kv.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("--init expects name=value, got " + kv);
    v[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
  }
  return v;
}

double parse_bound(const std::string &s, double end) {
  if (s == "end") return end;
  if (s == "inf") return std::numeric_limits<double>::infinity();
  return std::stod(s);
}

Triple triple_of_json(const json &j) {
  Triple t;
  t.pre = parse_dc(j.at("pre").get<std::string>());
  t.proc = parse_process(j.at("proc").get<std::string>());
  t.post = parse_dc(j.at("post").get<std::string>());
  for (const auto &[x, k] : j.at("vars").items())
    t.vars[x] = k.get<std::string>() == "bool" ? VarKind::Boolean
                                               : VarKind::Real;
  t.mode = j.value("mode", "classic") == "diamond" ? TripleMode::Diamond
                                                   : TripleMode::Classic;
  return t;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Hybrid CSP / Duration Calculus verification workbench"};
  app.require_subcommand(1);

  std::string in, out, formula_file, traj_file, from = "0", to = "end";
  std::string scheduler = "fair-random", format = "text", goal_file;
  unsigned seed = 0;
  double horizon = 10, eps = 1e-3, ode_step = 1e-3, ode_tol = 1e-6;
  double tol = 1e-9;
  int fuel = 2000, jobs = 1, budget = 1000;
  bool strict = false, assume = false;
  std::vector<std::string> init_kvs;

  auto *c_parse = app.add_subcommand("parse", "parse and reprint a process");
  c_parse->add_option("input", in, "process file or -")->required();
  c_parse->add_option("-o,--output", out);

  auto *c_desugar =
      app.add_subcommand("desugar", "reduce a process to core constructs");
  c_desugar->add_option("input", in)->required();
  c_desugar->add_option("-o,--output", out);

  auto *c_gnf =
      app.add_subcommand("gnf", "expose one layer of guarded normal form");
  c_gnf->add_option("input", in)->required();
  c_gnf->add_option("-o,--output", out);

  auto *c_elim = app.add_subcommand(
      "elim-par", "rewrite parallel composition away via guard pairs");
  c_elim->add_option("input", in)->required();
  c_elim->add_option("--fuel", fuel, "parallel rewrites before giving up");
  c_elim->add_option("-o,--output", out);

  auto *c_sim = app.add_subcommand("simulate", "execute a process");
  c_sim->add_option("input", in)->required();
  c_sim->add_option("--seed", seed);
  c_sim->add_option("--horizon", horizon);
  c_sim->add_option("--eps", eps, "length of computation stretches");
  c_sim->add_option("--ode-step", ode_step);
  c_sim->add_option("--ode-tol", ode_tol);
  c_sim->add_option("--scheduler", scheduler)
      ->check(CLI::IsMember({"fair-random", "least-index"}));
  c_sim->add_option("--init", init_kvs, "initial values, name=value");
  c_sim->add_option("-o,--output", out, "trajectory file");

  auto *c_compile =
      app.add_subcommand("compile", "process to its duration-calculus form");
  c_compile->add_option("input", in)->required();
  c_compile->add_option("-o,--output", out);

  auto *c_trace = app.add_subcommand(
      "check-trace", "evaluate a formula against a trajectory");
  c_trace->add_option("formula", formula_file)->required();
  c_trace->add_option("trajectory", traj_file)->required();
  c_trace->add_option("--from", from, "interval start (default 0)");
  c_trace->add_option("--to", to, "interval end (default end; inf allowed)");
  c_trace->add_option("--tol", tol);
  c_trace->add_flag("--strict", strict,
                    "three-valued: unknown is not a pass");

  auto *c_proof =
      app.add_subcommand("check-proof", "validate a proof script");
  c_proof->add_option("input", in)->required();
  c_proof->add_option("--seed", seed);
  c_proof->add_option("--jobs", jobs, "falsification threads");
  c_proof->add_option("--format", format)
      ->check(CLI::IsMember({"text", "json"}));
  c_proof->add_option("-o,--output", out);

  auto *c_derive = app.add_subcommand(
      "derive", "emit a proof script for a process or a triple goal");
  c_derive->add_option("input", in, "process file (semantics triple proof)");
  c_derive->add_option("--goal", goal_file,
                       "triple JSON {pre, proc, post, vars, mode}");
  c_derive->add_option("--budget", budget,
                       "falsification budget for the goal's validity");
  c_derive->add_flag("--assume", assume,
                     "record the goal's validity as an assumption");
  c_derive->add_option("-o,--output", out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*c_parse) {
      emit(out, print_term(parse_process(slurp(in))));
      return 0;
    }
    if (*c_desugar) {
      emit(out, print_term(desugar(parse_process(slurp(in)))));
      return 0;
    }
    if (*c_gnf) {
      emit(out, print_term(to_gnf(parse_process(slurp(in)))));
      return 0;
    }
    if (*c_elim) {
      ElimResult r = eliminate_parallel(parse_process(slurp(in)), fuel);
      emit(out, print_term(r.term));
      if (!r.complete) {
        std::cerr << "incomplete: " << r.residue.size()
                  << " parallel configuration(s) left\n";
        for (const std::string &s : r.residue) std::cerr << "  " << s << "\n";
        return 1;
      }
      return 0;
    }
    if (*c_sim) {
      SimConfig cfg;
      cfg.seed = seed;
      cfg.horizon = horizon;
      cfg.negligible_eps = eps;
      cfg.ode_step = ode_step;
      cfg.ode_tol = ode_tol;
      cfg.scheduler = scheduler == "least-index" ? SimConfig::LeastIndex
                                                 : SimConfig::FairRandom;
      Run run = simulate(parse_process(slurp(in)), parse_init(init_kvs), cfg);
      emit(out, trajectory_to_json(run.trajectory));
      std::cerr << (run.terminated() ? "terminated" : "running") << " at t="
                << run.trajectory.T << "\n";
      return 0;
    }
    if (*c_compile) {
      emit(out, print_dc(compile_semantics(desugar(parse_process(slurp(in))))));
      return 0;
    }
    if (*c_trace) {
      DcPtr f = parse_dc(slurp(formula_file));
      Trajectory tr = trajectory_from_json(slurp(traj_file));
      double lo = parse_bound(from, tr.end_time());
      double hi = parse_bound(to, tr.end_time());
      EvalConfig ec;
      ec.tol = tol;
      ec.strict = strict;
      TV v = eval_formula(f, tr, lo, hi, ec);
      std::cout << tv_name(v) << "\n";
      return v == TV::True ? 0 : 1;
    }
    if (*c_proof) {
      ProofNode root = proof_from_json(slurp(in));
      FalsifyConfig cfg;
      cfg.seed = seed;
      cfg.jobs = jobs;
      ProofReport rep = check_proof(root, cfg);
      emit(out, format == "json" ? report_to_json(rep)
                                 : report_to_text(rep));
      return rep.ok() ? 0 : 1;
    }
    if (*c_derive) {
      ProofNode root;
      if (!goal_file.empty()) {
        Triple goal = triple_of_json(json::parse(slurp(goal_file)));
        Strategy s = assume ? Strategy::Assumed : Strategy::Falsify;
        root = derive_any(goal, s);
        for (Obligation &ob : root.premises[0].side_conditions)
          ob.budget = budget;
      } else if (!in.empty()) {
        TermPtr p = parse_process(slurp(in));
        root = derive_semantics_triple(p, controlled_vars(desugar(p)));
      } else {
        std::cerr << "derive needs a process file or --goal\n";
        return 2;
      }
      emit(out, proof_to_json(root));
      return 0;
    }
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
