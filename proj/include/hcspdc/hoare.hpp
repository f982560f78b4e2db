#pragma once

#include <memory>
#include <string>
#include <vector>

#include "hcspdc/eval.hpp"
#include "hcspdc/process.hpp"
#include "hcspdc/semantics.hpp"
#include "hcspdc/trajectory.hpp"

namespace hcspdc {

/// How the precondition of a triple is read: Classic reads it as "A holds
/// at some initial subinterval" (A ⌢ ⊤); Diamond as "A holds at some
/// interval sharing the left endpoint" (◇ˡᶜ A), which is what recursive
/// processes need.
enum class TripleMode { Classic, Diamond };

/// {A} P {G}_V — the behaviour described by G is guaranteed over the
/// execution interval of P whenever A holds initially; V is the frame of
/// variables whose evolution P's semantics constrains.
struct Triple {
  DcPtr pre;
  TermPtr proc;
  DcPtr post;
  VarSet vars;
  TripleMode mode = TripleMode::Classic;
};

bool triple_equal(const Triple &a, const Triple &b);

/// The DC validity claim expressing that the triple holds.
DcPtr triple_validity(const Triple &t);

enum class Rule {
  AxiomPrim,  // {⊤} P {⟦P⟧}_V for primitive P
  Seq,
  Choice,  // internal choice ⊔
  If,
  While,  // classic mode only
  Par,
  N,  // necessitation: a valid implication yields a triple
  K,  // modal K: combine an implication-post triple with its antecedent
  Mu,        // diamond mode only
  ParEvolve  // drive ∥ into a pair of guarded evolutions
};

const char *rule_name(Rule r);
Rule rule_from_name(const std::string &s);

enum class Strategy { Assumed, Tautology, Falsify };
enum class ObStatus {
  Pending,
  DischargedTautology,
  DischargedEmpirically,
  Assumed,
  Failed
};

struct Counterexample {
  Trajectory trajectory;
  double lo = 0, hi = 0;
};

/// A DC validity claim a proof depends on, with the chosen way of
/// establishing it and the outcome.
struct Obligation {
  DcPtr formula;
  Strategy strategy = Strategy::Falsify;
  int budget = 1000;
  ObStatus status = ObStatus::Pending;
  std::shared_ptr<Counterexample> cex;
};

struct ProofNode {
  Rule rule = Rule::AxiomPrim;
  Triple conclusion;
  std::vector<ProofNode> premises;
  std::vector<Obligation> side_conditions;
};

/// Result of matching premises and conclusion against a rule schema: on
/// success the side conditions the instance requires, otherwise a
/// human-readable difference.
struct RuleMatch {
  bool ok = false;
  std::vector<DcPtr> obligations;
  std::string diff;
};

RuleMatch apply_rule(Rule rule, const std::vector<Triple> &premises,
                     const Triple &conclusion);

/// {⊤} p {⟦p⟧}_V for a primitive process (skip, ε, assignment, await,
/// guarded evolution). Throws on other constructs or when p writes
/// variables outside vars.
Triple semantics_axiom(const TermPtr &p, const VarSet &vars,
                       TripleMode mode = TripleMode::Classic);

struct FalsifyConfig {
  unsigned seed = 0;
  int max_segments = 8;
  double horizon = 20;
  double amplitude = 10;  // sampled values lie in [-amplitude, amplitude]
  int jobs = 1;
  EvalConfig eval{};
};

/// Establish or refute the obligation per its strategy. Falsification
/// samples `budget` random trajectories and intervals; a found
/// counterexample is definitive, exhaustion is recorded as empirical.
Obligation discharge(Obligation ob, const FalsifyConfig &cfg = {});

/// Validity of the propositional skeleton after sound DC simplification
/// (conservative: may say false for valid formulas, never the converse).
bool is_tautology(const DcPtr &f);
DcPtr simplify_dc(const DcPtr &f);

struct ObligationReport {
  std::string path;  // node position, e.g. "root.premise[1]"
  DcPtr formula;
  Strategy strategy;
  ObStatus status;
  std::shared_ptr<Counterexample> cex;
};

struct ProofReport {
  enum class Verdict { Valid, ValidModuloAssumptions, Invalid } verdict =
      Verdict::Valid;
  std::string failure;  // node path and reason for Invalid
  std::vector<ObligationReport> obligations;
  bool ok() const { return verdict != Verdict::Invalid; }
};

ProofReport check_proof(const ProofNode &root, const FalsifyConfig &cfg = {});

/// Constructive proof of {⊤} p {⟦p⟧}_V by structural recursion over the
/// desugared term (diamond mode: desugared loops are recursion terms).
ProofNode derive_semantics_triple(const TermPtr &p, const VarSet &vars);

/// Three-node derivation of an arbitrary triple from its validity: a
/// necessitation step, the constructive semantics proof, and a K step.
/// The triple's own validity claim is carried as an obligation with the
/// given strategy.
ProofNode derive_any(const Triple &t,
                     Strategy validity_strategy = Strategy::Falsify);

std::string proof_to_json(const ProofNode &root);
ProofNode proof_from_json(const std::string &text);

std::string report_to_text(const ProofReport &r);
std::string report_to_json(const ProofReport &r);

}  // namespace hcspdc
