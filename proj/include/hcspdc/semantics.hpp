#pragma once

#include "hcspdc/dc.hpp"
#include "hcspdc/process.hpp"

namespace hcspdc {

/// Computation-step marker names for every parallel node of a term,
/// assigned deterministically in preorder ("R#1"/"R#2", "R#3"/"R#4", ...).
/// The simulator uses the same scheme, so compiled formulas can find their
/// split witnesses in recorded runs.
using ParMarkers =
    std::map<const ProcessTerm *, std::pair<std::string, std::string>>;
ParMarkers par_markers(const TermPtr &t);

struct SemContext {
  std::string R = "R";  // computation steps of the reference process
  std::string N = "N";  // computation steps of any process in the system
  VarSet V;             // variables controlled by the enveloping thread
  ParMarkers par_names;
  int counter = 1;  // next marker index for nodes missing from par_names
};

/// loc(V): every recorded right value is attained, i.e. variables are
/// single-valued at breakpoints.
DcPtr loc_formula(const VarSet &v);

/// const(V, X): variables in V∖X constant on all subintervals; those in X
/// constant on all proper prefixes (they may change at the right end).
DcPtr const_formula(const VarSet &v, const std::set<std::string> &x);

/// ⌈N∧¬R⌉⁰ ∧ ℓ<∞: a finite stretch of other processes' computation
DcPtr sync_gap_formula(const std::string &n, const std::string &r);

/// Marker well-formedness of a split of r into r1, r2 (exhaustive and
/// disjoint) plus the frame conditions: while rᵢ runs, the variables the
/// other operand controls (v minus vᵢ) stay constant.
DcPtr split_constraints(const std::string &r, const std::string &r1,
                        const std::string &r2, const VarSet &v,
                        const VarSet &v1, const VarSet &v2);

/// Four-disjunct interleaving pattern of two operand behaviours g1, g2
/// phrased over their own markers r1, r2: one operand spans the interval
/// while the other is embedded behind a finite sync gap and followed by
/// marker silence.
DcPtr par_phi(const DcPtr &g1, const DcPtr &g2, const std::string &r1,
              const std::string &r2, const std::string &n);

/// Compositional interval semantics of a desugared (core) term. Throws on
/// sugared constructs and on unbound recursion variables downstream.
DcPtr compile_semantics(const TermPtr &p, SemContext &ctx);

/// Convenience entry: R="R", N="N", V = the term's controlled variables.
DcPtr compile_semantics(const TermPtr &p);

}  // namespace hcspdc
