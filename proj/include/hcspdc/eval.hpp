#pragma once

#include "hcspdc/dc.hpp"
#include "hcspdc/trajectory.hpp"

namespace hcspdc {

enum class TV { False = 0, Unknown = 1, True = 2 };

inline TV tv_of(bool b) { return b ? TV::True : TV::False; }
inline TV tv_not(TV a) {
  return a == TV::True ? TV::False : a == TV::False ? TV::True : TV::Unknown;
}
inline TV tv_and(TV a, TV b) { return a < b ? a : b; }
inline TV tv_or(TV a, TV b) { return a > b ? a : b; }
const char *tv_name(TV v);

struct EvalConfig {
  int mu_depth = 64;       // cap on fixpoint sweeps
  int grid = 0;            // extra uniform chop candidates
  double tol = 1e-9;       // term-comparison tolerance
  double ode_tol = 1e-6;   // EvolvesBy integral tolerance
  bool strict = false;     // candidate-exhausted False becomes Unknown
  int split_budget = 12;   // max R-blocks enumerated for an ∃-split
};

/// Truth of φ over tr at [lo, hi]; hi may be ∞ when tr has a constant tail.
TV eval_formula(const DcPtr &f, const Trajectory &tr, double lo, double hi,
                const EvalConfig &cfg = {});

/// Value of an interval term (±∞ possible; NaN signals indeterminate
/// arithmetic and is reported by throwing).
double eval_term(const DcTermPtr &t, const Trajectory &tr, double lo,
                 double hi);

/// Finite ascending witness set for chop on [lo, hi]: breakpoints, the
/// endpoints, solutions of ℓ-atoms of f, and an optional uniform grid.
std::vector<double> chop_candidates(const DcPtr &f, const Trajectory &tr,
                                    double lo, double hi,
                                    const EvalConfig &cfg = {});

}  // namespace hcspdc
