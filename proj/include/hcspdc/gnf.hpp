#pragma once

#include "hcspdc/process.hpp"

namespace hcspdc {

/// Guarded-shape predicate: skip | A;R | []i Ai;Ri | if b then P else Q |
/// P |~| Q, where A is an assignment, await or evolution and the
/// continuations R are unrestricted.
bool is_gnf(const TermPtr &p);

/// Expose one layer of guards: while/mu are unfolded once, sequential
/// composition is pushed into continuations, parallel compositions at the
/// exposed layer are driven inward by the guard-pair rule table (their
/// residues reappear inside continuations). Throws on unguarded
/// divergence.
TermPtr to_gnf(const TermPtr &p);

struct ElimResult {
  TermPtr term;
  bool complete = true;               // no parallel node remains
  std::vector<std::string> residue;   // parallel subterms left when the
                                      // fuel ran out
};

/// Drive every parallel composition inward until none remains, spending
/// one unit of fuel per parallel rewrite. Loops under a parallel node are
/// unfolded; when an already-seen parallel configuration reappears it is
/// folded back into a tail-recursive mu binder.
ElimResult eliminate_parallel(const TermPtr &p, int fuel);

/// Fold a repeated configuration back into a loop: the first subterm that
/// recurs inside its own continuations (searching at most `bound` nodes)
/// becomes a mu binder; the mu/if/seq/skip shape is rendered as while.
/// Throws when no repetition is found.
TermPtr refold_loops(const TermPtr &p, int bound);

}  // namespace hcspdc
