#pragma once

#include "hcspdc/process.hpp"

namespace hcspdc {

/// Names of the shared handshake flags that encode channel operations.
std::string input_flag(const std::string &ch);   // ch?
std::string output_flag(const std::string &ch);  // ch!

/// Rewrites derived constructs (channel i/o, communication choice, wait,
/// timeout and interrupt on evolutions, while, star) into the core
/// fragment: skip, eps, assignment, await, evolve, ;, ||, if, |~|, mu.
/// Fresh clock variables are named t#k.
TermPtr desugar(const TermPtr &p);

struct WellFormednessReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

/// Checks guardedness of recursion (no recursion variable unguarded or
/// under a parallel composition inside its binder), disjointness of
/// controlled variables across ||, absence of unbound recursion variables,
/// and that dotted variables only appear in evolution right-hand sides.
WellFormednessReport check_wellformed(const TermPtr &p);

}  // namespace hcspdc
