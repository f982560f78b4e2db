#pragma once

#include <cstdint>

#include "hcspdc/process.hpp"
#include "hcspdc/trajectory.hpp"

namespace hcspdc {

struct SimConfig {
  uint64_t seed = 0;
  double horizon = 10;
  double negligible_eps = 1e-3;  // length of computation stretches
  double ode_step = 1e-3;
  double ode_tol = 1e-6;
  long max_steps = 1000000;  // Zeno guard
  enum Scheduler { FairRandom, LeastIndex } scheduler = FairRandom;
};

struct SimEvent {
  double time = 0;
  std::string what;
};

struct Run {
  Trajectory trajectory;
  TermPtr final_term;  // ε iff the run terminated before the horizon
  std::vector<SimEvent> events;
  bool terminated() const;
};

/// Execute the reduction relation on p (desugared internally) from `init`
/// (missing variables default to 0/⊥). The trajectory records every
/// computation-stretch marker: the global R and N plus one marker per
/// parallel operand, named as in par_markers so compiled formulas find
/// their split witnesses. Deterministic for a fixed (p, init, cfg).
Run simulate(const TermPtr &p, const Valuation &init, const SimConfig &cfg);

}  // namespace hcspdc
