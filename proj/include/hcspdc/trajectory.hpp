#pragma once

#include <map>
#include <string>
#include <vector>

#include "hcspdc/dc.hpp"
#include "hcspdc/process.hpp"

namespace hcspdc {

/// A real-valued signal on one segment.
struct RealFn {
  enum Kind { Const, Affine, Samples } kind = Const;
  double c0 = 0;     // Const value / Affine value at the segment start
  double slope = 0;  // Affine
  std::vector<double> ts, vs;  // Samples (ts ascending, absolute times)

  double at(double t, double t0) const;  // value inside [t0, t1)
  static RealFn constant(double v);
  static RealFn affine(double v0, double slope);
};

/// One segment [t0, t1]: boolean signals constant on (t0, t1) with the
/// right value prevailing at t0; real signals given by functions; `end`
/// records the (right) value of every real variable at t1.
struct Segment {
  double t0 = 0, t1 = 0;
  std::map<std::string, bool> bools;
  std::map<std::string, RealFn> reals;
  std::map<std::string, double> end;
};

/// A finite-variability behaviour on [0, T], optionally extended to ∞ by a
/// constant tail equal to the values at T.
struct Trajectory {
  std::vector<Segment> segments;
  double T = 0;
  bool infinite_tail = false;

  double end_time() const;  // T, or ∞ with a tail
  /// value of a real variable at t, right value prevailing at breakpoints;
  /// t may be ∞ when there is a tail
  double val(const std::string &x, double t) const;
  bool bval(const std::string &x, double t) const;
  bool has_real(const std::string &x) const;
  bool has_bool(const std::string &x) const;

  /// segment index whose [t0, t1) contains t (last segment for t ≥ its t0)
  size_t segment_at(double t) const;
  std::vector<double> breakpoints() const;

  /// ∫S over [lo, hi] for piecewise-constant S; hi may be ∞
  double duration_of(const StatePtr &s, double lo, double hi) const;
  /// S's value on (t0,t1) of segment i (or the tail for i = size())
  bool state_on(const StatePtr &s, size_t i) const;
  /// change points of S within (lo, hi)
  std::vector<double> change_points(const StatePtr &s, double lo,
                                    double hi) const;

  void validate() const;  // throws on malformed structure
};

/// Single-valuedness of the recorded right values: each segment's `end`
/// must match the following segment's value at its start.
bool check_locality(const Trajectory &tr, const VarSet &vars);

std::string trajectory_to_json(const Trajectory &tr);
Trajectory trajectory_from_json(const std::string &text);

/// trajectory constant at `vals` on [0, T]
Trajectory constant_trajectory(const std::map<std::string, double> &reals,
                               const std::map<std::string, bool> &bools,
                               double T, bool infinite_tail);

}  // namespace hcspdc
