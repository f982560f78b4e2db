#include "hcspdc/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <json.hpp>

namespace hcspdc {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

double RealFn::at(double t, double t0) const {
  switch (kind) {
    case Const:
      return c0;
    case Affine:
      return c0 + slope * (t - t0);
    case Samples: {
      if (ts.empty()) throw std::runtime_error("empty sample signal");
      if (t <= ts.front()) return vs.front();
      if (t >= ts.back()) return vs.back();
      size_t i = std::upper_bound(ts.begin(), ts.end(), t) - ts.begin();
      double a = ts[i - 1], b = ts[i];
      double w = b > a ? (t - a) / (b - a) : 0.0;
      return vs[i - 1] * (1 - w) + vs[i] * w;
    }
  }
  throw std::logic_error("bad RealFn kind");
}

RealFn RealFn::constant(double v) {
  RealFn f;
  f.kind = Const;
  f.c0 = v;
  return f;
}

RealFn RealFn::affine(double v0, double s) {
  RealFn f;
  f.kind = Affine;
  f.c0 = v0;
  f.slope = s;
  return f;
}

double Trajectory::end_time() const { return infinite_tail ? kInf : T; }

size_t Trajectory::segment_at(double t) const {
  if (segments.empty()) throw std::runtime_error("empty trajectory");
  size_t lo = 0, hi = segments.size() - 1;
  while (lo < hi) {
    size_t mid = (lo + hi + 1) / 2;
    if (segments[mid].t0 <= t)
      lo = mid;
    else
      hi = mid - 1;
  }
  return lo;
}

double Trajectory::val(const std::string &x, double t) const {
  if (std::isinf(t) || t >= T) {
    // right value at T, which is also the constant-tail value
    auto it = segments.back().end.find(x);
    if (it == segments.back().end.end())
      throw std::runtime_error("unknown variable: " + x);
    return it->second;
  }
  size_t i = segment_at(t);
  const Segment &s = segments[i];
  if (t == s.t1) {
    // breakpoint: the right value prevails
    auto it = s.end.find(x);
    if (it == s.end.end()) throw std::runtime_error("unknown variable: " + x);
    return it->second;
  }
  auto it = s.reals.find(x);
  if (it == s.reals.end()) throw std::runtime_error("unknown variable: " + x);
  return it->second.at(t, s.t0);
}

bool Trajectory::bval(const std::string &x, double t) const {
  size_t i = std::isinf(t) || t >= T ? segments.size() - 1 : segment_at(t);
  const Segment &s = segments[i];
  auto it = s.bools.find(x);
  if (it == s.bools.end())
    throw std::runtime_error("unknown boolean signal: " + x);
  return it->second;
}

bool Trajectory::has_real(const std::string &x) const {
  return segments.back().end.count(x) != 0;
}

bool Trajectory::has_bool(const std::string &x) const {
  return segments.back().bools.count(x) != 0;
}

std::vector<double> Trajectory::breakpoints() const {
  std::vector<double> out;
  for (const Segment &s : segments) out.push_back(s.t0);
  out.push_back(T);
  return out;
}

bool Trajectory::state_on(const StatePtr &s, size_t i) const {
  const Segment &seg = segments[std::min(i, segments.size() - 1)];
  std::function<bool(const StatePtr &)> ev = [&](const StatePtr &e) -> bool {
    switch (e->kind) {
      case StateKind::Var: {
        auto it = seg.bools.find(e->name);
        if (it == seg.bools.end())
          throw std::runtime_error("unknown state variable: " + e->name);
        return it->second;
      }
      case StateKind::Lit:
        return e->value;
      case StateKind::Not:
        return !ev(e->a);
      case StateKind::And:
        return ev(e->a) && ev(e->b);
      case StateKind::Or:
        return ev(e->a) || ev(e->b);
      case StateKind::Imp:
        return !ev(e->a) || ev(e->b);
    }
    throw std::logic_error("bad state kind");
  };
  return ev(s);
}

double Trajectory::duration_of(const StatePtr &s, double lo, double hi) const {
  double total = 0;
  if (std::isinf(hi)) {
    if (!infinite_tail)
      throw std::runtime_error("infinite interval on a finite trajectory");
    if (state_on(s, segments.size())) return kInf;
    hi = T;
    if (lo > hi) return 0;
  }
  if (hi > T && state_on(s, segments.size()))
    total += hi - std::max(lo, T);
  for (size_t i = 0; i < segments.size(); ++i) {
    double a = std::max(lo, segments[i].t0);
    double b = std::min(hi, segments[i].t1);
    if (b > a && state_on(s, i)) total += b - a;
  }
  return total;
}

std::vector<double> Trajectory::change_points(const StatePtr &s, double lo,
                                              double hi) const {
  std::vector<double> out;
  for (size_t i = 0; i + 1 < segments.size(); ++i) {
    double t = segments[i].t1;
    if (t > lo && t < hi && state_on(s, i) != state_on(s, i + 1))
      out.push_back(t);
  }
  return out;
}

void Trajectory::validate() const {
  if (segments.empty()) throw std::runtime_error("trajectory has no segments");
  if (segments.front().t0 != 0)
    throw std::runtime_error("trajectory must start at 0");
  for (size_t i = 0; i < segments.size(); ++i) {
    const Segment &s = segments[i];
    if (!(s.t1 >= s.t0)) throw std::runtime_error("segment with t1 < t0");
    if (i + 1 < segments.size() && segments[i + 1].t0 != s.t1)
      throw std::runtime_error("segments do not tile the timeline");
    for (auto &[x, fn] : s.reals)
      if (!s.end.count(x))
        throw std::runtime_error("missing end value for " + x);
  }
  if (segments.back().t1 != T)
    throw std::runtime_error("horizon does not match last segment");
}

bool check_locality(const Trajectory &tr, const VarSet &vars) {
  const double tol = 1e-9;
  for (auto &[x, kind] : vars) {
    if (kind == VarKind::Boolean) continue;  // single-valued by construction
    for (size_t i = 0; i + 1 < tr.segments.size(); ++i) {
      auto e = tr.segments[i].end.find(x);
      auto f = tr.segments[i + 1].reals.find(x);
      if (e == tr.segments[i].end.end() ||
          f == tr.segments[i + 1].reals.end())
        return false;
      double right = f->second.at(tr.segments[i + 1].t0, tr.segments[i + 1].t0);
      if (std::abs(e->second - right) > tol) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

using nlohmann::json;

std::string trajectory_to_json(const Trajectory &tr) {
  json j;
  j["horizon"] = {{"T", tr.T},
                  {"tail", tr.infinite_tail ? "constant" : "none"}};
  json segs = json::array();
  for (const Segment &s : tr.segments) {
    json js;
    js["t0"] = s.t0;
    js["t1"] = s.t1;
    json bj = json::object();
    for (auto &[x, v] : s.bools) bj[x] = v ? 1 : 0;
    js["bools"] = bj;
    json rj = json::object();
    for (auto &[x, f] : s.reals) {
      json fj;
      switch (f.kind) {
        case RealFn::Const:
          fj["kind"] = "const";
          fj["data"] = f.c0;
          break;
        case RealFn::Affine:
          fj["kind"] = "affine";
          fj["data"] = {f.c0, f.slope};
          break;
        case RealFn::Samples:
          fj["kind"] = "samples";
          fj["data"] = {{"ts", f.ts}, {"vs", f.vs}};
          break;
      }
      rj[x] = fj;
    }
    js["reals"] = rj;
    json ej = json::object();
    for (auto &[x, v] : s.end) ej[x] = v;
    js["end"] = ej;
    segs.push_back(js);
  }
  j["segments"] = segs;
  return j.dump(1);
}

Trajectory trajectory_from_json(const std::string &text) {
  json j = json::parse(text);
  Trajectory tr;
  tr.T = j.at("horizon").at("T").get<double>();
  tr.infinite_tail = j.at("horizon").at("tail").get<std::string>() ==
                     "constant";
  for (const json &js : j.at("segments")) {
    Segment s;
    s.t0 = js.at("t0").get<double>();
    s.t1 = js.at("t1").get<double>();
    for (auto &[x, v] : js.at("bools").items())
      s.bools[x] = v.get<int>() != 0;
    for (auto &[x, fj] : js.at("reals").items()) {
      RealFn f;
      std::string kind = fj.at("kind").get<std::string>();
      if (kind == "const") {
        f.kind = RealFn::Const;
        f.c0 = fj.at("data").get<double>();
      } else if (kind == "affine") {
        f.kind = RealFn::Affine;
        f.c0 = fj.at("data").at(0).get<double>();
        f.slope = fj.at("data").at(1).get<double>();
      } else if (kind == "samples") {
        f.kind = RealFn::Samples;
        f.ts = fj.at("data").at("ts").get<std::vector<double>>();
        f.vs = fj.at("data").at("vs").get<std::vector<double>>();
      } else {
        throw std::runtime_error("unknown signal kind: " + kind);
      }
      s.reals[x] = std::move(f);
    }
    for (auto &[x, v] : js.at("end").items()) s.end[x] = v.get<double>();
    tr.segments.push_back(std::move(s));
  }
  tr.validate();
  return tr;
}

Trajectory constant_trajectory(const std::map<std::string, double> &reals,
                               const std::map<std::string, bool> &bools,
                               double T, bool infinite_tail) {
  Trajectory tr;
  tr.T = T;
  tr.infinite_tail = infinite_tail;
  Segment s;
  s.t0 = 0;
  s.t1 = T;
  s.bools = bools;
  for (auto &[x, v] : reals) {
    s.reals[x] = RealFn::constant(v);
    s.end[x] = v;
  }
  tr.segments.push_back(std::move(s));
  return tr;
}

}  // namespace hcspdc
