#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "innerdist/angles.hpp"
#include "innerdist/arcs.hpp"
#include "innerdist/errors.hpp"
#include "innerdist/inner_function.hpp"
#include "innerdist/measures.hpp"

namespace innerdist {

struct PreimageOptions {
  double atom_clearance = 0.01;     // angular radius removed around each atom
  std::size_t max_arcs = 20000;     // enumeration cap per stage
  double residual_tolerance = 1e-6; // acceptable mass loss before budget-exceeded
};

struct PreimageResult {
  ArcSet arcs;
  double residual_bound = 0.0;  // exactly 0 for atom-free functions
};

namespace detail {

// Solve stage_lift(st, theta) = v by bisection on [lo, hi] (lift monotone there),
// then a short Newton polish; flo <= v <= fhi is the caller's bracket.
inline double invert_lift(const InnerStage& st, double lo, double hi, double v) {
  double a = lo, b = hi;
  for (int i = 0; i < 60; ++i) {
    double m = 0.5 * (a + b);
    if (m <= a || m >= b) break;
    (stage_lift(st, m) < v ? a : b) = m;
  }
  double th = 0.5 * (a + b);
  for (int i = 0; i < 3; ++i) {
    double d = stage_phase_derivative(st, th);
    if (!(d > 0.0) || d == inf) break;
    double step = (stage_lift(st, th) - v) / d;
    th = std::clamp(th - step, lo, hi);
  }
  return th;
}

// Preimage pieces of `target` under one atom-free stage: the 2pi-equivariant
// lift (factor n = winding) makes each target arc pull back to exactly n arcs.
inline void atom_free_stage_preimage(const InnerStage& st, const ArcSet& target,
                                     std::vector<Arc>& out) {
  const double n = static_cast<double>(st.winding());
  const double period = two_pi * n;
  const double phi0 = stage_lift(st, 0.0);
  auto solve = [&](double v) {
    double k = std::floor((v - phi0) / period);
    double vr = v - k * period;
    // vr can graze phi0 + period from below through rounding
    vr = std::min(vr, phi0 + period);
    return invert_lift(st, 0.0, two_pi, vr) + k * two_pi;
  };
  for (const Arc& t : target.arcs()) {
    for (std::size_t j = 0; j < st.winding(); ++j) {
      double va = lift_above(t.start, phi0) + two_pi * static_cast<double>(j);
      double ta = solve(va);
      double tb = solve(va + t.length);
      if (tb > ta) out.push_back(Arc{wrap_angle(ta), tb - ta});
    }
  }
}

// Truncated enumeration between consecutive atoms: on each residual interval
// the lift increases monotonically from a finite floor to a finite ceiling,
// sweeping ~mass/clearance winding sheets that each may meet every target arc.
inline bool atom_stage_preimage(const InnerStage& st, const ArcSet& target,
                                const PreimageOptions& opts, std::vector<Arc>& out) {
  std::vector<double> locs;
  locs.reserve(st.atoms.size());
  for (const Atom& at : st.atoms) locs.push_back(at.angle);
  std::sort(locs.begin(), locs.end());
  bool complete = true;
  for (std::size_t i = 0; i < locs.size(); ++i) {
    double lo = locs[i] + opts.atom_clearance;
    double hi = (i + 1 < locs.size() ? locs[i + 1] : locs[0] + two_pi) - opts.atom_clearance;
    if (hi <= lo) continue;
    double flo = stage_lift(st, lo), fhi = stage_lift(st, hi);
    for (const Arc& t : target.arcs()) {
      double mlo = std::ceil((flo - t.start - t.length) / two_pi);
      double mhi = std::floor((fhi - t.start) / two_pi);
      for (double m = mlo; m <= mhi; m += 1.0) {
        double va = std::max(t.start + two_pi * m, flo);
        double vb = std::min(t.start + t.length + two_pi * m, fhi);
        if (vb <= va) continue;
        if (out.size() >= opts.max_arcs) { complete = false; break; }
        double ta = invert_lift(st, lo, hi, va);
        double tb = invert_lift(st, lo, hi, vb);
        if (tb > ta) out.push_back(Arc{wrap_angle(ta), tb - ta});
      }
      if (!complete) break;
    }
    if (!complete) break;
  }
  return complete;
}

inline ArcSet stage_preimage(const InnerStage& st, const ArcSet& target,
                             const PreimageOptions& opts, bool* complete) {
  if (target.empty() || target.is_full_circle()) return target;
  if (st.is_rotation_map()) return rotate(target, -st.rotation);
  std::vector<Arc> out;
  if (st.atoms.empty()) {
    atom_free_stage_preimage(st, target, out);
    if (out.size() > opts.max_arcs) *complete = false;
  } else {
    if (!atom_stage_preimage(st, target, opts, out)) *complete = false;
  }
  return out.empty() ? ArcSet() : ArcSet::from_arcs(std::move(out));
}

}  // namespace detail

// Arcs mapping into e under the boundary extension, outermost stage first.
// Completeness is certified by harmonic-measure conservation at the origin:
// residual_bound = lambda_{f(0)}(e) - lambda(found), which is exactly 0 for
// atom-free f where the sheet enumeration is exhaustive.
inline PreimageResult boundary_preimage(const InnerFunction& f, const ArcSet& e,
                                        const PreimageOptions& opts = {}) {
  if (!f.atom_free() && !(opts.atom_clearance > 0.0))
    raise(errc::invalid_parameter, "atom clearance must be positive");
  PreimageResult res;
  if (e.empty() || e.is_full_circle()) {
    res.arcs = e;
    return res;
  }
  bool complete = true;
  ArcSet current = e;
  for (auto it = f.stages().rbegin(); it != f.stages().rend(); ++it)
    current = detail::stage_preimage(*it, current, opts, &complete);
  res.arcs = current;
  if (f.atom_free()) {
    res.residual_bound = 0.0;
  } else {
    double expected = measure(harmonic(evaluate(f, complex{0.0, 0.0})), e);
    double found = measure(lebesgue(), res.arcs);
    res.residual_bound = std::max(0.0, expected - found);
    if (!complete && res.residual_bound > opts.residual_tolerance)
      raise(errc::budget_exceeded, "arc budget exhausted with residual above tolerance");
  }
  return res;
}

}  // namespace innerdist
