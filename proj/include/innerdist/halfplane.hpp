#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "innerdist/angles.hpp"
#include "innerdist/arcs.hpp"
#include "innerdist/content.hpp"
#include "innerdist/errors.hpp"
#include "innerdist/inner_function.hpp"
#include "innerdist/measures.hpp"
#include "innerdist/preimage.hpp"

namespace innerdist {

// Disjoint bounded open intervals plus optional unbounded rays, canonical.
struct RealIntervalSet {
  std::vector<std::pair<double, double>> intervals;
  std::optional<double> left_ray;   // (-inf, c)
  std::optional<double> right_ray;  // (d, +inf)

  static constexpr double merge_tol = 1e-12;

  static RealIntervalSet make(std::vector<std::pair<double, double>> raw,
                              std::optional<double> left = std::nullopt,
                              std::optional<double> right = std::nullopt) {
    for (auto& iv : raw) {
      if (!std::isfinite(iv.first) || !std::isfinite(iv.second) || !(iv.second > iv.first))
        raise(errc::invalid_parameter, "intervals must be bounded with positive length");
    }
    std::sort(raw.begin(), raw.end());
    RealIntervalSet s;
    s.left_ray = left;
    s.right_ray = right;
    for (const auto& iv : raw) {
      if (s.left_ray && iv.first <= *s.left_ray + merge_tol) {
        s.left_ray = std::max(*s.left_ray, iv.second);
        continue;
      }
      if (!s.intervals.empty() && iv.first <= s.intervals.back().second + merge_tol)
        s.intervals.back().second = std::max(s.intervals.back().second, iv.second);
      else
        s.intervals.push_back(iv);
    }
    if (s.right_ray) {
      while (!s.intervals.empty() && s.intervals.back().second >= *s.right_ray - merge_tol) {
        s.right_ray = std::min(*s.right_ray, s.intervals.back().first);
        s.intervals.pop_back();
      }
      if (s.left_ray && *s.left_ray >= *s.right_ray - merge_tol)
        raise(errc::invalid_parameter, "rays overlap: the full line is not representable");
    }
    return s;
  }

  bool has_ray() const { return left_ray.has_value() || right_ray.has_value(); }
  bool empty() const { return intervals.empty() && !has_ray(); }

  double total_measure() const {
    if (has_ray()) return inf;
    double t = 0.0;
    for (const auto& iv : intervals) t += iv.second - iv.first;
    return t;
  }
};

// omega_p(z) = i (p + z) / (2 (p - z)): disc onto upper half-plane, p -> inf, 0 -> i/2.
inline complex cayley_point(const UnitPoint& p, complex z) {
  complex pc = p.point();
  return complex{0.0, 1.0} * (pc + z) / (2.0 * (pc - z));
}

inline complex cayley_point_inverse(const UnitPoint& p, complex w) {
  complex pc = p.point();
  const complex i{0.0, 1.0};
  return pc * (2.0 * w - i) / (2.0 * w + i);
}

namespace detail {

// Boundary action at the lifted offset u = theta - alpha in (0, 2pi):
// x = 0.5 cot((alpha - theta)/2) = -0.5 / tan(u/2), increasing -inf -> +inf.
inline double cayley_boundary(double u) { return -0.5 / std::tan(0.5 * u); }

inline double cayley_boundary_inverse(double x) { return pi + 2.0 * std::atan(2.0 * x); }

}  // namespace detail

// Exact endpoint transport of an ArcSet; arcs whose closure meets p come back
// with rays.  The full circle would need the whole line - rejected upstream.
inline RealIntervalSet cayley_to_line(const UnitPoint& p, const ArcSet& e) {
  if (e.is_full_circle())
    raise(errc::invalid_parameter, "image of the full circle is the whole line");
  std::vector<std::pair<double, double>> ivs;
  std::optional<double> left, right;
  for (const Arc& a : e.arcs()) {
    double ua = wrap_angle(a.start - p.theta);
    double ub = ua + a.length;
    if (ua == 0.0) {  // arc begins at p
      left = detail::cayley_boundary(ub);
      continue;
    }
    double xa = detail::cayley_boundary(ua);
    if (ub >= two_pi) {  // arc runs through (or up to) p
      right = xa;
      if (ub > two_pi) left = detail::cayley_boundary(ub - two_pi);
      continue;
    }
    ivs.emplace_back(xa, detail::cayley_boundary(ub));
  }
  return RealIntervalSet::make(std::move(ivs), left, right);
}

inline ArcSet cayley_to_circle(const UnitPoint& p, const RealIntervalSet& a) {
  std::vector<Arc> arcs;
  for (const auto& iv : a.intervals) {
    double ua = detail::cayley_boundary_inverse(iv.first);
    double ub = detail::cayley_boundary_inverse(iv.second);
    arcs.push_back(Arc{wrap_angle(p.theta + ua), ub - ua});
  }
  if (a.left_ray) arcs.push_back(Arc{p.theta, detail::cayley_boundary_inverse(*a.left_ray)});
  if (a.right_ray) {
    double ud = detail::cayley_boundary_inverse(*a.right_ray);
    arcs.push_back(Arc{wrap_angle(p.theta + ud), two_pi - ud});
  }
  return arcs.empty() ? ArcSet() : ArcSet::from_arcs(std::move(arcs));
}

struct PickPole {
  double x = 0.0;
  double t = 0.0;  // > 0
};

// g(w) = a w + b + sum t_k / (x_k - w): real on the line, inner in the upper
// half-plane; fixes infinity iff a > 0, with g'(inf) = 1/a.
struct PickFunction {
  double a = 0.0;
  double b = 0.0;
  std::vector<PickPole> poles;  // sorted by x, distinct
};

inline PickFunction make_pick(double a, double b, std::vector<PickPole> poles) {
  if (!std::isfinite(a) || a < 0.0 || !std::isfinite(b))
    raise(errc::invalid_parameter, "pick form needs finite b and slope a >= 0");
  std::sort(poles.begin(), poles.end(), [](const PickPole& u, const PickPole& v) { return u.x < v.x; });
  for (std::size_t i = 0; i < poles.size(); ++i) {
    if (!(poles[i].t > 0.0) || !std::isfinite(poles[i].x))
      raise(errc::invalid_parameter, "pick poles need finite location and positive weight");
    if (i > 0 && poles[i].x == poles[i - 1].x)
      raise(errc::invalid_parameter, "pick pole locations must be distinct");
  }
  return PickFunction{a, b, std::move(poles)};
}

struct TransferredInner {
  UnitPoint p;
  InnerFunction f;
};

using HalfPlaneInner = std::variant<TransferredInner, PickFunction>;

inline complex hp_evaluate(const HalfPlaneInner& g, complex w) {
  if (const auto* pk = std::get_if<PickFunction>(&g)) {
    complex v = pk->a * w + pk->b;
    for (const PickPole& pl : pk->poles) v += pl.t / (pl.x - w);
    return v;
  }
  const auto& tr = std::get<TransferredInner>(g);
  return cayley_point(tr.p, evaluate(tr.f, cayley_point_inverse(tr.p, w)));
}

inline double pick_real(const PickFunction& g, double w) {
  double v = g.a * w + g.b;
  for (const PickPole& pl : g.poles) v += pl.t / (pl.x - w);
  return v;
}

inline double pick_real_derivative(const PickFunction& g, double w) {
  double v = g.a;
  for (const PickPole& pl : g.poles) {
    double d = pl.x - w;
    v += pl.t / (d * d);
  }
  return v;
}

// g'(inf) = lim it/g(it): exact 1/a for the Pick form; |g'(inf)| = |f'(p)| for
// transfers, so the disc-side phase derivative answers directly.
inline double hp_derivative_at_infinity(const HalfPlaneInner& g) {
  if (const auto* pk = std::get_if<PickFunction>(&g)) {
    if (!(pk->a > 0.0)) raise(errc::not_fixing_infinity, "slope-zero pick form is bounded at infinity");
    return 1.0 / pk->a;
  }
  const auto& tr = std::get<TransferredInner>(g);
  double image = wrap_angle(lift(tr.f, tr.p.theta));
  double gap = std::min(wrap_angle(image - tr.p.theta), wrap_angle(tr.p.theta - image));
  if (gap > 1e-9) raise(errc::not_fixing_infinity, "transferred function does not fix the base point");
  return phase_derivative(tr.f, tr.p);
}

namespace detail {

// Invert the increasing branch of g on (lo, hi); infinite ends expand
// geometrically, pole-adjacent ends shrink geometrically toward the pole.
inline double pick_branch_invert(const PickFunction& g, double lo, double hi, double v) {
  double L, H;
  if (std::isinf(lo)) {
    double step = 1.0 + std::abs(v) / std::max(g.a, 1e-300);
    L = (std::isinf(hi) ? 0.0 : hi) - step;
    while (pick_real(g, L) > v) {
      step *= 2.0;
      L -= step;
      if (step > 1e300) raise(errc::budget_exceeded, "bracket expansion failed");
    }
  } else {
    double h = std::isinf(hi) ? 1.0 : 0.25 * (hi - lo);
    while (pick_real(g, lo + h) > v) {
      h *= 0.5;
      if (h < 1e-300) return lo;
    }
    L = lo + h;
  }
  if (std::isinf(hi)) {
    double step = 1.0 + std::abs(v) / std::max(g.a, 1e-300);
    H = (std::isinf(lo) ? 0.0 : lo) + step;
    while (pick_real(g, H) < v) {
      step *= 2.0;
      H += step;
      if (step > 1e300) raise(errc::budget_exceeded, "bracket expansion failed");
    }
  } else {
    double h = std::isinf(lo) ? 1.0 : 0.25 * (hi - lo);
    while (pick_real(g, hi - h) < v) {
      h *= 0.5;
      if (h < 1e-300) return hi;
    }
    H = hi - h;
  }
  for (int i = 0; i < 200; ++i) {
    double m = 0.5 * (L + H);
    if (m <= L || m >= H) break;
    (pick_real(g, m) < v ? L : H) = m;
  }
  double w = 0.5 * (L + H);
  for (int i = 0; i < 3; ++i) {
    double d = pick_real_derivative(g, w);
    if (!(d > 0.0) || std::isinf(d)) break;
    w = std::clamp(w - (pick_real(g, w) - v) / d, L, H);
  }
  return w;
}

}  // namespace detail

// Preimage under a slope-positive Pick function: on each of the poles+1
// maximal branches g increases from -inf to +inf, so every target interval
// pulls back to one interval per branch.  Transfers conjugate through omega_p.
inline RealIntervalSet hp_preimage(const HalfPlaneInner& g, const RealIntervalSet& a) {
  if (const auto* tr = std::get_if<TransferredInner>(&g)) {
    ArcSet target = cayley_to_circle(tr->p, a);
    return cayley_to_line(tr->p, boundary_preimage(tr->f, target).arcs);
  }
  const auto& pk = std::get<PickFunction>(g);
  if (!(pk.a > 0.0))
    raise(errc::invalid_parameter, "preimage needs a slope-positive pick form");
  std::vector<std::pair<double, double>> branches;
  branches.emplace_back(-inf, pk.poles.empty() ? inf : pk.poles.front().x);
  for (std::size_t i = 0; i + 1 < pk.poles.size(); ++i)
    branches.emplace_back(pk.poles[i].x, pk.poles[i + 1].x);
  if (!pk.poles.empty()) branches.emplace_back(pk.poles.back().x, inf);

  std::vector<std::pair<double, double>> ivs;
  std::optional<double> left, right;
  for (const auto& [lo, hi] : branches) {
    for (const auto& iv : a.intervals) {
      double wa = detail::pick_branch_invert(pk, lo, hi, iv.first);
      double wb = detail::pick_branch_invert(pk, lo, hi, iv.second);
      if (wb > wa) ivs.emplace_back(wa, wb);
    }
    if (a.left_ray) {
      double wc = detail::pick_branch_invert(pk, lo, hi, *a.left_ray);
      if (std::isinf(lo)) left = wc;
      else if (wc > lo) ivs.emplace_back(lo, wc);
    }
    if (a.right_ray) {
      double wd = detail::pick_branch_invert(pk, lo, hi, *a.right_ray);
      if (std::isinf(hi)) right = wd;
      else if (hi > wd) ivs.emplace_back(wd, hi);
    }
  }
  return RealIntervalSet::make(std::move(ivs), left, right);
}

// Line content with the (unnormalized) length gauge: linear run DP over hulls;
// a ray forces +inf by increment divergence.
inline double line_content(double alpha, const RealIntervalSet& s) {
  if (!(alpha > 0.0 && alpha < 1.0))
    raise(errc::invalid_parameter, "content exponent must lie in (0,1)");
  if (s.has_ray()) return inf;
  const std::size_t m = s.intervals.size();
  if (m == 0) return 0.0;
  std::vector<double> dp(m + 1, 0.0);
  for (std::size_t k = m; k-- > 0;) {
    double best = inf;
    for (std::size_t r = 1; r + k <= m; ++r) {
      double hull = s.intervals[k + r - 1].second - s.intervals[k].first;
      if (hull < 1e-14) hull = 0.0;
      best = std::min(best, std::pow(hull, alpha) + dp[k + r]);
    }
    dp[k] = best;
  }
  return dp[0];
}

struct CorollaryCheck {
  double measure_ratio = 0.0;  // expected 1
  double content_ratio = 0.0;  // expected positive and finite
};

inline CorollaryCheck hp_corollary_check(const HalfPlaneInner& g, const RealIntervalSet& a,
                                         double alpha) {
  if (a.has_ray()) raise(errc::invalid_parameter, "corollary check needs |A| finite");
  double dinf = hp_derivative_at_infinity(g);
  RealIntervalSet pre = hp_preimage(g, a);
  CorollaryCheck out;
  out.measure_ratio = pre.total_measure() / (dinf * a.total_measure());
  out.content_ratio = line_content(alpha, pre) / (std::pow(dinf, alpha) * line_content(alpha, a));
  return out;
}

}  // namespace innerdist
