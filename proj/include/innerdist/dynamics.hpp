#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "innerdist/angles.hpp"
#include "innerdist/errors.hpp"
#include "innerdist/inner_function.hpp"

namespace innerdist {

struct BoundaryFixedPoint {
  UnitPoint point;
  double derivative = 0.0;  // phase derivative, +inf admissible
};

namespace detail {

inline double fixed_point_gap(const InnerFunction& f, double theta) {
  return lift(f, theta) - theta;
}

}  // namespace detail

// All boundary solutions of phi(theta) = theta (mod 2pi) for atom-free f,
// located by a dense scan for transversal crossings of the winding branches.
// Pure rotations yield none (the identity, where every point is fixed, is
// rejected upstream as a degenerate elliptic automorphism).
inline std::vector<BoundaryFixedPoint> boundary_fixed_points(const InnerFunction& f) {
  if (!f.atom_free())
    raise(errc::unsupported, "fixed-point scan requires an atom-free function");
  if (f.is_rotation_map()) return {};

  const std::size_t winding = f.total_winding();
  const std::size_t samples = 2048 * std::max<std::size_t>(winding, 1);
  std::vector<double> theta(samples + 1), g(samples + 1);
  for (std::size_t i = 0; i <= samples; ++i) {
    theta[i] = two_pi * static_cast<double>(i) / static_cast<double>(samples);
    g[i] = detail::fixed_point_gap(f, theta[i]);
  }
  double gmin = *std::min_element(g.begin(), g.end());
  double gmax = *std::max_element(g.begin(), g.end());

  std::vector<double> roots;
  for (double k = std::ceil(gmin / two_pi); k <= std::floor(gmax / two_pi); k += 1.0) {
    double target = two_pi * k;
    for (std::size_t i = 0; i < samples; ++i) {
      double ha = g[i] - target, hb = g[i + 1] - target;
      if (ha == 0.0) {
        roots.push_back(theta[i]);
      } else if (ha * hb < 0.0) {
        double a = theta[i], b = theta[i + 1];
        double fa = ha;
        for (int it = 0; it < 60; ++it) {
          double m = 0.5 * (a + b);
          if (m <= a || m >= b) break;
          double fm = detail::fixed_point_gap(f, m) - target;
          if ((fm < 0.0) == (fa < 0.0)) { a = m; fa = fm; } else { b = m; }
        }
        roots.push_back(0.5 * (a + b));
      }
    }
    if (g[samples] - target == 0.0) roots.push_back(theta[samples]);
  }

  for (double& r : roots) r = wrap_angle(r);
  std::sort(roots.begin(), roots.end());
  std::vector<BoundaryFixedPoint> out;
  constexpr double dedup = 1e-10;
  for (double r : roots) {
    if (!out.empty() && r - out.back().point.theta < dedup) continue;
    if (!out.empty() && (two_pi - r) + out.front().point.theta < dedup) continue;
    out.push_back(BoundaryFixedPoint{UnitPoint(r), phase_derivative(f, UnitPoint(r))});
  }
  return out;
}

struct DenjoyWolffPoint {
  complex location;
  double derivative = 0.0;  // |f'| at the point, <= 1
  bool on_boundary = false;
};

namespace detail {

// Chain of degree-<=1 atom-free stages folds to a Moebius matrix.  Any such
// chain is a disc automorphism, so the trace invariant |tr|^2/|det| settles the
// type: < 4 elliptic (interior fixed point, no attractor), otherwise the fixed
// points sit on the circle and come from the quadratic m10 z^2 + (m11-m00) z
// - m01 = 0.  Classifying before root-finding matters: a parabolic double root
// splits by sqrt(eps) under rounding and can stray inside the disc.
inline DenjoyWolffPoint dw_moebius(const InnerFunction& f) {
  complex m00{1.0, 0.0}, m01{0.0, 0.0}, m10{0.0, 0.0}, m11{1.0, 0.0};
  for (const auto& st : f.stages()) {
    complex eta = unit(st.rotation);
    complex a00 = eta, a01{0.0, 0.0}, a10{0.0, 0.0}, a11{1.0, 0.0};
    if (!st.zeros.empty()) {
      complex a = st.zeros[0];
      a01 = -eta * a;
      a10 = -std::conj(a);
    }
    complex n00 = a00 * m00 + a01 * m10, n01 = a00 * m01 + a01 * m11;
    complex n10 = a10 * m00 + a11 * m10, n11 = a10 * m01 + a11 * m11;
    m00 = n00; m01 = n01; m10 = n10; m11 = n11;
  }
  const complex det = m00 * m11 - m01 * m10;
  const double trace_ratio = std::norm(m00 + m11) / std::abs(det);
  if (trace_ratio < 4.0 - 1e-9)
    raise(errc::elliptic_automorphism, "disc automorphism with interior fixed point");

  const complex qa = m10, qb = m11 - m00, qc = -m01;
  std::vector<complex> cand;
  if (std::abs(qa) < 1e-14 * (std::abs(qb) + std::abs(qc))) {
    if (qb == complex{0.0, 0.0})
      raise(errc::elliptic_automorphism, "degenerate automorphism has no isolated fixed point");
    cand.push_back(-qc / qb);
  } else {
    complex disc = std::sqrt(qb * qb - 4.0 * qa * qc);
    // pick the additive sign that avoids cancellation, then use the root product
    complex q = (std::real(std::conj(qb) * disc) >= 0.0) ? -0.5 * (qb + disc) : -0.5 * (qb - disc);
    if (q == complex{0.0, 0.0}) {
      cand.push_back(complex{0.0, 0.0});
      cand.push_back(-qb / qa);
    } else {
      cand.push_back(q / qa);
      cand.push_back(qc / q);
    }
  }
  DenjoyWolffPoint best;
  bool have = false;
  for (const complex& z : cand) {
    if (!(std::abs(z) > 1.0 - 1e-6 && std::abs(z) < 1.0 + 1e-6)) continue;
    UnitPoint p(std::arg(z));
    double deriv = phase_derivative(f, p);
    if (!have || deriv < best.derivative) {
      best = DenjoyWolffPoint{p.point(), deriv, true};
      have = true;
    }
  }
  if (!have) raise(errc::unsupported, "moebius fixed-point search failed");
  return best;
}

inline DenjoyWolffPoint dw_boundary_scan(const InnerFunction& f, double hint_angle) {
  auto fps = boundary_fixed_points(f);
  const BoundaryFixedPoint* best = nullptr;
  for (const auto& fp : fps)
    if (fp.derivative <= 1.0 + 1e-9 && (!best || fp.derivative < best->derivative)) best = &fp;
  if (best) return DenjoyWolffPoint{best->point.point(), best->derivative, true};
  // Parabolic crossings can be tangential and escape the sign scan; refine the
  // iterate's landing angle against the nearest winding branch instead.
  double th = hint_angle;
  double k = std::round((lift(f, th) - th) / two_pi);
  for (int i = 0; i < 200; ++i) {
    double gval = lift(f, th) - th - two_pi * k;
    double gder = phase_derivative(f, UnitPoint(th)) - 1.0;
    if (gder == 0.0) break;
    double step = gval / gder;
    th -= step;
    if (std::abs(step) < 1e-14) break;
  }
  double resid = std::abs(lift(f, th) - th - two_pi * k);
  if (resid > 1e-8) raise(errc::unsupported, "boundary fixed-point refinement failed");
  return DenjoyWolffPoint{unit(wrap_angle(th)), phase_derivative(f, UnitPoint(th)), true};
}

}  // namespace detail

// Attracting fixed point in the closed disc.  Degree-1 chains resolve exactly
// through the Moebius matrix (and reject elliptic automorphisms); higher degree
// iterates from the origin per the classification thresholds, then refines.
inline DenjoyWolffPoint denjoy_wolff(const InnerFunction& f) {
  if (f.is_rotation_map())
    raise(errc::elliptic_automorphism, "rotations are elliptic about the origin");
  bool moebius = f.atom_free();
  if (moebius)
    for (const auto& st : f.stages())
      if (st.zeros.size() > 1) { moebius = false; break; }
  if (moebius) return detail::dw_moebius(f);

  complex z{0.0, 0.0};
  for (std::size_t step = 0; step < 100000; ++step) {
    complex zn = evaluate(f, z);
    double delta = std::abs(zn - z);
    z = zn;
    if (delta < 1e-13) break;
    if (std::abs(z) > 1.0 - 1e-10) break;  // guard: evaluate() needs interior input
  }

  if (std::abs(z) > 1.0 - 1e-8) {
    if (!f.atom_free())
      raise(errc::unsupported, "boundary attractor with atoms is outside the scan's scope");
    return detail::dw_boundary_scan(f, std::arg(z));
  }

  for (int i = 0; i < 100; ++i) {
    auto [v, d] = evaluate_with_derivative(f, z);
    complex step = (v - z) / (d - 1.0);
    z -= step;
    if (std::abs(z) >= 1.0) { z /= std::abs(z) * (1.0 + 1e-15); break; }
    if (std::abs(step) < 1e-15) break;
  }
  if (std::abs(z) > 1.0 - 1e-9) {
    // slow (parabolic-type) escape: the interior refinement ran to the rim
    if (!f.atom_free())
      raise(errc::unsupported, "boundary attractor with atoms is outside the scan's scope");
    return detail::dw_boundary_scan(f, std::arg(z));
  }
  double dmod = std::abs(evaluate_with_derivative(f, z).second);
  if (std::abs(dmod - 1.0) <= 1e-12)
    raise(errc::elliptic_automorphism, "interior fixed point with unimodular derivative");
  return DenjoyWolffPoint{z, dmod, false};
}

}  // namespace innerdist
