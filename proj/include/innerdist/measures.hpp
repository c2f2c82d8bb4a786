#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <variant>
#include <vector>

#include "innerdist/angles.hpp"
#include "innerdist/arcs.hpp"
#include "innerdist/errors.hpp"

namespace innerdist {

inline constexpr double inf = std::numeric_limits<double>::infinity();

struct UnitPoint {
  double theta = 0.0;  // [0, 2pi)
  UnitPoint() = default;
  explicit UnitPoint(double t) : theta(wrap_angle(t)) {
    if (!std::isfinite(t)) raise(errc::invalid_parameter, "boundary angle must be finite");
  }
  complex point() const { return unit(theta); }
};

struct Lebesgue {};

struct Harmonic {
  complex z;  // |z| < 1
};

// Doering-Mane measure: density 1/|xi - p|^2 against normalized arc length.
// The interior/boundary split is an explicit tag, not inferred from |p|:
// near-tangential sequences sit within rounding of the circle yet must be
// treated as interior (finite measure).
struct DoeringMane {
  complex p{};         // interior location when !on_boundary
  double alpha = 0.0;  // boundary angle when on_boundary
  bool on_boundary = false;
};

using MeasureSpec = std::variant<Lebesgue, Harmonic, DoeringMane>;

inline MeasureSpec lebesgue() { return Lebesgue{}; }

inline MeasureSpec harmonic(complex z) {
  if (!(std::abs(z) < 1.0)) raise(errc::invalid_parameter, "harmonic base point must be interior");
  return Harmonic{z};
}

inline MeasureSpec doering_mane_boundary(double alpha) {
  return DoeringMane{complex{}, wrap_angle(alpha), true};
}

inline MeasureSpec doering_mane_interior(complex p) {
  if (!(std::abs(p) < 1.0)) raise(errc::invalid_parameter, "interior base point required");
  return DoeringMane{p, 0.0, false};
}

// |p| < 1 -> interior; |p| in [1, 1+1e-9] -> boundary point at arg p.
inline MeasureSpec doering_mane(complex p) {
  double r = std::abs(p);
  if (r > 1.0 + 1e-9) raise(errc::invalid_parameter, "base point outside the closed disc");
  if (r >= 1.0) return doering_mane_boundary(std::arg(p));
  return DoeringMane{p, 0.0, false};
}

// Boundary phase of w -> (w - z)/(1 - conj(z) w) at w = e^{i theta}, z = r e^{i tau}.
// Globally continuous strictly increasing lift (Re(1 - r e^{iu}) > 0 keeps the
// principal branch smooth); derivative is the Poisson kernel (1-r^2)/|e^{i theta}-z|^2.
inline double mobius_boundary_lift(double theta, double r, double tau) {
  double u = theta - tau;
  double s = std::sin(0.5 * u);
  return theta - 2.0 * std::atan2(-r * std::sin(u), (1.0 - r) + 2.0 * r * s * s);
}

namespace detail {

inline double harmonic_mass(const complex& z, const ArcSet& e) {
  if (e.empty()) return 0.0;
  if (e.is_full_circle()) return 1.0;
  double r = std::abs(z), tau = std::arg(z);
  double total = 0.0;
  for (const Arc& a : e.arcs())
    total += mobius_boundary_lift(arc_end(a), r, tau) - mobius_boundary_lift(a.start, r, tau);
  return total / two_pi;
}

// Per-arc closed form (1/4pi)[cot(u_a/2) - cot(u_b/2)] rewritten as a sine
// ratio so short arcs far from alpha do not cancel; +inf exactly when alpha
// lies in the closure of the set.
inline double dm_boundary_mass(double alpha, const ArcSet& e) {
  if (e.empty()) return 0.0;
  if (e.is_full_circle()) return inf;
  double total = 0.0;
  for (const Arc& a : e.arcs()) {
    double ua = wrap_angle(a.start - alpha);
    double ub = ua + a.length;
    if (ua <= 0.0 || ub >= two_pi) return inf;
    total += std::sin(0.5 * a.length) / (std::sin(0.5 * ua) * std::sin(0.5 * ub));
  }
  return total / (4.0 * pi);
}

}  // namespace detail

inline double measure(const MeasureSpec& spec, const ArcSet& e) {
  if (const auto* dm = std::get_if<DoeringMane>(&spec)) {
    if (dm->on_boundary) return detail::dm_boundary_mass(dm->alpha, e);
    double r2 = std::norm(dm->p);
    return detail::harmonic_mass(dm->p, e) / (1.0 - r2);
  }
  if (const auto* h = std::get_if<Harmonic>(&spec)) return detail::harmonic_mass(h->z, e);
  return e.total_length() / two_pi;
}

inline bool stolz_contains(const UnitPoint& p, double beta, const complex& z) {
  if (!(std::abs(z) < 1.0)) raise(errc::invalid_parameter, "stolz membership needs an interior point");
  return std::abs(z - p.point()) < beta * (1.0 - std::abs(z));
}

// Largest t with 1 - t e^{i gamma} still inside Gamma_beta(1); 0 when the ray
// direction leaves the cone (requires cos gamma > 1/beta).
inline double stolz_ray_extent(double beta, double gamma) {
  double c = std::cos(gamma);
  if (beta * c <= 1.0) return 0.0;
  return 2.0 * beta * (beta * c - 1.0) / (beta * beta - 1.0);
}

namespace detail {

struct StolzObjective {
  double beta;
  // z = 1 - s * t_max(gamma) e^{i gamma}; xi = e^{i theta}; value |xi - z| / |xi - 1|.
  double operator()(double gamma, double s, double theta) const {
    double t = s * stolz_ray_extent(beta, gamma);
    complex z = 1.0 - t * unit(gamma);
    double denom = 2.0 * std::abs(std::sin(0.5 * theta));
    return std::abs(unit(theta) - z) / denom;
  }
};

template <typename F>
inline double golden_min(F f, double lo, double hi, int iters, double* argmin) {
  constexpr double phi = 0.6180339887498949;
  double a = lo, b = hi;
  double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int i = 0; i < iters; ++i) {
    if (f1 < f2) {
      b = x2; x2 = x1; f2 = f1;
      x1 = b - phi * (b - a); f1 = f(x1);
    } else {
      a = x1; x1 = x2; f1 = f2;
      x2 = a + phi * (b - a); f2 = f(x2);
    }
  }
  double xm = 0.5 * (a + b), fm = f(xm);
  if (f1 < fm) { fm = f1; xm = x1; }
  if (f2 < fm) { fm = f2; xm = x2; }
  *argmin = xm;
  return fm;
}

}  // namespace detail

// inf over z in Gamma_beta(p), xi on the circle, of |xi - z| / |xi - p|;
// rotation-invariant, so computed at p = 1.  Deterministic dense grid plus
// golden-section refinement per coordinate (reproducibility over speed).
inline double stolz_comparison_constant(double beta) {
  if (!std::isfinite(beta) || !(beta > 1.0))
    raise(errc::invalid_parameter, "stolz opening must exceed 1");
  detail::StolzObjective obj{beta};
  const double gmax = std::acos(1.0 / beta);

  constexpr int ng = 121, ns = 13, nt = 241;
  double best = inf, bg = 0.0, bs = 1.0, bt = pi;
  std::vector<double> thetas(nt);
  for (int k = 0; k < nt; ++k) thetas[k] = two_pi * (k + 1) / (nt + 1);
  for (int i = 0; i < ng; ++i) {
    double gamma = gmax * (2.0 * i / (ng - 1) - 1.0);
    for (int j = 0; j < ns; ++j) {
      double s = static_cast<double>(j) / (ns - 1);
      for (int k = 0; k < nt; ++k) {
        double v = obj(gamma, s, thetas[k]);
        if (v < best) { best = v; bg = gamma; bs = s; bt = thetas[k]; }
      }
    }
  }

  const double dg = 2.0 * gmax / (ng - 1), ds = 1.0 / (ns - 1), dt = two_pi / (nt + 1);
  for (int round = 0; round < 4; ++round) {
    double x;
    best = detail::golden_min([&](double g) { return obj(g, bs, bt); },
                              std::max(-gmax, bg - dg), std::min(gmax, bg + dg), 60, &x);
    bg = x;
    best = detail::golden_min([&](double s) { return obj(bg, s, bt); },
                              std::max(0.0, bs - ds), std::min(1.0, bs + ds), 60, &x);
    bs = x;
    best = detail::golden_min([&](double t) { return obj(bg, bs, t); },
                              std::max(1e-9, bt - dt), std::min(two_pi - 1e-9, bt + dt), 60, &x);
    bt = x;
  }
  return best;
}

}  // namespace innerdist
