#pragma once

#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "innerdist/angles.hpp"
#include "innerdist/arcs.hpp"
#include "innerdist/errors.hpp"
#include "innerdist/halfplane.hpp"
#include "innerdist/inner_function.hpp"
#include "innerdist/rng.hpp"

namespace innerdist {

inline complex random_interior(SplitMix64& rng, double rmax = 0.9) {
  double r = rmax * std::sqrt(rng.uniform());
  return std::polar(r, rng.uniform(0.0, two_pi));
}

inline InnerFunction random_blaschke(SplitMix64& rng, std::size_t max_degree = 8) {
  std::size_t degree = 1 + rng.below(max_degree);
  std::vector<complex> zeros;
  zeros.reserve(degree);
  for (std::size_t i = 0; i < degree; ++i) {
    double r = 0.95 * std::sqrt(rng.uniform());
    zeros.push_back(std::polar(r, rng.uniform(0.0, two_pi)));
  }
  return InnerFunction::blaschke(std::move(zeros), rng.uniform(0.0, two_pi));
}

// Zeros symmetric under conjugation and rotation zero: each pair contributes
// B_a(1) B_conj(a)(1) = 1 and the lift offsets cancel exactly (atan2 is odd),
// so f(1) = 1 holds to the last bit.
inline InnerFunction random_symmetric_blaschke(SplitMix64& rng, std::size_t max_pairs = 4) {
  std::size_t pairs = 1 + rng.below(max_pairs);
  std::vector<complex> zeros;
  for (std::size_t i = 0; i < pairs; ++i) {
    double r = 0.9 * std::sqrt(rng.uniform());
    double t = rng.uniform(0.05, pi - 0.05);
    zeros.push_back(std::polar(r, t));
    zeros.push_back(std::polar(r, -t));
  }
  if (rng.uniform() < 0.5) zeros.push_back(complex{rng.uniform(-0.9, 0.9), 0.0});
  return InnerFunction::blaschke(std::move(zeros));
}

// Truncated family a_k = (1 - 4^{-k}) e^{i 2^{-k}}, k = 1..n; representable in
// binary64 only up to k = 26 (beyond that 1 - 4^{-k} rounds onto the circle).
inline InnerFunction truncated_family(std::size_t n) {
  if (n > 26) raise(errc::invalid_parameter, "truncation zeros collapse onto the circle past k=26");
  std::vector<complex> zeros;
  zeros.reserve(n);
  for (std::size_t k = 1; k <= n; ++k)
    zeros.push_back(std::polar(1.0 - std::pow(4.0, -static_cast<double>(k)),
                               std::pow(2.0, -static_cast<double>(k))));
  return InnerFunction::blaschke(std::move(zeros));
}

// Closed-form partial sum of (1-|a_k|^2)/|1-a_k|^2 for the truncated family;
// valid far past the representability horizon of the zeros themselves.
inline double truncation_derivative_sum(std::size_t n) {
  double s = 0.0;
  for (std::size_t k = 1; k <= n; ++k) {
    double q = std::pow(4.0, -static_cast<double>(k));  // 1 - r
    double sn = std::sin(std::pow(2.0, -static_cast<double>(k) - 1.0));
    s += q * (2.0 - q) / (q * q + 4.0 * (1.0 - q) * sn * sn);
  }
  return s;
}

inline double truncation_frostman_sum(std::size_t n) {
  double s = 0.0;
  for (std::size_t k = 1; k <= n; ++k) {
    double q = std::pow(4.0, -static_cast<double>(k));
    double sn = std::sin(std::pow(2.0, -static_cast<double>(k) - 1.0));
    s += q / std::sqrt(q * q + 4.0 * (1.0 - q) * sn * sn);
  }
  return s;
}

// Arc set with every point at angular distance >= min_dist from each avoided
// angle and total length <= max_total; rejection keeps draws deterministic.
inline ArcSet random_arcset(SplitMix64& rng, std::size_t max_arcs, double min_dist,
                            const std::vector<double>& avoid, double max_total = 2.0) {
  for (int attempt = 0; attempt < 500; ++attempt) {
    std::size_t k = 1 + rng.below(max_arcs);
    std::vector<Arc> arcs;
    for (std::size_t i = 0; i < k; ++i)
      arcs.push_back(Arc{rng.uniform(0.0, two_pi),
                         rng.uniform(0.02, std::max(0.04, max_total / static_cast<double>(k)))});
    ArcSet e = ArcSet::from_arcs(std::move(arcs));
    if (e.total_length() > max_total) continue;
    bool ok = true;
    for (double ang : avoid)
      if (e.distance_to(ang) < min_dist) { ok = false; break; }
    if (ok) return e;
  }
  raise(errc::budget_exceeded, "arc sampling kept colliding with avoided angles");
}

inline PickFunction random_pick(SplitMix64& rng, std::size_t max_poles = 4) {
  double a = rng.uniform(0.3, 2.0);
  double b = rng.uniform(-2.0, 2.0);
  std::size_t n = 1 + rng.below(max_poles);
  std::vector<PickPole> poles;
  for (std::size_t i = 0; i < n; ++i)
    poles.push_back(PickPole{rng.uniform(-3.0, 3.0), rng.uniform(0.1, 2.0)});
  for (std::size_t i = 0; i < poles.size(); ++i)
    for (std::size_t j = i + 1; j < poles.size(); ++j)
      if (poles[i].x == poles[j].x) poles[j].x += 0.125;  // deterministic nudge
  return make_pick(a, b, std::move(poles));
}

inline RealIntervalSet random_interval_set(SplitMix64& rng, std::size_t max_ivs = 3) {
  std::size_t n = 1 + rng.below(max_ivs);
  std::vector<std::pair<double, double>> ivs;
  for (std::size_t i = 0; i < n; ++i) {
    double lo = rng.uniform(-4.0, 4.0);
    ivs.emplace_back(lo, lo + rng.uniform(0.1, 1.5));
  }
  return RealIntervalSet::make(std::move(ivs));
}

}  // namespace innerdist
