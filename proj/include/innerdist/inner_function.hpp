#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

#include "innerdist/angles.hpp"
#include "innerdist/errors.hpp"
#include "innerdist/measures.hpp"

namespace innerdist {

struct Atom {
  double angle = 0.0;  // location e^{i angle}, canonical [0, 2pi)
  double mass = 0.0;   // > 0
};

// One multiplicative block eta * prod Blaschke(z; a_k) * prod exp(-c_j (s_j+z)/(s_j-z)).
// A block with no zeros and no atoms is the rotation map z -> eta z (a unimodular
// constant is not a self-map of the disc, so the empty product degenerates to
// the rotation rather than to the constant eta).
struct InnerStage {
  double rotation = 0.0;  // eta = e^{i rotation}
  std::vector<complex> zeros;
  std::vector<Atom> atoms;

  bool is_rotation_map() const { return zeros.empty() && atoms.empty(); }
  // Boundary winding per full turn; only meaningful when atom-free.
  std::size_t winding() const { return zeros.empty() ? 1 : zeros.size(); }
};

class InnerFunction {
 public:
  InnerFunction() { stages_.push_back(InnerStage{}); }  // identity

  static InnerFunction make(double rotation, std::vector<complex> zeros, std::vector<Atom> atoms) {
    InnerStage st;
    st.rotation = rotation;
    st.zeros = std::move(zeros);
    st.atoms = std::move(atoms);
    for (const complex& a : st.zeros)
      if (!(std::abs(a) < 1.0)) raise(errc::invalid_parameter, "blaschke zero must be interior");
    for (Atom& at : st.atoms) {
      if (!(at.mass > 0.0) || !std::isfinite(at.mass))
        raise(errc::invalid_parameter, "atom mass must be positive");
      at.angle = wrap_angle(at.angle);
    }
    for (std::size_t i = 0; i < st.atoms.size(); ++i)
      for (std::size_t j = i + 1; j < st.atoms.size(); ++j)
        if (st.atoms[i].angle == st.atoms[j].angle)
          raise(errc::invalid_parameter, "atom locations must be distinct");
    InnerFunction f;
    f.stages_.clear();
    f.stages_.push_back(std::move(st));
    return f;
  }

  static InnerFunction rotation(double alpha) { return make(alpha, {}, {}); }
  static InnerFunction blaschke(std::vector<complex> zeros, double rot = 0.0) {
    return make(rot, std::move(zeros), {});
  }
  static InnerFunction singular(std::vector<Atom> atoms, double rot = 0.0) {
    return make(rot, {}, std::move(atoms));
  }
  static InnerFunction power(std::size_t n) {  // z^n
    return blaschke(std::vector<complex>(n, complex{0.0, 0.0}));
  }

  const std::vector<InnerStage>& stages() const { return stages_; }

  bool atom_free() const {
    for (const auto& st : stages_)
      if (!st.atoms.empty()) return false;
    return true;
  }

  bool is_rotation_map() const {
    for (const auto& st : stages_)
      if (!st.is_rotation_map()) return false;
    return true;
  }

  // Product of stage windings; call only when atom_free().
  std::size_t total_winding() const {
    std::size_t n = 1;
    for (const auto& st : stages_) n *= st.winding();
    return n;
  }

  friend InnerFunction compose(const InnerFunction& outer, const InnerFunction& inner) {
    InnerFunction f;
    f.stages_ = inner.stages_;
    f.stages_.insert(f.stages_.end(), outer.stages_.begin(), outer.stages_.end());
    return f;
  }

 private:
  std::vector<InnerStage> stages_;  // innermost first
};

namespace detail {

inline complex stage_evaluate(const InnerStage& st, complex z) {
  complex w = unit(st.rotation);
  if (st.is_rotation_map()) return w * z;
  for (const complex& a : st.zeros) w *= (z - a) / (1.0 - std::conj(a) * z);
  if (!st.atoms.empty()) {
    complex expo{0.0, 0.0};
    for (const Atom& at : st.atoms) {
      complex s = unit(at.angle);
      expo += -at.mass * (s + z) / (s - z);
    }
    w *= std::exp(expo);  // Re(expo) <= 0 on the disc: no overflow near atoms
  }
  return w;
}

// Value and complex derivative together (product rule keeps z = a_k exact).
inline std::pair<complex, complex> stage_value_deriv(const InnerStage& st, complex z) {
  complex eta = unit(st.rotation);
  if (st.is_rotation_map()) return {eta * z, eta};
  std::vector<complex> factors, derivs;
  factors.reserve(st.zeros.size() + st.atoms.size());
  for (const complex& a : st.zeros) {
    complex den = 1.0 - std::conj(a) * z;
    factors.push_back((z - a) / den);
    derivs.push_back((1.0 - std::norm(a)) / (den * den));
  }
  for (const Atom& at : st.atoms) {
    complex s = unit(at.angle);
    complex d = s - z;
    complex F = std::exp(-at.mass * (s + z) / d);
    factors.push_back(F);
    derivs.push_back(F * (-2.0 * at.mass * s / (d * d)));
  }
  complex value = eta, deriv{0.0, 0.0};
  for (const complex& F : factors) value *= F;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    complex term = eta * derivs[i];
    for (std::size_t j = 0; j < factors.size(); ++j)
      if (j != i) term *= factors[j];
    deriv += term;
  }
  return {value, deriv};
}

// Continuous increasing boundary-phase lift of one stage; 2pi-equivariant with
// factor winding().  Poles at atom locations split the domain.
inline double stage_lift(const InnerStage& st, double theta) {
  if (st.is_rotation_map()) return st.rotation + theta;
  double phi = st.rotation;
  for (const complex& a : st.zeros) phi += mobius_boundary_lift(theta, std::abs(a), std::arg(a));
  for (const Atom& at : st.atoms) phi += at.mass / std::tan(0.5 * (at.angle - theta));
  return phi;
}

inline double stage_phase_derivative(const InnerStage& st, double theta) {
  if (st.is_rotation_map()) return 1.0;
  double d = 0.0;
  for (const complex& a : st.zeros)
    d += (1.0 - std::norm(a)) / dist2_to_unit(theta, std::abs(a), std::arg(a));
  for (const Atom& at : st.atoms) {
    double m2 = dist2_to_unit(theta, 1.0, at.angle);
    if (m2 == 0.0) return inf;
    d += 2.0 * at.mass / m2;
  }
  return d;
}

inline bool stage_hits_atom(const InnerStage& st, double theta) {
  double t = wrap_angle(theta);
  for (const Atom& at : st.atoms)
    if (t == at.angle) return true;
  return false;
}

}  // namespace detail

inline complex evaluate(const InnerFunction& f, complex z) {
  if (!(std::abs(z) < 1.0)) raise(errc::invalid_parameter, "evaluate needs an interior point");
  for (const auto& st : f.stages()) z = detail::stage_evaluate(st, z);
  return z;
}

inline std::pair<complex, complex> evaluate_with_derivative(const InnerFunction& f, complex z) {
  if (!(std::abs(z) < 1.0)) raise(errc::invalid_parameter, "evaluate needs an interior point");
  complex w = z, dw{1.0, 0.0};
  for (const auto& st : f.stages()) {
    auto [v, d] = detail::stage_value_deriv(st, w);
    dw *= d;
    w = v;
  }
  return {w, dw};
}

// Global boundary-phase lift phi with phi(theta) = arg f(e^{i theta}) mod 2pi,
// continuous and strictly increasing off atom preimages.  Raises on exact atom hits.
inline double lift(const InnerFunction& f, double theta) {
  for (const auto& st : f.stages()) {
    if (detail::stage_hits_atom(st, theta))
      raise(errc::atom_singularity, "phase lift evaluated at an atom location");
    theta = detail::stage_lift(st, theta);
  }
  return theta;
}

inline UnitPoint boundary_value(const InnerFunction& f, const UnitPoint& xi) {
  return UnitPoint(wrap_angle(lift(f, xi.theta)));
}

// Sum formula sum_k (1-|a_k|^2)/|xi-a_k|^2 + sum_j 2 c_j/|xi-s_j|^2 per stage,
// chain-ruled through the composition; +inf exactly at atom locations.
inline double phase_derivative(const InnerFunction& f, const UnitPoint& xi) {
  double total = 1.0, theta = xi.theta;
  for (const auto& st : f.stages()) {
    double d = detail::stage_phase_derivative(st, theta);
    if (d == inf) return inf;
    total *= d;
    theta = detail::stage_lift(st, theta);
  }
  return total;
}

inline double radial_quotient(const InnerFunction& f, const UnitPoint& p, double r) {
  if (!(r > 0.0 && r < 1.0)) raise(errc::invalid_parameter, "radial parameter must lie in (0,1)");
  complex w = evaluate(f, r * p.point());
  return (1.0 - std::abs(w)) / (1.0 - r);
}

// Monotone phase lift restricted to a domain arc free of atom locations.
struct PhaseLift {
  InnerFunction f;
  Arc domain;

  PhaseLift(InnerFunction fn, Arc dom) : f(std::move(fn)), domain(dom) {
    // A pole inside the domain shows up as a decrease between adjacent samples.
    constexpr int probes = 64;
    double prev = (*this)(domain.start);
    for (int i = 1; i <= probes; ++i) {
      double cur = (*this)(domain.start + domain.length * i / probes);
      if (!(cur > prev))
        raise(errc::invalid_parameter, "phase lift domain must avoid atom poles");
      prev = cur;
    }
  }

  double operator()(double theta) const { return lift(f, theta); }
  double derivative(double theta) const { return phase_derivative(f, UnitPoint(theta)); }
};

}  // namespace innerdist
