#pragma once

#include <cmath>
#include <complex>
#include <numbers>

namespace innerdist {

using complex = std::complex<double>;

inline constexpr double two_pi = 2.0 * std::numbers::pi;
inline constexpr double pi = std::numbers::pi;

// Canonical representative in [0, 2pi).  fmod can return exactly two_pi after
// the correction when the input is a tiny negative angle, hence the second fold.
inline double wrap_angle(double theta) {
  double t = std::fmod(theta, two_pi);
  if (t < 0.0) t += two_pi;
  if (t >= two_pi) t -= two_pi;
  return t;
}

// Lift of theta into [alpha, alpha + 2pi).
inline double lift_above(double theta, double alpha) {
  double u = wrap_angle(theta - alpha);
  return alpha + u;
}

inline complex unit(double theta) { return std::polar(1.0, theta); }

// |e^{i a} - e^{i b}| without forming the difference of nearby complex values.
inline double chord(double a, double b) { return 2.0 * std::abs(std::sin(0.5 * (a - b))); }

// |e^{i theta} - r e^{i tau}|^2 = (1-r)^2 + 4 r sin^2((theta-tau)/2); exact as
// r -> 1 where the naive subtraction cancels.
inline double dist2_to_unit(double theta, double r, double tau) {
  double s = std::sin(0.5 * (theta - tau));
  double one_minus_r = 1.0 - r;
  return one_minus_r * one_minus_r + 4.0 * r * s * s;
}

inline double dist2_to_unit(double theta, const complex& z) {
  return dist2_to_unit(theta, std::abs(z), std::arg(z));
}

}  // namespace innerdist
