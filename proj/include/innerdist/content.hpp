#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "innerdist/angles.hpp"
#include "innerdist/arcs.hpp"
#include "innerdist/errors.hpp"
#include "innerdist/inner_function.hpp"
#include "innerdist/measures.hpp"
#include "innerdist/preimage.hpp"

namespace innerdist {

struct ContentQuery {
  double alpha = 0.5;
  MeasureSpec spec;
  ArcSet target;
  std::optional<UnitPoint> excluded;  // present exactly for boundary Doering-Mane gauges
};

inline ContentQuery make_content_query(double alpha, MeasureSpec spec, ArcSet target) {
  ContentQuery q;
  q.alpha = alpha;
  q.spec = std::move(spec);
  q.target = std::move(target);
  if (const auto* dm = std::get_if<DoeringMane>(&q.spec); dm && dm->on_boundary)
    q.excluded = UnitPoint(dm->alpha);
  return q;
}

struct ContentResult {
  double value = 0.0;
  std::vector<Arc> cover;  // attaining hull cover; empty when value is 0 or inf
  std::string method = "dp";
};

namespace detail {

inline void validate_content_query(const ContentQuery& q) {
  if (!(q.alpha > 0.0 && q.alpha < 1.0))
    raise(errc::invalid_parameter, "content exponent must lie in (0,1)");
  const auto* dm = std::get_if<DoeringMane>(&q.spec);
  const bool needs_excluded = dm != nullptr && dm->on_boundary;
  if (needs_excluded != q.excluded.has_value())
    raise(errc::invalid_parameter,
          "excluded point accompanies boundary gauges and only those");
}

// Hull-cover cost table over cyclic component runs.  costs(i, c) is the
// alpha-power of the gauge mass of the hull spanning components i..i+c-1.
struct HullCosts {
  std::size_t m = 0;
  std::vector<double> starts, lengths, cost;  // cost is m x m, c-1 major index

  HullCosts(const ContentQuery& q) {
    const auto& arcs = q.target.arcs();
    m = arcs.size();
    starts.reserve(m);
    lengths.reserve(m);
    for (const Arc& a : arcs) {
      starts.push_back(a.start);
      lengths.push_back(a.length);
    }
    cost.assign(m * m, 0.0);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t c = 1; c <= m; ++c)
        cost[(c - 1) * m + i] = std::pow(hull_mass(q, i, c), q.alpha);
  }

  double hull_length(std::size_t i, std::size_t c) const {
    std::size_t j = (i + c - 1) % m;
    if (c == 1) return lengths[i];
    return wrap_angle(starts[j] - starts[i]) + lengths[j];
  }

  double hull_mass(const ContentQuery& q, std::size_t i, std::size_t c) const {
    double mass = measure(q.spec, ArcSet::from_arcs({Arc{starts[i], hull_length(i, c)}}));
    return mass < 1e-14 ? 0.0 : mass;  // floors 0^alpha noise from degenerate hulls
  }

  double at(std::size_t i, std::size_t c) const { return cost[(c - 1) * m + i]; }

  Arc hull(std::size_t i, std::size_t c) const {
    return Arc{starts[i], hull_length(i, c)};
  }
};

struct CoverCandidate {
  double value = inf;
  std::vector<Arc> cover;
};

// Exact-equality tie-breaking: smaller value, then fewer arcs, then the
// lexicographically smallest start sequence (covers are built start-sorted).
inline bool better_cover(const CoverCandidate& a, const CoverCandidate& b) {
  if (a.value != b.value) return a.value < b.value;
  if (a.cover.size() != b.cover.size()) return a.cover.size() < b.cover.size();
  for (std::size_t i = 0; i < a.cover.size(); ++i) {
    if (a.cover[i].start != b.cover[i].start) return a.cover[i].start < b.cover[i].start;
  }
  return false;
}

inline void sort_cover(std::vector<Arc>& cover) {
  std::sort(cover.begin(), cover.end(),
            [](const Arc& x, const Arc& y) { return x.start < y.start; });
}

// Best partition of the linear chain a+1, a+2, ..., a+m (the gap after
// component a is cut) into consecutive runs covered by their hulls.
inline CoverCandidate dp_for_anchor(const HullCosts& hc, std::size_t a) {
  const std::size_t m = hc.m;
  auto comp = [&](std::size_t pos) { return (a + 1 + pos) % m; };  // chain position -> component
  std::vector<double> value(m + 1, inf);
  std::vector<std::size_t> count(m + 1, 0), choice(m, 0);
  value[m] = 0.0;
  for (std::size_t k = m; k-- > 0;) {
    // suffix dp; ascending r keeps the lexicographically smallest tie
    for (std::size_t r = 1; r + k <= m; ++r) {
      double v = hc.at(comp(k), r) + value[k + r];
      std::size_t c = 1 + count[k + r];
      if (v < value[k] || (v == value[k] && c < count[k])) {
        value[k] = v;
        count[k] = c;
        choice[k] = r;
      }
    }
  }
  CoverCandidate out;
  out.value = value[0];
  if (!std::isinf(out.value)) {
    for (std::size_t k = 0; k < m;) {
      out.cover.push_back(hc.hull(comp(k), choice[k]));
      k += choice[k];
    }
    sort_cover(out.cover);
  }
  return out;
}

}  // namespace detail

// M_alpha(gauge)(target): infimum of sum gauge(I_j)^alpha over arc covers of
// target minus the excluded point.  Divergence dichotomy first (any cover of a
// punctured neighbourhood of the excluded point has infinite alpha-sum); the
// finite branch minimizes over hulls of cyclic component runs, conditioning on
// each unbridged gap in turn.
inline ContentResult content(const ContentQuery& q) {
  detail::validate_content_query(q);
  ContentResult res;
  if (q.target.empty()) return res;
  if (q.excluded && q.target.closure_contains(q.excluded->theta)) {
    res.value = inf;
    return res;
  }
  detail::HullCosts hc(q);
  detail::CoverCandidate best;
  for (std::size_t a = 0; a < hc.m; ++a) {
    auto cand = detail::dp_for_anchor(hc, a);
    if (detail::better_cover(cand, best)) best = std::move(cand);
  }
  res.value = best.value;
  if (!std::isinf(res.value) && res.value != 0.0) res.cover = std::move(best.cover);
  return res;
}

// Independent verifier: exhaustive minimum over all 2^m cut subsets of the
// cyclic gaps (m <= 20).  Shares only measure() with the DP.
inline double content_oracle(const ContentQuery& q) {
  detail::validate_content_query(q);
  if (q.target.empty()) return 0.0;
  if (q.excluded && q.target.closure_contains(q.excluded->theta)) return inf;
  const std::size_t m = q.target.arcs().size();
  if (m > 20) raise(errc::budget_exceeded, "oracle enumeration is capped at 20 components");
  detail::HullCosts hc(q);
  double best = inf;
  for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
    std::vector<std::size_t> cuts;  // gap after component j is cut when bit j set
    for (std::size_t j = 0; j < m; ++j)
      if (mask & (1u << j)) cuts.push_back(j);
    double total = 0.0;
    for (std::size_t k = 0; k < cuts.size(); ++k) {
      std::size_t begin = cuts[k] + 1;
      std::size_t span = (k + 1 < cuts.size() ? cuts[k + 1] : cuts[0] + m) - cuts[k];
      total += hc.at(begin % m, span);
      if (std::isinf(total)) break;
    }
    best = std::min(best, total);
  }
  return best;
}

using DistortionBase = std::variant<complex, UnitPoint>;

// Empirical witness for the covering-distortion constant: interior bases give
// M_alpha(harmonic_z)(f^{-1}E) / M_alpha(harmonic_{f(z)})(E); boundary bases
// weight the denominator by the alpha-power of the angular derivative.
inline double distortion_ratio(double alpha, const InnerFunction& f, const DistortionBase& base,
                               const ArcSet& e, const PreimageOptions& popts = {}) {
  PreimageResult pre = boundary_preimage(f, e, popts);
  if (pre.residual_bound > popts.residual_tolerance)
    raise(errc::invalid_parameter, "preimage residual above tolerance");
  double num = 0.0, den = 0.0;
  if (const auto* z = std::get_if<complex>(&base)) {
    num = content(make_content_query(alpha, harmonic(*z), pre.arcs)).value;
    den = content(make_content_query(alpha, harmonic(evaluate(f, *z)), e)).value;
  } else {
    const UnitPoint& p = std::get<UnitPoint>(base);
    UnitPoint fp = boundary_value(f, p);
    double deriv = phase_derivative(f, p);
    num = content(make_content_query(alpha, doering_mane_boundary(p.theta), pre.arcs)).value;
    den = std::pow(deriv, alpha) *
          content(make_content_query(alpha, doering_mane_boundary(fp.theta), e)).value;
  }
  if (den == 0.0 || std::isinf(den))
    raise(errc::degenerate_denominator, "denominator content is zero or infinite");
  return num / den;
}

}  // namespace innerdist
