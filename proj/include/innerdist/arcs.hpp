#pragma once

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "innerdist/angles.hpp"
#include "innerdist/errors.hpp"

namespace innerdist {

// Counterclockwise arc from `start`, angles in radians.
struct Arc {
  double start = 0.0;   // canonical [0, 2pi)
  double length = 0.0;  // (0, 2pi]
};

inline double arc_end(const Arc& a) { return a.start + a.length; }

// Canonical finite union of disjoint arcs.
//
// Invariants: arcs sorted by start in [0, 2pi); pairwise disjoint with gaps
// larger than merge_tol (coincident endpoints merge deterministically); at
// most the last arc wraps past 2pi, and then its end stays clear of the first
// arc's start.  The full circle is the single arc (0, 2pi).
class ArcSet {
 public:
  static constexpr double merge_tol = 1e-12;

  ArcSet() = default;

  static ArcSet from_arcs(std::vector<Arc> raw) {
    for (const Arc& a : raw) {
      if (!std::isfinite(a.start) || !std::isfinite(a.length) || a.length <= 0.0)
        raise(errc::invalid_parameter, "arc needs finite start and positive length");
      if (a.length > two_pi + merge_tol)
        raise(errc::invalid_parameter, "arc length exceeds full circle");
    }
    // Split every arc into non-wrapping pieces on [0, 2pi).
    std::vector<std::pair<double, double>> pieces;  // [lo, hi), hi <= 2pi
    for (const Arc& a : raw) {
      if (a.length >= two_pi - merge_tol) return full_circle();
      double lo = wrap_angle(a.start);
      double hi = lo + a.length;
      if (hi <= two_pi) {
        pieces.emplace_back(lo, hi);
      } else {
        pieces.emplace_back(lo, two_pi);
        pieces.emplace_back(0.0, hi - two_pi);
      }
    }
    return from_pieces(std::move(pieces));
  }

  static ArcSet full_circle() {
    ArcSet s;
    s.arcs_.push_back(Arc{0.0, two_pi});
    return s;
  }

  const std::vector<Arc>& arcs() const { return arcs_; }
  bool empty() const { return arcs_.empty(); }
  bool is_full_circle() const { return arcs_.size() == 1 && arcs_[0].length >= two_pi - merge_tol; }

  double total_length() const {
    double t = 0.0;
    for (const Arc& a : arcs_) t += a.length;
    return std::min(t, two_pi);
  }

  // Half-open membership [start, start+length): complements partition the circle.
  bool contains(double theta) const {
    double t = wrap_angle(theta);
    for (const Arc& a : arcs_) {
      double u = t - a.start;
      if (u < 0.0) u += two_pi;
      if (u < a.length) return true;
    }
    return false;
  }

  // Closed membership, exact endpoints.
  bool closure_contains(double theta) const {
    double t = wrap_angle(theta);
    for (const Arc& a : arcs_) {
      double u = t - a.start;
      if (u < 0.0) u += two_pi;
      if (u <= a.length) return true;
    }
    return false;
  }

  // Angular distance from theta to the closure (0 if inside).
  double distance_to(double theta) const {
    double t = wrap_angle(theta);
    double best = two_pi;
    for (const Arc& a : arcs_) {
      double u = t - a.start;
      if (u < 0.0) u += two_pi;
      if (u <= a.length) return 0.0;
      best = std::min(best, std::min(two_pi - u, u - a.length));
    }
    return best;
  }

  // Non-wrapping [lo, hi) pieces sorted by lo; the wrap arc, if any, splits in two.
  std::vector<std::pair<double, double>> pieces() const {
    std::vector<std::pair<double, double>> out;
    for (const Arc& a : arcs_) {
      double hi = arc_end(a);
      if (hi <= two_pi) {
        out.emplace_back(a.start, hi);
      } else {
        out.emplace_back(0.0, hi - two_pi);
        out.emplace_back(a.start, two_pi);
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  static ArcSet from_pieces(std::vector<std::pair<double, double>> pieces) {
    ArcSet s;
    if (pieces.empty()) return s;
    std::sort(pieces.begin(), pieces.end());
    std::vector<std::pair<double, double>> merged;
    for (const auto& p : pieces) {
      if (!merged.empty() && p.first <= merged.back().second + merge_tol) {
        merged.back().second = std::max(merged.back().second, p.second);
      } else {
        merged.push_back(p);
      }
    }
    // Join across 0 when the cyclic gap between last end and first start closes.
    if (merged.size() >= 2) {
      double gap0 = merged.front().first + (two_pi - merged.back().second);
      if (gap0 <= merge_tol) {
        merged.back().second = two_pi + merged.front().second;
        merged.erase(merged.begin());
      }
    }
    double total = 0.0;
    for (const auto& p : merged) total += p.second - p.first;
    if (total >= two_pi - merge_tol) return full_circle();
    for (const auto& p : merged) s.arcs_.push_back(Arc{p.first, p.second - p.first});
    return s;
  }

  std::vector<Arc> arcs_;
};

inline ArcSet arcset_union(const ArcSet& a, const ArcSet& b) {
  std::vector<Arc> all = a.arcs();
  all.insert(all.end(), b.arcs().begin(), b.arcs().end());
  if (all.empty()) return ArcSet();
  return ArcSet::from_arcs(std::move(all));
}

inline ArcSet arcset_complement(const ArcSet& a) {
  if (a.empty()) return ArcSet::full_circle();
  if (a.is_full_circle()) return ArcSet();
  // Cyclic gaps between consecutive pieces; the last gap wraps to the first start.
  auto ps = a.pieces();
  std::vector<Arc> gaps;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    double lo = ps[i].second;
    double hi = (i + 1 < ps.size()) ? ps[i + 1].first : two_pi + ps[0].first;
    if (hi - lo > 0.0) gaps.push_back(Arc{wrap_angle(lo), hi - lo});
  }
  return gaps.empty() ? ArcSet() : ArcSet::from_arcs(std::move(gaps));
}

inline ArcSet arcset_intersection(const ArcSet& a, const ArcSet& b) {
  auto pa = a.pieces();
  auto pb = b.pieces();
  std::vector<Arc> out;
  std::size_t i = 0, j = 0;
  while (i < pa.size() && j < pb.size()) {
    double lo = std::max(pa[i].first, pb[j].first);
    double hi = std::min(pa[i].second, pb[j].second);
    if (hi > lo) out.push_back(Arc{lo, hi - lo});
    if (pa[i].second < pb[j].second) ++i; else ++j;
  }
  return out.empty() ? ArcSet() : ArcSet::from_arcs(std::move(out));
}

inline ArcSet arcset_algebra(const std::string& op, const ArcSet& a, const ArcSet* b = nullptr) {
  if (op == "union") {
    if (!b) raise(errc::invalid_parameter, "union needs two operands");
    return arcset_union(a, *b);
  }
  if (op == "intersection") {
    if (!b) raise(errc::invalid_parameter, "intersection needs two operands");
    return arcset_intersection(a, *b);
  }
  if (op == "complement") return arcset_complement(a);
  raise(errc::invalid_parameter, "unknown arcset operation '" + op + "'");
}

// Rotate every arc by delta (preimage of a rotation uses delta = -alpha).
inline ArcSet rotate(const ArcSet& a, double delta) {
  if (a.empty() || a.is_full_circle()) return a;
  std::vector<Arc> out;
  out.reserve(a.arcs().size());
  for (const Arc& c : a.arcs()) out.push_back(Arc{wrap_angle(c.start + delta), c.length});
  return ArcSet::from_arcs(std::move(out));
}

}  // namespace innerdist
