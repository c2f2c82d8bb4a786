#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdint>
#include <vector>

#include "innerdist/corpus.hpp"
#include "innerdist/errors.hpp"
#include "innerdist/halfplane.hpp"
#include "innerdist/measures.hpp"
#include "innerdist/rng.hpp"
#include "oracles.hpp"

using namespace innerdist;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

// Exhaustive line content over all run partitions of the sorted intervals.
double line_content_enumerated(double alpha, const RealIntervalSet& s) {
  const auto& ivs = s.intervals;
  const std::size_t m = ivs.size();
  if (m == 0) return 0.0;
  double best = inf;
  for (std::uint32_t mask = 0; mask < (1u << (m - 1)); ++mask) {
    double total = 0.0;
    std::size_t run_begin = 0;
    for (std::size_t j = 0; j < m; ++j) {
      bool cut = j + 1 == m || (mask & (1u << j));
      if (cut) {
        total += std::pow(ivs[j].second - ivs[run_begin].first, alpha);
        run_begin = j + 1;
      }
    }
    best = std::min(best, total);
  }
  return best;
}

}  // namespace

TEST_CASE("interval sets on the line", "[halfplane][intervals]") {
  SECTION("sorting and merging") {
    RealIntervalSet s = RealIntervalSet::make({{1.0, 2.0}, {-1.0, 0.2}, {1.5, 3.0}});
    REQUIRE(s.intervals.size() == 2);
    REQUIRE(s.intervals[0] == std::pair{-1.0, 0.2});
    REQUIRE(s.intervals[1] == std::pair{1.0, 3.0});
    REQUIRE_THAT(s.total_measure(), WithinAbs(3.2, 1e-15));
    REQUIRE_FALSE(s.has_ray());
  }
  SECTION("rays absorb overlapping intervals") {
    RealIntervalSet s = RealIntervalSet::make({{-0.5, 1.0}, {2.0, 3.0}}, 0.0, 2.5);
    REQUIRE(s.left_ray.has_value());
    REQUIRE_THAT(*s.left_ray, WithinAbs(1.0, 1e-15));
    REQUIRE(s.right_ray.has_value());
    REQUIRE_THAT(*s.right_ray, WithinAbs(2.0, 1e-15));
    REQUIRE(s.intervals.empty());
    REQUIRE(s.total_measure() == inf);
  }
  SECTION("degenerate data is rejected") {
    REQUIRE_THROWS_AS(RealIntervalSet::make({{1.0, 1.0}}), Error);
    REQUIRE_THROWS_AS(RealIntervalSet::make({{2.0, 1.0}}), Error);
    REQUIRE_THROWS_AS(RealIntervalSet::make({{0.0, inf}}), Error);
    REQUIRE_THROWS_AS(RealIntervalSet::make({}, 1.0, 0.5), Error);  // covers the whole line
  }
}

TEST_CASE("cayley transport between circle and line", "[halfplane][cayley]") {
  SECTION("interior points land in the upper half-plane") {
    SplitMix64 rng(211);
    UnitPoint p(0.7);
    REQUIRE_THAT(std::abs(cayley_point(UnitPoint(0.0), complex{}) - complex{0.0, 0.5}),
                 WithinAbs(0.0, 1e-15));
    for (int t = 0; t < 25; ++t) {
      complex z = random_interior(rng, 0.95);
      complex w = cayley_point(p, z);
      REQUIRE(w.imag() > 0.0);
      REQUIRE_THAT(std::abs(cayley_point_inverse(p, w) - z), WithinAbs(0.0, 1e-12));
    }
  }
  SECTION("boundary action is increasing in the lifted offset") {
    UnitPoint p(2.2);
    double prev = -inf;
    for (int i = 1; i < 40; ++i) {
      double theta = p.theta + two_pi * i / 40.0;
      complex w = cayley_point(p, unit(theta));
      REQUIRE_THAT(w.imag(), WithinAbs(0.0, 1e-9));
      REQUIRE(w.real() > prev);
      prev = w.real();
    }
  }
  SECTION("arc sets round-trip when the base point is avoided") {
    SplitMix64 rng(223);
    for (int t = 0; t < 20; ++t) {
      UnitPoint p(rng.uniform(0.0, two_pi));
      ArcSet e = random_arcset(rng, 3, 0.05, {p.theta});
      RealIntervalSet a = cayley_to_line(p, e);
      REQUIRE_FALSE(a.has_ray());
      REQUIRE(oracles::symmetric_difference(cayley_to_circle(p, a), e) <= 1e-9);
    }
  }
  SECTION("arcs through the base point become rays") {
    UnitPoint p(1.0);
    RealIntervalSet covering = cayley_to_line(p, ArcSet::from_arcs({Arc{0.8, 0.4}}));
    REQUIRE(covering.left_ray.has_value());
    REQUIRE(covering.right_ray.has_value());
    REQUIRE(covering.intervals.empty());
    REQUIRE_THAT(*covering.left_ray, WithinRel(-0.5 / std::tan(0.1), 1e-12));
    REQUIRE_THAT(*covering.right_ray, WithinRel(0.5 / std::tan(0.1), 1e-12));
    REQUIRE(oracles::symmetric_difference(cayley_to_circle(p, covering),
                                          ArcSet::from_arcs({Arc{0.8, 0.4}})) <= 1e-9);

    RealIntervalSet from_base = cayley_to_line(p, ArcSet::from_arcs({Arc{1.0, 0.4}}));
    REQUIRE(from_base.left_ray.has_value());
    REQUIRE_FALSE(from_base.right_ray.has_value());
    REQUIRE_THROWS_AS(cayley_to_line(p, ArcSet::full_circle()), Error);
  }
  SECTION("line measure of the image is the scaled boundary gauge") {
    SplitMix64 rng(227);
    for (int t = 0; t < 40; ++t) {
      UnitPoint p(rng.uniform(0.0, two_pi));
      ArcSet e = random_arcset(rng, 4, 0.1, {p.theta});
      double lhs = cayley_to_line(p, e).total_measure();
      double rhs = two_pi * measure(doering_mane_boundary(p.theta), e);
      REQUIRE_THAT(lhs, WithinRel(rhs, 1e-10));
    }
  }
}

TEST_CASE("pick functions", "[halfplane][pick]") {
  SECTION("construction validates and sorts") {
    PickFunction g = make_pick(1.0, 0.0, {{2.0, 0.5}, {-1.0, 0.3}});
    REQUIRE(g.poles[0].x == -1.0);
    REQUIRE(g.poles[1].x == 2.0);
    REQUIRE_THROWS_AS(make_pick(-1.0, 0.0, {}), Error);
    REQUIRE_THROWS_AS(make_pick(1.0, 0.0, {{0.0, 0.0}}), Error);
    REQUIRE_THROWS_AS(make_pick(1.0, 0.0, {{0.0, 0.5}, {0.0, 0.5}}), Error);
  }
  SECTION("upper half-plane maps into itself") {
    SplitMix64 rng(229);
    for (int t = 0; t < 20; ++t) {
      PickFunction g = random_pick(rng);
      complex w{rng.uniform(-5.0, 5.0), rng.uniform(0.1, 3.0)};
      REQUIRE(hp_evaluate(g, w).imag() > 0.0);
    }
  }
  SECTION("real trace and derivative agree with the complex form") {
    PickFunction g = make_pick(0.7, -0.3, {{1.0, 0.4}});
    for (double w : {-2.0, 0.0, 0.5, 3.0}) {
      REQUIRE_THAT(pick_real(g, w), WithinAbs(hp_evaluate(g, complex{w, 0.0}).real(), 1e-14));
      REQUIRE_THAT(pick_real_derivative(g, w),
                   WithinRel(oracles::central_difference([&](double x) { return pick_real(g, x); }, w),
                             1e-6));
      REQUIRE(pick_real_derivative(g, w) > 0.0);
    }
  }
  SECTION("derivative at infinity") {
    REQUIRE(hp_derivative_at_infinity(HalfPlaneInner{make_pick(0.5, 1.0, {{0.0, 1.0}})}) == 2.0);
    REQUIRE_THROWS_AS(hp_derivative_at_infinity(HalfPlaneInner{make_pick(0.0, 1.0, {{0.0, 1.0}})}),
                      Error);
    HalfPlaneInner fixing{TransferredInner{UnitPoint(0.0), InnerFunction::power(3)}};
    REQUIRE_THAT(hp_derivative_at_infinity(fixing), WithinRel(3.0, 1e-12));
    HalfPlaneInner drifting{TransferredInner{UnitPoint(0.0), InnerFunction::rotation(1.0)}};
    REQUIRE_THROWS_AS(hp_derivative_at_infinity(drifting), Error);
  }
}

TEST_CASE("a transferred square is a two-term pick form", "[halfplane][transfer]") {
  HalfPlaneInner transferred{TransferredInner{UnitPoint(0.0), InnerFunction::power(2)}};
  HalfPlaneInner pick{make_pick(0.5, 0.0, {{0.0, 0.125}})};
  SECTION("pointwise agreement in the upper half-plane") {
    SplitMix64 rng(233);
    for (int t = 0; t < 30; ++t) {
      complex w{rng.uniform(-4.0, 4.0), rng.uniform(0.1, 3.0)};
      complex a = hp_evaluate(transferred, w), b = hp_evaluate(pick, w);
      REQUIRE_THAT(std::abs(a - b), WithinAbs(0.0, 1e-12 * (1.0 + std::abs(b))));
    }
  }
  SECTION("both fix infinity with derivative two") {
    REQUIRE_THAT(hp_derivative_at_infinity(transferred), WithinRel(2.0, 1e-12));
    REQUIRE(hp_derivative_at_infinity(pick) == 2.0);
  }
  SECTION("preimages agree interval by interval") {
    RealIntervalSet a = RealIntervalSet::make({{0.3, 0.9}, {-2.0, -1.2}});
    RealIntervalSet via_disc = hp_preimage(transferred, a);
    RealIntervalSet via_line = hp_preimage(pick, a);
    REQUIRE(via_disc.intervals.size() == via_line.intervals.size());
    for (std::size_t i = 0; i < via_line.intervals.size(); ++i) {
      REQUIRE_THAT(via_disc.intervals[i].first, WithinAbs(via_line.intervals[i].first, 1e-7));
      REQUIRE_THAT(via_disc.intervals[i].second, WithinAbs(via_line.intervals[i].second, 1e-7));
    }
  }
  SECTION("corollary ratios agree across the two representations") {
    RealIntervalSet a = RealIntervalSet::make({{0.4, 1.1}, {2.0, 2.3}});
    CorollaryCheck cd = hp_corollary_check(transferred, a, 0.5);
    CorollaryCheck cl = hp_corollary_check(pick, a, 0.5);
    REQUIRE_THAT(cd.measure_ratio, WithinRel(1.0, 1e-8));
    REQUIRE_THAT(cl.measure_ratio, WithinRel(1.0, 1e-9));
    REQUIRE_THAT(cd.content_ratio, WithinRel(cl.content_ratio, 1e-6));
  }
}

TEST_CASE("pick preimages", "[halfplane][preimage]") {
  SECTION("affine maps invert exactly") {
    PickFunction g = make_pick(2.0, 1.0, {});
    RealIntervalSet pre = hp_preimage(HalfPlaneInner{g}, RealIntervalSet::make({{3.0, 7.0}}));
    REQUIRE(pre.intervals.size() == 1);
    REQUIRE_THAT(pre.intervals[0].first, WithinAbs(1.0, 1e-12));
    REQUIRE_THAT(pre.intervals[0].second, WithinAbs(3.0, 1e-12));

    RealIntervalSet ray = hp_preimage(HalfPlaneInner{g}, RealIntervalSet::make({}, 3.0, {}));
    REQUIRE(ray.left_ray.has_value());
    REQUIRE_THAT(*ray.left_ray, WithinAbs(1.0, 1e-12));
  }
  SECTION("each branch contributes one preimage interval") {
    PickFunction g = make_pick(1.0, 0.0, {{-1.0, 0.5}, {2.0, 1.0}});
    RealIntervalSet a = RealIntervalSet::make({{5.0, 6.0}});
    RealIntervalSet pre = hp_preimage(HalfPlaneInner{g}, a);
    REQUIRE(pre.intervals.size() == 3);
    for (const auto& iv : pre.intervals) {
      REQUIRE_THAT(pick_real(g, iv.first), WithinAbs(5.0, 1e-9));
      REQUIRE_THAT(pick_real(g, iv.second), WithinAbs(6.0, 1e-9));
    }
  }
  SECTION("ray targets pin pole-adjacent intervals on interior branches") {
    PickFunction g = make_pick(1.0, 0.0, {{0.0, 1.0}});
    RealIntervalSet pre = hp_preimage(HalfPlaneInner{g}, RealIntervalSet::make({}, -3.0, {}));
    REQUIRE(pre.left_ray.has_value());
    REQUIRE(pre.intervals.size() == 1);
    REQUIRE_THAT(pre.intervals[0].first, WithinAbs(0.0, 1e-9));
    REQUIRE_THAT(pick_real(g, pre.intervals[0].second), WithinAbs(-3.0, 1e-9));
    REQUIRE_THROWS_AS(hp_preimage(HalfPlaneInner{make_pick(0.0, 0.0, {{0.0, 1.0}})},
                                  RealIntervalSet::make({{0.0, 1.0}})),
                      Error);
  }
  SECTION("preimage measure scales by the derivative at infinity") {
    SplitMix64 rng(239);
    for (int t = 0; t < 40; ++t) {
      PickFunction g = random_pick(rng);
      RealIntervalSet a = random_interval_set(rng);
      RealIntervalSet pre = hp_preimage(HalfPlaneInner{g}, a);
      REQUIRE_THAT(pre.total_measure(), WithinRel(a.total_measure() / g.a, 1e-9));
    }
  }
}

TEST_CASE("line content", "[halfplane][content]") {
  SECTION("closed forms") {
    REQUIRE(line_content(0.5, RealIntervalSet::make({})) == 0.0);
    REQUIRE(line_content(0.5, RealIntervalSet::make({}, 0.0, {})) == inf);
    REQUIRE_THAT(line_content(0.5, RealIntervalSet::make({{1.0, 3.0}})),
                 WithinRel(std::sqrt(2.0), 1e-14));
    // adjacent pair merges, antipodal-like pair splits
    REQUIRE_THAT(line_content(0.5, RealIntervalSet::make({{0.0, 1.0}, {1.1, 2.1}})),
                 WithinRel(std::sqrt(2.1), 1e-13));
    REQUIRE_THAT(line_content(0.5, RealIntervalSet::make({{0.0, 1.0}, {50.0, 51.0}})),
                 WithinRel(2.0, 1e-13));
    REQUIRE_THROWS_AS(line_content(1.0, RealIntervalSet::make({{0.0, 1.0}})), Error);
  }
  SECTION("homogeneous of degree alpha under dilation") {
    SplitMix64 rng(241);
    for (int t = 0; t < 20; ++t) {
      RealIntervalSet s = random_interval_set(rng, 4);
      double alpha = rng.uniform(0.1, 0.9);
      double scale = rng.uniform(0.5, 4.0);
      std::vector<std::pair<double, double>> scaled;
      for (const auto& iv : s.intervals) scaled.emplace_back(scale * iv.first, scale * iv.second);
      REQUIRE_THAT(line_content(alpha, RealIntervalSet::make(std::move(scaled))),
                   WithinRel(std::pow(scale, alpha) * line_content(alpha, s), 1e-11));
    }
  }
  SECTION("matches exhaustive run enumeration") {
    SplitMix64 rng(251);
    for (int t = 0; t < 60; ++t) {
      RealIntervalSet s = random_interval_set(rng, 8);
      double alpha = rng.uniform(0.15, 0.85);
      REQUIRE_THAT(line_content(alpha, s), WithinRel(line_content_enumerated(alpha, s), 1e-12));
    }
  }
}

TEST_CASE("half-plane corollary ratios", "[halfplane][corollary]") {
  SplitMix64 rng(257);
  for (int t = 0; t < 30; ++t) {
    PickFunction g = random_pick(rng);
    RealIntervalSet a = random_interval_set(rng);
    CorollaryCheck chk = hp_corollary_check(HalfPlaneInner{g}, a, 0.5);
    REQUIRE_THAT(chk.measure_ratio, WithinRel(1.0, 1e-9));
    REQUIRE(std::isfinite(chk.content_ratio));
    REQUIRE(chk.content_ratio > 0.0);
  }
  REQUIRE_THROWS_AS(hp_corollary_check(HalfPlaneInner{make_pick(1.0, 0.0, {{0.0, 1.0}})},
                                       RealIntervalSet::make({}, 0.0, {}), 0.5),
                    Error);
}
