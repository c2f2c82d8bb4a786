#pragma once

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "innerdist/arcs.hpp"
#include "innerdist/content.hpp"
#include "innerdist/corpus.hpp"
#include "innerdist/errors.hpp"
#include "innerdist/halfplane.hpp"
#include "innerdist/inner_function.hpp"
#include "innerdist/json_io.hpp"
#include "innerdist/measures.hpp"
#include "innerdist/preimage.hpp"
#include "innerdist/rng.hpp"

namespace innerdist {

struct SuiteConfig {
  std::string suite;
  std::uint64_t seed = 1;
  std::size_t cases = 0;      // 0 -> suite default
  double tolerance = 0.0;     // 0 -> suite default
  std::vector<double> alphas; // empty -> {0.25, 0.5, 0.75}
  std::string output;         // empty -> stdout
  std::string format = "csv";
  std::string functions_file; // optional corpus override
};

struct SuiteRow {
  std::string suite;
  std::size_t case_id = 0;
  double alpha = std::numeric_limits<double>::quiet_NaN();  // NaN when not applicable
  std::string func, base, target, check;
  double lhs = 0.0, rhs = 0.0, ratio = 0.0;
  bool pass = true;
};

struct SuiteSummary {
  std::size_t rows = 0, failures = 0;
  double min_ratio = 0.0, max_ratio = 0.0, mean_ratio = 0.0;
  std::vector<std::pair<double, double>> empirical;  // (alpha, min ratio) witnesses
};

struct SuiteReport {
  SuiteConfig config;
  std::vector<SuiteRow> rows;
  SuiteSummary summary;
};

namespace detail {

// Shortest round-trip decimal form; the determinism contract rides on this.
inline std::string fmt(double v) {
  if (std::isnan(v)) return "";
  if (std::isinf(v)) return v > 0.0 ? "inf" : "-inf";
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

inline std::string describe(const complex& z) {
  return "z=" + fmt(z.real()) + (z.imag() < 0.0 ? "" : "+") + fmt(z.imag()) + "i";
}

inline std::string describe(const UnitPoint& p) { return "xi@" + fmt(p.theta); }

inline std::string describe(const ArcSet& e) {
  return "arcs=" + std::to_string(e.arcs().size()) + ";len=" + fmt(e.total_length());
}

inline std::string describe(const RealIntervalSet& s) {
  return "ivs=" + std::to_string(s.intervals.size()) + ";len=" + fmt(s.total_measure());
}

inline std::size_t degree_of(const InnerFunction& f) {
  std::size_t d = 0;
  for (const auto& st : f.stages()) d += st.zeros.size();
  return d;
}

struct SuiteDefaults {
  std::size_t cases;
  double tolerance;
};

inline SuiteDefaults suite_defaults(const std::string& s) {
  if (s == "loewner") return {200, 1e-9};
  if (s == "theorem1") return {100, 1e-8};
  if (s == "theorem1b") return {1, 1e-4};
  if (s == "theorem2") return {500, 1e-9};
  if (s == "fp") return {500, 1e-9};
  if (s == "counterexample") return {1000, 1e-9};
  if (s == "convergence") return {50, 1e-6};
  if (s == "halfplane") return {100, 1e-9};
  raise(errc::unknown_suite, "no suite named '" + s + "'");
}

inline SuiteConfig resolve_config(SuiteConfig c) {
  SuiteDefaults d = suite_defaults(c.suite);
  if (c.cases == 0) c.cases = d.cases;
  if (c.tolerance == 0.0) c.tolerance = d.tolerance;
  if (c.alphas.empty()) c.alphas = {0.25, 0.5, 0.75};
  if (!(c.tolerance > 0.0) || !std::isfinite(c.tolerance))
    raise(errc::config_invalid, "tolerance must be positive");
  for (double a : c.alphas)
    if (!(a > 0.0 && a < 1.0)) raise(errc::config_invalid, "alpha values must lie in (0,1)");
  if (c.format != "csv" && c.format != "json")
    raise(errc::config_invalid, "format must be csv or json");
  return c;
}

inline std::vector<InnerFunction> load_functions(const std::string& path) {
  std::ifstream in(path);
  if (!in) raise(errc::io_failure, "cannot read functions file '" + path + "'");
  json j = json::parse(in, nullptr, false);
  if (j.is_discarded()) raise(errc::config_invalid, "functions file is not valid JSON");
  std::vector<InnerFunction> out;
  if (j.is_array())
    for (const auto& item : j) out.push_back(function_from_json(item));
  else
    out.push_back(function_from_json(j));
  if (out.empty()) raise(errc::config_invalid, "functions file holds no descriptors");
  return out;
}

struct CorpusDraw {
  InnerFunction f;
  std::string label;
};

inline CorpusDraw draw_function(const std::vector<InnerFunction>& corpus, std::size_t i,
                                SplitMix64& rng, bool symmetric) {
  if (!corpus.empty()) {
    std::size_t k = i % corpus.size();
    return {corpus[k], "file-" + std::to_string(k)};
  }
  InnerFunction f = symmetric ? random_symmetric_blaschke(rng) : random_blaschke(rng);
  std::string label = (symmetric ? "sb-d" : "rb-d") + std::to_string(degree_of(f));
  return {std::move(f), std::move(label)};
}

inline SuiteRow row(const SuiteConfig& c, std::size_t id, double alpha, std::string func,
                    std::string base, std::string target, std::string check, double lhs,
                    double rhs, double ratio, bool pass) {
  SuiteRow r;
  r.suite = c.suite;
  r.case_id = id;
  r.alpha = alpha;
  r.func = std::move(func);
  r.base = std::move(base);
  r.target = std::move(target);
  r.check = std::move(check);
  r.lhs = lhs;
  r.rhs = rhs;
  r.ratio = ratio;
  r.pass = pass;
  return r;
}

constexpr double no_alpha = std::numeric_limits<double>::quiet_NaN();

inline SuiteReport run_loewner(const SuiteConfig& c, const std::vector<InnerFunction>& corpus) {
  SuiteReport rep;
  rep.config = c;
  SplitMix64 rng(c.seed);
  for (std::size_t i = 0; i < c.cases; ++i) {
    CorpusDraw d = draw_function(corpus, i, rng, false);
    for (int ei = 0; ei < 5; ++ei) {
      ArcSet e = random_arcset(rng, 3, 0.0, {});
      PreimageResult pre = boundary_preimage(d.f, e);
      for (int zi = 0; zi < 3; ++zi) {
        complex z = random_interior(rng);
        double lhs = measure(harmonic(z), pre.arcs);
        double rhs = measure(harmonic(evaluate(d.f, z)), e);
        rep.rows.push_back(row(c, i, no_alpha, d.label, describe(z), describe(e),
                               "harmonic-pullback", lhs, rhs, lhs / rhs,
                               std::abs(lhs - rhs) <= c.tolerance));
      }
    }
  }
  return rep;
}

inline SuiteReport run_theorem1(const SuiteConfig& c, const std::vector<InnerFunction>& corpus) {
  SuiteReport rep;
  rep.config = c;
  SplitMix64 rng(c.seed);
  const UnitPoint p(0.0);
  for (std::size_t i = 0; i < c.cases; ++i) {
    CorpusDraw d = draw_function(corpus, i, rng, true);
    UnitPoint fp = boundary_value(d.f, p);
    double deriv = phase_derivative(d.f, p);
    double rq = radial_quotient(d.f, p, 1.0 - 1e-8);
    rep.rows.push_back(row(c, i, no_alpha, d.label, describe(p), "-", "radial-quotient", rq,
                           deriv, rq / deriv, std::abs(rq / deriv - 1.0) <= 0.01));
    for (int ei = 0; ei < 5; ++ei) {
      ArcSet e = random_arcset(rng, 3, 0.1, {fp.theta});
      PreimageResult pre = boundary_preimage(d.f, e);
      double lhs = measure(doering_mane_boundary(p.theta), pre.arcs);
      double rhs = deriv * measure(doering_mane_boundary(fp.theta), e);
      rep.rows.push_back(row(c, i, no_alpha, d.label, describe(p), describe(e),
                             "derivative-scaling", lhs, rhs, lhs / rhs,
                             std::abs(lhs / rhs - 1.0) <= c.tolerance));
    }
  }
  return rep;
}

inline SuiteReport run_theorem1b(const SuiteConfig& c) {
  SuiteReport rep;
  rep.config = c;
  std::size_t id = 0;
  double prev = 0.0;
  for (std::size_t n : {5u, 10u, 20u, 40u}) {
    double s = truncation_derivative_sum(n);
    std::string label = "trunc-N" + std::to_string(n);
    rep.rows.push_back(row(c, id, no_alpha, label, "xi@0", "-", "derivative-growth", s, prev,
                           prev > 0.0 ? s / prev : 1.0, s > prev));
    rep.rows.push_back(row(c, id, no_alpha, label, "xi@0", "-", "derivative-floor", s,
                           0.5 * static_cast<double>(n), s / (0.5 * static_cast<double>(n)),
                           s > 0.5 * static_cast<double>(n)));
    prev = s;
    ++id;
  }
  for (std::size_t n : {5u, 10u, 20u}) {
    double lhs = phase_derivative(truncated_family(n), UnitPoint(0.0));
    double rhs = truncation_derivative_sum(n);
    rep.rows.push_back(row(c, id++, no_alpha, "trunc-N" + std::to_string(n), "xi@0", "-",
                           "derivative-consistency", lhs, rhs, lhs / rhs,
                           std::abs(lhs / rhs - 1.0) <= c.tolerance));
  }
  double fr = truncation_frostman_sum(40);
  rep.rows.push_back(
      row(c, id++, no_alpha, "trunc-N40", "xi@0", "-", "frostman-side-sum", fr, 2.0, fr / 2.0, fr < 2.0));
  const ArcSet e = ArcSet::from_arcs({Arc{1.2, 0.5}});
  const MeasureSpec mu1 = doering_mane_boundary(0.0);
  double prev_mass = 0.0;
  for (std::size_t n : {6u, 10u, 14u, 20u}) {
    PreimageResult pre = boundary_preimage(truncated_family(n), e);
    double mass = measure(mu1, pre.arcs);
    rep.rows.push_back(row(c, id, no_alpha, "trunc-N" + std::to_string(n), "xi@0", describe(e),
                           "preimage-mass-growth", mass, prev_mass,
                           prev_mass > 0.0 ? mass / prev_mass : 1.0, mass > prev_mass));
    prev_mass = mass;
    ++id;
  }
  return rep;
}

// Seed-independent anchor cases pin the suite minimum so the empirical
// constant is reproducible across seeds; random cases scan above them.
inline std::vector<std::pair<InnerFunction, std::string>> distortion_anchors() {
  std::vector<std::pair<InnerFunction, std::string>> out;
  for (std::size_t n = 2; n <= 6; ++n)
    out.emplace_back(InnerFunction::power(n), "z^" + std::to_string(n));
  out.emplace_back(InnerFunction::blaschke({std::polar(0.5, 1.0), std::polar(0.5, -1.0)}),
                   "anchor-sym2");
  out.emplace_back(InnerFunction::blaschke({complex{0.3, 0.0}, std::polar(0.7, 2.0),
                                            std::polar(0.7, -2.0)}),
                   "anchor-sym3");
  return out;
}

inline std::vector<std::pair<ArcSet, std::string>> anchor_arcs() {
  return {{ArcSet::from_arcs({Arc{2.0, 0.8}}), "anchor-e1"},
          {ArcSet::from_arcs({Arc{3.5, 1.2}}), "anchor-e2"}};
}

inline SuiteReport run_theorem2(const SuiteConfig& c, const std::vector<InnerFunction>& corpus) {
  SuiteReport rep;
  rep.config = c;
  SplitMix64 rng(c.seed);
  const UnitPoint p(0.0);
  std::size_t id = 0;
  auto emit = [&](const InnerFunction& f, const std::string& label, const ArcSet& e,
                  const std::string& elabel) {
    for (double a : c.alphas) {
      double ratio = distortion_ratio(a, f, p, e);
      rep.rows.push_back(row(c, id, a, label, describe(p), elabel, "content-distortion", ratio,
                             0.0, ratio, ratio > 0.0 && std::isfinite(ratio)));
    }
    ++id;
  };
  if (corpus.empty())
    for (const auto& [f, flabel] : distortion_anchors())
      for (const auto& [e, elabel] : anchor_arcs()) emit(f, flabel, e, elabel);
  while (id < c.cases) {
    CorpusDraw d = draw_function(corpus, id, rng, true);
    UnitPoint fp = boundary_value(d.f, p);
    ArcSet e = random_arcset(rng, 3, 0.1, {fp.theta});
    emit(d.f, d.label, e, describe(e));
  }
  return rep;
}

inline SuiteReport run_fp(const SuiteConfig& c, const std::vector<InnerFunction>& corpus) {
  SuiteReport rep;
  rep.config = c;
  SplitMix64 rng(c.seed);
  std::size_t id = 0;
  auto emit = [&](const InnerFunction& f, const std::string& label, complex z, const ArcSet& e,
                  const std::string& elabel) {
    for (double a : c.alphas) {
      double ratio = distortion_ratio(a, f, z, e);
      rep.rows.push_back(row(c, id, a, label, describe(z), elabel, "content-distortion", ratio,
                             0.0, ratio, ratio > 0.0 && std::isfinite(ratio)));
    }
    ++id;
  };
  if (corpus.empty()) {
    const std::array<complex, 2> anchor_z{complex{0.0, 0.0}, complex{0.48, 0.36}};
    for (const auto& [f, flabel] : distortion_anchors())
      for (const complex& z : anchor_z)
        for (const auto& [e, elabel] : anchor_arcs()) emit(f, flabel, z, e, elabel);
  }
  while (id < c.cases) {
    CorpusDraw d = draw_function(corpus, id, rng, false);
    complex z = random_interior(rng, 0.8);
    ArcSet e = random_arcset(rng, 3, 0.0, {});
    emit(d.f, d.label, z, e, describe(e));
  }
  return rep;
}

inline SuiteReport run_counterexample(const SuiteConfig& c) {
  SuiteReport rep;
  rep.config = c;
  for (std::size_t i = 1; i <= c.cases; ++i) {
    double n = static_cast<double>(i);
    double lam = 0.25 / (n * n * n * n);           // normalized length of I_n
    double theta_n = 2.0 * std::asin(0.25 / n);    // base angles approach 0 tangentially
    ArcSet in = ArcSet::from_arcs({Arc{theta_n - pi * lam, two_pi * lam}});
    complex pn = std::polar(1.0 - lam, theta_n);
    std::string target = "I_n@" + fmt(theta_n);

    double conc = measure(doering_mane_interior(pn), in);
    double n4 = n * n * n * n;
    rep.rows.push_back(row(c, i, no_alpha, "-", "p_n", target, "concentration-lower", conc, n4,
                           conc / n4, conc >= n4));

    double limit = measure(doering_mane_boundary(0.0), in);
    double cap = 0.25 / (n * n);
    rep.rows.push_back(row(c, i, no_alpha, "-", "xi@0", target, "limit-upper", limit, cap,
                           limit / cap, limit <= cap));

    double gap = lam / std::sqrt(dist2_to_unit(0.0, 1.0 - lam, theta_n));
    double cube = 1.0 / (n * n * n);
    rep.rows.push_back(row(c, i, no_alpha, "-", "p_n", target, "tangential-approach", gap, cube,
                           gap / cube, gap <= cube));
  }
  return rep;
}

inline SuiteReport run_convergence(const SuiteConfig& c, const std::vector<InnerFunction>& corpus) {
  SuiteReport rep;
  rep.config = c;
  SplitMix64 rng(c.seed);
  for (std::size_t i = 0; i < c.cases; ++i) {
    double pang = rng.uniform(0.0, two_pi);
    UnitPoint p(pang);
    ArcSet e = random_arcset(rng, 2, 0.3, {pang}, 0.4);
    std::string base = describe(p), target = describe(e);

    const MeasureSpec mu_p = doering_mane_boundary(pang);
    double limit = measure(mu_p, e);
    std::array<double, 7> err{};
    for (int k = 1; k <= 6; ++k) {
      complex pk = std::polar(1.0 - std::pow(10.0, -k), pang);
      err[static_cast<std::size_t>(k)] = std::abs(measure(doering_mane_interior(pk), e) - limit);
    }
    int onset = 6;
    for (int k = 5; k >= 1; --k) {
      if (err[static_cast<std::size_t>(k)] >= err[static_cast<std::size_t>(k + 1)])
        onset = k;
      else
        break;
    }
    double n0 = std::pow(10.0, onset);
    rep.rows.push_back(row(c, i, no_alpha, "-", base, target, "measure-monotone-onset", n0, 1e5,
                           n0 / 1e5, n0 <= 1e5));
    rep.rows.push_back(row(c, i, no_alpha, "-", base, target, "measure-limit", err[6],
                           c.tolerance, err[6] / c.tolerance, err[6] < c.tolerance));

    for (double a : c.alphas) {
      double climit = content(make_content_query(a, mu_p, e)).value;
      std::array<double, 5> cerr{};
      for (int k = 1; k <= 4; ++k) {
        complex pk = std::polar(1.0 - std::pow(10.0, -k), pang);
        cerr[static_cast<std::size_t>(k)] =
            std::abs(content(make_content_query(a, doering_mane_interior(pk), e)).value - climit);
      }
      int conset = 4;
      for (int k = 3; k >= 1; --k) {
        if (cerr[static_cast<std::size_t>(k)] >= cerr[static_cast<std::size_t>(k + 1)])
          conset = k;
        else
          break;
      }
      double cn0 = std::pow(10.0, conset);
      rep.rows.push_back(row(c, i, a, "-", base, target, "content-monotone-onset", cn0, 1e3,
                             cn0 / 1e3, cn0 <= 1e3));
      rep.rows.push_back(row(c, i, a, "-", base, target, "content-limit", cerr[4], 1e-4,
                             cerr[4] / 1e-4, cerr[4] < 1e-4));
    }

    CorpusDraw d = draw_function(corpus, i, rng, true);
    UnitPoint fp = boundary_value(d.f, UnitPoint(0.0));
    double qmin = inf;
    complex w_last{};
    for (int k = 1; k <= 6; ++k) {
      complex w = evaluate(d.f, complex{1.0 - std::pow(10.0, -k), 0.0});
      double q = (1.0 - std::abs(w)) / std::sqrt(dist2_to_unit(fp.theta, w));
      qmin = std::min(qmin, q);
      w_last = w;
    }
    rep.rows.push_back(row(c, i, no_alpha, d.label, "xi@0", "-", "cone-quotient-floor", qmin, 0.1,
                           qmin / 0.1, qmin > 0.1));
    double img = std::abs(unit(fp.theta) - w_last);
    rep.rows.push_back(
        row(c, i, no_alpha, d.label, "xi@0", "-", "image-limit", img, 1e-2, img / 1e-2, img < 1e-2));
  }
  return rep;
}

inline SuiteReport run_halfplane(const SuiteConfig& c) {
  SuiteReport rep;
  rep.config = c;
  SplitMix64 rng(c.seed);
  for (std::size_t i = 0; i < c.cases; ++i) {
    PickFunction g = random_pick(rng);
    HalfPlaneInner hg = g;
    std::string label = "pick-a" + fmt(g.a) + "-p" + std::to_string(g.poles.size());
    for (int ai = 0; ai < 5; ++ai) {
      RealIntervalSet a = random_interval_set(rng);
      CorollaryCheck chk = hp_corollary_check(hg, a, c.alphas.front());
      rep.rows.push_back(row(c, i, no_alpha, label, "w@inf", describe(a), "measure-scaling",
                             chk.measure_ratio, 1.0, chk.measure_ratio,
                             std::abs(chk.measure_ratio - 1.0) <= c.tolerance));
      rep.rows.push_back(row(c, i, c.alphas.front(), label, "w@inf", describe(a),
                             "content-positive", chk.content_ratio, 0.0, chk.content_ratio,
                             chk.content_ratio > 0.0 && std::isfinite(chk.content_ratio)));
    }
    double pang = rng.uniform(0.0, two_pi);
    ArcSet e = random_arcset(rng, 3, 0.1, {pang});
    double lhs = cayley_to_line(UnitPoint(pang), e).total_measure();
    double rhs = two_pi * measure(doering_mane_boundary(pang), e);
    rep.rows.push_back(row(c, i, no_alpha, label, "xi@" + fmt(pang), describe(e),
                           "cayley-transfer", lhs, rhs, lhs / rhs,
                           std::abs(lhs - rhs) <= 1e-10 * std::max(1.0, std::abs(rhs))));
  }
  return rep;
}

inline void finish_summary(SuiteReport& rep) {
  SuiteSummary s;
  s.rows = rep.rows.size();
  double lo = inf, hi = -inf, sum = 0.0;
  std::size_t finite = 0;
  for (const SuiteRow& r : rep.rows) {
    if (!r.pass) ++s.failures;
    if (std::isfinite(r.ratio)) {
      lo = std::min(lo, r.ratio);
      hi = std::max(hi, r.ratio);
      sum += r.ratio;
      ++finite;
    }
  }
  if (finite > 0) {
    s.min_ratio = lo;
    s.max_ratio = hi;
    s.mean_ratio = sum / static_cast<double>(finite);
  }
  if (rep.config.suite == "theorem2" || rep.config.suite == "fp") {
    for (double a : rep.config.alphas) {
      double m = inf;
      for (const SuiteRow& r : rep.rows)
        if (r.alpha == a && std::isfinite(r.ratio)) m = std::min(m, r.ratio);
      s.empirical.emplace_back(a, m);
    }
  }
  rep.summary = s;
}

}  // namespace detail

inline SuiteReport run_suite(const SuiteConfig& raw) {
  SuiteConfig c = detail::resolve_config(raw);
  std::vector<InnerFunction> corpus;
  if (!c.functions_file.empty()) corpus = detail::load_functions(c.functions_file);
  SuiteReport rep;
  if (c.suite == "loewner")
    rep = detail::run_loewner(c, corpus);
  else if (c.suite == "theorem1")
    rep = detail::run_theorem1(c, corpus);
  else if (c.suite == "theorem1b")
    rep = detail::run_theorem1b(c);
  else if (c.suite == "theorem2")
    rep = detail::run_theorem2(c, corpus);
  else if (c.suite == "fp")
    rep = detail::run_fp(c, corpus);
  else if (c.suite == "counterexample")
    rep = detail::run_counterexample(c);
  else if (c.suite == "convergence")
    rep = detail::run_convergence(c, corpus);
  else
    rep = detail::run_halfplane(c);
  detail::finish_summary(rep);
  return rep;
}

inline std::string render_csv(const SuiteReport& rep) {
  std::string out = "suite,case_id,alpha,func,base,target,check,lhs,rhs,ratio,pass\n";
  if (rep.rows.empty()) return out;  // header-only for an empty report
  for (const SuiteRow& r : rep.rows) {
    out += r.suite;
    out += ',';
    out += std::to_string(r.case_id);
    out += ',';
    out += detail::fmt(r.alpha);
    out += ',';
    out += r.func;
    out += ',';
    out += r.base;
    out += ',';
    out += r.target;
    out += ',';
    out += r.check;
    out += ',';
    out += detail::fmt(r.lhs);
    out += ',';
    out += detail::fmt(r.rhs);
    out += ',';
    out += detail::fmt(r.ratio);
    out += ',';
    out += r.pass ? '1' : '0';
    out += '\n';
  }
  const SuiteSummary& s = rep.summary;
  out += "# summary rows=" + std::to_string(s.rows) + " failures=" + std::to_string(s.failures) +
         " min_ratio=" + detail::fmt(s.min_ratio) + " max_ratio=" + detail::fmt(s.max_ratio) +
         " mean_ratio=" + detail::fmt(s.mean_ratio) + "\n";
  for (const auto& [a, m] : s.empirical)
    out += "# empirical alpha=" + detail::fmt(a) + " min_ratio=" + detail::fmt(m) + "\n";
  return out;
}

inline json report_to_json(const SuiteReport& rep) {
  json j;
  j["suite"] = rep.config.suite;
  j["config"] = {{"seed", rep.config.seed},
                 {"cases", rep.config.cases},
                 {"tolerance", rep.config.tolerance},
                 {"alpha", rep.config.alphas},
                 {"format", rep.config.format}};
  json rows = json::array();
  for (const SuiteRow& r : rep.rows) {
    json jr;
    jr["suite"] = r.suite;
    jr["case_id"] = r.case_id;
    jr["alpha"] = std::isnan(r.alpha) ? json(nullptr) : json(r.alpha);
    jr["func"] = r.func;
    jr["base"] = r.base;
    jr["target"] = r.target;
    jr["check"] = r.check;
    jr["lhs"] = extended_to_json(r.lhs);
    jr["rhs"] = extended_to_json(r.rhs);
    jr["ratio"] = extended_to_json(r.ratio);
    jr["pass"] = r.pass;
    rows.push_back(std::move(jr));
  }
  j["rows"] = std::move(rows);
  json emp = json::array();
  for (const auto& [a, m] : rep.summary.empirical)
    emp.push_back({{"alpha", a}, {"min_ratio", extended_to_json(m)}});
  j["summary"] = {{"rows", rep.summary.rows},
                  {"failures", rep.summary.failures},
                  {"min_ratio", extended_to_json(rep.summary.min_ratio)},
                  {"max_ratio", extended_to_json(rep.summary.max_ratio)},
                  {"mean_ratio", extended_to_json(rep.summary.mean_ratio)},
                  {"empirical", std::move(emp)}};
  return j;
}

inline std::string render_json(const SuiteReport& rep) { return report_to_json(rep).dump(2) + "\n"; }

inline int emit_report(const SuiteReport& rep, const SuiteConfig& cfg) {
  std::string payload = cfg.format == "json" ? render_json(rep) : render_csv(rep);
  if (!cfg.output.empty()) {
    std::ofstream out(cfg.output, std::ios::binary);
    if (!out) raise(errc::io_failure, "cannot open output path '" + cfg.output + "'");
    out << payload;
    out.flush();
    if (!out) raise(errc::io_failure, "short write to '" + cfg.output + "'");
    std::printf("wrote %s: rows=%zu failures=%zu\n", cfg.output.c_str(), rep.summary.rows,
                rep.summary.failures);
  } else {
    std::fputs(payload.c_str(), stdout);
  }
  return rep.summary.failures == 0 ? 0 : 1;
}

}  // namespace innerdist
