#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "innerdist/arcs.hpp"
#include "innerdist/content.hpp"
#include "innerdist/errors.hpp"
#include "innerdist/halfplane.hpp"
#include "innerdist/inner_function.hpp"

namespace innerdist {

using nlohmann::json;

inline json arcset_to_json(const ArcSet& e) {
  json out = json::array();
  for (const Arc& a : e.arcs()) out.push_back({{"start", a.start}, {"length", a.length}});
  return out;
}

inline ArcSet arcset_from_json(const json& j) {
  if (!j.is_array()) raise(errc::config_invalid, "arc set must be a JSON array");
  std::vector<Arc> arcs;
  for (const auto& item : j)
    arcs.push_back(Arc{item.at("start").get<double>(), item.at("length").get<double>()});
  return arcs.empty() ? ArcSet() : ArcSet::from_arcs(std::move(arcs));
}

// {"rotation": radians, "zeros": [[re, im], ...], "atoms": [{"angle", "mass"}, ...],
//  "compose": [descriptor, ...]} - compose applied innermost-first, after the
// descriptor's own factors.
inline InnerFunction function_from_json(const json& j) {
  if (!j.is_object()) raise(errc::config_invalid, "function descriptor must be a JSON object");
  double rot = j.value("rotation", 0.0);
  std::vector<complex> zeros;
  if (j.contains("zeros"))
    for (const auto& z : j.at("zeros"))
      zeros.emplace_back(z.at(0).get<double>(), z.at(1).get<double>());
  std::vector<Atom> atoms;
  if (j.contains("atoms"))
    for (const auto& a : j.at("atoms"))
      atoms.push_back(Atom{a.at("angle").get<double>(), a.at("mass").get<double>()});
  bool has_own = rot != 0.0 || !zeros.empty() || !atoms.empty();
  bool has_compose = j.contains("compose") && !j.at("compose").empty();
  if (!has_own && !has_compose) return InnerFunction();  // identity rotation
  InnerFunction out = InnerFunction::make(rot, std::move(zeros), std::move(atoms));
  bool first = !has_own;  // a pure-compose descriptor drops its identity placeholder
  if (has_compose) {
    for (const auto& sub : j.at("compose")) {
      InnerFunction g = function_from_json(sub);
      out = first ? std::move(g) : compose(g, out);
      first = false;
    }
  }
  return out;
}

inline json function_to_json(const InnerFunction& f) {
  auto stage_json = [](const InnerStage& st) {
    json out;
    out["rotation"] = st.rotation;
    json zs = json::array();
    for (const complex& a : st.zeros) zs.push_back({a.real(), a.imag()});
    out["zeros"] = std::move(zs);
    json as = json::array();
    for (const Atom& at : st.atoms) as.push_back({{"angle", at.angle}, {"mass", at.mass}});
    out["atoms"] = std::move(as);
    return out;
  };
  const auto& stages = f.stages();
  json out = stage_json(stages.front());
  if (stages.size() > 1) {
    json comp = json::array();
    for (std::size_t i = 1; i < stages.size(); ++i) comp.push_back(stage_json(stages[i]));
    out["compose"] = std::move(comp);
  }
  return out;
}

inline json interval_set_to_json(const RealIntervalSet& s) {
  json ivs = json::array();
  for (const auto& iv : s.intervals) ivs.push_back({iv.first, iv.second});
  json rays;
  rays["left"] = s.left_ray ? json(*s.left_ray) : json(nullptr);
  rays["right"] = s.right_ray ? json(*s.right_ray) : json(nullptr);
  return {{"intervals", std::move(ivs)}, {"rays", std::move(rays)}};
}

inline RealIntervalSet interval_set_from_json(const json& j) {
  std::vector<std::pair<double, double>> ivs;
  if (j.contains("intervals"))
    for (const auto& iv : j.at("intervals"))
      ivs.emplace_back(iv.at(0).get<double>(), iv.at(1).get<double>());
  std::optional<double> left, right;
  if (j.contains("rays")) {
    const auto& rays = j.at("rays");
    if (rays.contains("left") && !rays.at("left").is_null()) left = rays.at("left").get<double>();
    if (rays.contains("right") && !rays.at("right").is_null())
      right = rays.at("right").get<double>();
  }
  return RealIntervalSet::make(std::move(ivs), left, right);
}

inline json pick_to_json(const PickFunction& g) {
  json poles = json::array();
  for (const PickPole& p : g.poles) poles.push_back({{"x", p.x}, {"t", p.t}});
  return {{"a", g.a}, {"b", g.b}, {"poles", std::move(poles)}};
}

inline PickFunction pick_from_json(const json& j) {
  std::vector<PickPole> poles;
  if (j.contains("poles"))
    for (const auto& p : j.at("poles"))
      poles.push_back(PickPole{p.at("x").get<double>(), p.at("t").get<double>()});
  return make_pick(j.at("a").get<double>(), j.at("b").get<double>(), std::move(poles));
}

// +inf serializes as the string "inf" per the wire contract.
inline json extended_to_json(double v) {
  if (std::isinf(v)) return json("inf");
  return json(v);
}

inline json content_result_to_json(const ContentResult& r) {
  json cover = json::array();
  for (const Arc& a : r.cover) cover.push_back({{"start", a.start}, {"length", a.length}});
  return {{"value", extended_to_json(r.value)}, {"cover", std::move(cover)}, {"method", r.method}};
}

}  // namespace innerdist
