#pragma once

// JSON encodings. Rationals are always "n/d" strings; integers are JSON
// numbers when they fit in 64 bits and decimal strings otherwise. Readers
// accept either form.

#include <json.hpp>

#include <limits>
#include <string>
#include <vector>

#include "hjtoric/circle_sim.hpp"

namespace hjtoric {

using json = nlohmann::json;

inline json integer_json(const Integer& n) {
  if (n >= std::numeric_limits<long long>::min() && n <= std::numeric_limits<long long>::max()) {
    return static_cast<long long>(n);
  }
  return n.str();
}

inline json rational_json(const Rational& q) { return to_string(q); }

inline Rational rational_from_json(const json& j) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw DomainError("expected an integer or an \"n/d\" string, got " + j.dump());
}

inline Integer integer_from_json(const json& j) {
  if (j.is_number_integer()) return Integer(j.get<long long>());
  if (j.is_string()) return parse_integer(j.get<std::string>());
  throw DomainError("expected an integer, got " + j.dump());
}

inline json integers_json(const std::vector<Integer>& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(integer_json(x));
  return out;
}

inline json vec_json(const LatticeVec& v) { return json::array({integer_json(v.x), integer_json(v.y)}); }

inline const json& require(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw DomainError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

inline json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw DomainError(std::string("malformed JSON: ") + e.what());
  }
}

// polygons

inline json to_json(const Polygon& poly) {
  json v = json::array(), n = json::array();
  for (const auto& p : poly.vertices()) v.push_back(json::array({rational_json(p.x), rational_json(p.y)}));
  for (const auto& c : poly.conormals()) n.push_back(vec_json(c));
  return {{"vertices", v}, {"conormals", n}};
}

inline Polygon polygon_from_json(const json& j) {
  std::vector<RationalPoint> vs;
  std::vector<LatticeVec> ns;
  for (const auto& p : require(j, "vertices")) {
    if (!p.is_array() || p.size() != 2) throw DomainError("vertex must be a pair");
    vs.push_back({rational_from_json(p[0]), rational_from_json(p[1])});
  }
  for (const auto& c : require(j, "conormals")) {
    if (!c.is_array() || c.size() != 2) throw DomainError("conormal must be a pair");
    ns.push_back({integer_from_json(c[0]), integer_from_json(c[1])});
  }
  return Polygon(std::move(vs), std::move(ns));
}

// lattices

inline json to_json(const IntersectionLattice& lat) {
  json rows = json::array();
  for (const auto& row : lat.pairing()) rows.push_back(integers_json(row));
  return {{"classes", lat.labels()}, {"pairing", rows}, {"c1", integers_json(lat.c1())}};
}

/// "classes" defaults to e1..en and "c1" to 2 + self-intersection (spheres).
inline IntersectionLattice lattice_from_json(const json& j) {
  IntMatrix pairing;
  const json& rows = require(j, "pairing");
  if (!rows.is_array()) throw DomainError("pairing must be an array of rows");
  for (const auto& row : rows) {
    if (!row.is_array()) throw DomainError("pairing must be an array of rows");
    std::vector<Integer> r;
    for (const auto& x : row) r.push_back(integer_from_json(x));
    pairing.push_back(std::move(r));
  }
  const std::size_t n = pairing.size();
  std::vector<std::string> labels;
  if (j.contains("classes")) {
    for (const auto& l : j.at("classes")) {
      if (!l.is_string()) throw DomainError("class labels must be strings");
      labels.push_back(l.get<std::string>());
    }
  } else {
    for (std::size_t i = 1; i <= n; ++i) labels.push_back("e" + std::to_string(i));
  }
  std::vector<Integer> c1;
  if (j.contains("c1")) {
    for (const auto& x : j.at("c1")) c1.push_back(integer_from_json(x));
  } else {
    for (std::size_t i = 0; i < n; ++i) c1.push_back(i < pairing[i].size() ? 2 + pairing[i][i] : Integer(0));
  }
  return IntersectionLattice(std::move(labels), std::move(pairing), std::move(c1));
}

inline json to_json(const Signature& s) {
  return {{"b_plus", s.b_plus}, {"b_minus", s.b_minus}, {"b_zero", s.b_zero}};
}

// reports

inline json resolve_json(const CyclicSingularity& s, const ResolutionReport& r) {
  json out = {{"r", integer_json(s.order)}, {"p", integer_json(s.p)}, {"q", integer_json(s.q)},
              {"chain", integers_json(r.chain.self_intersections)}, {"k", integer_json(r.k)},
              {"alpha", integer_json(r.alpha)}};
  if (s.smooth()) out["note"] = "smooth point";
  return out;
}

inline json hj_json(const Integer& m, const Integer& k) {
  const HJExpansion e = hj_expand(m, k);
  const HJExpansion r = hj_reverse(e);
  return {{"m", integer_json(m)}, {"k", integer_json(k)}, {"terms", integers_json(e.terms)},
          {"value", rational_json(hj_eval(e))}, {"reverse_terms", integers_json(r.terms)},
          {"reverse_k", integer_json(r.residue)}};
}

inline json blowup_json(const CrossCheckReport& r) {
  const BlowupConfig& c = r.config;
  json cuts = json::array();
  for (const auto& v : r.sequence.cuts) cuts.push_back(vec_json(v));
  return {{"p", integer_json(c.p)},
          {"q", integer_json(c.q)},
          {"size", rational_json(c.size)},
          {"chain_p", integers_json(c.chain_p.self_intersections)},
          {"chain_q", integers_json(c.chain_q.self_intersections)},
          {"fulton_p", integers_json(c.fulton_p.terms)},
          {"fulton_q", integers_json(c.fulton_q.terms)},
          {"mcduff", integers_json(r.sequence.multiplicities)},
          {"cuts", cuts},
          {"polygon", to_json(r.sequence.polygon)},
          {"cross_check", r.ok()}};
}

// simulator

struct SimulationInput {
  std::vector<FixedPointDatum> data;
  SimulationOptions options;
};

inline SimulationInput simulation_from_json(const json& j) {
  SimulationInput in;
  const json& fps = require(j, "fixed_points");
  if (!fps.is_array()) throw DomainError("fixed_points must be an array");
  for (const auto& f : fps) {
    FixedPointDatum d;
    d.level = rational_from_json(require(f, "level"));
    const Integer sign = integer_from_json(require(f, "sign"));
    if (sign != 1 && sign != -1) throw DomainError("sign must be 1 or -1");
    d.sign = sign == 1 ? 1 : -1;
    d.p = integer_from_json(require(f, "p"));
    d.q = integer_from_json(require(f, "q"));
    if (f.contains("match") && !f.at("match").is_null()) {
      const Integer m = integer_from_json(f.at("match"));
      if (m < 0) throw DomainError("match must be a nonnegative index");
      d.match = static_cast<std::size_t>(m);
    }
    if (f.contains("center_order")) d.center_order = integer_from_json(f.at("center_order"));
    in.data.push_back(std::move(d));
  }
  auto& o = in.options;
  if (j.contains("loops")) {
    const Integer loops = integer_from_json(j.at("loops"));
    if (loops < 1 || loops > 1000000) throw DomainError("loops must lie in [1, 1000000]");
    o.loops = static_cast<std::size_t>(loops);
  }
  if (j.contains("bound")) o.bound = integer_from_json(j.at("bound"));
  if (j.contains("eps")) o.eps = rational_from_json(j.at("eps"));
  if (j.contains("base")) o.base = rational_from_json(j.at("base"));
  if (j.contains("slope")) o.slope = rational_from_json(j.at("slope"));
  if (j.contains("delta")) o.delta = rational_from_json(j.at("delta"));
  if (j.contains("independent_tracked")) {
    if (!j.at("independent_tracked").is_boolean()) throw DomainError("independent_tracked must be a boolean");
    o.independent_tracked = j.at("independent_tracked").get<bool>();
  }
  return in;
}

inline json to_json(const GeneralizedCover& c) {
  auto intervals = [](const std::vector<CoverInterval>& v) {
    json out = json::array();
    for (const auto& i : v) out.push_back({{"name", i.name}, {"lo", rational_json(i.lo)}, {"hi", rational_json(i.hi)}});
    return out;
  };
  json order = json::array();
  for (const auto& [i, u] : c.order) order.push_back(json::array({i, u}));
  return {{"eps", rational_json(c.eps)}, {"U", intervals(c.U)}, {"I", intervals(c.I)}, {"order", order}};
}

inline json to_json(const SimulationResult& r) {
  json ledger = json::array();
  for (const auto& x : r.ledger) ledger.push_back(rational_json(x));
  json out = {{"verdict", verdict_name(r.verdict)}, {"message", r.message}, {"ledger", ledger},
              {"loop_of_contradiction", r.loop_of_contradiction ? json(*r.loop_of_contradiction) : json(nullptr)},
              {"final_lattice", to_json(r.final_lattice)}};
  if (r.verdict != Verdict::no_obstruction) {
    out["bound"] = integer_json(r.bound);
    out["base"] = rational_json(r.base);
    out["tracked_class"] = r.tracked_class;
    out["cover"] = to_json(r.cover);
  }
  return out;
}

}  // namespace hjtoric
