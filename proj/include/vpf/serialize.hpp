/// @file serialize.hpp
/// JSON forms of the library objects. Rationals are written as strings
/// ("-3/4"), integers and vectors as plain JSON numbers and arrays.
#pragma once

#include <json.hpp>

#include "vpf/evaluate.hpp"
#include "vpf/rootsys.hpp"

namespace vpf {

using Json = nlohmann::ordered_json;

inline Json to_json(const IntVector& v) {
  Json j = Json::array();
  for (Int x : v) j.push_back(x);
  return j;
}

inline Json to_json(const std::vector<IntVector>& vs) {
  Json j = Json::array();
  for (const auto& v : vs) j.push_back(to_json(v));
  return j;
}

inline Json to_json(const RationalVector& v) {
  Json j = Json::array();
  for (const auto& x : v) j.push_back(x.get_str());
  return j;
}

inline IntVector int_vector_from_json(const Json& j) {
  if (!j.is_array()) fail(ErrorKind::Parse, "expected an integer array");
  IntVector v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number_integer()) fail(ErrorKind::Parse, "expected an integer");
    v[i] = j[i].get<Int>();
  }
  return v;
}

inline Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return make_rational(j.get<Int>());
  if (!j.is_string()) fail(ErrorKind::Parse, "expected a rational");
  return parse_rational(j.get<std::string>());
}

inline Json to_json(const LaurentPoly& p) {
  Json j = Json::array();
  for (const auto& [e, c] : p.terms()) j.push_back({{"exponent", to_json(e)}, {"coefficient", c.get_str()}});
  return j;
}

inline LaurentPoly laurent_from_json(const Json& j, std::size_t dim) {
  LaurentPoly p(dim);
  for (const auto& t : j) p.add_term(int_vector_from_json(t.at("exponent")), rational_from_json(t.at("coefficient")));
  return p;
}

inline Json to_json(const GeneratingFraction& f) {
  Json den = Json::array();
  for (const auto& d : f.denominators)
    den.push_back({{"alpha", to_json(d.alpha)}, {"elongation", d.elongation}, {"multiplicity", d.multiplicity}});
  return {{"numerator", to_json(f.numerator)}, {"denominators", den}};
}

inline Json to_json(const PfdResult& r) {
  Json fr = Json::array();
  for (const auto& f : r.fractions.fractions) fr.push_back(to_json(f));
  Json cones = Json::array();
  for (const auto& c : r.cone_support) cones.push_back(to_json(c));
  return {{"dimension", r.fractions.dim},
          {"fractions", fr},
          {"support", to_json(r.support)},
          {"cone_support", cones},
          {"stats", {{"steps", r.stats.steps}, {"rounds", r.stats.rounds}}}};
}

inline Json to_json(const Cone& c) {
  return {{"generators", to_json(c.generators)}, {"normals", to_json(c.facet_normals)}};
}

inline Cone cone_from_json(const Json& j, std::size_t dim) {
  Cone c;
  c.dimension = dim;
  for (const auto& g : j.at("generators")) c.generators.push_back(int_vector_from_json(g));
  for (const auto& h : j.at("normals")) c.facet_normals.push_back(int_vector_from_json(h));
  return c;
}

inline Json to_json(const BasicQuasiNumber& t) {
  Json m = Json::array();
  for (const auto& row : t.matrix()) m.push_back(row);
  return {{"M", m}, {"c", t.rhs()}, {"d", t.modulus()}};
}

inline BasicQuasiNumber quasinumber_from_json(const Json& j, std::size_t dim) {
  std::vector<BasicQuasiNumber::Row> m;
  for (const auto& row : j.at("M")) m.push_back(row.get<BasicQuasiNumber::Row>());
  auto t = BasicQuasiNumber::make(dim, std::move(m), j.at("c").get<BasicQuasiNumber::Row>(), j.at("d").get<Int>());
  if (!t) fail(ErrorKind::Parse, "inconsistent quasinumber");
  return *t;
}

inline Json to_json(const QuasiPolynomial& q) {
  Json terms = Json::array();
  for (const auto& [t, p] : q.by_tau()) terms.push_back({{"tau", to_json(t)}, {"polynomial", to_json(p)}});
  return {{"dimension", q.dim()}, {"terms", terms}};
}

inline QuasiPolynomial quasipolynomial_from_json(const Json& j) {
  const std::size_t n = j.at("dimension").get<std::size_t>();
  QuasiPolynomial q(n);
  for (const auto& t : j.at("terms")) q.add(quasinumber_from_json(t.at("tau"), n), laurent_from_json(t.at("polynomial"), n));
  return q;
}

inline Json to_json(const ChamberFormula& cf) {
  return {{"chamber", to_json(cf.chamber)}, {"indicator", to_json(cf.indicator)}, {"formula", to_json(cf.formula)}};
}

inline ChamberFormula chamber_formula_from_json(const Json& j) {
  ChamberFormula cf;
  cf.formula = quasipolynomial_from_json(j.at("formula"));
  cf.chamber = cone_from_json(j.at("chamber"), cf.formula.dim());
  for (const auto& x : j.at("indicator")) cf.indicator.push_back(rational_from_json(x));
  return cf;
}

inline Json to_json(const VerifyReport& r) {
  Json mm = Json::array();
  for (const auto& m : r.mismatches)
    mm.push_back({{"point", to_json(m.point)}, {"formula", m.formula.get_str()}, {"oracle", m.oracle.get_str()}});
  return {{"chamber_id", r.chamber_id}, {"points_tested", r.points_tested}, {"mismatches", mm}};
}

inline Json to_json(const RootSystem& rs) {
  return {{"type", std::string(1, rs.label)}, {"rank", rs.rank}, {"positive_roots", to_json(rs.positive_roots)}};
}

}  // namespace vpf
