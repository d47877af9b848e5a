#pragma once

// JSON shapes shared by the cache, the reports and the CLI. All numbers are
// exact integers.

#include <optional>
#include <vector>

#include "json.hpp"

#include "cubictheta/cubic.hpp"
#include "cubictheta/qform.hpp"
#include "cubictheta/theta.hpp"

namespace cubictheta {

using json = nlohmann::json;

inline json to_json(const QuadForm& q) { return json::array({q.a, q.b, q.c}); }

inline json to_json(const CubicForm& f) { return json::array({f.a, f.b, f.c, f.d}); }

inline json to_json(const Fingerprint& fp) {
  return json::array({json::array({fp.first.index, fp.first.coeff}), json::array({fp.second.index, fp.second.coeff})});
}

inline json to_json(const ThetaSeries& t) {
  json j;
  j["form"] = to_json(t.form);
  j["disc"] = t.character;
  j["level"] = t.level;
  j["precision"] = t.precision;
  j["coeffs"] = t.coeffs;
  return j;
}

inline json to_json(const std::optional<i64>& v) { return v ? json(*v) : json(nullptr); }

inline QuadForm quad_form_from_json(const json& j) {
  if (!j.is_array() || j.size() != 3) throw Error(ErrorKind::InvalidArgument, "expected [a, b, c]");
  return {j[0].get<i64>(), j[1].get<i64>(), j[2].get<i64>()};
}

inline CubicForm cubic_form_from_json(const json& j) {
  if (!j.is_array() || j.size() != 4) throw Error(ErrorKind::InvalidArgument, "expected [a, b, c, d]");
  return {j[0].get<i64>(), j[1].get<i64>(), j[2].get<i64>(), j[3].get<i64>()};
}

inline ThetaSeries theta_from_json(const json& j) {
  ThetaSeries t;
  t.form = quad_form_from_json(j.at("form"));
  t.character = j.at("disc").get<i64>();
  t.level = j.at("level").get<i64>();
  t.precision = j.at("precision").get<i64>();
  t.coeffs = j.at("coeffs").get<std::vector<i64>>();
  if (t.coeffs.size() != static_cast<std::size_t>(t.precision) + 1)
    throw Error(ErrorKind::InvalidArgument, "coefficient vector length does not match precision");
  return t;
}

}  // namespace cubictheta
