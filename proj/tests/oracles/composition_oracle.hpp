#pragma once

// Test-only oracle for Gauss composition that never calls compose(). The form
// (a, b, c) of discriminant D corresponds to the ideal a Z + ((-b + sqrt D)/2) Z.
// Two such ideals are multiplied as lattices, the product is brought to Hermite
// normal form, its content is divided out, and the primitive ideal left over is
// read back as a form.

#include <array>
#include <vector>

#include "cubictheta/checked.hpp"
#include "cubictheta/qform.hpp"

namespace cubictheta::oracle {

// An element (u + v sqrt D) / 2, stored as (u, v).
using Half = std::array<i64, 2>;

inline Half multiply(const Half& x, const Half& y, i64 disc) {
  return {(x[0] * y[0] + x[1] * y[1] * disc) / 2, (x[0] * y[1] + x[1] * y[0]) / 2};
}

/// The SL2-reduced form of the ideal product of f1 and f2.
inline QuadForm compose_via_ideals(const QuadForm& f1, const QuadForm& f2) {
  const i64 disc = f1.discriminant();
  const std::array<Half, 2> i1 = {Half{2 * f1.a, 0}, Half{-f1.b, 1}};
  const std::array<Half, 2> i2 = {Half{2 * f2.a, 0}, Half{-f2.b, 1}};
  std::vector<Half> gens;
  for (const auto& x : i1)
    for (const auto& y : i2) gens.push_back(multiply(x, y, disc));

  // Hermite normal form: rows (m, 0) and (u0, g).
  Half w{0, 0};
  for (const auto& v : gens) {
    const auto [g, s, t] = extended_gcd(w[1], v[1]);
    if (g == 0) continue;
    w = {s * w[0] + t * v[0], g};
  }
  if (w[1] < 0) w = {-w[0], -w[1]};
  const i64 g = w[1];
  i64 m = 0;
  for (const auto& v : gens) m = gcd(m, v[0] - (v[1] / g) * w[0]);

  // The product is g times the primitive ideal with rows (m/g, 0), (u0/g, 1).
  const i64 a = m / g / 2;
  const i64 b = mod(-w[0] / g, 2 * a);
  const i64 c = (b * b - disc) / (4 * a);
  return reduce_sl2({a, b, c}).form;
}

}  // namespace cubictheta::oracle
