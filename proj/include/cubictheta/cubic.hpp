#pragma once

// Binary cubic forms and the cubic rings they parametrize. Totally real cubic
// fields of a fundamental discriminant d are enumerated as GL2(Z)-classes of
// irreducible integral cubic forms of discriminant d; each class is realized as
// an explicit ring whose trace-zero sublattice carries the rescaled trace form.

#include <array>
#include <compare>
#include <cstddef>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "cubictheta/arith.hpp"
#include "cubictheta/checked.hpp"
#include "cubictheta/qform.hpp"

namespace cubictheta {

/// a x^3 + b x^2 y + c x y^2 + d y^3
struct CubicForm {
  i64 a = 0;
  i64 b = 0;
  i64 c = 0;
  i64 d = 0;

  auto operator<=>(const CubicForm&) const = default;

  CubicForm operator-() const { return {-a, -b, -c, -d}; }

  std::string str() const {
    return "(" + std::to_string(a) + ", " + std::to_string(b) + ", " + std::to_string(c) + ", " +
           std::to_string(d) + ")";
  }
};

inline std::ostream& operator<<(std::ostream& os, const CubicForm& f) { return os << f.str(); }

inline i64 cubic_discriminant(const CubicForm& f) {
  using checked::mul;
  const i128 a = f.a, b = f.b, c = f.c, d = f.d;
  i128 disc = mul(mul(mul(18 * a, b), c), d) + mul(mul(b, b), mul(c, c)) - mul(mul(4 * a, c), mul(c, c)) -
              mul(mul(4 * b, b), mul(b, d)) - mul(mul(27 * a, a), mul(d, d));
  return checked::narrow(disc);
}

namespace detail {

inline std::vector<i64> positive_divisors(i64 n) {
  n = abs64(n);
  std::vector<i64> small, large;
  for (i64 k = 1; k * k <= n; ++k) {
    if (n % k != 0) continue;
    small.push_back(k);
    if (k != n / k) large.push_back(n / k);
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

}  // namespace detail

/// True iff a != 0 and a t^3 + b t^2 + c t + d has no rational root.
inline bool is_irreducible(const CubicForm& f) {
  if (f.a == 0 || f.d == 0) return false;
  const auto numerators = detail::positive_divisors(f.d);
  const auto denominators = detail::positive_divisors(f.a);
  for (i64 s : denominators) {
    for (i64 r0 : numerators) {
      if (gcd(r0, s) != 1) continue;
      for (i64 r : {r0, -r0}) {
        using checked::mul;
        i128 R = r, S = s;
        i128 value = mul(mul(mul(static_cast<i128>(f.a), R), R), R) + mul(mul(mul(static_cast<i128>(f.b), R), R), S) +
                     mul(mul(mul(static_cast<i128>(f.c), R), S), S) + mul(mul(mul(static_cast<i128>(f.d), S), S), S);
        if (value == 0) return false;
      }
    }
  }
  return true;
}

/// F o U: (x, y) -> F(m00 x + m01 y, m10 x + m11 y).
inline CubicForm transform(const CubicForm& f, const Matrix2& u) {
  // Homogeneous polynomials in x, y as coefficient arrays from x^k down to y^k.
  using Poly = std::vector<i128>;
  auto times = [](const Poly& p, const Poly& q) {
    Poly out(p.size() + q.size() - 1, 0);
    for (std::size_t i = 0; i < p.size(); ++i)
      for (std::size_t j = 0; j < q.size(); ++j) out[i + j] += checked::mul(p[i], q[j]);
    return out;
  };
  const Poly l1{u.m00, u.m01};
  const Poly l2{u.m10, u.m11};
  const Poly l1l1 = times(l1, l1), l2l2 = times(l2, l2);
  const std::array<Poly, 4> terms{times(l1l1, l1), times(l1l1, l2), times(l1, l2l2), times(l2l2, l2)};
  const std::array<i64, 4> coeffs{f.a, f.b, f.c, f.d};
  std::array<i128, 4> out{};
  for (std::size_t t = 0; t < 4; ++t)
    for (std::size_t k = 0; k < 4; ++k) out[k] += checked::mul(static_cast<i128>(coeffs[t]), terms[t][k]);
  return {checked::narrow(out[0]), checked::narrow(out[1]), checked::narrow(out[2]), checked::narrow(out[3])};
}

/// The Hessian covariant (b^2 - 3ac, bc - 9ad, c^2 - 3bd); discriminant -3 disc(F).
inline QuadForm hessian(const CubicForm& f) {
  using checked::mul;
  using checked::sub;
  return {sub(mul(f.b, f.b), mul(3, mul(f.a, f.c))), sub(mul(f.b, f.c), mul(9, mul(f.a, f.d))),
          sub(mul(f.c, f.c), mul(3, mul(f.b, f.d)))};
}

/// Canonical representative of the GL2(Z)-class of a cubic form of positive
/// discriminant: move the Hessian to its GL2-reduced form, then take the
/// least of +-F o g over automorphs g of that reduced Hessian.
inline CubicForm canonical_form(const CubicForm& f) {
  if (cubic_discriminant(f) <= 0)
    throw Error(ErrorKind::InvalidArgument, "canonical_form needs a positive discriminant, got " + f.str());
  const QuadForm h = hessian(f);
  auto red = reduce_sl2(h);
  Matrix2 u = red.transform;
  if (red.form.b < 0) u = u * Matrix2::flip();
  const QuadForm hr = transform(h, u);
  const CubicForm base = transform(f, u);

  CubicForm best = std::max(base, -base);
  for (i64 m00 = -1; m00 <= 1; ++m00)
    for (i64 m01 = -1; m01 <= 1; ++m01)
      for (i64 m10 = -1; m10 <= 1; ++m10)
        for (i64 m11 = -1; m11 <= 1; ++m11) {
          Matrix2 g{m00, m01, m10, m11};
          i64 det = g.det();
          if (det != 1 && det != -1) continue;
          if (transform(hr, g) != hr) continue;
          CubicForm cand = transform(base, g);
          best = std::max({best, cand, -cand});
        }
  return best;
}

/// One canonical cubic form per isomorphism class of cubic fields of the
/// positive fundamental discriminant d, sorted ascending.
///
/// Every class has a representative whose Hessian (P, Q, R) is reduced, so
/// P = min H <= sqrt(d); writing P and d through the real roots of F gives
/// 27 d a^2 <= 4 P^3. Translating x -> x + k y fixes a and P and moves b by
/// 3ak, so b ranges over [0, 3a) and the last coefficient solves the
/// discriminant equation.
inline std::vector<CubicForm> enumerate_cubic_fields(i64 d) {
  if (d <= 0) throw Error(ErrorKind::NotPositive, std::to_string(d) + " is not positive");
  if (!is_fundamental(d)) throw Error(ErrorKind::NotFundamental, std::to_string(d) + " is not a fundamental discriminant");
  std::set<CubicForm> found;
  const i64 p_max = isqrt(d);
  for (i64 a = 1; 729 * static_cast<i128>(a) * a * a * a <= 16 * static_cast<i128>(d); ++a) {
    for (i64 b = 0; b < 3 * a; ++b) {
      for (i64 p = 1; p <= p_max; ++p) {
        if (mod(b * b - p, 3 * a) != 0) continue;
        if (4 * static_cast<i128>(p) * p * p < 27 * static_cast<i128>(d) * a * a) continue;
        const i64 c = (b * b - p) / (3 * a);
        // 27 a^2 t^2 + (4 b^3 - 18 a b c) t + (d - b^2 c^2 + 4 a c^3) = 0
        const i128 qa = 27 * static_cast<i128>(a) * a;
        const i128 qb = 4 * static_cast<i128>(b) * b * b - 18 * static_cast<i128>(a) * b * c;
        const i128 qc = d - static_cast<i128>(b) * b * c * c + 4 * static_cast<i128>(a) * c * c * c;
        const i128 disc = checked::mul(qb, qb) - checked::mul(4 * qa, qc);
        if (disc < 0) continue;
        const i128 root = isqrt(disc);
        if (root * root != disc) continue;
        for (i128 num : {-qb + root, -qb - root}) {
          if (num % (2 * qa) != 0) continue;
          const CubicForm f{a, b, c, checked::narrow(num / (2 * qa))};
          if (cubic_discriminant(f) != d) throw Error(ErrorKind::Internal, "enumeration produced " + f.str());
          if (is_irreducible(f)) found.insert(canonical_form(f));
        }
      }
    }
  }
  return {found.begin(), found.end()};
}

using Vec3 = std::array<i64, 3>;

/// Rank-3 ring with basis (1, w, t) and multiplication
///   w^2 = -ac - b w + a t,  w t = -ad,  t^2 = -bd - d w + c t
/// attached to the cubic form (a, b, c, d).
struct CubicRing {
  CubicForm source;
  std::array<std::array<Vec3, 3>, 3> table{};  // table[i][j] = e_i e_j
  Vec3 trace{};

  Vec3 multiply(const Vec3& x, const Vec3& y) const {
    std::array<i128, 3> acc{};
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) {
        i128 coeff = checked::mul(static_cast<i128>(x[i]), static_cast<i128>(y[j]));
        if (coeff == 0) continue;
        for (std::size_t k = 0; k < 3; ++k) acc[k] += checked::mul(coeff, static_cast<i128>(table[i][j][k]));
      }
    return {checked::narrow(acc[0]), checked::narrow(acc[1]), checked::narrow(acc[2])};
  }

  i64 trace_of(const Vec3& x) const {
    i128 t = 0;
    for (std::size_t i = 0; i < 3; ++i) t += checked::mul(static_cast<i128>(x[i]), static_cast<i128>(trace[i]));
    return checked::narrow(t);
  }

  /// tr(x y)
  i64 trace_pairing(const Vec3& x, const Vec3& y) const { return trace_of(multiply(x, y)); }

  std::array<Vec3, 3> trace_gram() const {
    std::array<Vec3, 3> g{};
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) g[i][j] = trace_of(table[i][j]);
    return g;
  }
};

namespace detail {

inline Vec3 unit(std::size_t i) {
  Vec3 v{};
  v[i] = 1;
  return v;
}

inline i128 det3(const std::array<Vec3, 3>& m) {
  auto at = [&](std::size_t i, std::size_t j) { return static_cast<i128>(m[i][j]); };
  return at(0, 0) * (at(1, 1) * at(2, 2) - at(1, 2) * at(2, 1)) -
         at(0, 1) * (at(1, 0) * at(2, 2) - at(1, 2) * at(2, 0)) +
         at(0, 2) * (at(1, 0) * at(2, 1) - at(1, 1) * at(2, 0));
}

}  // namespace detail

inline CubicRing ring_of(const CubicForm& f) {
  if (!is_irreducible(f)) throw Error(ErrorKind::Reducible, "cubic form " + f.str() + " is reducible");
  const i64 disc = cubic_discriminant(f);
  if (!is_fundamental(disc))
    throw Error(ErrorKind::NonFundamentalDiscriminant,
                "discriminant " + std::to_string(disc) + " of " + f.str() + " is not fundamental");
  using checked::mul;
  CubicRing r;
  r.source = f;
  r.table[0][0] = {1, 0, 0};
  r.table[0][1] = r.table[1][0] = {0, 1, 0};
  r.table[0][2] = r.table[2][0] = {0, 0, 1};
  r.table[1][1] = {-mul(f.a, f.c), -f.b, f.a};
  r.table[1][2] = r.table[2][1] = {-mul(f.a, f.d), 0, 0};
  r.table[2][2] = {-mul(f.b, f.d), -f.d, f.c};
  // tr(e_i) is the trace of multiplication by e_i.
  for (std::size_t i = 0; i < 3; ++i) r.trace[i] = r.table[i][0][0] + r.table[i][1][1] + r.table[i][2][2];

  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t k = 0; k < 3; ++k) {
        auto ei = detail::unit(i), ej = detail::unit(j), ek = detail::unit(k);
        if (r.multiply(r.multiply(ei, ej), ek) != r.multiply(ei, r.multiply(ej, ek)))
          throw Error(ErrorKind::Internal, "ring of " + f.str() + " is not associative");
      }
  if (detail::det3(r.trace_gram()) != disc)
    throw Error(ErrorKind::Internal, "trace discriminant of ring of " + f.str() + " differs from the form");
  return r;
}

/// The trace-zero sublattice with the Gram matrix of tr(xy) on its basis.
struct TraceZeroLattice {
  std::array<Vec3, 2> basis{};
  std::array<std::array<i64, 2>, 2> gram{};
};

inline TraceZeroLattice trace_zero(const CubicRing& ring) {
  // Column operations turn the trace row into (g, 0, 0); the matching
  // unimodular columns 1 and 2 span the full kernel.
  Vec3 row = ring.trace;
  std::array<Vec3, 3> cols{detail::unit(0), detail::unit(1), detail::unit(2)};
  auto nonzero = [&] {
    int n = 0;
    for (auto v : row) n += v != 0;
    return n;
  };
  while (nonzero() > 1) {
    std::size_t pivot = 3;
    for (std::size_t i = 0; i < 3; ++i)
      if (row[i] != 0 && (pivot == 3 || abs64(row[i]) < abs64(row[pivot]))) pivot = i;
    for (std::size_t j = 0; j < 3; ++j) {
      if (j == pivot || row[j] == 0) continue;
      i64 q = floor_div(row[j], row[pivot]);
      row[j] -= q * row[pivot];
      for (std::size_t k = 0; k < 3; ++k) cols[j][k] = checked::sub(cols[j][k], checked::mul(q, cols[pivot][k]));
    }
  }
  std::size_t pivot = 0;
  while (row[pivot] == 0) ++pivot;
  TraceZeroLattice lattice;
  std::size_t out = 0;
  for (std::size_t j = 0; j < 3; ++j)
    if (j != pivot) lattice.basis[out++] = cols[j];

  const auto& v = lattice.basis;
  for (const auto& w : v)
    if (ring.trace_of(w) != 0) throw Error(ErrorKind::Internal, "trace-zero basis vector has nonzero trace");
  // Saturation: v0 x v1 must be the primitive normal vector trace / gcd.
  const i64 g = gcd(gcd(ring.trace[0], ring.trace[1]), ring.trace[2]);
  Vec3 cross{checked::sub(checked::mul(v[0][1], v[1][2]), checked::mul(v[0][2], v[1][1])),
             checked::sub(checked::mul(v[0][2], v[1][0]), checked::mul(v[0][0], v[1][2])),
             checked::sub(checked::mul(v[0][0], v[1][1]), checked::mul(v[0][1], v[1][0]))};
  Vec3 normal{ring.trace[0] / g, ring.trace[1] / g, ring.trace[2] / g};
  Vec3 neg_normal{-normal[0], -normal[1], -normal[2]};
  if (cross != normal && cross != neg_normal)
    throw Error(ErrorKind::Internal, "trace-zero basis does not span the full kernel");

  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) lattice.gram[i][j] = ring.trace_pairing(v[i], v[j]);
  return lattice;
}

/// tr(x^2) / (2 gcd(3, d)) on the trace-zero lattice, as a binary form in the
/// lattice basis. Integral, primitive and of discriminant three_reflection(d)
/// for fundamental d.
inline QuadForm trace_form(const CubicRing& ring, i64 d) {
  if (cubic_discriminant(ring.source) != d)
    throw Error(ErrorKind::DiscriminantMismatch,
                "ring of " + ring.source.str() + " does not have discriminant " + std::to_string(d));
  if (!is_fundamental(d))
    throw Error(ErrorKind::NonFundamentalDiscriminant, std::to_string(d) + " is not a fundamental discriminant");
  const auto lattice = trace_zero(ring);
  const auto& g = lattice.gram;
  const i64 scale = d % 3 == 0 ? 3 : 1;
  if (g[0][0] % (2 * scale) != 0 || g[0][1] % scale != 0 || g[1][1] % (2 * scale) != 0)
    throw Error(ErrorKind::IntegralityViolation, "trace form of " + ring.source.str() + " is not integral after rescaling");
  QuadForm t{g[0][0] / (2 * scale), g[0][1] / scale, g[1][1] / (2 * scale)};
  if (t.discriminant() != three_reflection(d))
    throw Error(ErrorKind::Internal, "trace form " + t.str() + " has the wrong discriminant");
  if (!t.is_primitive()) throw Error(ErrorKind::IntegralityViolation, "trace form " + t.str() + " is not primitive");
  return t;
}

}  // namespace cubictheta
