#pragma once

// Integral binary quadratic forms a x^2 + b xy + c y^2: reduction under SL2(Z)
// and GL2(Z), representation counts, Gauss composition and class groups of
// negative discriminant.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "cubictheta/arith.hpp"
#include "cubictheta/checked.hpp"

namespace cubictheta {

struct QuadForm {
  i64 a = 0;
  i64 b = 0;
  i64 c = 0;

  auto operator<=>(const QuadForm&) const = default;

  i64 discriminant() const {
    return checked::narrow(static_cast<i128>(b) * b - 4 * static_cast<i128>(a) * c);
  }

  bool is_positive_definite() const { return discriminant() < 0 && a > 0; }

  bool is_primitive() const { return gcd(gcd(a, b), c) == 1; }

  i128 evaluate(i64 x, i64 y) const {
    i128 X = x, Y = y;
    return a * X * X + b * X * Y + c * Y * Y;
  }

  std::string str() const {
    return "(" + std::to_string(a) + ", " + std::to_string(b) + ", " + std::to_string(c) + ")";
  }
};

inline std::ostream& operator<<(std::ostream& os, const QuadForm& q) { return os << q.str(); }

inline i64 discriminant(const QuadForm& q) { return q.discriminant(); }

/// 2x2 integer matrix acting on column vectors; Q o U means Q(U (x, y)^T).
struct Matrix2 {
  i64 m00 = 1;
  i64 m01 = 0;
  i64 m10 = 0;
  i64 m11 = 1;

  bool operator==(const Matrix2&) const = default;

  i64 det() const { return checked::narrow(static_cast<i128>(m00) * m11 - static_cast<i128>(m01) * m10); }

  friend Matrix2 operator*(const Matrix2& l, const Matrix2& r) {
    using checked::add;
    using checked::mul;
    return {add(mul(l.m00, r.m00), mul(l.m01, r.m10)), add(mul(l.m00, r.m01), mul(l.m01, r.m11)),
            add(mul(l.m10, r.m00), mul(l.m11, r.m10)), add(mul(l.m10, r.m01), mul(l.m11, r.m11))};
  }

  static Matrix2 identity() { return {}; }
  static Matrix2 shear(i64 k) { return {1, k, 0, 1}; }
  static Matrix2 swap() { return {0, -1, 1, 0}; }
  static Matrix2 flip() { return {1, 0, 0, -1}; }
};

/// Q o U: (x, y) -> Q(m00 x + m01 y, m10 x + m11 y).
inline QuadForm transform(const QuadForm& q, const Matrix2& u) {
  i128 a = q.evaluate(u.m00, u.m10);
  i128 c = q.evaluate(u.m01, u.m11);
  i128 b = 2 * static_cast<i128>(q.a) * u.m00 * u.m01 +
           static_cast<i128>(q.b) * (static_cast<i128>(u.m00) * u.m11 + static_cast<i128>(u.m01) * u.m10) +
           2 * static_cast<i128>(q.c) * u.m10 * u.m11;
  return {checked::narrow(a), checked::narrow(b), checked::narrow(c)};
}

enum class Convention { SL2, GL2 };

namespace detail {

inline void require_positive_definite(const QuadForm& q) {
  if (!q.is_positive_definite())
    throw Error(ErrorKind::NotPositiveDefinite, "form " + q.str() + " is not positive definite");
}

inline void require_primitive(const QuadForm& q) {
  if (!q.is_primitive()) throw Error(ErrorKind::NotPrimitive, "form " + q.str() + " is not primitive");
}

}  // namespace detail

inline bool is_reduced_sl2(const QuadForm& q) {
  i64 ab = q.b < 0 ? -q.b : q.b;
  if (!(ab <= q.a && q.a <= q.c)) return false;
  if ((ab == q.a || q.a == q.c) && q.b < 0) return false;
  return true;
}

inline bool is_reduced_gl2(const QuadForm& q) { return 0 <= q.b && q.b <= q.a && q.a <= q.c; }

struct Reduction {
  QuadForm form;
  Matrix2 transform;  // det 1, input o transform == form
};

/// Gauss reduction to the unique SL2(Z)-reduced representative.
inline Reduction reduce_sl2(const QuadForm& q) {
  detail::require_positive_definite(q);
  QuadForm f = q;
  Matrix2 u = Matrix2::identity();
  auto normalize_b = [&] {
    // b -> b + 2ak in (-a, a].
    i64 k = floor_div(f.a - f.b, 2 * f.a);
    if (k != 0) {
      f = transform(f, Matrix2::shear(k));
      u = u * Matrix2::shear(k);
    }
  };
  normalize_b();
  while (f.a > f.c) {
    f = transform(f, Matrix2::swap());
    u = u * Matrix2::swap();
    normalize_b();
  }
  if (f.a == f.c && f.b < 0) {
    f = transform(f, Matrix2::swap());
    u = u * Matrix2::swap();
  }
  return {f, u};
}

/// The unique form with 0 <= b <= a <= c in the GL2(Z) class.
inline QuadForm reduce_gl2(const QuadForm& q) {
  QuadForm f = reduce_sl2(q).form;
  if (f.b < 0) f.b = -f.b;
  return f;
}

inline bool equivalent(const QuadForm& q1, const QuadForm& q2, Convention convention) {
  detail::require_positive_definite(q1);
  detail::require_positive_definite(q2);
  if (q1.discriminant() != q2.discriminant()) return false;
  if (convention == Convention::SL2) return reduce_sl2(q1).form == reduce_sl2(q2).form;
  return reduce_gl2(q1) == reduce_gl2(q2);
}

struct SuccessiveMinima {
  i64 first;
  i64 second;
  i64 third;

  bool operator==(const SuccessiveMinima&) const = default;
};

/// (a, c, a - b + c) of the GL2-reduced form.
inline SuccessiveMinima successive_minima(const QuadForm& q) {
  QuadForm r = reduce_gl2(q);
  return {r.a, r.c, checked::add(checked::sub(r.a, r.b), r.c)};
}

/// Calls visit(x, y, value) for every lattice point with q(x, y) <= bound,
/// scanning the ellipse row by row in increasing y then x.
template <class Visitor>
void for_each_point(const QuadForm& q, i64 bound, Visitor&& visit) {
  detail::require_positive_definite(q);
  if (bound < 0) return;
  const i128 neg_disc = -static_cast<i128>(q.discriminant());
  const i128 two_a = 2 * static_cast<i128>(q.a);
  // q(x, y) = ((2a x + b y)^2 + |disc| y^2) / 4a, hence |disc| y^2 <= 4 a bound.
  const i128 y_max = isqrt(4 * static_cast<i128>(q.a) * bound / neg_disc);
  for (i128 y = -y_max; y <= y_max; ++y) {
    i128 slack = 4 * static_cast<i128>(q.a) * bound - neg_disc * y * y;
    if (slack < 0) continue;
    i128 root = isqrt(slack);
    i128 center = -static_cast<i128>(q.b) * y;
    // 2a x lies in [center - root, center + root].
    i128 lo = center - root;
    i128 hi = center + root;
    i128 x_lo = lo >= 0 ? (lo + two_a - 1) / two_a : -((-lo) / two_a);
    i128 x_hi = hi >= 0 ? hi / two_a : -((-hi + two_a - 1) / two_a);
    for (i128 x = x_lo; x <= x_hi; ++x) {
      i128 v = q.evaluate(static_cast<i64>(x), static_cast<i64>(y));
      if (v <= bound) visit(static_cast<i64>(x), static_cast<i64>(y), static_cast<i64>(v));
    }
  }
}

/// Number of (x, y) in Z^2 with q(x, y) = n.
inline i64 represents(const QuadForm& q, i64 n) {
  detail::require_positive_definite(q);
  if (n < 0) throw Error(ErrorKind::InvalidArgument, "represents expects n >= 0");
  i64 count = 0;
  for_each_point(q, n, [&](i64, i64, i64 v) {
    if (v == n) ++count;
  });
  return count;
}

/// Least prime p <= bound represented by q, or nullopt if none exists.
inline std::optional<i64> smallest_represented_prime(const QuadForm& q, i64 bound) {
  detail::require_positive_definite(q);
  detail::require_primitive(q);
  if (bound < 2) throw Error(ErrorKind::InvalidArgument, "bound must be >= 2");
  // Widen the sweep geometrically so small primes cost a small ellipse.
  i64 scanned = 1;
  i64 limit = std::min<i64>(bound, std::max<i64>(64, 4 * q.a));
  while (true) {
    std::optional<i64> best;
    for_each_point(q, limit, [&](i64, i64, i64 v) {
      if (v > scanned && (!best || v < *best) && is_prime(v)) best = v;
    });
    if (best) return best;
    if (limit >= bound) return std::nullopt;
    scanned = limit;
    limit = limit > bound / 4 ? bound : 4 * limit;
  }
}

/// A GL2-equivalent form (p, b, c) with 0 <= b <= p, built the way the
/// classical argument does it: complete a representation (x0, y0) of p to a
/// unimodular matrix, shear b into [-p, p), then flip the sign of b.
inline QuadForm prime_form(const QuadForm& q, i64 p) {
  detail::require_positive_definite(q);
  if (p < 2 || !is_prime(p)) throw Error(ErrorKind::InvalidArgument, std::to_string(p) + " is not prime");
  std::optional<std::pair<i64, i64>> point;
  for_each_point(q, p, [&](i64 x, i64 y, i64 v) {
    if (!point && v == p) point = std::pair{x, y};
  });
  if (!point)
    throw Error(ErrorKind::NotRepresented, std::to_string(p) + " is not represented by " + q.str());
  auto [x0, y0] = *point;
  // gcd(x0, y0) = 1 since a common factor would square-divide p.
  auto eg = extended_gcd(x0, y0);
  if (eg.g != 1) throw Error(ErrorKind::Internal, "representation of a prime is not primitive");
  // x0 r - y0 s = 1 with r = eg.x, s = -eg.y.
  Matrix2 s_mat{x0, -eg.y, y0, eg.x};
  QuadForm f = transform(q, s_mat);
  i64 n = ceil_div(-p - f.b, 2 * p);
  f = transform(f, Matrix2::shear(n));
  if (f.b < 0) f = transform(f, Matrix2::flip());
  if (f.a != p || f.b < 0 || f.b > p) throw Error(ErrorKind::Internal, "prime_form produced " + f.str());
  return f;
}

inline QuadForm principal_form(i64 disc) {
  if (disc >= 0 || mod(disc, 4) > 1)
    throw Error(ErrorKind::InvalidArgument, "no positive definite form of discriminant " + std::to_string(disc));
  i64 b = mod(disc, 2);
  return {1, b, (b - disc) / 4};
}

/// Gauss composition via the united-forms formula, returned SL2-reduced.
inline QuadForm compose(const QuadForm& q1, const QuadForm& q2) {
  detail::require_positive_definite(q1);
  detail::require_positive_definite(q2);
  detail::require_primitive(q1);
  detail::require_primitive(q2);
  const i64 disc = q1.discriminant();
  if (disc != q2.discriminant())
    throw Error(ErrorKind::DiscriminantMismatch, "cannot compose " + q1.str() + " and " + q2.str());
  const i64 s = (q1.b + q2.b) / 2;
  // e = gcd(a1, a2, s) = x a1 + y a2 + z s.
  auto g1 = extended_gcd(q1.a, q2.a);
  auto g2 = extended_gcd(g1.g, s);
  const i128 e = g2.g;
  const i128 x = static_cast<i128>(g2.x) * g1.x;
  const i128 y = static_cast<i128>(g2.x) * g1.y;
  const i128 z = g2.y;
  const i128 A = static_cast<i128>(q1.a) * q2.a / (e * e);
  i128 num = checked::mul(x * q1.a, static_cast<i128>(q2.b)) + checked::mul(y * q2.a, static_cast<i128>(q1.b)) +
             checked::mul(z, (static_cast<i128>(q1.b) * q2.b + disc) / 2);
  if (num % e != 0) throw Error(ErrorKind::Internal, "composition: non-integral middle coefficient");
  i128 B = num / e % (2 * A);
  if (B < 0) B += 2 * A;
  i128 C_num = B * B - disc;
  if (C_num % (4 * A) != 0) throw Error(ErrorKind::Internal, "composition: non-integral last coefficient");
  QuadForm composed{checked::narrow(A), checked::narrow(B), checked::narrow(C_num / (4 * A))};
  return reduce_sl2(composed).form;
}

/// The form class group of a negative fundamental discriminant, stored as
/// the sorted list of SL2-reduced primitive forms. Immutable after
/// construction; the principal form sits at index 0.
class ClassGroup {
 public:
  explicit ClassGroup(i64 disc) : disc_(disc) {
    if (disc >= 0) throw Error(ErrorKind::NotNegative, std::to_string(disc) + " is not negative");
    if (!is_fundamental(disc))
      throw Error(ErrorKind::NotFundamental, std::to_string(disc) + " is not a fundamental discriminant");
    const i64 abs_disc = -disc;
    for (i64 a = 1; 3 * a * a <= abs_disc; ++a) {
      for (i64 b = -a + 1; b <= a; ++b) {
        if (mod(b - disc, 2) != 0) continue;
        i64 num = b * b - disc;
        if (num % (4 * a) != 0) continue;
        i64 c = num / (4 * a);
        if (c < a || (c == a && b < 0)) continue;
        if (gcd(gcd(a, b), c) != 1) continue;
        elements_.push_back({a, b, c});
      }
    }
    std::sort(elements_.begin(), elements_.end());
    for (std::size_t i = 0; i < elements_.size(); ++i) index_.emplace(elements_[i], i);
    if (elements_.empty() || elements_.front() != principal_form(disc))
      throw Error(ErrorKind::Internal, "class group enumeration lost the principal form");
  }

  i64 discriminant() const { return disc_; }
  std::size_t order() const { return elements_.size(); }
  std::size_t identity_index() const { return 0; }
  std::span<const QuadForm> elements() const { return elements_; }
  const QuadForm& operator[](std::size_t i) const { return elements_.at(i); }

  /// Index of the class containing q.
  std::size_t index_of(const QuadForm& q) const {
    auto it = index_.find(reduce_sl2(q).form);
    if (it == index_.end()) throw Error(ErrorKind::DiscriminantMismatch, q.str() + " is not in this class group");
    return it->second;
  }

  std::size_t compose(std::size_t i, std::size_t j) const {
    return index_of(cubictheta::compose(elements_.at(i), elements_.at(j)));
  }

  std::size_t inverse(std::size_t i) const {
    const QuadForm& q = elements_.at(i);
    return index_of({q.a, -q.b, q.c});
  }

  std::size_t power(std::size_t i, unsigned k) const {
    std::size_t acc = identity_index();
    for (unsigned n = 0; n < k; ++n) acc = compose(acc, i);
    return acc;
  }

 private:
  i64 disc_;
  std::vector<QuadForm> elements_;
  std::map<QuadForm, std::size_t> index_;
};

inline ClassGroup class_group(i64 disc) { return ClassGroup(disc); }

/// Number of classes g with g^3 = 1.
inline i64 three_torsion_count(const ClassGroup& group) {
  i64 count = 0;
  for (std::size_t i = 0; i < group.order(); ++i)
    if (group.power(i, 3) == group.identity_index()) ++count;
  return count;
}

/// Dimension over F_3 of the 3-torsion.
inline int three_rank(const ClassGroup& group) {
  i64 count = three_torsion_count(group);
  int rank = 0;
  i64 p = 1;
  while (p < count) {
    p *= 3;
    ++rank;
  }
  if (p != count)
    throw Error(ErrorKind::Internal,
                "3-torsion count " + std::to_string(count) + " is not a power of 3 for discriminant " +
                    std::to_string(group.discriminant()));
  return rank;
}

}  // namespace cubictheta
