#pragma once

// Exact theta q-expansions of positive definite binary quadratic forms.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cubictheta/arith.hpp"
#include "cubictheta/checked.hpp"
#include "cubictheta/qform.hpp"

namespace cubictheta {

/// Coefficients a(0..precision) of sum_{v in Z^2} q^{Q(v)}, together with the
/// level |disc Q| and the character (disc Q / .) of the weight-one space the
/// series lives in.
struct ThetaSeries {
  QuadForm form;
  i64 precision = 0;
  i64 level = 0;
  i64 character = 0;  // discriminant defining the Kronecker character
  std::vector<i64> coeffs;

  bool operator==(const ThetaSeries&) const = default;

  i64 operator[](i64 n) const { return coeffs.at(static_cast<std::size_t>(n)); }
};

inline ThetaSeries theta_expand(const QuadForm& q, i64 precision) {
  detail::require_positive_definite(q);
  if (precision < 1) throw Error(ErrorKind::InvalidArgument, "precision must be >= 1");
  ThetaSeries t;
  t.form = q;
  t.precision = precision;
  t.character = q.discriminant();
  t.level = -t.character;
  t.coeffs.assign(static_cast<std::size_t>(precision) + 1, 0);
  for_each_point(q, precision, [&](i64, i64, i64 v) { ++t.coeffs[static_cast<std::size_t>(v)]; });
  return t;
}

/// The theta series of a field's rescaled trace form t_K. Its discriminant is
/// the 3-reflection of the field discriminant, which fixes level and character.
inline ThetaSeries f_K(const QuadForm& trace_form, i64 precision) {
  const i64 disc = trace_form.discriminant();
  if (disc >= 0 || !is_fundamental(disc))
    throw Error(ErrorKind::InvalidArgument,
                "trace form " + trace_form.str() + " does not come from a totally real field of fundamental discriminant");
  return theta_expand(trace_form, precision);
}

struct ThetaTerm {
  i64 index = 0;
  i64 coeff = 0;

  auto operator<=>(const ThetaTerm&) const = default;
};

/// The first two nonzero terms of positive index.
struct Fingerprint {
  ThetaTerm first;
  ThetaTerm second;

  auto operator<=>(const Fingerprint&) const = default;
};

inline Fingerprint first_two_nonzero(const ThetaSeries& t) {
  std::vector<ThetaTerm> found;
  for (i64 n = 1; n <= t.precision && found.size() < 2; ++n)
    if (t[n] != 0) found.push_back({n, t[n]});
  if (found.size() < 2)
    throw Error(ErrorKind::InsufficientPrecision,
                "fewer than two nonzero terms up to q^" + std::to_string(t.precision) + " for " + t.form.str());
  return {found[0], found[1]};
}

/// A precision at which first_two_nonzero is guaranteed to succeed: for the
/// GL2-reduced (a, b, c), the value a + b + c = q(1, 1) exceeds the minimum a.
inline i64 fingerprint_precision(const QuadForm& q) {
  const QuadForm r = reduce_gl2(q);
  return checked::add(checked::add(r.a, r.b), r.c);
}

/// Rank over Q of an integer matrix by fraction-free (Bareiss) elimination.
inline std::size_t exact_rank(std::vector<std::vector<i64>> rows) {
  if (rows.empty()) return 0;
  const std::size_t ncols = rows.front().size();
  std::size_t rank = 0;
  i64 prev_pivot = 1;
  for (std::size_t col = 0; col < ncols && rank < rows.size(); ++col) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][col] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    const i64 p = rows[rank][col];
    for (std::size_t r = rank + 1; r < rows.size(); ++r) {
      const i64 f = rows[r][col];
      for (std::size_t c = col; c < ncols; ++c) {
        i128 v = checked::mul(static_cast<i128>(p), static_cast<i128>(rows[r][c])) -
                 checked::mul(static_cast<i128>(f), static_cast<i128>(rows[rank][c]));
        if (v % prev_pivot != 0) throw Error(ErrorKind::Internal, "Bareiss division is not exact");
        rows[r][c] = checked::narrow(v / prev_pivot);
      }
    }
    prev_pivot = p;
    ++rank;
  }
  return rank;
}

struct IndependenceResult {
  bool independent = false;
  std::size_t rank = 0;
  /// Per series, a prime p with a_i(p) != 0 and a_j(p) = 0 for all j != i.
  std::vector<std::optional<i64>> witnesses;

  bool all_witnessed() const {
    return std::all_of(witnesses.begin(), witnesses.end(), [](const auto& w) { return w.has_value(); });
  }
};

/// Per series, the least prime index where it alone is nonzero.
inline std::vector<std::optional<i64>> isolating_primes(std::span<const ThetaSeries> series) {
  std::vector<std::optional<i64>> out(series.size());
  if (series.empty()) return out;
  const i64 n_max = series.front().precision;
  for (i64 p = 2; p <= n_max; ++p) {
    if (!is_prime(p)) continue;
    std::size_t hits = 0, owner = 0;
    for (std::size_t i = 0; i < series.size(); ++i)
      if (series[i][p] != 0) {
        ++hits;
        owner = i;
      }
    if (hits == 1 && !out[owner]) out[owner] = p;
  }
  return out;
}

/// Exact linear independence of theta series sharing precision and level,
/// with the isolating-prime witnesses when independent.
inline IndependenceResult linearly_independent(std::span<const ThetaSeries> series) {
  IndependenceResult result;
  if (series.empty()) {
    result.independent = true;
    return result;
  }
  for (const auto& s : series)
    if (s.precision != series.front().precision || s.level != series.front().level)
      throw Error(ErrorKind::PrecisionMismatch, "theta series differ in precision or level");
  std::vector<std::vector<i64>> rows;
  rows.reserve(series.size());
  for (const auto& s : series) rows.push_back(s.coeffs);
  result.rank = exact_rank(std::move(rows));
  result.independent = result.rank == series.size();
  if (result.independent) result.witnesses = isolating_primes(series);
  return result;
}

}  // namespace cubictheta
