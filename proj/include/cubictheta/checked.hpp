#pragma once

#include <cstdint>
#include <numeric>
#include <string>

#include "cubictheta/error.hpp"

namespace cubictheta {

using i64 = std::int64_t;
using i128 = __int128;

namespace checked {

inline i64 add(i64 x, i64 y) {
  i64 r;
  if (__builtin_add_overflow(x, y, &r)) throw Error(ErrorKind::Overflow, "integer overflow in addition");
  return r;
}

inline i64 sub(i64 x, i64 y) {
  i64 r;
  if (__builtin_sub_overflow(x, y, &r)) throw Error(ErrorKind::Overflow, "integer overflow in subtraction");
  return r;
}

inline i64 mul(i64 x, i64 y) {
  i64 r;
  if (__builtin_mul_overflow(x, y, &r)) throw Error(ErrorKind::Overflow, "integer overflow in multiplication");
  return r;
}

inline i128 mul(i128 x, i128 y) {
  i128 r;
  if (__builtin_mul_overflow(x, y, &r)) throw Error(ErrorKind::Overflow, "integer overflow in 128-bit multiplication");
  return r;
}

/// Narrows a 128-bit intermediate back to 64 bits, throwing if it does not fit.
inline i64 narrow(i128 x) {
  if (x > static_cast<i128>(INT64_MAX) || x < static_cast<i128>(INT64_MIN))
    throw Error(ErrorKind::Overflow, "value does not fit in 64 bits");
  return static_cast<i64>(x);
}

}  // namespace checked

/// Floor division (rounds toward negative infinity).
inline i64 floor_div(i64 num, i64 den) {
  i64 q = num / den;
  if ((num % den != 0) && ((num < 0) != (den < 0))) --q;
  return q;
}

inline i64 ceil_div(i64 num, i64 den) { return -floor_div(-num, den); }

/// Nonnegative residue.
inline i64 mod(i64 x, i64 m) {
  i64 r = x % m;
  return r < 0 ? r + (m < 0 ? -m : m) : r;
}

inline i64 abs64(i64 x) {
  if (x == INT64_MIN) throw Error(ErrorKind::Overflow, "abs of INT64_MIN");
  return x < 0 ? -x : x;
}

inline i64 gcd(i64 x, i64 y) { return std::gcd(abs64(x), abs64(y)); }

/// Floor of the square root of n >= 0, exact for the whole 64-bit range.
inline i64 isqrt(i64 n) {
  if (n < 0) throw Error(ErrorKind::InvalidArgument, "isqrt of negative number");
  auto r = static_cast<i64>(__builtin_sqrtl(static_cast<long double>(n)));
  while (r > 0 && static_cast<i128>(r) * r > n) --r;
  while (static_cast<i128>(r + 1) * (r + 1) <= n) ++r;
  return r;
}

/// Floor of the square root of a nonnegative 128-bit value.
inline i128 isqrt(i128 n) {
  if (n < 0) throw Error(ErrorKind::InvalidArgument, "isqrt of negative number");
  auto r = static_cast<i128>(__builtin_sqrtl(static_cast<long double>(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

struct ExtendedGcd {
  i64 g;
  i64 x;
  i64 y;
};

/// g = gcd(a, b) >= 0 with a*x + b*y = g.
inline ExtendedGcd extended_gcd(i64 a, i64 b) {
  i64 old_r = a, r = b;
  i64 old_s = 1, s = 0;
  i64 old_t = 0, t = 1;
  while (r != 0) {
    i64 q = old_r / r;
    i64 tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
    tmp = old_t - q * t;
    old_t = t;
    t = tmp;
  }
  if (old_r < 0) return {-old_r, -old_s, -old_t};
  return {old_r, old_s, old_t};
}

inline std::string to_string(i128 v) {
  if (v == 0) return "0";
  bool neg = v < 0;
  std::string out;
  while (v != 0) {
    int digit = static_cast<int>(v % 10);
    out.push_back(static_cast<char>('0' + (digit < 0 ? -digit : digit)));
    v /= 10;
  }
  if (neg) out.push_back('-');
  return {out.rbegin(), out.rend()};
}

}  // namespace cubictheta
