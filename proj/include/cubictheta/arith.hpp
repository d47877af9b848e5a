#pragma once

// Elementary exact number theory: primality, the Kronecker symbol,
// fundamental discriminants and the 3-reflection d -> -3d / gcd(3, d)^2.

#include <array>
#include <cstdint>
#include <string>

#include "cubictheta/checked.hpp"

namespace cubictheta {

namespace detail {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp != 0) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

inline bool miller_rabin_round(std::uint64_t n, std::uint64_t witness, std::uint64_t odd, int twos) {
  std::uint64_t x = powmod(witness, odd, n);
  if (x == 1 || x == n - 1) return true;
  for (int i = 1; i < twos; ++i) {
    x = mulmod(x, x, n);
    if (x == n - 1) return true;
  }
  return false;
}

}  // namespace detail

/// Deterministic primality test for the full 64-bit range. The first twelve
/// primes as Miller-Rabin witnesses are exact below 3.3 * 10^24.
inline bool is_prime(std::uint64_t n) {
  constexpr std::array<std::uint64_t, 12> witnesses{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  if (n < 2) return false;
  for (auto p : witnesses) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  std::uint64_t odd = n - 1;
  int twos = 0;
  while ((odd & 1) == 0) {
    odd >>= 1;
    ++twos;
  }
  for (auto w : witnesses)
    if (!detail::miller_rabin_round(n, w, odd, twos)) return false;
  return true;
}

inline bool is_prime(i64 n) {
  if (n < 0) throw Error(ErrorKind::InvalidArgument, "is_prime expects n >= 0");
  return is_prime(static_cast<std::uint64_t>(n));
}

/// Kronecker symbol (d/n).
inline int kronecker(i64 d, i64 n) {
  if (n == 0) return (d == 1 || d == -1) ? 1 : 0;
  int result = 1;
  if (n < 0) {
    if (n == INT64_MIN) throw Error(ErrorKind::Overflow, "kronecker: n out of range");
    n = -n;
    if (d < 0) result = -result;
  }
  // Factor out powers of two from n.
  if ((n & 1) == 0) {
    if ((d & 1) == 0) return 0;
    int twos = 0;
    while ((n & 1) == 0) {
      n >>= 1;
      ++twos;
    }
    i64 d8 = mod(d, 8);
    if ((twos & 1) && (d8 == 3 || d8 == 5)) result = -result;
  }
  // Jacobi symbol for odd positive n.
  i64 a = mod(d, n);
  i64 m = n;
  while (a != 0) {
    while ((a & 1) == 0) {
      a >>= 1;
      i64 m8 = m % 8;
      if (m8 == 3 || m8 == 5) result = -result;
    }
    std::swap(a, m);
    if (a % 4 == 3 && m % 4 == 3) result = -result;
    a %= m;
  }
  return m == 1 ? result : 0;
}

inline bool is_squarefree(i64 n) {
  n = abs64(n);
  if (n == 0) return false;
  for (i64 p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    n /= p;
    if (n % p == 0) return false;
  }
  return true;
}

/// True iff d is the discriminant of a quadratic field, or d = 1 (the
/// discriminant of Q), which keeps the 3-reflection total on -3.
inline bool is_fundamental(i64 d) {
  if (d == 1) return true;
  if (d == 0) return false;
  if (mod(d, 4) == 1) return is_squarefree(d);
  if (mod(d, 4) == 0) {
    i64 m = d / 4;
    i64 r = mod(m, 4);
    return (r == 2 || r == 3) && is_squarefree(m);
  }
  return false;
}

/// d -> -3d / gcd(3, d)^2. An involution on fundamental discriminants that
/// swaps signs.
inline i64 three_reflection(i64 d) {
  if (!is_fundamental(d))
    throw Error(ErrorKind::NotFundamental, std::to_string(d) + " is not a fundamental discriminant");
  i64 g = d % 3 == 0 ? 3 : 1;
  return checked::mul(-3, d) / (g * g);
}

}  // namespace cubictheta
