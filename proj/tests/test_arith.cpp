#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "cubictheta/arith.hpp"

using namespace cubictheta;

namespace {

std::vector<bool> sieve(std::size_t n) {
  std::vector<bool> prime(n + 1, true);
  prime[0] = false;
  if (n >= 1) prime[1] = false;
  for (std::size_t p = 2; p * p <= n; ++p)
    if (prime[p])
      for (std::size_t m = p * p; m <= n; m += p) prime[m] = false;
  return prime;
}

// Euler's criterion, valid for odd primes p.
int euler_symbol(i64 d, i64 p) {
  i64 r = static_cast<i64>(detail::powmod(static_cast<std::uint64_t>(mod(d, p)), static_cast<std::uint64_t>((p - 1) / 2),
                                          static_cast<std::uint64_t>(p)));
  return r == 0 ? 0 : (r == 1 ? 1 : -1);
}

}  // namespace

TEST(IsPrime, Examples) {
  EXPECT_FALSE(is_prime(i64{1}));
  EXPECT_TRUE(is_prime(i64{2}));
  EXPECT_FALSE(is_prime(i64{687}));
  EXPECT_FALSE(is_prime(i64{0}));
}

TEST(IsPrime, AgreesWithSieveUpToOneMillion) {
  const auto prime = sieve(1'000'000);
  for (i64 n = 0; n <= 1'000'000; ++n) ASSERT_EQ(is_prime(n), prime[static_cast<std::size_t>(n)]) << n;
}

TEST(IsPrime, LargeValuesAndStrongPseudoprimes) {
  EXPECT_TRUE(is_prime(std::uint64_t{2305843009213693951ULL}));   // 2^61 - 1
  EXPECT_TRUE(is_prime(std::uint64_t{18446744073709551557ULL}));  // largest 64-bit prime
  EXPECT_FALSE(is_prime(std::uint64_t{3215031751ULL}));           // spsp(2, 3, 5, 7)
  EXPECT_FALSE(is_prime(std::uint64_t{3825123056546413051ULL}));  // spsp to bases 2..23
  EXPECT_FALSE(is_prime(std::uint64_t{561}));
  EXPECT_FALSE(is_prime(std::uint64_t{4294967297ULL}));  // 641 * 6700417
}

TEST(Kronecker, Examples) {
  for (i64 n : {1, 2, 3, -5, 100, 997}) EXPECT_EQ(kronecker(1, n), 1);
  EXPECT_EQ(kronecker(-3, 7), 1);
  EXPECT_EQ(kronecker(-687, 3), 0);
  EXPECT_EQ(kronecker(1, 0), 1);
  EXPECT_EQ(kronecker(-1, 0), 1);
  EXPECT_EQ(kronecker(5, 0), 0);
  // (d/2) by d mod 8.
  EXPECT_EQ(kronecker(8, 2), 0);
  EXPECT_EQ(kronecker(17, 2), 1);
  EXPECT_EQ(kronecker(-1, 2), 1);
  EXPECT_EQ(kronecker(5, 2), -1);
  EXPECT_EQ(kronecker(-5, 2), -1);
  // (d/-1) is the sign of d.
  EXPECT_EQ(kronecker(-7, -1), -1);
  EXPECT_EQ(kronecker(7, -1), 1);
}

TEST(Kronecker, MatchesEulerCriterionOnOddPrimes) {
  for (i64 p = 3; p < 2000; p += 2) {
    if (!is_prime(p)) continue;
    for (i64 d = -300; d <= 300; ++d) ASSERT_EQ(kronecker(d, p), euler_symbol(d, p)) << d << " " << p;
  }
}

TEST(Kronecker, CompletelyMultiplicative) {
  std::mt19937_64 rng(20261018);
  std::uniform_int_distribution<i64> dd(-100000, 100000), nn(-3000, 3000);
  for (int i = 0; i < 10000; ++i) {
    i64 d = dd(rng), m = nn(rng), n = nn(rng);
    ASSERT_EQ(kronecker(d, m * n), kronecker(d, m) * kronecker(d, n)) << d << " " << m << " " << n;
  }
}

TEST(Fundamental, Examples) {
  EXPECT_TRUE(is_fundamental(5));
  EXPECT_TRUE(is_fundamental(12));
  EXPECT_FALSE(is_fundamental(9));
  EXPECT_TRUE(is_fundamental(1));
  EXPECT_FALSE(is_fundamental(0));
  EXPECT_TRUE(is_fundamental(-3));
  EXPECT_TRUE(is_fundamental(-4));
  EXPECT_TRUE(is_fundamental(-8));
  EXPECT_FALSE(is_fundamental(-12 * 4));
  EXPECT_FALSE(is_fundamental(-1));
  EXPECT_FALSE(is_fundamental(49));
  EXPECT_FALSE(is_fundamental(20));  // 4 * 5 with 5 = 1 mod 4
  EXPECT_TRUE(is_fundamental(229));
  EXPECT_TRUE(is_fundamental(-687));
}

TEST(ThreeReflection, Examples) {
  EXPECT_EQ(three_reflection(5), -15);
  EXPECT_EQ(three_reflection(24), -8);
  EXPECT_EQ(three_reflection(229), -687);
  EXPECT_EQ(three_reflection(-3), 1);
  EXPECT_EQ(three_reflection(1), -3);
}

TEST(ThreeReflection, RejectsNonFundamental) {
  try {
    three_reflection(9);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotFundamental);
  }
  EXPECT_THROW(three_reflection(0), Error);
}

TEST(ThreeReflection, InvolutionPreservingFundamentality) {
  for (i64 d = -20000; d <= 20000; ++d) {
    if (!is_fundamental(d)) continue;
    const i64 r = three_reflection(d);
    ASSERT_TRUE(is_fundamental(r)) << d;
    ASSERT_EQ(three_reflection(r), d) << d;
    ASSERT_TRUE((d > 0) != (r > 0)) << d;
  }
}

TEST(Checked, OverflowThrows) {
  EXPECT_THROW(checked::mul(INT64_MAX, i64{2}), Error);
  EXPECT_THROW(checked::add(INT64_MAX, i64{1}), Error);
  EXPECT_THROW(checked::narrow(static_cast<i128>(INT64_MAX) + 1), Error);
  EXPECT_EQ(isqrt(i64{99}), 9);
  EXPECT_EQ(isqrt(i64{100}), 10);
  EXPECT_EQ(isqrt(INT64_MAX), 3037000499);
  EXPECT_EQ(floor_div(-7, 2), -4);
  EXPECT_EQ(ceil_div(-7, 2), -3);
}
