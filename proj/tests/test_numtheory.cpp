#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lensclass/numtheory.hpp"
#include "oracles.hpp"

using namespace lensclass;

TEST_CASE("mod_inverse examples") {
  CHECK(mod_inverse<Int>(1, 5) == 1);
  CHECK(mod_inverse<Int>(3, 7) == 5);
  CHECK_THROWS_AS(mod_inverse<Int>(2, 4), Error);
  try {
    mod_inverse<Int>(2, 4);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonUnit);
  }
  try {
    mod_inverse<Int>(1, 1);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BadModulus);
  }
}

TEST_CASE("mod_inverse agrees with exhaustive search and lies in [1, n-1]") {
  for (Int n = 2; n <= 200; ++n)
    for (Int a = -n; a <= 2 * n; ++a) {
      if (oracle::gcd(a, n) != 1) {
        CHECK_THROWS_AS(mod_inverse(a, n), Error);
        continue;
      }
      const Int x = mod_inverse(a, n);
      REQUIRE(x == oracle::inverse(oracle::mod(a, n), n));
      CHECK(x >= 1);
      CHECK(x <= n - 1);
      CHECK(floor_mod(a * x, n) == 1);
    }
}

TEST_CASE("mod_inverse works on big integers") {
  const BigInt p("170141183460469231731687303715884105727");  // 2^127 - 1
  const BigInt a("12345678901234567890123");
  const BigInt x = mod_inverse(a, p);
  CHECK(floor_mod(BigInt(a * x), p) == 1);
}

TEST_CASE("euler_phi examples and brute force up to 10^4") {
  CHECK(euler_phi<Int>(1) == 1);
  CHECK(euler_phi<Int>(6) == 2);
  CHECK(euler_phi<Int>(12) == 4);
  // sieve the brute-force unit counts rather than calling gcd 10^8 times
  const Int N = 10000;
  for (Int n = 1; n <= N; ++n) {
    if (n <= 300) REQUIRE(euler_phi(n) == oracle::phi(n));
  }
  std::vector<Int> units(N + 1, 0);
  for (Int n = 1; n <= N; ++n) {
    std::vector<char> hit(n + 1, 0);
    Int m = n;
    std::vector<Int> primes;
    for (Int p = 2; p * p <= m; ++p)
      if (m % p == 0) {
        primes.push_back(p);
        while (m % p == 0) m /= p;
      }
    if (m > 1) primes.push_back(m);
    for (Int p : primes)
      for (Int k = p; k <= n; k += p) hit[k] = 1;
    Int c = 0;
    for (Int k = 1; k <= n; ++k) c += !hit[k];
    REQUIRE(euler_phi(n) == c);
  }
}

TEST_CASE("shift_into_range examples") {
  CHECK(shift_into_range<Int>(7, 3, 0) == Shift<Int>{-2, 1});
  CHECK(shift_into_range<Int>(-1, 4, 0) == Shift<Int>{1, 3});
  const auto s = shifted_step<Int>(2, 2, 3);
  CHECK(s.value == 0);
  CHECK(s.k == -1);
}

TEST_CASE("shift_into_range laws") {
  for (Int m = 1; m <= 13; ++m)
    for (Int lo = -7; lo <= 7; ++lo)
      for (Int x = -60; x <= 60; ++x) {
        const auto s = shift_into_range(x, m, lo);
        REQUIRE(s.value == x + s.k * m);
        CHECK(s.value >= lo);
        CHECK(s.value < lo + m);
        // idempotent
        CHECK(shift_into_range(s.value, m, lo).k == 0);
      }
  CHECK_THROWS_AS(shift_into_range<Int>(1, 0, 0), Error);
}

TEST_CASE("shift_positive lands in (0, r]") {
  for (Int r = 1; r <= 12; ++r)
    for (Int x = -30; x <= 30; ++x) {
      const auto s = shift_positive(x, r);
      CHECK(s.value > 0);
      CHECK(s.value <= r);
      CHECK(floor_mod(s.value - x, r) == 0);
    }
}

TEST_CASE("modular arithmetic laws") {
  for (Int n = 1; n <= 30; ++n)
    for (Int a = -40; a <= 40; ++a) {
      const Int ra = floor_mod(a, n);
      REQUIRE(ra >= 0);
      REQUIRE(ra < n);
      CHECK(floor_div(a, n) * n + ra == a);
      CHECK(Residue<Int>::of(a, n).value == ra);
      for (Int b = -10; b <= 10; ++b) {
        CHECK(floor_mod(a + b, n) == floor_mod(ra + floor_mod(b, n), n));
        CHECK(floor_mod(a * b, n) == floor_mod(ra * floor_mod(b, n), n));
      }
    }
  for (Int a = -50; a <= 50; ++a)
    for (Int b = -50; b <= 50; ++b) {
      const auto [g, s, t] = extended_gcd(a, b);
      CHECK(g == oracle::gcd(a, b));
      CHECK(a * s + b * t == g);
      CHECK(gcd_of(a, b) == g);
    }
}

TEST_CASE("unit_inverse_or_zero treats K = 1 as the trivial ring") {
  CHECK(unit_inverse_or_zero<Int>(5, 1) == 0);
  CHECK(unit_inverse_or_zero<Int>(2, 3) == 2);
  CHECK(divides<Int>(3, 12));
  CHECK_FALSE(divides<Int>(0, 12));
}
