#pragma once

#include <cstdint>
#include <string>

#include "lensclass/types.hpp"

namespace lensclass {

using Int = std::int64_t;

// Everything here is templated on the integer type so the same helpers work
// for machine integers and BigInt.

template <typename I>
I floor_mod(const I& x, const I& n) {
  I v = x % n;
  if (v < 0) v += n;
  return v;
}

template <typename I>
I floor_div(const I& x, const I& n) {
  return (x - floor_mod(x, n)) / n;
}

template <typename I>
I gcd_of(I a, I b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    I t = a % b;
    a = b;
    b = t;
  }
  return a;
}

template <typename I>
struct Residue {
  I value;
  I modulus;

  static Residue of(const I& x, const I& n) {
    if (n < 1) throw Error(ErrorCode::BadModulus, "modulus must be positive");
    return {floor_mod(x, n), n};
  }
  bool operator==(const Residue&) const = default;
};

// (g, s, t) with s*a + t*b = g = gcd(a, b) >= 0
template <typename I>
struct Bezout {
  I g, s, t;
};

template <typename I>
Bezout<I> extended_gcd(const I& a, const I& b) {
  I old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    I q = old_r / r;
    I tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
    tmp = old_t - q * t;
    old_t = t;
    t = tmp;
  }
  if (old_r < 0) return {I(-old_r), I(-old_s), I(-old_t)};
  return {old_r, old_s, old_t};
}

// Smallest positive representative, 1 <= x <= n-1.
template <typename I>
I mod_inverse(const I& a, const I& n) {
  if (n < 2) throw Error(ErrorCode::BadModulus, "modulus must be at least 2");
  auto [g, s, t] = extended_gcd(floor_mod(a, n), n);
  (void)t;
  if (g != 1) throw Error(ErrorCode::NonUnit, "gcd(a, n) != 1");
  return floor_mod(s, n);
}

// The a_i convention: a_i is the inverse of m_i in Z_K, and 0 when K = 1
// (the only element of Z_1).
template <typename I>
I unit_inverse_or_zero(const I& a, const I& K) {
  if (K == 1) return 0;
  return mod_inverse(a, K);
}

template <typename I>
I euler_phi(I n) {
  if (n < 1) throw Error(ErrorCode::BadModulus, "phi needs n >= 1");
  I result = n;
  for (I p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

template <typename I>
struct Shift {
  I k;
  I value;
  bool operator==(const Shift&) const = default;
};

// value = x + k*modulus with lo <= value < lo + modulus.
template <typename I>
Shift<I> shift_into_range(const I& x, const I& modulus, const I& lo) {
  if (modulus < 1) throw Error(ErrorCode::BadModulus, "modulus must be positive");
  I value = lo + floor_mod(I(x - lo), modulus);
  return {I((value - x) / modulus), value};
}

// Named shifts used by the path-count formulas.

// s_t = a*t - 1 shifted into [0, K); q_t is the multiple of K added.
template <typename I>
Shift<I> shifted_step(const I& a, const I& t, const I& K) {
  return shift_into_range(I(a * t - 1), K, I(0));
}

// k_l: the multiple of r making c*(l+1) + r*k_l land in (0, r].
template <typename I>
Shift<I> shift_positive(const I& x, const I& r) {
  return shift_into_range(x, r, I(1));
}

template <typename I>
bool divides(const I& d, const I& x) {
  return d != 0 && x % d == 0;
}

}  // namespace lensclass
