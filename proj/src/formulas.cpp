#include "lensclass/formulas.hpp"

#include <string>

namespace lensclass {

namespace {

void require_divides(Int K, Int r) {
  if (K < 1 || r % K != 0)
    throw Error(ErrorCode::DivisibilityError, "K=" + std::to_string(K) + " does not divide r=" + std::to_string(r));
}

void require_pattern(Int r, const std::vector<Int>& weights, const GcdPattern& pat) {
  require_divides(pat.K, r);
  if (!matches_pattern(r, weights, pat))
    throw Error(ErrorCode::PatternError, "weights do not have gcd(m_" + std::to_string(pat.ell) + ", r) = " +
                                             std::to_string(pat.K) + " with all other weights units");
}

BigInt exact(const Rational& q) {
  if (denominator(q) != 1) throw Error(ErrorCode::BadCase, "closed form produced a non-integer");
  return numerator(q);
}

BigInt mod_r(const Rational& q, Int r) {
  return floor_mod(exact(q), BigInt(r));
}

// shared quantities of the closed forms
struct Shape {
  Int r, K;
  BigInt rk, h2, p2;  // r/K, r(r-K)/2K, r(r+K)/2K
  Shape(Int r_, Int K_) : r(r_), K(K_) {
    rk = r / K;
    h2 = exact(Rational(BigInt(r) * (r - K), 2 * K));
    p2 = h2 + r;
  }
};

FormulaMatrix start(Int r, GcdPattern pat, Index n) {
  FormulaMatrix f;
  f.r = r;
  f.pattern = pat;
  f.matrix = IntMatrix::Identity(n, n);
  return f;
}

// entries of the middle-level column into (v_l, t) from two levels down:
// 1-step plus 2-step, z_t = r(r-K)/2K + a*t*r/K + q_t*r
BigInt z_entry(const Shape& s, Int a, Int t) {
  if (t == 0) return s.p2;
  const auto st = shifted_step(a, t, s.K);
  return s.h2 + BigInt(a) * t * s.rk + BigInt(st.k) * s.r;
}

// -c*r(r-2)(r-1)/3K + sum_{l=1}^{r-2} l*r*(1-k_l)/K, with k_l placing c(l+1)+r*k_l in (0, r]
Rational leading_terms(Int r, Int K, const BigInt& c) {
  Rational tot(-c * r * (r - 2) * (r - 1), BigInt(3 * K));
  BigInt s1 = 0;
  for (Int l = 1; l <= r - 2; ++l) {
    const auto kl = shift_positive(BigInt(c * (l + 1)), BigInt(r)).k;
    s1 += BigInt(l) * (1 - kl);
  }
  return tot + Rational(BigInt(r) * s1, BigInt(K));
}

BigInt x_dim7_l0(Int r, Int K, const std::vector<Int>& m) {
  const Int a1 = unit_inverse_or_zero(m[1], K);
  const BigInt c = BigInt(mod_inverse(m[2], r)) * m[1];
  Rational tot = leading_terms(r, K, c);
  BigInt s3 = 0;
  for (Int h = 0; h < K; ++h) {
    const Int weight = floor_mod(a1 * h, K);
    if (weight == 0) continue;
    for (Int l = 1; l <= r - 2; ++l) {
      if (floor_mod(l - a1 * h, K) != 0) continue;
      const auto sl = shift_positive(BigInt(c * (l + 1)), BigInt(r));
      s3 += BigInt(weight) * (r - sl.value);
    }
  }
  tot -= Rational(s3, BigInt(K));
  // the one- and two-step contributions into v_3
  tot += Rational(BigInt(r), BigInt(K)) + Rational(BigInt(r) * (r - K), BigInt(K));
  return mod_r(tot, r);
}

// shared shape of the ell=1 and ell=2 corner entries; u is the unit weight
// adjacent to the middle level, w the other one
BigInt x_dim7_side(Int r, Int K, Int w, Int u) {
  const BigInt ui = mod_inverse(u, r);
  Rational tot(-ui * w * r * (2 * r - K) * (r - K), BigInt(6 * K * K));
  tot += Rational(ui * r * (r - K) * (K - 1), BigInt(4 * K));
  tot += Rational(BigInt(r) * (r - 1), BigInt(2));
  return mod_r(tot, r);
}

std::vector<BigInt> x_dim7_l3(Int r, Int K, const std::vector<Int>& m) {
  const Int a1 = unit_inverse_or_zero(m[1], K), a2 = unit_inverse_or_zero(m[2], K);
  const BigInt c = BigInt(mod_inverse(m[2], r)) * m[1];
  // L(h) = sum of l in [1, r-2] with l = m_2*a_1*h - 1 (mod K)
  std::vector<BigInt> L(K, 0);
  for (Int h = 0; h < K; ++h)
    for (Int l = 1; l <= r - 2; ++l)
      if (floor_mod(l - (m[2] % K) * a1 * h + 1, K) == 0) L[h] += l;
  Rational base = leading_terms(r, K, c);
  BigInt weighted = 0;
  for (Int h = 0; h < K; ++h) weighted += BigInt(h) * L[h];
  base += Rational(weighted, BigInt(K));

  const Rational rk{BigInt(r), BigInt(K)};
  std::vector<BigInt> out;
  for (Int t = 0; t < K; ++t) {
    Rational x = base;
    if (t == 0) {
      x -= rk;
    } else {
      const Int st = shifted_step(a2, t, K).value;
      for (Int h = st + 1; h < K; ++h) x -= Rational(L[h]);
      x += rk * Rational(BigInt(a2 * t + a1 * t - 1));
    }
    out.push_back(mod_r(x, r));
  }
  return out;
}

}  // namespace

bool FormulaMatrix::agrees_with(const IntMatrix& exact_matrix) const {
  if (exact_matrix.rows() != matrix.rows() || exact_matrix.cols() != matrix.cols()) return false;
  for (Index i = 0; i < matrix.rows(); ++i)
    for (Index j = 0; j < matrix.cols(); ++j) {
      if (modr_mask.count({i, j})) {
        if (floor_mod(BigInt(exact_matrix(i, j) - matrix(i, j)), BigInt(r)) != 0) return false;
      } else if (exact_matrix(i, j) != matrix(i, j)) {
        return false;
      }
    }
  return true;
}

Int one_step(Int r, Int K) {
  require_divides(K, r);
  return r / K;
}

Int two_step(int which, Int r, Int K, Int t, Int a_k) {
  require_divides(K, r);
  if (t < 0 || t >= K) throw Error(ErrorCode::BadCase, "t must lie in [0, K)");
  if (K > 1 && gcd_of(a_k, K) != 1) throw Error(ErrorCode::BadCase, "a_k must be a unit mod K");
  const Shape s(r, K);
  BigInt v;
  switch (which) {
    case 1:
      // from (v_i,0) into (v_l,t) through a unit level k
      v = (t == 0) ? exact(Rational(BigInt(r) * (r + K - 2), BigInt(2 * K)))
                   : s.h2 + BigInt(shifted_step(a_k, t, K).value) * s.rk;
      break;
    case 2:
      // from (v_l,t) to (v_i,0) through a unit level k
      v = (t == 0) ? s.h2 : s.p2 - BigInt(floor_mod(a_k * t, K)) * s.rk;
      break;
    case 3:
      v = s.h2;
      break;
    default:
      throw Error(ErrorCode::BadCase, "two_step case must be 1, 2 or 3");
  }
  return static_cast<Int>(v);
}

FormulaMatrix adjacency_dim3(Int r, Int K, int ell) {
  require_divides(K, r);
  if (ell < 0 || ell > 1) throw Error(ErrorCode::BadCase, "dimension 3 has positions 0 and 1");
  if (K == 1) ell = 0;
  const Index n = (ell == 0) ? 2 : K + 1;
  FormulaMatrix f = start(r, {3, ell, K}, n);
  for (Index j = 1; j < n; ++j) f.matrix(0, j) = r / K;
  return f;
}

FormulaMatrix adjacency_dim5(int ell, Int r, Int K, const std::vector<Int>& m) {
  if (ell < 0 || ell > 2) throw Error(ErrorCode::BadCase, "dimension 5 has positions 0..2");
  if (m.size() != 3) throw Error(ErrorCode::PatternError, "dimension 5 needs three weights");
  require_pattern(r, m, {5, ell, K});
  const Shape s(r, K);
  if (ell == 0 || K == 1) {
    FormulaMatrix f = start(r, {5, 0, K}, 3);
    f.matrix(0, 1) = s.rk;
    f.matrix(0, 2) = s.rk + s.h2;
    f.matrix(1, 2) = r;
    return f;
  }
  const Index n = K + 2;
  FormulaMatrix f = start(r, {5, ell, K}, n);
  if (ell == 1) {
    for (Index t = 0; t < K; ++t) {
      f.matrix(0, 1 + t) = s.rk;
      f.matrix(1 + t, n - 1) = s.rk;
    }
    f.matrix(0, n - 1) = s.p2;
    return f;
  }
  const Int a1 = unit_inverse_or_zero(m[1], K);
  f.matrix(0, 1) = r;
  for (Index t = 0; t < K; ++t) {
    f.matrix(1, 2 + t) = s.rk;
    f.matrix(0, 2 + t) = z_entry(s, a1, t);
  }
  return f;
}

FormulaMatrix adjacency_dim7(int ell, Int r, Int K, const std::vector<Int>& m) {
  if (ell < 0 || ell > 3) throw Error(ErrorCode::BadCase, "dimension 7 has positions 0..3");
  if (m.size() != 4) throw Error(ErrorCode::PatternError, "dimension 7 needs four weights");
  require_pattern(r, m, {7, ell, K});
  const Shape s(r, K);
  const BigInt tri = BigInt(r) * (r + 1) / 2;

  if (ell == 0 || K == 1) {
    FormulaMatrix f = start(r, {7, 0, K}, 4);
    f.matrix(0, 1) = s.rk;
    f.matrix(0, 2) = s.h2 + s.rk;
    f.matrix(0, 3) = x_dim7_l0(r, K, m);
    f.modr_mask.insert({0, 3});
    f.matrix(1, 2) = r;
    f.matrix(1, 3) = tri;
    f.matrix(2, 3) = r;
    return f;
  }

  const Index n = K + 3;
  FormulaMatrix f = start(r, {7, ell, K}, n);
  if (ell == 1) {
    // order: v0, level 1 (K vertices), v2, v3
    const Int a2 = unit_inverse_or_zero(m[2], K);
    for (Index t = 0; t < K; ++t) {
      f.matrix(0, 1 + t) = s.rk;
      f.matrix(1 + t, K + 1) = s.rk;
      f.matrix(1 + t, n - 1) = s.rk + two_step(2, r, K, t, a2);
    }
    f.matrix(0, K + 1) = s.p2;
    f.matrix(K + 1, n - 1) = r;
    f.matrix(0, n - 1) = x_dim7_side(r, K, m[1], m[2]);
    f.modr_mask.insert({0, n - 1});
    return f;
  }
  if (ell == 2) {
    // order: v0, v1, level 2 (K vertices), v3
    const Int a1 = unit_inverse_or_zero(m[1], K);
    f.matrix(0, 1) = r;
    for (Index t = 0; t < K; ++t) {
      f.matrix(0, 2 + t) = z_entry(s, a1, t);
      f.matrix(1, 2 + t) = s.rk;
      f.matrix(2 + t, n - 1) = s.rk;
    }
    f.matrix(1, n - 1) = s.p2;
    f.matrix(0, n - 1) = x_dim7_side(r, K, m[2], m[1]);
    f.modr_mask.insert({0, n - 1});
    return f;
  }
  // ell == 3; order: v0, v1, v2, level 3 (K vertices)
  const Int a2 = unit_inverse_or_zero(m[2], K);
  f.matrix(0, 1) = r;
  f.matrix(0, 2) = tri;
  f.matrix(1, 2) = r;
  const auto x = x_dim7_l3(r, K, m);
  for (Index t = 0; t < K; ++t) {
    f.matrix(2, 3 + t) = s.rk;
    f.matrix(1, 3 + t) = z_entry(s, a2, t);
    f.matrix(0, 3 + t) = x[t];
    f.modr_mask.insert({0, 3 + t});
  }
  return f;
}

FormulaMatrix adjacency_formula(const LensParams& p) {
  p.validate();
  auto pat = gcd_pattern(p);
  if (!pat) throw Error(ErrorCode::PatternError, "closed forms need at most one weight sharing a factor with r");
  switch (p.dim()) {
    case 3: return adjacency_dim3(p.r, pat->K, pat->ell);
    case 5: return adjacency_dim5(pat->ell, p.r, pat->K, p.weights);
    case 7: return adjacency_dim7(pat->ell, p.r, pat->K, p.weights);
    default: throw Error(ErrorCode::BadCase, "closed forms exist for dimensions 3, 5 and 7");
  }
}

IntMatrix anti_transpose(const IntMatrix& m) {
  const Index n = m.rows();
  IntMatrix out(m.cols(), n);
  for (Index i = 0; i < out.rows(); ++i)
    for (Index j = 0; j < out.cols(); ++j) out(i, j) = m(n - 1 - j, m.cols() - 1 - i);
  return out;
}

}  // namespace lensclass
