#include "lensclass/integer_solve.hpp"

#include <utility>

#include "lensclass/numtheory.hpp"

namespace lensclass {

std::optional<IntegerSolution> solve_integer_system(const IntMatrix& M, const IntVector& b) {
  if (M.rows() != b.size()) throw Error(ErrorCode::ShapeMismatch, "right-hand side length");
  const Index rows = M.rows(), cols = M.cols();
  IntMatrix A = M;
  IntMatrix U = IntMatrix::Identity(cols, cols);

  // unimodular column operations until A is lower echelon
  Index piv = 0;
  std::vector<Index> pivot_rows;
  for (Index i = 0; i < rows && piv < cols; ++i) {
    for (Index k = piv + 1; k < cols; ++k) {
      if (A(i, k) == 0) continue;
      const BigInt x = A(i, piv), y = A(i, k);
      const auto [g, s, t] = extended_gcd(x, y);
      const BigInt xg = x / g, yg = y / g;
      // [col_piv col_k] <- [col_piv col_k] * [[s, -y/g], [t, x/g]]
      for (IntMatrix* T : {&A, &U}) {
        IntVector cp = T->col(piv), ck = T->col(k);
        T->col(piv) = cp * s + ck * t;
        T->col(k) = ck * xg - cp * yg;
      }
    }
    if (A(i, piv) != 0) {
      if (A(i, piv) < 0) {
        A.col(piv) = -A.col(piv);
        U.col(piv) = -U.col(piv);
      }
      pivot_rows.push_back(i);
      ++piv;
    }
  }

  IntVector y = IntVector::Zero(cols);
  for (Index c = 0; c < piv; ++c) {
    const Index i = pivot_rows[c];
    BigInt rem = b(i);
    for (Index k = 0; k < c; ++k) rem -= A(i, k) * y(k);
    if (rem % A(i, c) != 0) return std::nullopt;
    y(c) = rem / A(i, c);
  }
  if (A * y != b) return std::nullopt;

  IntegerSolution out;
  out.particular = U * y;
  for (Index k = piv; k < cols; ++k) out.kernel.push_back(U.col(k));
  return out;
}

namespace {

BigInt dot(const IntVector& a, const IntVector& b) {
  BigInt s = 0;
  for (Index i = 0; i < a.size(); ++i) s += a(i) * b(i);
  return s;
}

BigInt round_div(const BigInt& a, const BigInt& d) {  // d > 0
  return floor_div(BigInt(2 * a + d), BigInt(2 * d));
}

}  // namespace

// Integral LLL (all Gram-Schmidt data kept as exact integers), delta = 3/4.
void lll_reduce(std::vector<IntVector>& basis) {
  const int n = static_cast<int>(basis.size());
  if (n < 2) return;
  // 1-based bookkeeping: b[1..n], d[0..n], lam[k][j] for j < k
  std::vector<IntVector> b(n + 1);
  for (int i = 0; i < n; ++i) b[i + 1] = basis[i];
  std::vector<BigInt> d(n + 1, 0);
  std::vector<std::vector<BigInt>> lam(n + 1, std::vector<BigInt>(n + 1, 0));
  d[0] = 1;
  d[1] = dot(b[1], b[1]);
  int k = 2, kmax = 1;

  auto redi = [&](int kk, int l) {
    if (abs(2 * lam[kk][l]) <= d[l]) return;
    const BigInt q = round_div(lam[kk][l], d[l]);
    b[kk] -= b[l] * q;
    lam[kk][l] -= q * d[l];
    for (int i = 1; i < l; ++i) lam[kk][i] -= q * lam[l][i];
  };
  auto swapi = [&](int kk) {
    std::swap(b[kk], b[kk - 1]);
    for (int j = 1; j <= kk - 2; ++j) std::swap(lam[kk][j], lam[kk - 1][j]);
    const BigInt l = lam[kk][kk - 1];
    const BigInt B = (d[kk - 2] * d[kk] + l * l) / d[kk - 1];
    for (int i = kk + 1; i <= kmax; ++i) {
      const BigInt t = lam[i][kk];
      lam[i][kk] = (d[kk] * lam[i][kk - 1] - l * t) / d[kk - 1];
      lam[i][kk - 1] = (B * t + l * lam[i][kk]) / d[kk];
    }
    d[kk - 1] = B;
  };

  while (k <= n) {
    if (k > kmax) {
      kmax = k;
      for (int j = 1; j <= k; ++j) {
        BigInt u = dot(b[k], b[j]);
        for (int i = 1; i < j; ++i) u = (d[i] * u - lam[k][i] * lam[j][i]) / d[i - 1];
        if (j < k)
          lam[k][j] = u;
        else
          d[k] = u;
      }
      if (d[k] == 0) throw Error(ErrorCode::BadCase, "lattice basis is dependent");
    }
    redi(k, k - 1);
    if (4 * d[k] * d[k - 2] < 3 * d[k - 1] * d[k - 1] - 4 * lam[k][k - 1] * lam[k][k - 1]) {
      swapi(k);
      k = std::max(2, k - 1);
      continue;
    }
    for (int l = k - 2; l >= 1; --l) redi(k, l);
    ++k;
  }
  for (int i = 0; i < n; ++i) basis[i] = b[i + 1];
}

}  // namespace lensclass
