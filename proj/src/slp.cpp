#include "lensclass/slp.hpp"

#include <algorithm>

#include "lensclass/integer_solve.hpp"

namespace lensclass {

std::string to_string(MoveKind kind) { return kind == MoveKind::Row ? "row" : "column"; }

SlpMatrix SlpMatrix::identity(const Poset& p) {
  return {IntMatrix::Identity(p.size(), p.size()), p};
}

bool SlpMatrix::valid() const {
  const Index n = poset.size();
  if (entries.rows() != n || entries.cols() != n) return false;
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) {
      if (i == j) {
        if (entries(i, j) != 1) return false;
      } else if (entries(i, j) != 0 && !poset.leq(static_cast<int>(i), static_cast<int>(j))) {
        return false;
      }
    }
  return true;
}

Poset poset_for(int dim, int ell, Int K) {
  if (dim < 3 || dim % 2 == 0) throw Error(ErrorCode::BadCase, "dimension must be odd and at least 3");
  const int n = (dim - 1) / 2;
  if (ell < 0 || ell > n) throw Error(ErrorCode::BadCase, "position out of range for this dimension");
  if (K < 1) throw Error(ErrorCode::BadCase, "K must be positive");
  std::vector<int> level;
  for (int i = 0; i <= n; ++i) {
    const Int copies = (i == ell && ell > 0) ? K : 1;
    for (Int c = 0; c < copies; ++c) level.push_back(i);
  }
  const int N = static_cast<int>(level.size());
  std::vector<std::pair<int, int>> rel;
  for (int i = 0; i < N; ++i)
    for (int j = i + 1; j < N; ++j)
      if (level[i] < level[j]) rel.emplace_back(i, j);
  return Poset::from_relations(N, rel);
}

std::vector<MoveSlot> elementary_moves(const IntMatrix& B, const Poset& poset) {
  if (B.rows() != B.cols() || B.rows() != poset.size())
    throw Error(ErrorCode::ShapeMismatch, "matrix and poset sizes differ");
  std::vector<MoveSlot> out;
  const int n = poset.size();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && poset.leq(i, j)) out.push_back({MoveKind::Row, i, j});
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && poset.leq(i, j)) out.push_back({MoveKind::Column, j, i});
  return out;
}

bool is_legal(const Move& m, const Poset& poset) {
  if (m.target == m.source) return false;
  if (m.kind == MoveKind::Row) return poset.leq(m.target, m.source);
  return poset.leq(m.source, m.target);
}

void apply_move(IntMatrix& B, const Move& m) {
  if (m.kind == MoveKind::Row) {
    B.row(m.target) += B.row(m.source) * m.multiplicity;
  } else {
    B.col(m.target) += B.col(m.source) * m.multiplicity;
  }
}

Move inverse(const Move& m) { return {m.kind, m.target, m.source, BigInt(-m.multiplicity)}; }

BigInt Witness::multiplicity() const {
  BigInt total = 0;
  for (const IntMatrix* M : {&U.entries, &V.entries})
    for (Index i = 0; i < M->rows(); ++i)
      for (Index j = 0; j < M->cols(); ++j)
        if (i != j) total += abs((*M)(i, j));
  return total;
}

Witness witness_from_factors(const SlpMatrix& U, const SlpMatrix& V) {
  Witness w{U, V, {}};
  const Index n = U.entries.rows();
  // U = C_{n-1} ... C_1 with C_j carrying column j of U: apply j ascending
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < j; ++i)
      if (U.entries(i, j) != 0) w.moves.push_back({MoveKind::Row, int(i), int(j), U.entries(i, j)});
  // V = R_{n-1} ... R_0 with R_i carrying row i of V: B*V applies i descending
  for (Index i = n - 1; i >= 0; --i)
    for (Index j = i + 1; j < n; ++j)
      if (V.entries(i, j) != 0) w.moves.push_back({MoveKind::Column, int(j), int(i), V.entries(i, j)});
  return w;
}

namespace {

IntMatrix unipotent_inverse(const IntMatrix& W) {
  const Index n = W.rows();
  IntMatrix V = IntMatrix::Identity(n, n);
  for (Index j = 0; j < n; ++j)
    for (Index i = j - 1; i >= 0; --i) {
      BigInt s = 0;
      for (Index k = i + 1; k <= j; ++k) s += W(i, k) * V(k, j);
      V(i, j) = -s;
    }
  return V;
}

BigInt l1(const IntVector& v) {
  BigInt s = 0;
  for (Index i = 0; i < v.size(); ++i) s += abs(v(i));
  return s;
}

// integer c minimising |z - c*k|_1: weighted median of the breakpoints z_i/k_i
BigInt best_shift(const IntVector& z, const IntVector& k) {
  struct Point {
    BigInt num, den;  // den > 0
  };
  std::vector<Point> pts;
  BigInt total = 0;
  for (Index i = 0; i < z.size(); ++i) {
    if (k(i) == 0) continue;
    if (k(i) > 0)
      pts.push_back({z(i), k(i)});
    else
      pts.push_back({BigInt(-z(i)), BigInt(-k(i))});
    total += pts.back().den;
  }
  if (pts.empty()) return 0;
  std::sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) { return a.num * b.den < b.num * a.den; });
  BigInt acc = 0;
  for (const auto& p : pts) {
    acc += p.den;
    if (2 * acc >= total) {
      const BigInt lo = floor_div(p.num, p.den);
      const BigInt hi = lo + ((p.num % p.den == 0) ? 0 : 1);
      return (l1(z - k * lo) <= l1(z - k * hi)) ? lo : hi;
    }
  }
  return 0;
}

struct Unknowns {
  std::vector<std::pair<int, int>> pairs;  // strictly comparable positions
};

struct Factors {
  IntMatrix U, V;
  BigInt cost;
};

Factors factors_from(const IntVector& z, const Unknowns& u, Index n) {
  const Index P = static_cast<Index>(u.pairs.size());
  Factors f{IntMatrix::Identity(n, n), IntMatrix::Identity(n, n), 0};
  IntMatrix W = IntMatrix::Identity(n, n);
  for (Index p = 0; p < P; ++p) {
    auto [i, j] = u.pairs[p];
    f.U(i, j) = z(p);
    W(i, j) = z(P + p);
  }
  f.V = unipotent_inverse(W);
  for (const IntMatrix* M : {&f.U, &f.V})
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j)
        if (i != j) f.cost += abs((*M)(i, j));
  return f;
}

// Shrink a solution along the lattice: first in l1 (cheap, convex per
// direction), then against the true witness size.
IntVector reduce_solution(IntVector z, std::vector<IntVector> kernel, const Unknowns& u, Index n) {
  if (kernel.empty()) return z;
  lll_reduce(kernel);
  std::vector<IntVector> dirs = kernel;
  for (std::size_t a = 0; a < kernel.size(); ++a)
    for (std::size_t b = a + 1; b < kernel.size(); ++b) {
      dirs.push_back(kernel[a] + kernel[b]);
      dirs.push_back(kernel[a] - kernel[b]);
    }
  for (bool improved = true; improved;) {
    improved = false;
    BigInt cur = l1(z);
    for (const auto& k : dirs) {
      const BigInt c = best_shift(z, k);
      if (c == 0) continue;
      IntVector nz = z - k * c;
      const BigInt v = l1(nz);
      if (v < cur) {
        z = std::move(nz);
        cur = v;
        improved = true;
      }
    }
  }
  BigInt best = factors_from(z, u, n).cost;
  for (int pass = 0; pass < 64; ++pass) {
    bool improved = false;
    for (const auto& k : dirs)
      for (int sign : {1, -1}) {
        IntVector nz = z - k * sign;
        const BigInt v = factors_from(nz, u, n).cost;
        if (v < best) {
          z = std::move(nz);
          best = v;
          improved = true;
        }
      }
    if (!improved) break;
  }
  return z;
}

void check_operand(const IntMatrix& B, const Poset& poset) {
  if (B.rows() != B.cols() || B.rows() != poset.size())
    throw Error(ErrorCode::ShapeMismatch, "matrix and poset sizes differ");
  for (Index i = 0; i < B.rows(); ++i)
    for (Index j = 0; j < B.cols(); ++j) {
      if (i == j && B(i, j) != 0) throw Error(ErrorCode::ShapeMismatch, "B-matrices have zero diagonal");
      if (i != j && B(i, j) != 0 && !poset.leq(int(i), int(j)))
        throw Error(ErrorCode::ShapeMismatch, "matrix support does not respect the poset");
    }
}

}  // namespace

SearchResult equivalent_bounded(const IntMatrix& B1, const IntMatrix& B2, const Poset& poset, const BigInt& budget) {
  check_operand(B1, poset);
  check_operand(B2, poset);
  const Index n = B1.rows();
  SearchResult out;
  if (B1 == B2) {
    out.status = SearchResult::Status::Found;
    out.witness = witness_from_factors(SlpMatrix::identity(poset), SlpMatrix::identity(poset));
    return out;
  }

  // (I + X) B1 = B2 (I + Y) is linear in X, Y; then U = I + X, V = (I + Y)^{-1}.
  Unknowns u;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && poset.leq(i, j)) u.pairs.emplace_back(i, j);
  const Index P = static_cast<Index>(u.pairs.size());
  IntMatrix M = IntMatrix::Zero(n * n, 2 * P);
  IntVector rhs(n * n);
  for (Index p = 0; p < n; ++p)
    for (Index q = 0; q < n; ++q) {
      const Index row = p * n + q;
      for (Index idx = 0; idx < P; ++idx) {
        auto [i, j] = u.pairs[idx];
        if (i == p) M(row, idx) += B1(j, q);
        if (j == q) M(row, P + idx) -= B2(p, i);
      }
      rhs(row) = B2(p, q) - B1(p, q);
    }

  auto sol = solve_integer_system(M, rhs);
  if (!sol) {
    out.infeasible = true;
    return out;
  }
  const IntVector z = reduce_solution(sol->particular, sol->kernel, u, n);
  Factors f = factors_from(z, u, n);
  if (f.cost > budget) {
    out.best_multiplicity = f.cost;
    return out;
  }
  Witness w = witness_from_factors({f.U, poset}, {f.V, poset});
  if (!verify_witness(w.U, w.V, B1, B2)) throw Error(ErrorCode::BadCase, "internal: witness failed verification");
  out.status = SearchResult::Status::Found;
  out.witness = std::move(w);
  return out;
}

bool verify_witness(const SlpMatrix& U, const SlpMatrix& V, const IntMatrix& B1, const IntMatrix& B2) {
  const Index n = B1.rows();
  if (B1.cols() != n || B2.rows() != n || B2.cols() != n || U.entries.rows() != n || U.entries.cols() != n ||
      V.entries.rows() != n || V.entries.cols() != n)
    throw Error(ErrorCode::ShapeMismatch, "witness and matrices must share one square size");
  if (!U.valid() || !V.valid()) return false;
  return IntMatrix(U.entries * B1 * V.entries) == B2;
}

std::optional<Witness> constructive_witness_dim7_l0(const IntMatrix& B1, const IntMatrix& B2, Int r, Int K) {
  if (B1.rows() != 4 || B1.cols() != 4 || B2.rows() != 4 || B2.cols() != 4)
    throw Error(ErrorCode::ShapeMismatch, "dimension 7 with a single middle vertex gives 4x4 matrices");
  if (K < 1 || r % K != 0) throw Error(ErrorCode::DivisibilityError, "K must divide r");
  for (Index i = 0; i < 4; ++i)
    for (Index j = 0; j < 4; ++j)
      if (!(i == 0 && j == 3) && B1(i, j) != B2(i, j)) return std::nullopt;
  const BigInt D = B2(0, 3) - B1(0, 3);
  const BigInt rk = r / K, tri = BigInt(r) * (r + 1) / 2;
  // Row 1 added J times to row 0 moves the corner by J*r(r+1)/2 and the
  // (0,2) entry by J*r; column 1 (= r/K e_0) repairs (0,2) with -J*K copies
  // and closes the remaining gap in the corner in steps of r/K.
  for (Int step = 0; step <= 2 * r; ++step) {
    const Int J = (step % 2 == 0) ? step / 2 : -(step + 1) / 2;
    const BigInt gap = D - BigInt(J) * tri;
    if (gap % rk != 0) continue;
    const Poset lin = Poset::linear(4);
    SlpMatrix U = SlpMatrix::identity(lin), V = SlpMatrix::identity(lin);
    U.entries(0, 1) = J;
    V.entries(1, 2) = -J * K;
    V.entries(1, 3) = gap / rk;
    Witness w{U, V, {}};
    w.moves.push_back({MoveKind::Row, 0, 1, BigInt(J)});
    w.moves.push_back({MoveKind::Column, 2, 1, BigInt(-J * K)});
    w.moves.push_back({MoveKind::Column, 3, 1, BigInt(gap / rk)});
    return w;
  }
  return std::nullopt;
}

}  // namespace lensclass
