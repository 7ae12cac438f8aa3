#pragma once

#include <set>
#include <utility>
#include <vector>

#include "lensclass/lens.hpp"

namespace lensclass {

using Position = std::pair<Index, Index>;

struct FormulaMatrix {
  IntMatrix matrix;
  std::set<Position> modr_mask;  // entries known only mod r, stored in [0, r)
  GcdPattern pattern;
  Int r = 2;

  // exact on unmasked entries, congruent mod r on masked ones
  bool agrees_with(const IntMatrix& exact) const;
};

Int one_step(Int r, Int K);

// Two-step admissible paths through one intermediate level k.
// case 1: (v_i,0) into (v_l,t) on the non-unit level, k a unit level;
// case 2: out of (v_l,t) to (v_j,0), k a unit level;
// case 3: root to root with k the non-unit level.
// a_k is m_k^{-1} mod K.
Int two_step(int which, Int r, Int K, Int t, Int a_k);

FormulaMatrix adjacency_dim3(Int r, Int K, int ell = 0);
FormulaMatrix adjacency_dim5(int ell, Int r, Int K, const std::vector<Int>& weights);
FormulaMatrix adjacency_dim7(int ell, Int r, Int K, const std::vector<Int>& weights);

// dispatch on the gcd pattern of p
FormulaMatrix adjacency_formula(const LensParams& p);

// J*M^T*J
IntMatrix anti_transpose(const IntMatrix& m);

}  // namespace lensclass
