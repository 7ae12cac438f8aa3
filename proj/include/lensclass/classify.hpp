#pragma once

#include <compare>
#include <string>
#include <utility>
#include <vector>

#include "lensclass/lens.hpp"

namespace lensclass {

struct InvariantSignature {
  int dim = 7;
  int ell = 0;
  Int K = 1;
  std::vector<std::pair<std::string, Int>> residues;

  auto operator<=>(const InvariantSignature&) const = default;
  std::string to_string() const;  // e.g. "m1 mod K=1;m2 mod K=3"
};

bool invariant_coprime7(Int r, const std::vector<Int>& m, const std::vector<Int>& n);
bool invariant_dim5(Int r, int ell, Int K, const std::vector<Int>& m, const std::vector<Int>& n);
bool invariant_dim7(Int r, int ell, Int K, const std::vector<Int>& m, const std::vector<Int>& n);
// dimensions 3, 5, 7 (dimension 3 is always isomorphic)
bool invariant(Int r, const GcdPattern& pattern, const std::vector<Int>& m, const std::vector<Int>& n);

InvariantSignature signature(Int r, int dim, int ell, Int K, const std::vector<Int>& m);

// The listed representative of m's class: (K,1,1,1), (1,K,k2,1), (1,k1,K,1),
// (1,k1,k2,K) and their r-1 twisted forms (dimension 7); (K,1,1), (1,K,1),
// (1,k1,K) (dimension 5); (K,1), (1,K) (dimension 3). 0 < k_i < K.
std::vector<Int> canonical_weights(Int r, int dim, int ell, Int K, const std::vector<Int>& m);

// A weight vector that satisfies the gcd pattern, has m's signature and is
// congruent to canonical_weights mod K wherever possible. The listed
// representative itself can violate the pattern (e.g. k_2 = 3 when 3 | r).
std::vector<Int> representative_weights(Int r, int dim, int ell, Int K, const std::vector<Int>& m);

// every weight vector in (1..r)^{n+1} with the given pattern, lexicographic
std::vector<std::vector<Int>> pattern_weights(Int r, const GcdPattern& pattern);

Int count_classes(Int r, int dim, int ell, Int K);
// the closed-form count the classification predicts
Int table_count(Int r, int dim, int ell, Int K);

struct ClassRow {
  InvariantSignature signature;
  std::vector<Int> canonical;
  std::vector<Int> representative;
  Int size = 0;
};

std::vector<ClassRow> class_report(Int r, int dim, int ell, Int K);

}  // namespace lensclass
