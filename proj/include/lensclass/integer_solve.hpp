#pragma once

#include <optional>
#include <vector>

#include "lensclass/types.hpp"

namespace lensclass {

// All integer solutions of M z = b: particular + span_Z(kernel).
struct IntegerSolution {
  IntVector particular;
  std::vector<IntVector> kernel;
};

// Column-style Hermite reduction with extended gcd steps. Returns nullopt
// exactly when the system has no integer solution.
std::optional<IntegerSolution> solve_integer_system(const IntMatrix& M, const IntVector& b);

// Size-reduce a lattice basis (LLL, delta = 3/4) in place.
void lll_reduce(std::vector<IntVector>& basis);

}  // namespace lensclass
