#pragma once

#include <optional>
#include <set>
#include <vector>

#include "lensclass/graph.hpp"
#include "lensclass/numtheory.hpp"

namespace lensclass {

struct LensParams {
  Int r = 2;
  std::vector<Int> weights;  // m_0..m_n

  static LensParams make(Int r, std::vector<Int> weights);  // validates
  void validate() const;

  int n() const { return static_cast<int>(weights.size()) - 1; }
  int dim() const { return 2 * n() + 1; }
  Int K(int i) const { return gcd_of(weights.at(i), r); }
};

// (level, k) with 0 <= k < r
using SkewVertex = VertexId;

// The "one non-coprime weight" shape: gcd(m_ell, r) = K and every other
// weight is a unit. K = 1 (all coprime) is reported with ell = 0.
struct GcdPattern {
  int dim = 3;
  int ell = 0;
  Int K = 1;
  bool operator==(const GcdPattern&) const = default;
};

std::optional<GcdPattern> gcd_pattern(const LensParams& p);
bool matches_pattern(Int r, const std::vector<Int>& weights, const GcdPattern& pattern);
// all gcd(m_i, r), one per level
std::vector<Int> gcd_profile(const LensParams& p);

MultiGraph base_graph(int n);
MultiGraph skew_product(const LensParams& p);

bool is_marked(const LensParams& p, const SkewVertex& v);
VertexSet marked_vertices(const LensParams& p);

std::vector<std::vector<Int>> s_sets(const LensParams& p);

Int count_admissible(const LensParams& p, const SkewVertex& from, const SkewVertex& to);
Int kstep_count(const LensParams& p, const SkewVertex& from, const SkewVertex& to, const std::set<int>& via_levels);

struct ModifiedLensGraph {
  LensParams params;
  std::vector<std::vector<Int>> s_sets;
  std::vector<VertexId> vertex_order;  // level-major, offset ascending
  IntMatrix matrix;

  MultiGraph graph() const { return graph_from_matrix(matrix, vertex_order); }
};

ModifiedLensGraph modified_graph(const LensParams& p);

// Same construction over every marked vertex, without restricting to the
// hereditary closure of the level roots.
ModifiedLensGraph uncorrected_graph(const LensParams& p);

// B = A - I
IntMatrix b_matrix(const IntMatrix& a);

}  // namespace lensclass
