#include "lensclass/lens.hpp"

#include <string>

namespace lensclass {

namespace {

Int checked_add(Int a, Int b) {
  Int out;
  if (__builtin_add_overflow(a, b, &out)) throw Error(ErrorCode::Overflow, "path count exceeds 64 bits");
  return out;
}

// Dynamic program over the skew product for a fixed target vertex. The
// unmarked vertices of each level form chains (every within-level cycle
// meets the marked set exactly once), so the recursion is well-founded.
class PathCounter {
 public:
  PathCounter(const LensParams& p, std::vector<bool> allowed)
      : p_(p), allowed_(std::move(allowed)), r_(p.r), levels_(p.n() + 1) {
    for (int i = 0; i < levels_; ++i) {
      step_.push_back(floor_mod(p.weights[i], r_));
      K_.push_back(p.K(i));
    }
  }

  // f[level*r + k] = number of nonempty paths from (level,k) to target whose
  // interior vertices are unmarked and lie in allowed levels
  std::vector<Int> counts_to(const SkewVertex& target) const {
    std::vector<Int> f(static_cast<std::size_t>(levels_ * r_), 0);
    auto g = [&](int level, Int k) -> Int {
      Int v = (level == target.level && k == target.offset) ? 1 : 0;
      if (k >= K_[level] && allowed_[level]) v = checked_add(v, f[level * r_ + k]);
      return v;
    };
    auto evaluate = [&](int i, Int k) {
      const Int next = (k + step_[i]) % r_;
      Int total = 0;
      for (int j = i; j <= target.level; ++j) total = checked_add(total, g(j, next));
      f[i * r_ + k] = total;
    };
    for (int i = target.level; i >= 0; --i) {
      const Int K = K_[i];
      std::vector<Int> chain;
      for (Int c = 0; c < K; ++c) {
        chain.clear();
        for (Int k = (c + step_[i]) % r_; k != c; k = (k + step_[i]) % r_) chain.push_back(k);
        for (auto it = chain.rbegin(); it != chain.rend(); ++it) evaluate(i, *it);
      }
      for (Int c = 0; c < K; ++c) evaluate(i, c);
    }
    return f;
  }

  Int count(const SkewVertex& from, const SkewVertex& to) const {
    return counts_to(to)[from.level * r_ + from.offset];
  }

 private:
  const LensParams& p_;
  std::vector<bool> allowed_;
  Int r_;
  int levels_;
  std::vector<Int> step_, K_;
};

void check_vertex(const LensParams& p, const SkewVertex& v) {
  if (v.level < 0 || v.level > p.n() || v.offset < 0 || v.offset >= p.r)
    throw Error(ErrorCode::InvalidParams, "vertex " + to_string(v) + " out of range");
}

void check_endpoints(const LensParams& p, const SkewVertex& from, const SkewVertex& to) {
  check_vertex(p, from);
  check_vertex(p, to);
  if (from.level > to.level) throw Error(ErrorCode::LevelOrder, "paths never descend levels");
  if (!is_marked(p, from) || !is_marked(p, to)) throw Error(ErrorCode::InvalidParams, "endpoints must be marked");
}

ModifiedLensGraph build(const LensParams& p, std::vector<std::vector<Int>> sets) {
  ModifiedLensGraph out;
  out.params = p;
  out.s_sets = std::move(sets);
  for (int i = 0; i <= p.n(); ++i)
    for (Int k : out.s_sets[i]) out.vertex_order.push_back({i, k});
  const Index N = static_cast<Index>(out.vertex_order.size());
  out.matrix = IntMatrix::Zero(N, N);
  PathCounter counter(p, std::vector<bool>(p.n() + 1, true));
  for (Index j = 0; j < N; ++j) {
    const auto f = counter.counts_to(out.vertex_order[j]);
    for (Index i = 0; i < N; ++i) {
      const auto& v = out.vertex_order[i];
      if (v.level <= out.vertex_order[j].level) out.matrix(i, j) = f[v.level * p.r + v.offset];
    }
  }
  return out;
}

}  // namespace

LensParams LensParams::make(Int r, std::vector<Int> weights) {
  LensParams p{r, std::move(weights)};
  p.validate();
  return p;
}

void LensParams::validate() const {
  if (r < 2) throw Error(ErrorCode::InvalidParams, "r must be at least 2");
  if (weights.empty()) throw Error(ErrorCode::InvalidParams, "need at least one weight");
  for (Int w : weights)
    if (w < 1) throw Error(ErrorCode::InvalidParams, "weights must be positive");
}

std::vector<Int> gcd_profile(const LensParams& p) {
  std::vector<Int> out;
  for (int i = 0; i <= p.n(); ++i) out.push_back(p.K(i));
  return out;
}

std::optional<GcdPattern> gcd_pattern(const LensParams& p) {
  GcdPattern pat{p.dim(), 0, 1};
  int seen = 0;
  for (int i = 0; i <= p.n(); ++i) {
    const Int k = p.K(i);
    if (k != 1) {
      ++seen;
      pat.ell = i;
      pat.K = k;
    }
  }
  if (seen > 1) return std::nullopt;
  return pat;
}

bool matches_pattern(Int r, const std::vector<Int>& weights, const GcdPattern& pattern) {
  if (static_cast<int>(weights.size()) * 2 - 1 != pattern.dim) return false;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] < 1) return false;
    const Int expect = (static_cast<int>(i) == pattern.ell) ? pattern.K : 1;
    if (gcd_of(weights[i], r) != expect) return false;
  }
  return true;
}

MultiGraph base_graph(int n) {
  if (n < 0) throw Error(ErrorCode::InvalidParams, "n must be nonnegative");
  MultiGraph g;
  for (int i = 0; i <= n; ++i) g.add_vertex({i, 0});
  for (int i = 0; i <= n; ++i)
    for (int j = i; j <= n; ++j) g.add_edge({i, 0}, {j, 0});
  return g;
}

MultiGraph skew_product(const LensParams& p) {
  p.validate();
  MultiGraph g;
  for (int i = 0; i <= p.n(); ++i)
    for (Int k = 0; k < p.r; ++k) g.add_vertex({i, k});
  // edge (e_ij, k): source (v_i, k - m_i), range (v_j, k)
  for (int i = 0; i <= p.n(); ++i)
    for (int j = i; j <= p.n(); ++j)
      for (Int k = 0; k < p.r; ++k) g.add_edge({i, floor_mod(k - p.weights[i], p.r)}, {j, k});
  return g;
}

bool is_marked(const LensParams& p, const SkewVertex& v) { return v.offset < p.K(v.level); }

VertexSet marked_vertices(const LensParams& p) {
  VertexSet out;
  for (int i = 0; i <= p.n(); ++i)
    for (Int k = 0; k < p.K(i); ++k) out.insert({i, k});
  return out;
}

std::vector<std::vector<Int>> s_sets(const LensParams& p) {
  const MultiGraph g = skew_product(p);
  VertexSet seed;
  for (int i = 0; i <= p.n(); ++i) seed.insert({i, 0});
  const VertexSet h = hereditary_closure(g, seed);
  std::vector<std::vector<Int>> out(p.n() + 1);
  for (int i = 0; i <= p.n(); ++i)
    for (Int k = 0; k < p.K(i); ++k)
      if (h.count({i, k})) out[i].push_back(k);
  return out;
}

Int count_admissible(const LensParams& p, const SkewVertex& from, const SkewVertex& to) {
  p.validate();
  check_endpoints(p, from, to);
  return PathCounter(p, std::vector<bool>(p.n() + 1, true)).count(from, to);
}

Int kstep_count(const LensParams& p, const SkewVertex& from, const SkewVertex& to, const std::set<int>& via_levels) {
  p.validate();
  check_endpoints(p, from, to);
  for (int l : via_levels)
    if (l <= from.level || l >= to.level) throw Error(ErrorCode::LevelOrder, "via levels must lie strictly between the endpoints");
  const std::vector<int> via(via_levels.begin(), via_levels.end());
  const int m = static_cast<int>(via.size());
  // inclusion-exclusion over the levels actually visited
  Int total = 0;
  for (unsigned mask = 0; mask < (1u << m); ++mask) {
    std::vector<bool> allowed(p.n() + 1, false);
    allowed[from.level] = allowed[to.level] = true;
    int dropped = m;
    for (int b = 0; b < m; ++b)
      if (mask & (1u << b)) {
        allowed[via[b]] = true;
        --dropped;
      }
    const Int c = PathCounter(p, allowed).count(from, to);
    total = (dropped % 2 == 0) ? checked_add(total, c) : checked_add(total, -c);
  }
  return total;
}

ModifiedLensGraph modified_graph(const LensParams& p) {
  p.validate();
  return build(p, s_sets(p));
}

ModifiedLensGraph uncorrected_graph(const LensParams& p) {
  p.validate();
  std::vector<std::vector<Int>> all(p.n() + 1);
  for (int i = 0; i <= p.n(); ++i)
    for (Int k = 0; k < p.K(i); ++k) all[i].push_back(k);
  return build(p, std::move(all));
}

IntMatrix b_matrix(const IntMatrix& a) {
  return a - IntMatrix::Identity(a.rows(), a.cols());
}

}  // namespace lensclass
