#include "lensclass/classify.hpp"

#include <map>

namespace lensclass {

namespace {

void require_pattern(Int r, const GcdPattern& pat, const std::vector<Int>& m) {
  if (pat.K < 1 || r % pat.K != 0) throw Error(ErrorCode::DivisibilityError, "K must divide r");
  if (!matches_pattern(r, m, pat))
    throw Error(ErrorCode::PatternError, "weights do not match gcd(m_" + std::to_string(pat.ell) +
                                             ", r) = " + std::to_string(pat.K) + " with the rest units");
}

// (a - b) * r(r-1)(r-2)/3 == 0 mod r
bool twisted_congruence(Int r, const BigInt& a, const BigInt& b) {
  const BigInt T = BigInt(r) * (r - 1) * (r - 2) / 3;
  return floor_mod(BigInt((a - b) * T), BigInt(r)) == 0;
}

// u^{-1} * w mod r for the unit u
BigInt ratio(Int r, Int w, Int u) { return BigInt(mod_inverse(u, r)) * w; }

bool third_divides(Int r, Int K) { return r % 3 == 0 && K % 3 != 0; }

Int mod3_ratio(Int w, Int u) { return floor_mod(mod_inverse(floor_mod(u, Int(3)), Int(3)) * w, Int(3)); }

}  // namespace

std::string InvariantSignature::to_string() const {
  std::string out;
  for (const auto& [label, value] : residues) {
    if (!out.empty()) out += ";";
    out += label + "=" + std::to_string(value);
  }
  return out;
}

bool invariant_coprime7(Int r, const std::vector<Int>& m, const std::vector<Int>& n) {
  require_pattern(r, {7, 0, 1}, m);
  require_pattern(r, {7, 0, 1}, n);
  return twisted_congruence(r, ratio(r, m[1], m[2]), ratio(r, n[1], n[2]));
}

bool invariant_dim5(Int r, int ell, Int K, const std::vector<Int>& m, const std::vector<Int>& n) {
  if (ell < 0 || ell > 2) throw Error(ErrorCode::BadCase, "dimension 5 has positions 0..2");
  require_pattern(r, {5, ell, K}, m);
  require_pattern(r, {5, ell, K}, n);
  if (ell != 2 || K == 1) return true;
  return floor_mod(m[1] - n[1], K) == 0;
}

bool invariant_dim7(Int r, int ell, Int K, const std::vector<Int>& m, const std::vector<Int>& n) {
  if (ell < 0 || ell > 3) throw Error(ErrorCode::BadCase, "dimension 7 has positions 0..3");
  require_pattern(r, {7, ell, K}, m);
  require_pattern(r, {7, ell, K}, n);
  auto c21 = [&] { return twisted_congruence(r, ratio(r, m[1], m[2]), ratio(r, n[1], n[2])); };
  if (K == 1) return c21();
  switch (ell) {
    case 0:
      return K % 3 == 0 || c21();
    case 1:
      return c21() && floor_mod(m[2] - n[2], K) == 0;
    case 2:
      return twisted_congruence(r, ratio(r, m[2], m[1]), ratio(r, n[2], n[1])) && floor_mod(m[1] - n[1], K) == 0;
    default:
      return c21() && floor_mod(m[1] - n[1], K) == 0 && floor_mod(m[2] - n[2], K) == 0;
  }
}

bool invariant(Int r, const GcdPattern& pattern, const std::vector<Int>& m, const std::vector<Int>& n) {
  switch (pattern.dim) {
    case 3:
      require_pattern(r, pattern, m);
      require_pattern(r, pattern, n);
      return true;
    case 5: return invariant_dim5(r, pattern.ell, pattern.K, m, n);
    case 7: return invariant_dim7(r, pattern.ell, pattern.K, m, n);
    default: throw Error(ErrorCode::BadCase, "invariants are known for dimensions 3, 5 and 7");
  }
}

InvariantSignature signature(Int r, int dim, int ell, Int K, const std::vector<Int>& m) {
  require_pattern(r, {dim, ell, K}, m);
  InvariantSignature sig{dim, ell, K, {}};
  if (K == 1) sig.ell = ell = 0;
  if (dim == 5 && ell == 2) sig.residues.push_back({"m1 mod K", floor_mod(m[1], K)});
  if (dim != 7) return sig;
  if (ell == 1) sig.residues.push_back({"m2 mod K", floor_mod(m[2], K)});
  if (ell == 2) sig.residues.push_back({"m1 mod K", floor_mod(m[1], K)});
  if (ell == 3) {
    sig.residues.push_back({"m1 mod K", floor_mod(m[1], K)});
    sig.residues.push_back({"m2 mod K", floor_mod(m[2], K)});
  }
  // the twisted congruence only sees residues mod 3, and when 3 | K they are
  // already fixed by the mod-K data (or the case is unconditional)
  if (third_divides(r, K)) {
    if (ell == 2)
      sig.residues.push_back({"m1^-1*m2 mod 3", mod3_ratio(m[2], m[1])});
    else
      sig.residues.push_back({"m2^-1*m1 mod 3", mod3_ratio(m[1], m[2])});
  }
  return sig;
}

std::vector<Int> canonical_weights(Int r, int dim, int ell, Int K, const std::vector<Int>& m) {
  const InvariantSignature sig = signature(r, dim, ell, K, m);
  if (K == 1) ell = 0;
  auto unit = [&](Int w) { return K == 1 ? Int(1) : floor_mod(w, K); };
  if (dim == 3) return ell == 0 ? std::vector<Int>{K, 1} : std::vector<Int>{1, K};
  if (dim == 5) {
    if (ell == 0) return {K, 1, 1};
    if (ell == 1) return {1, K, 1};
    return {1, unit(m[1]), K};
  }
  const bool twist = third_divides(r, K) && sig.residues.back().second == 2;
  // k * (r - 1) with k chosen so the product is congruent to w mod K
  auto twisted = [&](Int w) { return (K == 1 ? Int(1) : floor_mod(-w, K)) * (r - 1); };
  switch (ell) {
    case 0: return {K, 1, twist ? r - 1 : 1, 1};
    case 1: return {1, K, twist ? twisted(m[2]) : unit(m[2]), 1};
    case 2: return {1, twist ? twisted(m[1]) : unit(m[1]), K, 1};
    default: return {1, unit(m[1]), twist ? twisted(m[2]) : unit(m[2]), K};
  }
}

std::vector<std::vector<Int>> pattern_weights(Int r, const GcdPattern& pattern) {
  const int len = (pattern.dim + 1) / 2;
  std::vector<std::vector<Int>> out;
  std::vector<Int> w(len, 1);
  while (true) {
    if (matches_pattern(r, w, pattern)) out.push_back(w);
    int i = len - 1;
    while (i >= 0 && ++w[i] > r) w[i--] = 1;
    if (i < 0) break;
  }
  return out;
}

std::vector<Int> representative_weights(Int r, int dim, int ell, Int K, const std::vector<Int>& m) {
  const InvariantSignature target = signature(r, dim, ell, K, m);
  const std::vector<Int> canon = canonical_weights(r, dim, ell, K, m);
  const GcdPattern pat{dim, K == 1 ? 0 : ell, K};
  if (matches_pattern(r, canon, pat) && signature(r, dim, ell, K, canon) == target) return canon;
  const auto all = pattern_weights(r, pat);
  for (const auto& w : all) {
    bool congruent = true;
    for (std::size_t i = 0; i < w.size(); ++i)
      if (floor_mod(w[i] - canon[i], K) != 0) congruent = false;
    if (congruent && signature(r, dim, ell, K, w) == target) return w;
  }
  for (const auto& w : all)
    if (signature(r, dim, ell, K, w) == target) return w;
  return m;
}

Int count_classes(Int r, int dim, int ell, Int K) {
  if (K < 1 || r % K != 0) throw Error(ErrorCode::DivisibilityError, "K must divide r");
  std::set<InvariantSignature> seen;
  for (const auto& w : pattern_weights(r, {dim, K == 1 ? 0 : ell, K})) seen.insert(signature(r, dim, ell, K, w));
  return static_cast<Int>(seen.size());
}

Int table_count(Int r, int dim, int ell, Int K) {
  if (K < 1 || r % K != 0) throw Error(ErrorCode::DivisibilityError, "K must divide r");
  const Int phi = euler_phi(K);
  if (K == 1) ell = 0;
  if (dim == 3) return 1;
  if (dim == 5) return ell == 2 ? phi : 1;
  if (dim != 7) throw Error(ErrorCode::BadCase, "class counts are known for dimensions 3, 5 and 7");
  const Int base = ell == 0 ? 1 : ell == 3 ? phi * phi : phi;
  return third_divides(r, K) ? 2 * base : base;
}

std::vector<ClassRow> class_report(Int r, int dim, int ell, Int K) {
  if (K < 1 || r % K != 0) throw Error(ErrorCode::DivisibilityError, "K must divide r");
  std::map<InvariantSignature, ClassRow> rows;
  for (const auto& w : pattern_weights(r, {dim, K == 1 ? 0 : ell, K})) {
    const auto sig = signature(r, dim, ell, K, w);
    auto [it, fresh] = rows.try_emplace(sig);
    if (fresh) {
      it->second.signature = sig;
      it->second.canonical = canonical_weights(r, dim, ell, K, w);
      it->second.representative = representative_weights(r, dim, ell, K, w);
    }
    ++it->second.size;
  }
  std::vector<ClassRow> out;
  for (auto& [sig, row] : rows) out.push_back(std::move(row));
  return out;
}

}  // namespace lensclass
