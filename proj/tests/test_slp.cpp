#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <queue>
#include <random>

#include "lensclass/classify.hpp"
#include "lensclass/slp.hpp"

using namespace lensclass;

namespace {

IntMatrix B_of(Int r, const std::vector<Int>& w) { return b_matrix(modified_graph(LensParams::make(r, w)).matrix); }

std::string key(const IntMatrix& m) {
  std::ostringstream s;
  s << m;
  return s.str();
}

// Breadth-first search over sequences of unit elementary moves; returns the
// shortest sequence length reaching B2 from B1, if at most `depth`.
std::optional<int> bfs_moves(const IntMatrix& B1, const IntMatrix& B2, const Poset& poset, int depth) {
  const auto slots = elementary_moves(B1, poset);
  std::map<std::string, int> dist{{key(B1), 0}};
  std::queue<IntMatrix> q;
  q.push(B1);
  const std::string goal = key(B2);
  if (dist.count(goal)) return 0;
  while (!q.empty()) {
    const IntMatrix cur = q.front();
    q.pop();
    const int d = dist[key(cur)];
    if (d == depth) continue;
    for (const auto& s : slots)
      for (int sign : {1, -1}) {
        IntMatrix next = cur;
        apply_move(next, {s.kind, s.target, s.source, BigInt(sign)});
        auto [it, fresh] = dist.try_emplace(key(next), d + 1);
        if (!fresh) continue;
        if (it->first == goal) return d + 1;
        q.push(next);
      }
  }
  return std::nullopt;
}

IntMatrix replay(IntMatrix B, const Witness& w) {
  for (const auto& m : w.moves) apply_move(B, m);
  return B;
}

}  // namespace

TEST_CASE("poset_for") {
  CHECK(poset_for(7, 0, 6).is_linear());
  CHECK(poset_for(7, 0, 6).size() == 4);
  CHECK(poset_for(7, 2, 1).is_linear());
  CHECK(poset_for(7, 3, 1).size() == 4);
  const Poset d = poset_for(7, 1, 2);
  REQUIRE(d.size() == 5);
  CHECK(d.leq(0, 1));
  CHECK(d.leq(0, 2));
  CHECK(d.leq(1, 3));
  CHECK(d.leq(2, 3));
  CHECK(d.leq(3, 4));
  CHECK_FALSE(d.comparable(1, 2));
  CHECK_THROWS_AS(poset_for(7, 4, 2), Error);
  CHECK_THROWS_AS(poset_for(6, 0, 2), Error);
  // agrees with reachability in the actual matrices
  for (Int r : {6, 8, 9})
    for (Int K = 2; K <= r; ++K) {
      if (r % K) continue;
      for (int ell = 0; ell <= 3; ++ell) {
        const auto ws = pattern_weights(r, {7, ell, K});
        CHECK(poset_for(7, ell, K) == reachability_poset(modified_graph(LensParams::make(r, ws.front())).matrix));
      }
    }
}

TEST_CASE("elementary moves") {
  const IntMatrix Z = IntMatrix::Zero(4, 4);
  const auto slots = elementary_moves(Z, Poset::linear(4));
  CHECK(std::count_if(slots.begin(), slots.end(), [](auto& s) { return s.kind == MoveKind::Row; }) == 6);
  CHECK(std::count_if(slots.begin(), slots.end(), [](auto& s) { return s.kind == MoveKind::Column; }) == 6);

  const auto diamond = elementary_moves(IntMatrix::Zero(5, 5), poset_for(7, 1, 2));
  for (const auto& s : diamond) CHECK_FALSE(((s.target == 1 && s.source == 2) || (s.target == 2 && s.source == 1)));
  CHECK(diamond.size() == 2 * 9);

  IntMatrix B = int_matrix({{0, 2}, {0, 0}});
  apply_move(B, {MoveKind::Row, 0, 1, 1});
  CHECK(B == int_matrix({{0, 2}, {0, 0}}));

  CHECK(is_legal({MoveKind::Row, 0, 1, 1}, Poset::linear(2)));
  CHECK_FALSE(is_legal({MoveKind::Row, 1, 0, 1}, Poset::linear(2)));
  CHECK(is_legal({MoveKind::Column, 1, 0, 1}, Poset::linear(2)));
  CHECK_FALSE(is_legal({MoveKind::Column, 0, 1, 1}, Poset::linear(2)));
  CHECK_FALSE(is_legal({MoveKind::Row, 1, 2, 1}, poset_for(7, 1, 2)));
  CHECK_THROWS_AS(elementary_moves(Z, Poset::linear(3)), Error);
}

TEST_CASE("moves invert and keep consecutive entries of a linear block") {
  std::mt19937 rng(3);
  const Poset lin = Poset::linear(4);
  const auto slots = elementary_moves(IntMatrix::Zero(4, 4), lin);
  for (Int r = 2; r <= 9; ++r) {
    const IntMatrix B = B_of(r, {1, 1, 1, 1});
    IntMatrix C = B;
    std::vector<Move> log;
    for (int k = 0; k < 30; ++k) {
      const auto& s = slots[rng() % slots.size()];
      Move m{s.kind, s.target, s.source, BigInt(int(rng() % 7) - 3)};
      apply_move(C, m);
      log.push_back(m);
      for (Index i = 0; i + 1 < 4; ++i) CHECK(C(i, i + 1) == B(i, i + 1));
    }
    for (auto it = log.rbegin(); it != log.rend(); ++it) apply_move(C, inverse(*it));
    CHECK(C == B);
  }
}

TEST_CASE("equivalent_bounded trivial and shape cases") {
  const IntMatrix B = B_of(5, {1, 2, 3, 4});
  const auto res = equivalent_bounded(B, B, Poset::linear(4), 0);
  REQUIRE(res.found());
  CHECK(res.witness->multiplicity() == 0);
  CHECK(res.witness->moves.empty());
  CHECK(verify_witness(SlpMatrix::identity(Poset::linear(4)), SlpMatrix::identity(Poset::linear(4)), B, B));
  CHECK_THROWS_AS(equivalent_bounded(B, B_of(5, {1, 2, 3}), Poset::linear(4), 10), Error);
  CHECK_THROWS_AS(equivalent_bounded(B, B, Poset::linear(3), 10), Error);
}

TEST_CASE("coprime r = 3") {
  const IntMatrix B1 = B_of(3, {1, 1, 1, 1}), B2 = B_of(3, {1, 1, 2, 1}), B4 = B_of(3, {1, 1, 4, 1});
  for (Int budget : {0, 1, 2, 5, 12, 100, 10000}) {
    const auto res = equivalent_bounded(B1, B2, Poset::linear(4), budget);
    CHECK_FALSE(res.found());
    CHECK(res.infeasible);
  }
  CHECK_FALSE(invariant_coprime7(3, {1, 1, 1, 1}, {1, 1, 2, 1}));
  CHECK(B1 == B4);
  CHECK(equivalent_bounded(B1, B4, Poset::linear(4), 12).found());
  // no short move sequence either
  CHECK_FALSE(bfs_moves(B1, B2, Poset::linear(4), 3).has_value());
}

TEST_CASE("verify_witness rejects incomparable support and wrong products") {
  const Poset d = poset_for(7, 1, 2);
  const IntMatrix B = B_of(4, {1, 2, 1, 1});
  SlpMatrix U = SlpMatrix::identity(d), V = SlpMatrix::identity(d);
  CHECK(verify_witness(U, V, B, B));
  U.entries(1, 2) = 1;  // levels 1 copies are incomparable
  CHECK_FALSE(U.valid());
  CHECK_FALSE(verify_witness(U, V, B, IntMatrix(U.entries * B)));
  U = SlpMatrix::identity(d);
  U.entries(0, 3) = 1;
  CHECK(U.valid());
  CHECK_FALSE(verify_witness(U, V, B, B));
  CHECK(verify_witness(U, V, B, IntMatrix(U.entries * B)));
  U.entries(2, 2) = 2;
  CHECK_FALSE(U.valid());
}

TEST_CASE("constructive witness for dimension 7 with the non-unit weight first") {
  long built = 0;
  for (Int r = 2; r <= 10; ++r)
    for (Int K = 1; K <= r; ++K) {
      if (r % K) continue;
      const auto ws = pattern_weights(r, {7, 0, K});
      for (std::size_t i = 0; i < ws.size(); i += 3)
        for (std::size_t j = 0; j < ws.size(); j += 5) {
          const IntMatrix B1 = B_of(r, ws[i]), B2 = B_of(r, ws[j]);
          const auto w = constructive_witness_dim7_l0(B1, B2, r, K);
          const bool inv = invariant_dim7(r, 0, K, ws[i], ws[j]);
          CHECK(w.has_value() == inv);
          if (!w) continue;
          ++built;
          CHECK(verify_witness(w->U, w->V, B1, B2));
          CHECK(replay(B1, *w) == B2);
          CHECK(w->moves.size() == 3);
        }
    }
  CHECK(built > 0);
}

TEST_CASE("solver witnesses replay, verify and agree with short move searches") {
  for (Int r = 2; r <= 5; ++r)
    for (int dim : {5, 7})
      for (Int K = 1; K <= r; ++K) {
        if (r % K) continue;
        for (int ell = 0; ell <= (K == 1 ? 0 : (dim - 1) / 2); ++ell) {
          const auto ws = pattern_weights(r, {dim, ell, K});
          const Poset P = poset_for(dim, ell, K);
          std::map<std::string, IntMatrix> distinct;
          for (const auto& w : ws) {
            const IntMatrix B = B_of(r, w);
            distinct.emplace(key(B), B);
          }
          for (const auto& [ka, A] : distinct)
            for (const auto& [kb, B] : distinct) {
              const auto res = equivalent_bounded(A, B, P, 1000);
              if (res.found()) {
                CHECK(verify_witness(res.witness->U, res.witness->V, A, B));
                CHECK(replay(A, *res.witness) == B);
                for (const auto& m : res.witness->moves) CHECK(is_legal(m, P));
                CHECK(res.witness->multiplicity() <= 1000);
              }
              if (A.rows() <= 5 && bfs_moves(A, B, P, 2)) CHECK(res.found());
              if (res.infeasible) CHECK_FALSE(res.found());
            }
        }
      }
}

TEST_CASE("budget gating") {
  // r = 8, dimension 7, K = 2 at position 3: a pair needing several moves
  const auto ws = pattern_weights(8, {7, 3, 2});
  const Poset P = poset_for(7, 3, 2);
  bool checked = false;
  for (const auto& w : ws) {
    const IntMatrix A = B_of(8, ws.front()), B = B_of(8, w);
    const auto big = equivalent_bounded(A, B, P, 1000);
    if (!big.found() || big.witness->multiplicity() < 2) continue;
    const BigInt need = big.witness->multiplicity();
    const auto tight = equivalent_bounded(A, B, P, need - 1);
    CHECK_FALSE(tight.found());
    CHECK_FALSE(tight.infeasible);
    REQUIRE(tight.best_multiplicity.has_value());
    CHECK(*tight.best_multiplicity == need);
    CHECK(equivalent_bounded(A, B, P, need).found());
    checked = true;
    break;
  }
  CHECK(checked);
}
