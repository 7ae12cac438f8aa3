#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lensclass/graph.hpp"
#include "lensclass/numtheory.hpp"

namespace lensclass {

// Unipotent upper triangular matrix whose off-diagonal support respects a poset.
struct SlpMatrix {
  IntMatrix entries;
  Poset poset;

  static SlpMatrix identity(const Poset& p);
  bool valid() const;
};

enum class MoveKind { Row, Column };

// Row: row `target` += multiplicity * row `source`    (target <= source in the poset)
// Column: column `target` += multiplicity * column `source`  (source <= target)
struct MoveSlot {
  MoveKind kind;
  int target;
  int source;
  bool operator==(const MoveSlot&) const = default;
};

struct Move {
  MoveKind kind;
  int target;
  int source;
  BigInt multiplicity;
};

Poset poset_for(int dim, int ell, Int K);

std::vector<MoveSlot> elementary_moves(const IntMatrix& B, const Poset& poset);
bool is_legal(const Move& m, const Poset& poset);
void apply_move(IntMatrix& B, const Move& m);
Move inverse(const Move& m);

struct Witness {
  SlpMatrix U, V;
  std::vector<Move> moves;  // applying these to B1 in order yields B2

  BigInt multiplicity() const;  // sum of |off-diagonal entries| of U and V
};

// Factor U and V into an ordered move log.
Witness witness_from_factors(const SlpMatrix& U, const SlpMatrix& V);

struct SearchResult {
  enum class Status { Found, Exhausted };
  Status status = Status::Exhausted;
  std::optional<Witness> witness;
  // Exhausted because no SL_P witness of any size exists
  bool infeasible = false;
  // smallest multiplicity reached when a witness exists but exceeds the budget
  std::optional<BigInt> best_multiplicity;

  bool found() const { return status == Status::Found; }
};

SearchResult equivalent_bounded(const IntMatrix& B1, const IntMatrix& B2, const Poset& poset, const BigInt& budget);

bool verify_witness(const SlpMatrix& U, const SlpMatrix& V, const IntMatrix& B1, const IntMatrix& B2);

// Explicit moves for dimension 7 with the non-unit weight in position 0: one
// row move from v1 into v0 and two column moves out of v1. nullopt when the
// corner entries cannot be matched this way.
std::optional<Witness> constructive_witness_dim7_l0(const IntMatrix& B1, const IntMatrix& B2, Int r, Int K);

std::string to_string(MoveKind kind);

}  // namespace lensclass
