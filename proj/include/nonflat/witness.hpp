#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nonflat/coend.hpp"

namespace nonflat {

/// U = (sum U^0_i) + (sum U^1_i) with U^0_0 the regular module and every
/// other block trivial; V = V_0 + V_1 with V_0 regular and V_1 trivial.
struct BlockLayout {
  HopfPtr hopf;
  std::size_t a_dim = 0;
  std::size_t v1_dim = 0;
  int truncation = 0;

  std::size_t u_block_dim(int s) const { return s == 0 ? a_dim : v1_dim; }
  std::size_t v_piece_dim(int t) const { return t == 0 ? a_dim : v1_dim; }
  std::size_t v_dim() const { return a_dim + v1_dim; }
  /// V_0 (+) V_1 as a left module.
  Rep v_module() const;
};

BlockLayout make_layout(HopfPtr h, std::size_t v1_dim, int truncation);

/// Block U^s_i of U.
struct UBlock {
  int s = 0;
  int i = 0;
  auto operator<=>(const UBlock&) const = default;
};
std::string to_string(const UBlock& b);

/// Tensor piece U^s_i (x) V_t (or V_t^* at odd levels).
struct Piece {
  int s = 0;
  int i = 0;
  int t = 0;
  UBlock block() const { return {s, i}; }
  auto operator<=>(const Piece&) const = default;
};
std::string to_string(const Piece& p);

enum class CellKind { diagonal, head, shift };

struct CellId {
  CellKind kind = CellKind::diagonal;
  int index = 0;
  auto operator<=>(const CellId&) const = default;
};
std::string to_string(const CellId& c);

struct Cell {
  CellId id;
  std::vector<Piece> src;
  std::vector<Piece> dst;
  Matrix matrix;
};

/// Source and target pieces of a cell in the pattern for the given level parity.
std::pair<std::vector<Piece>, std::vector<Piece>> cell_pieces(long long level, CellId id);

/// Finite family of cell matrices for one level of the recursion. Diagonal
/// cells are materialized for indices 0..diag_max and shift cells for
/// 1..shift_max; the head cell always exists.
struct ShapedOperator {
  BlockLayout layout;
  long long level = 0;
  int diag_max = 0;
  int shift_max = 0;
  std::vector<Cell> cells;  // D_0..D_diag_max, H, W_1..W_shift_max

  const Cell& cell(CellId id) const;
  Cell& cell(CellId id);
};

/// Component (source piece, target piece) -> matrix. Presence of a key means
/// the component is materialized, even when the block is zero.
using BlockOperator = std::map<std::pair<Piece, Piece>, Matrix>;

BlockOperator to_blocks(const ShapedOperator& f);
/// Partial transpose of every component; V indices move between pieces.
BlockOperator halfdual_blocks(const BlockOperator& f, const BlockLayout& layout);

/// True iff every nonzero component lies inside a declared cell of the
/// level's pattern.
bool check_shape(const BlockOperator& f, long long level);
bool check_shape(const ShapedOperator& f);
/// Every cell intertwines the twisted module structures of its level.
bool check_level_conditions(const ShapedOperator& f);
/// Level-n source and target module structure on a list of pieces.
Rep piece_module(const BlockLayout& layout, long long level, const std::vector<Piece>& pieces, bool source);

struct SampleOptions {
  long long bound = 3;
  int draws_per_cell = 64;
};

ShapedOperator sample_X0(const BlockLayout& layout, std::uint64_t seed, const SampleOptions& options = {});

/// Cellwise inverse followed by the halfdual, regrouped into the next
/// level's cells. Throws CellSingular naming the offending cell.
ShapedOperator advance(const ShapedOperator& f);

struct RecursionCheck {
  bool ok = true;
  int cells_checked = 0;
  std::string first_failure;
};

/// Verifies halfdual(next) = f^{-1} on every cell of f whose inverse is fully
/// materialized in `next`, by multiplying both ways.
RecursionCheck verify_recursion(const ShapedOperator& f, const ShapedOperator& next);

bool cells_invertible(const ShapedOperator& f);

struct OpenConditions {
  bool o1 = false;
  bool o2 = false;
  bool o3 = false;
};

OpenConditions check_O123(const ShapedOperator& f0);
/// D_0 component on U^0_0 (x) V_0.
EndoOnTensor pi1(const ShapedOperator& f0);

/// x (x) y -> sum S(x_2) y (x) x_1 on A (x) A.
EndoOnTensor lemma312_operator(const HopfData& h);

struct SliceAlgebra {
  std::size_t dim = 0;
  bool saturated = false;
  std::size_t multiplications = 0;
};

constexpr std::size_t kDefaultSliceBudget = 64;

/// Unital algebra generated by the given v x v matrices; throws BudgetExhausted.
SliceAlgebra slice_algebra(const std::vector<Matrix>& slices, std::size_t v_dim,
                           std::size_t budget = kDefaultSliceBudget);
/// Slices T_ab[i][j] = f[(a,i),(b,j)].
std::vector<Matrix> operator_slices(const EndoOnTensor& f);
SliceAlgebra slice_algebra(const EndoOnTensor& f, std::size_t budget = kDefaultSliceBudget);
/// Slices of a level-0 operator over the full V = V_0 + V_1, taken across all
/// materialized components.
std::vector<Matrix> full_slices(const ShapedOperator& f0);

Verdict check_O4(const ShapedOperator& f0, std::size_t budget = kDefaultSliceBudget);

/// Exhaustive search over subspaces 0 < N' < V of a small prime-field V for
/// one with f(U (x) N') inside U (x) N'. Throws TooLarge beyond dim 3.
std::optional<std::vector<Vector>> invariant_subspace_bruteforce(const EndoOnTensor& f);

struct LevelRecord {
  long long n = 0;
  bool cells_invertible = false;
  bool shape = false;
  bool intertwiner = false;
  /// Relation to the previous level; absent at level 0.
  std::optional<bool> inverse_law;
  int inverse_cells_checked = 0;
  int diag_max = 0;
  int shift_max = 0;
};

struct WitnessOptions {
  std::size_t v1_dim = 1;
  int depth = 5;
  int truncation = 8;
  std::uint64_t seed = 7;
  int retries = 50;
  long long bound = 3;
  std::size_t slice_budget = kDefaultSliceBudget;
};

struct Witness {
  BlockLayout layout;
  std::uint64_t seed = 0;
  std::vector<ShapedOperator> levels;
};

struct WitnessResult {
  Verdict verdict = Verdict::inconclusive;
  int attempts = 0;
  std::map<std::string, int> failure_counts;
  std::optional<Witness> witness;
  std::vector<LevelRecord> levels;
  OpenConditions open;
  Verdict o4 = Verdict::inconclusive;
  std::optional<SliceAlgebra> slices;
};

/// Level records for an existing witness, re-derived from the stored cells.
std::vector<LevelRecord> audit_levels(const Witness& w);

WitnessResult build_witness(HopfPtr h, const WitnessOptions& options);

}  // namespace nonflat
