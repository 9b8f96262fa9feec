#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "nonflat/hopf.hpp"

namespace nonflat {

using HopfPtr = std::shared_ptr<const HopfData>;

/// Finite-dimensional module: one action matrix per basis vector of A.
/// Right modules use column-vector matrices with R(ab) = R(b) R(a).
struct Rep {
  HopfPtr hopf;
  Side side = Side::left;
  std::size_t dim = 0;
  std::vector<Matrix> action;

  const Field& field() const { return hopf->field(); }
  /// Action matrix of an arbitrary element of A.
  Matrix act(const Vector& a) const;
  /// Throws ShapeMismatch unless the matrices respect the structure constants and the unit.
  void validate() const;
};

Rep regular_module(HopfPtr h, Side side = Side::left);
Rep trivial_module(HopfPtr h, std::size_t n, Side side = Side::left);
Rep direct_sum_modules(const Rep& a, const Rep& b);
/// Direct sum of `copies` copies of the regular module.
Rep free_module(HopfPtr h, std::size_t copies, Side side = Side::left);

Rep tensor_modules(const Rep& m1, const Rep& m2);
/// V* on the opposite side, action by transposes.
Rep dual_module(const Rep& m);
/// V* pulled back along the antipode so it stays on the same side.
Rep dual_pullback(const Rep& m);
/// Action precomposed with S^n; the side flips when n is odd.
Rep twist_module(const Rep& m, long long n);

/// Basis of Hom_A(m1, m2); each element is a dim2 x dim1 matrix.
std::vector<Matrix> hom_space(const Rep& m1, const Rep& m2);
bool is_intertwiner(const Rep& m1, const Rep& m2, const Matrix& f);

Matrix random_combination(const std::vector<Matrix>& basis, std::size_t rows, std::size_t cols, const Field& field,
                          std::uint64_t seed, long long bound);
Matrix random_hom(const Rep& m1, const Rep& m2, std::uint64_t seed, long long bound);

enum class Verdict { yes, no, inconclusive };
std::string to_string(Verdict v);

struct IsoResult {
  Verdict verdict = Verdict::inconclusive;
  std::optional<Matrix> iso;
  std::string reason;
};

IsoResult is_isomorphic(const Rep& m1, const Rep& m2, std::uint64_t seed = 1, int retries = 20, long long bound = 3);

struct ProjectivityCertificate {
  bool projective = false;
  /// Splitting m -> A^g, stacked by cover summand, when projective.
  std::optional<Matrix> splitting;
  std::size_t cover_rank = 0;
  std::size_t system_rank = 0;
  std::size_t augmented_rank = 0;
};

/// Decides whether the cover A^{dim m} -> m, sending the k-th generator to
/// the k-th basis vector, splits.
ProjectivityCertificate is_projective(const Rep& m);

struct FreenessResult {
  Verdict verdict = Verdict::inconclusive;
  std::size_t rank = 0;
  /// Certificates for a negative verdict, e.g. "divisibility" or "invariant".
  std::vector<std::string> evidence;
  std::optional<Matrix> iso;
};

FreenessResult is_free(const Rep& m, std::uint64_t seed = 1, int retries = 20);

/// Checks (id (x) ev)(coev (x) id) = id on V. `ev` is the pairing on V*(x)V as a
/// 1 x n^2 row; the dual-basis pairing when omitted.
bool coev_ev_identity(const Rep& v, const std::optional<Matrix>& ev = std::nullopt);

}  // namespace nonflat
