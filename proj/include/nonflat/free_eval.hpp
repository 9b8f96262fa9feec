#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "nonflat/witness.hpp"

namespace nonflat {

/// Letter of a word in the free Hopf algebra: a coalgebra generator of a
/// given generation (matrix-unit index into V or V*) or an element of A.
struct Letter {
  enum class Kind { generator, algebra };
  Kind kind = Kind::generator;
  long long generation = 0;
  std::size_t i = 0;
  std::size_t j = 0;
  Vector element;

  static Letter gen(long long n, std::size_t i, std::size_t j) { return {Kind::generator, n, i, j, {}}; }
  static Letter alg(Vector a) { return {Kind::algebra, 0, 0, 0, std::move(a)}; }
};

struct FreeWord {
  struct Term {
    Scalar coefficient;
    std::vector<Letter> letters;
  };
  std::vector<Term> terms;

  static FreeWord monomial(const Field& f, std::vector<Letter> letters) { return {{{f.one(), std::move(letters)}}}; }
  FreeWord operator*(const FreeWord& o) const;
  FreeWord operator+(const FreeWord& o) const;
};

/// Syntax: `c[n,i,j]`, `a[v0,v1,...]`, products by whitespace, sums by `+`,
/// an optional rational coefficient leading each term.
FreeWord parse_word(const std::string& text, const Field& field, std::size_t algebra_dim);

/// Set of U-blocks, either finite or cofinite.
struct BlockSet {
  bool cofinite = false;
  std::set<UBlock> items;  // members when finite, exclusions when cofinite

  static BlockSet all() { return {true, {}}; }
  bool contains(const UBlock& b) const { return cofinite != (items.count(b) > 0); }
  BlockSet intersect(const BlockSet& o) const;
};

/// Operator on U = sum of blocks, stored as scalar * identity plus finitely
/// many block components. Columns are exact for source blocks in `domain`.
class LazyUOperator {
 public:
  LazyUOperator() = default;
  LazyUOperator(BlockLayout layout, Scalar scalar, BlockSet domain)
      : layout_(std::move(layout)), scalar_(std::move(scalar)), domain_(std::move(domain)) {}

  static LazyUOperator identity(const BlockLayout& layout);

  const Scalar& scalar() const { return scalar_; }
  const BlockSet& domain() const { return domain_; }
  const std::map<std::pair<UBlock, UBlock>, Matrix>& components() const { return comps_; }
  void add_component(const UBlock& src, const UBlock& dst, const Matrix& m);

  /// this after other
  LazyUOperator compose(const LazyUOperator& other) const;
  LazyUOperator plus(const LazyUOperator& other) const;
  LazyUOperator scaled(const Scalar& c) const;

  /// Throws TruncationExceeded when the vector leaves the exact domain.
  std::map<UBlock, Vector> apply(const std::map<UBlock, Vector>& v) const;

  /// Column-wise comparison on the common domain; returns the number of
  /// compared source blocks or nullopt on a mismatch.
  std::optional<std::size_t> equal_on_domain(const LazyUOperator& other) const;

 private:
  std::map<UBlock, Matrix> column(const UBlock& b) const;

  BlockLayout layout_;
  Scalar scalar_;
  BlockSet domain_;
  std::map<std::pair<UBlock, UBlock>, Matrix> comps_;
};

/// Image of the generator of generation n with matrix-unit index (i, j).
LazyUOperator psi_generator(const Witness& w, long long n, std::size_t i, std::size_t j);
/// Regular action on U^0_0, counit scalar elsewhere.
LazyUOperator psi_alg(const Witness& w, const Vector& a);
LazyUOperator eval_word(const Witness& w, const FreeWord& word);

/// Value of the level-n convolution map on the basis element e_ij^*.
LazyUOperator level_map(const Witness& w, long long n, std::size_t i, std::size_t j);

/// The regular representation of A is injective.
bool phi_faithful(const HopfData& h);

struct RelationReport {
  std::size_t module_checked = 0;
  std::size_t module_failed = 0;
  std::size_t conv_checked = 0;
  std::size_t conv_failed = 0;
  std::size_t depth1_checked = 0;
  std::size_t depth1_failed = 0;
  std::size_t blocks_compared = 0;
  std::string first_failure;

  bool all_pass() const { return module_failed == 0 && conv_failed == 0; }
};

/// Checks f_0(c . a) = f_0(c) phi(a) for basis c and generators a, and the
/// consecutive-level inverse laws, on the materialized support. `samples`
/// caps the instances per family (all when absent).
RelationReport verify_relations(const Witness& w, std::optional<std::size_t> samples = std::nullopt);

}  // namespace nonflat
