#pragma once

#include <array>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "nonflat/matrix.hpp"

namespace nonflat {

/// Finite-dimensional Hopf algebra given by structure constants in a fixed
/// ordered basis e_0..e_{d-1}:
///   e_i e_j = sum_k mult(i,j,k) e_k,   Delta(e_k) = sum_{i,j} comult(k,i,j) e_i (x) e_j.
class HopfData {
 public:
  HopfData() = default;
  HopfData(Field field, std::size_t dim, std::vector<Scalar> mult, Vector unit, std::vector<Scalar> comult,
           Vector counit, Matrix antipode);

  const Field& field() const { return field_; }
  std::size_t dim() const { return dim_; }

  const Scalar& mult(std::size_t i, std::size_t j, std::size_t k) const { return mult_[(i * dim_ + j) * dim_ + k]; }
  const Scalar& comult(std::size_t k, std::size_t i, std::size_t j) const {
    return comult_[(k * dim_ + i) * dim_ + j];
  }
  Scalar& mult(std::size_t i, std::size_t j, std::size_t k) { return mult_[(i * dim_ + j) * dim_ + k]; }
  Scalar& comult(std::size_t k, std::size_t i, std::size_t j) { return comult_[(k * dim_ + i) * dim_ + j]; }

  const std::vector<Scalar>& mult_tensor() const { return mult_; }
  const std::vector<Scalar>& comult_tensor() const { return comult_; }
  const Vector& unit() const { return unit_; }
  const Vector& counit() const { return counit_; }
  const Matrix& antipode() const { return antipode_; }
  Vector& unit() { return unit_; }
  Vector& counit() { return counit_; }
  Matrix& antipode() { return antipode_; }

  /// Algebra generators as coordinate vectors. Builders record group-likes
  /// and skew-primitives; otherwise this is the full basis.
  std::vector<Vector> generators() const;
  bool has_declared_generators() const { return !generators_.empty(); }
  void set_generators(std::vector<Vector> gens) { generators_ = std::move(gens); }

  const std::string& name() const { return name_; }
  void set_name(std::string n) { name_ = std::move(n); }

  Vector basis_vector(std::size_t i) const;
  Vector multiply(const Vector& x, const Vector& y) const;
  /// Coefficients T with Delta(x) = sum T(i,j) e_i (x) e_j.
  Matrix coproduct(const Vector& x) const;
  Scalar counit_of(const Vector& x) const;
  Vector apply_antipode(const Vector& x) const { return antipode_ * x; }

  /// Matrix of left (resp. right) multiplication by e_i on A.
  Matrix left_mult(std::size_t i) const;
  Matrix right_mult(std::size_t i) const;
  Matrix left_mult(const Vector& x) const;

  friend bool operator==(const HopfData& a, const HopfData& b);

 private:
  Field field_;
  std::size_t dim_ = 0;
  std::vector<Scalar> mult_;
  Vector unit_;
  std::vector<Scalar> comult_;
  Vector counit_;
  Matrix antipode_;
  std::vector<Vector> generators_;
  std::string name_;
};

struct AxiomCheck {
  std::string axiom;
  bool pass = true;
  /// First violating basis-index triple in lexicographic order; unused
  /// positions are -1.
  std::optional<std::array<int, 3>> witness;
};

struct AxiomReport {
  std::vector<AxiomCheck> checks;
  bool all_pass() const;
  const AxiomCheck* find(const std::string& axiom) const;
};

AxiomReport verify_hopf(const HopfData& h);

/// `table[i][j]` is the index of g_i g_j. Throws NotAGroup.
HopfData build_group_algebra(const std::vector<std::vector<int>>& table, const Field& field);
std::vector<std::vector<int>> cyclic_group_table(int n);

HopfData build_sweedler(const Field& field);
/// Taft algebra T_n(q); q defaults to a canonical primitive n-th root of
/// unity in the field. Throws BadRoot when none exists.
HopfData build_taft(int n, const Field& field, std::optional<Scalar> q = std::nullopt);
std::optional<Scalar> primitive_root_of_unity(int n, const Field& field);

bool antipode_bijective(const HopfData& h);
Matrix antipode_power(const HopfData& h, long long n);

enum class Side { left, right };
std::string to_string(Side s);

std::vector<Vector> integral_space(const HopfData& h, Side side);
bool is_semisimple(const HopfData& h);

HopfData dualize(const HopfData& h);

/// Re-expresses h in the basis whose i-th vector is column i of `basis`.
HopfData change_basis(const HopfData& h, const Matrix& basis);

}  // namespace nonflat
