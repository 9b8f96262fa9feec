#pragma once

#include "nonflat/rep.hpp"

namespace nonflat {

/// Coend V = (End V)^* with basis e_ij^* dual to the matrix units E_ij,
/// index i * v_dim + j, and the right A-action dual to
/// a > beta = sum tau(a_1) beta tau(S a_2).
struct ModuleCoalgebra {
  HopfPtr hopf;
  std::size_t v_dim = 0;
  std::size_t dim = 0;
  std::vector<Scalar> comult;  // comult[(k*dim + i)*dim + j]
  Vector counit;
  std::vector<Matrix> right_action;

  const Scalar& comult_at(std::size_t k, std::size_t i, std::size_t j) const { return comult[(k * dim + i) * dim + j]; }
  Rep as_right_module() const { return Rep{hopf, Side::right, dim, right_action}; }
};

ModuleCoalgebra coend(const Rep& v);

/// Coassociativity, counit and the module-coalgebra compatibility of the action.
bool verify_module_coalgebra(const ModuleCoalgebra& c);

/// Operator on U (x) V (or U (x) V*) in the u-major basis: index a * v_dim + i.
struct EndoOnTensor {
  std::size_t u_dim = 0;
  std::size_t v_dim = 0;
  Matrix matrix;

  friend bool operator==(const EndoOnTensor& a, const EndoOnTensor& b) {
    return a.u_dim == b.u_dim && a.v_dim == b.v_dim && a.matrix == b.matrix;
  }
};

/// Partial transpose on the second tensor leg.
Matrix halfdual(const Matrix& f, std::size_t u_dim, std::size_t v_dim);
EndoOnTensor halfdual(const EndoOnTensor& f);

/// Linear map Coend V -> End U, stored as the images of the basis e_ij^*.
struct ConvMap {
  std::size_t u_dim = 0;
  std::size_t v_dim = 0;
  std::vector<Matrix> values;

  friend bool operator==(const ConvMap& a, const ConvMap& b) {
    return a.u_dim == b.u_dim && a.v_dim == b.v_dim && a.values == b.values;
  }
};

ConvMap conv_unit(const Field& field, std::size_t u_dim, std::size_t v_dim);
/// (f * g)(c) = sum f(c_1) g(c_2)
ConvMap conv_mul(const ConvMap& f, const ConvMap& g);
/// (f x g)(c) = sum f(c_2) g(c_1)
ConvMap twist_conv_mul(const ConvMap& f, const ConvMap& g);

enum class Parity { even, odd };
Parity parity_of(long long n);

/// Even parity lands in End(U (x) V) and carries * to composition; odd parity
/// lands in End(U (x) V*) and carries the twist product to composition.
EndoOnTensor to_endo(const ConvMap& f, Parity parity);
ConvMap from_endo(const EndoOnTensor& f, const Field& field, Parity parity);

/// Throws NotConvInvertible when the endo-image is singular.
ConvMap conv_inverse(const ConvMap& f, const Field& field);

/// Level-n intertwining condition: for even n, f is A-linear from
/// U_{S^n} (x) V to U_triv (x) V; for odd n, f is right A-linear from
/// U_triv (x) V* to U_{S^n} (x) V*. `u` and `v` are left modules.
bool check_cond(const EndoOnTensor& f, long long n, const Rep& u, const Rep& v);

}  // namespace nonflat
