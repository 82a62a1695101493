#pragma once

#include <optional>

#include "torhom/matrix.hpp"

namespace torhom {

/// Smith normal form U*A*V = D with U, V unimodular and D diagonal,
/// d_1 | d_2 | ... , all diagonal entries non-negative.
///
/// `diag` holds the nonzero invariant factors only; the remaining diagonal
/// of D is zero. Uinv and Vinv are maintained alongside so that
/// A = Uinv * D * Vinv, which is what kernel/image extraction needs.
struct SnfDecomposition {
  int rows = 0;
  int cols = 0;
  IMatrix U, Uinv, V, Vinv;
  std::vector<mpz_class> diag;

  int rank() const { return static_cast<int>(diag.size()); }
  IMatrix D() const;
  /// Non-unit invariant factors (the torsion coefficients this matrix
  /// contributes as a presentation matrix).
  std::vector<mpz_class> nonunit_factors() const;
};

/// Pivot choice: smallest nonzero absolute value, ties broken by row-major
/// position. Works on any rectangular integer matrix, including empty ones.
SnfDecomposition smith_normal_form(const IMatrix& a);

int integer_rank(const IMatrix& a);

/// Solves A x = b over the integers; nullopt when no integer solution exists.
std::optional<std::vector<mpz_class>> solve_integer(const SnfDecomposition& snf, const IMatrix& b_col);
std::optional<std::vector<mpz_class>> solve_integer(const IMatrix& a, const IMatrix& b_col);

/// A map between free abelian groups is one-free when its image is a direct
/// summand of the target: every invariant factor equals 1. Equivalently,
/// p*[v] lying in the image forces [v] into the image.
bool is_one_free(const IMatrix& m);

/// Postcondition check used by tests and the verifier: U*A*V == D,
/// divisibility chain, unimodularity of U and V (exact determinants).
bool snf_postconditions_hold(const IMatrix& a, const SnfDecomposition& snf, std::string* why = nullptr);

}  // namespace torhom
