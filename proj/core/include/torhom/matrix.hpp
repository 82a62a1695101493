#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace torhom {

/// Sparse integer matrix in coordinate form. Used as the storage format for
/// boundary operators and chain maps, whose entries are small by
/// construction; all heavy arithmetic happens on IMatrix.
struct Triplet {
  int row = 0;
  int col = 0;
  long long val = 0;
};

struct SparseMat {
  int rows = 0;
  int cols = 0;
  std::vector<Triplet> entries;

  void push(int r, int c, long long v) { entries.push_back({r, c, v}); }
};

/// Dense matrix over arbitrary-precision integers (row major).
class IMatrix {
 public:
  IMatrix() = default;
  IMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols) {}

  static IMatrix identity(int n);
  static IMatrix from_sparse(const SparseMat& s);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  mpz_class& at(int r, int c) { return a_[static_cast<std::size_t>(r) * cols_ + c]; }
  const mpz_class& at(int r, int c) const { return a_[static_cast<std::size_t>(r) * cols_ + c]; }

  bool is_zero() const;
  bool operator==(const IMatrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }

  IMatrix operator*(const IMatrix& o) const;
  IMatrix operator+(const IMatrix& o) const;
  IMatrix operator-() const;
  IMatrix transposed() const;

  /// Columns selected by index list.
  IMatrix columns(const std::vector<int>& idx) const;
  IMatrix column(int idx) const;
  /// Rows [r0, r1).
  IMatrix row_slice(int r0, int r1) const;

  void swap_rows(int i, int j);
  void swap_cols(int i, int j);

  std::string str() const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<mpz_class> a_;
};

/// Exact determinant by fraction-free (Bareiss) elimination. Square input.
mpz_class determinant(const IMatrix& m);

}  // namespace torhom
