#include "torhom/matrix.hpp"

#include <cassert>
#include <sstream>
#include <stdexcept>

namespace torhom {

IMatrix IMatrix::identity(int n) {
  IMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IMatrix IMatrix::from_sparse(const SparseMat& s) {
  IMatrix m(s.rows, s.cols);
  for (const auto& t : s.entries) m.at(t.row, t.col) += static_cast<long>(t.val);
  return m;
}

bool IMatrix::is_zero() const {
  for (const auto& x : a_)
    if (x != 0) return false;
  return true;
}

IMatrix IMatrix::operator*(const IMatrix& o) const {
  assert(cols_ == o.rows_);
  IMatrix r(rows_, o.cols_);
  for (int i = 0; i < rows_; ++i) {
    for (int k = 0; k < cols_; ++k) {
      const mpz_class& aik = at(i, k);
      if (aik == 0) continue;
      for (int j = 0; j < o.cols_; ++j) {
        if (o.at(k, j) != 0) r.at(i, j) += aik * o.at(k, j);
      }
    }
  }
  return r;
}

IMatrix IMatrix::operator+(const IMatrix& o) const {
  assert(rows_ == o.rows_ && cols_ == o.cols_);
  IMatrix r(rows_, cols_);
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] + o.a_[i];
  return r;
}

IMatrix IMatrix::operator-() const {
  IMatrix r(rows_, cols_);
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = -a_[i];
  return r;
}

IMatrix IMatrix::transposed() const {
  IMatrix r(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
  return r;
}

IMatrix IMatrix::columns(const std::vector<int>& idx) const {
  IMatrix r(rows_, static_cast<int>(idx.size()));
  for (int j = 0; j < static_cast<int>(idx.size()); ++j)
    for (int i = 0; i < rows_; ++i) r.at(i, j) = at(i, idx[j]);
  return r;
}

IMatrix IMatrix::column(int idx) const { return columns({idx}); }

IMatrix IMatrix::row_slice(int r0, int r1) const {
  IMatrix r(r1 - r0, cols_);
  for (int i = r0; i < r1; ++i)
    for (int j = 0; j < cols_; ++j) r.at(i - r0, j) = at(i, j);
  return r;
}

void IMatrix::swap_rows(int i, int j) {
  if (i == j) return;
  for (int c = 0; c < cols_; ++c) std::swap(at(i, c), at(j, c));
}

void IMatrix::swap_cols(int i, int j) {
  if (i == j) return;
  for (int r = 0; r < rows_; ++r) std::swap(at(r, i), at(r, j));
}

std::string IMatrix::str() const {
  std::ostringstream os;
  for (int i = 0; i < rows_; ++i) {
    os << (i == 0 ? "[" : " ");
    for (int j = 0; j < cols_; ++j) os << at(i, j) << (j + 1 < cols_ ? " " : "");
    os << (i + 1 < rows_ ? ";\n" : "]");
  }
  return os.str();
}

mpz_class determinant(const IMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant: matrix not square");
  const int n = m.rows();
  if (n == 0) return 1;
  IMatrix a = m;
  mpz_class prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (a.at(k, k) == 0) {
      int p = -1;
      for (int i = k + 1; i < n; ++i)
        if (a.at(i, k) != 0) {
          p = i;
          break;
        }
      if (p < 0) return 0;
      a.swap_rows(k, p);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        mpz_class num = a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j);
        mpz_class q;
        mpz_divexact(q.get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
        a.at(i, j) = q;
      }
      a.at(i, k) = 0;
    }
    prev = a.at(k, k);
  }
  return sign > 0 ? a.at(n - 1, n - 1) : mpz_class(-a.at(n - 1, n - 1));
}

}  // namespace torhom
