#include "torhom/snf.hpp"

#include <cassert>
#include <cstdlib>

namespace torhom {

IMatrix SnfDecomposition::D() const {
  IMatrix d(rows, cols);
  for (int i = 0; i < rank(); ++i) d.at(i, i) = diag[i];
  return d;
}

std::vector<mpz_class> SnfDecomposition::nonunit_factors() const {
  std::vector<mpz_class> out;
  for (const auto& d : diag)
    if (d != 1) out.push_back(d);
  return out;
}

namespace {

// Elementary operations mirrored on the transforms and their inverses.
struct Work {
  IMatrix a;
  SnfDecomposition* s;

  void swap_rows(int i, int j) {
    if (i == j) return;
    a.swap_rows(i, j);
    s->U.swap_rows(i, j);
    s->Uinv.swap_cols(i, j);
  }
  void swap_cols(int i, int j) {
    if (i == j) return;
    a.swap_cols(i, j);
    s->V.swap_cols(i, j);
    s->Vinv.swap_rows(i, j);
  }
  void negate_row(int i) {
    for (int c = 0; c < a.cols(); ++c) a.at(i, c) = -a.at(i, c);
    for (int c = 0; c < s->U.cols(); ++c) s->U.at(i, c) = -s->U.at(i, c);
    for (int r = 0; r < s->Uinv.rows(); ++r) s->Uinv.at(r, i) = -s->Uinv.at(r, i);
  }
  // row_i += c * row_j
  void add_row(int i, int j, const mpz_class& c) {
    if (c == 0) return;
    for (int k = 0; k < a.cols(); ++k) a.at(i, k) += c * a.at(j, k);
    for (int k = 0; k < s->U.cols(); ++k) s->U.at(i, k) += c * s->U.at(j, k);
    for (int k = 0; k < s->Uinv.rows(); ++k) s->Uinv.at(k, j) -= c * s->Uinv.at(k, i);
  }
  // col_i += c * col_j
  void add_col(int i, int j, const mpz_class& c) {
    if (c == 0) return;
    for (int k = 0; k < a.rows(); ++k) a.at(k, i) += c * a.at(k, j);
    for (int k = 0; k < s->V.rows(); ++k) s->V.at(k, i) += c * s->V.at(k, j);
    for (int k = 0; k < s->Vinv.cols(); ++k) s->Vinv.at(j, k) -= c * s->Vinv.at(i, k);
  }
};

// Smallest nonzero |entry| in a[t.., t..], ties by row-major position.
bool find_pivot(const IMatrix& a, int t, int* pr, int* pc) {
  bool found = false;
  mpz_class best;
  for (int i = t; i < a.rows(); ++i) {
    for (int j = t; j < a.cols(); ++j) {
      if (a.at(i, j) == 0) continue;
      mpz_class v = abs(a.at(i, j));
      if (!found || v < best) {
        found = true;
        best = v;
        *pr = i;
        *pc = j;
      }
    }
  }
  return found;
}

// Quotient rounded to nearest, so the remainder magnitude is at most |b|/2.
mpz_class nearest_quotient(const mpz_class& a, const mpz_class& b) {
  mpz_class q, r;
  mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  if (2 * abs(r) > abs(b)) q += (sgn(r) == sgn(b)) ? 1 : -1;
  return q;
}

}  // namespace

SnfDecomposition smith_normal_form(const IMatrix& input) {
  SnfDecomposition s;
  s.rows = input.rows();
  s.cols = input.cols();
  s.U = IMatrix::identity(s.rows);
  s.Uinv = IMatrix::identity(s.rows);
  s.V = IMatrix::identity(s.cols);
  s.Vinv = IMatrix::identity(s.cols);

  Work w{input, &s};
  const int n = std::min(s.rows, s.cols);
  for (int t = 0; t < n; ++t) {
    int pr = 0, pc = 0;
    if (!find_pivot(w.a, t, &pr, &pc)) break;

    // Reduce against the current smallest entry; any nonzero remainder is at
    // most half the pivot, so re-selecting shrinks the pivot geometrically.
    for (;;) {
      w.swap_rows(t, pr);
      w.swap_cols(t, pc);
      bool clean = true;
      for (int i = t + 1; i < s.rows; ++i) {
        if (w.a.at(i, t) == 0) continue;
        w.add_row(i, t, -nearest_quotient(w.a.at(i, t), w.a.at(t, t)));
        if (w.a.at(i, t) != 0) clean = false;
      }
      for (int j = t + 1; j < s.cols; ++j) {
        if (w.a.at(t, j) == 0) continue;
        w.add_col(j, t, -nearest_quotient(w.a.at(t, j), w.a.at(t, t)));
        if (w.a.at(t, j) != 0) clean = false;
      }
      if (clean) {
        // Divisibility: fold in one row holding an entry the pivot misses.
        bool fixed = false;
        for (int i = t + 1; i < s.rows && !fixed; ++i)
          for (int j = t + 1; j < s.cols && !fixed; ++j)
            if (w.a.at(i, j) % w.a.at(t, t) != 0) {
              w.add_row(t, i, 1);
              fixed = true;
            }
        if (!fixed) break;
      }
      if (!find_pivot(w.a, t, &pr, &pc)) break;
    }

    if (w.a.at(t, t) < 0) w.negate_row(t);
    s.diag.push_back(w.a.at(t, t));
  }
  return s;
}

int integer_rank(const IMatrix& a) { return smith_normal_form(a).rank(); }

std::optional<std::vector<mpz_class>> solve_integer(const SnfDecomposition& snf, const IMatrix& b_col) {
  assert(b_col.cols() == 1 && b_col.rows() == snf.rows);
  IMatrix ub = snf.U * b_col;
  std::vector<mpz_class> y(snf.cols, 0);
  for (int i = 0; i < snf.rows; ++i) {
    if (i < snf.rank()) {
      if (ub.at(i, 0) % snf.diag[i] != 0) return std::nullopt;
      y[i] = ub.at(i, 0) / snf.diag[i];
    } else if (ub.at(i, 0) != 0) {
      return std::nullopt;
    }
  }
  std::vector<mpz_class> x(snf.cols, 0);
  for (int i = 0; i < snf.cols; ++i) {
    mpz_class acc = 0;
    for (int j = 0; j < snf.cols; ++j) acc += snf.V.at(i, j) * y[j];
    x[i] = acc;
  }
  return x;
}

std::optional<std::vector<mpz_class>> solve_integer(const IMatrix& a, const IMatrix& b_col) {
  return solve_integer(smith_normal_form(a), b_col);
}

bool is_one_free(const IMatrix& m) {
  auto snf = smith_normal_form(m);
  for (const auto& d : snf.diag)
    if (d != 1) return false;
  return true;
}

bool snf_postconditions_hold(const IMatrix& a, const SnfDecomposition& snf, std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  if (!(snf.U * a * snf.V == snf.D())) return fail("U*A*V != D");
  if (!(snf.U * snf.Uinv == IMatrix::identity(snf.rows))) return fail("U*Uinv != I");
  if (!(snf.Vinv * snf.V == IMatrix::identity(snf.cols))) return fail("Vinv*V != I");
  mpz_class du = determinant(snf.U);
  mpz_class dv = determinant(snf.V);
  if (du != 1 && du != -1) return fail("det(U) not a unit");
  if (dv != 1 && dv != -1) return fail("det(V) not a unit");
  for (std::size_t i = 0; i + 1 < snf.diag.size(); ++i)
    if (snf.diag[i + 1] % snf.diag[i] != 0) return fail("divisibility chain broken");
  for (const auto& d : snf.diag)
    if (d <= 0) return fail("nonpositive invariant factor");
  return true;
}

}  // namespace torhom
