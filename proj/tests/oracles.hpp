// Independent reference implementations used to cross-check the production
// code. Deliberately structured differently from the library: first-nonzero
// pivoting with a post-hoc divisibility normalization instead of
// smallest-pivot with transforms, minor gcds instead of elimination, and a
// fresh matrix enumeration for abstract Coxeter group orders.
#pragma once

#include <gmpxx.h>

#include <map>
#include <numeric>
#include <set>
#include <vector>

#include "torhom/coxeter.hpp"
#include "torhom/matrix.hpp"

namespace oracle {

// Invariant factors by plain elementary operations: no transform matrices,
// column-major minimal pivoting, truncated division, and the divisibility
// chain restored afterwards by pairwise gcd/lcm exchanges on the diagonal
// (which preserve the cokernel).
inline std::vector<mpz_class> naive_invariant_factors(torhom::IMatrix a) {
  std::vector<mpz_class> diag;
  int t = 0;
  const int rows = a.rows(), cols = a.cols();
  while (t < rows && t < cols) {
    for (;;) {
      // smallest nonzero entry, scanning column by column
      int pr = -1, pc = -1;
      mpz_class best;
      for (int j = t; j < cols; ++j)
        for (int i = t; i < rows; ++i) {
          if (a.at(i, j) == 0) continue;
          mpz_class v = abs(a.at(i, j));
          if (pr < 0 || v < best) {
            best = v;
            pr = i;
            pc = j;
          }
        }
      if (pr < 0) goto finished;
      a.swap_rows(t, pr);
      a.swap_cols(t, pc);
      bool dirty = false;
      for (int i = t + 1; i < rows; ++i) {
        if (a.at(i, t) == 0) continue;
        mpz_class q = a.at(i, t) / a.at(t, t);
        for (int j = t; j < cols; ++j) a.at(i, j) -= q * a.at(t, j);
        if (a.at(i, t) != 0) dirty = true;
      }
      for (int j = t + 1; j < cols; ++j) {
        if (a.at(t, j) == 0) continue;
        mpz_class q = a.at(t, j) / a.at(t, t);
        for (int i = t; i < rows; ++i) a.at(i, j) -= q * a.at(i, t);
        if (a.at(t, j) != 0) dirty = true;
      }
      if (!dirty) break;
    }
    diag.push_back(abs(a.at(t, t)));
    ++t;
  }
finished:
  // normalize into a divisibility chain with pairwise gcd/lcm exchanges
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < diag.size(); ++i)
      for (std::size_t j = i + 1; j < diag.size(); ++j) {
        if (diag[j] % diag[i] == 0) continue;
        mpz_class g, l;
        mpz_gcd(g.get_mpz_t(), diag[i].get_mpz_t(), diag[j].get_mpz_t());
        l = diag[i] / g * diag[j];
        diag[i] = g;
        diag[j] = l;
        changed = true;
      }
  }
  std::sort(diag.begin(), diag.end());
  return diag;
}

// Products d_1...d_k as gcds of k x k minors (tiny matrices only).
inline mpz_class minor_gcd(const torhom::IMatrix& a, int k) {
  std::vector<int> ri(k), ci(k);
  mpz_class g = 0;
  std::vector<int> rsel, csel;
  // iterate k-subsets of rows and columns
  std::vector<int> rcomb(k), ccomb(k);
  for (int i = 0; i < k; ++i) rcomb[i] = i;
  auto next_comb = [](std::vector<int>& c, int n) {
    int k2 = static_cast<int>(c.size());
    for (int i = k2 - 1; i >= 0; --i) {
      if (c[i] < n - k2 + i) {
        ++c[i];
        for (int j = i + 1; j < k2; ++j) c[j] = c[j - 1] + 1;
        return true;
      }
    }
    return false;
  };
  do {
    for (int i = 0; i < k; ++i) ccomb[i] = i;
    do {
      torhom::IMatrix sub(k, k);
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) sub.at(i, j) = a.at(rcomb[i], ccomb[j]);
      mpz_class det = torhom::determinant(sub);
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), det.get_mpz_t());
    } while (next_comb(ccomb, a.cols()));
  } while (next_comb(rcomb, a.rows()));
  return g;
}

inline std::vector<mpz_class> minor_invariant_factors(const torhom::IMatrix& a) {
  std::vector<mpz_class> out;
  mpz_class prev = 1;
  for (int k = 1; k <= std::min(a.rows(), a.cols()); ++k) {
    mpz_class g = minor_gcd(a, k);
    if (g == 0) break;
    out.push_back(g / prev);
    prev = g;
  }
  return out;
}

// Order of the abstract Coxeter group of a subdiagram by enumerating its own
// reflection representation (built from the restricted Cartan matrix).
inline std::uint64_t abstract_order_by_enumeration(const torhom::CoxeterDiagram& d, std::uint32_t mask,
                                                   std::uint64_t cap = 2000000) {
  std::vector<int> nodes;
  for (int i = 0; i < d.n; ++i)
    if (mask & (1u << i)) nodes.push_back(i);
  const int n = static_cast<int>(nodes.size());
  if (n == 0) return 1;
  using Mat = std::vector<long long>;
  auto mult = [n](const Mat& x, const Mat& y) {
    Mat z(n * n, 0);
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k)
        if (x[i * n + k])
          for (int j = 0; j < n; ++j) z[i * n + j] += x[i * n + k] * y[k * n + j];
    return z;
  };
  std::vector<Mat> gens;
  for (int gi = 0; gi < n; ++gi) {
    Mat m(n * n, 0);
    for (int i = 0; i < n; ++i) m[i * n + i] = 1;
    for (int j = 0; j < n; ++j) m[gi * n + j] -= d.cartan[nodes[gi]][nodes[j]];
    gens.push_back(m);
  }
  Mat id(n * n, 0);
  for (int i = 0; i < n; ++i) id[i * n + i] = 1;
  std::set<Mat> seen{id};
  std::vector<Mat> frontier{id};
  while (!frontier.empty()) {
    std::vector<Mat> next;
    for (const auto& x : frontier)
      for (const auto& g : gens) {
        Mat y = mult(x, g);
        if (seen.insert(y).second) {
          next.push_back(y);
          if (seen.size() > cap) return cap + 1;
        }
      }
    frontier = std::move(next);
  }
  return seen.size();
}

}  // namespace oracle
