#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "torhom/snf.hpp"

using namespace torhom;

namespace {

IMatrix from_rows(const std::vector<std::vector<long>>& rows) {
  IMatrix m(static_cast<int>(rows.size()), rows.empty() ? 0 : static_cast<int>(rows[0].size()));
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) m.at(i, j) = rows[i][j];
  return m;
}

IMatrix random_matrix(std::mt19937& rng, int rows, int cols, int span) {
  std::uniform_int_distribution<int> d(-span, span);
  IMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m.at(i, j) = d(rng);
  return m;
}

}  // namespace

TEST_CASE("smith normal form of the identity") {
  auto snf = smith_normal_form(IMatrix::identity(4));
  CHECK(snf.rank() == 4);
  for (const auto& d : snf.diag) CHECK(d == 1);
  CHECK(snf_postconditions_hold(IMatrix::identity(4), snf));
}

TEST_CASE("smith normal form of zero and empty matrices") {
  auto z = smith_normal_form(IMatrix(3, 2));
  CHECK(z.rank() == 0);
  CHECK(snf_postconditions_hold(IMatrix(3, 2), z));
  auto e = smith_normal_form(IMatrix(0, 5));
  CHECK(e.rank() == 0);
  CHECK(snf_postconditions_hold(IMatrix(0, 5), e));
}

TEST_CASE("worked 2x2 example") {
  IMatrix a = from_rows({{2, 4}, {6, 8}});
  auto snf = smith_normal_form(a);
  REQUIRE(snf.rank() == 2);
  CHECK(snf.diag[0] == 2);
  CHECK(snf.diag[1] == 4);
  CHECK(snf_postconditions_hold(a, snf));
}

TEST_CASE("postconditions on random matrices up to 60x60") {
  std::mt19937 rng(20240811);
  for (int trial = 0; trial < 25; ++trial) {
    int rows = 1 + static_cast<int>(rng() % 60);
    int cols = 1 + static_cast<int>(rng() % 60);
    IMatrix a = random_matrix(rng, rows, cols, 9);
    auto snf = smith_normal_form(a);
    std::string why;
    REQUIRE_MESSAGE(snf_postconditions_hold(a, snf, &why), why);
  }
}

TEST_CASE("agrees with the elementary-operations oracle on small matrices") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    int rows = 1 + static_cast<int>(rng() % 8);
    int cols = 1 + static_cast<int>(rng() % 8);
    IMatrix a = random_matrix(rng, rows, cols, 9);
    auto snf = smith_normal_form(a);
    auto expect = oracle::naive_invariant_factors(a);
    std::vector<mpz_class> got = snf.diag;
    REQUIRE(got.size() == expect.size());
    for (std::size_t i = 0; i < got.size(); ++i) CHECK(got[i] == expect[i]);
  }
}

TEST_CASE("agrees with the minor-gcd oracle on tiny matrices") {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 60; ++trial) {
    int n = 1 + static_cast<int>(rng() % 4);
    IMatrix a = random_matrix(rng, n, n, 6);
    auto snf = smith_normal_form(a);
    auto expect = oracle::minor_invariant_factors(a);
    REQUIRE(snf.diag.size() == expect.size());
    for (std::size_t i = 0; i < expect.size(); ++i) CHECK(snf.diag[i] == expect[i]);
  }
}

TEST_CASE("integer solve") {
  IMatrix a = from_rows({{2, 0}, {0, 3}});
  IMatrix b(2, 1);
  b.at(0, 0) = 4;
  b.at(1, 0) = 9;
  auto x = solve_integer(a, b);
  REQUIRE(x.has_value());
  CHECK((*x)[0] == 2);
  CHECK((*x)[1] == 3);
  b.at(0, 0) = 3;  // 2x = 3 has no integer solution
  CHECK(!solve_integer(a, b).has_value());
}

TEST_CASE("one-free criterion") {
  IMatrix d110(3, 3);
  d110.at(0, 0) = 1;
  d110.at(1, 1) = 1;
  CHECK(is_one_free(d110));
  IMatrix two(1, 1);
  two.at(0, 0) = 2;
  CHECK(!is_one_free(two));
  // invariance under unimodular change of basis
  IMatrix u = from_rows({{1, 1, 0}, {0, 1, 0}, {3, 0, 1}});
  IMatrix v = from_rows({{1, 0, -2}, {0, 1, 5}, {0, 0, 1}});
  CHECK(is_one_free(u * d110 * v));
}

TEST_CASE("determinant by fraction-free elimination") {
  CHECK(determinant(IMatrix::identity(5)) == 1);
  IMatrix a = from_rows({{2, 4}, {6, 8}});
  CHECK(determinant(a) == -8);
  IMatrix s = from_rows({{0, 1}, {1, 0}});
  CHECK(determinant(s) == -1);
}
