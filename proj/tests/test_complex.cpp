#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "torhom/complex.hpp"

using namespace torhom;

namespace {

long long coeff(const ChainComplex& c, int deg, int row, int col) {
  for (const auto& t : c.boundary[deg].entries)
    if (t.row == row && t.col == col) return t.val;
  return 0;
}

}  // namespace

TEST_CASE("A1 salvetti complex, hand-expanded boundary") {
  auto ctx = make_group_context(parse_type_tag("A1"));
  ChainComplex c = build_salvetti_complex(ctx);
  REQUIRE(c.dim(0) == 2);
  REQUIRE(c.dim(1) == 2);

  int e = ctx->group->identity();
  int s1 = ctx->group->generator(0);
  int v_e = c.find(0, 0, e, 0);
  int v_s = c.find(0, 0, s1, 0);
  int edge_e = c.find(1, 0, e, 1);
  int edge_s = c.find(1, 0, s1, 1);
  REQUIRE(v_e >= 0);
  REQUIRE(edge_e >= 0);

  // boundary of E(e, {s1}) is -E(e) + E(s1); of E(s1, {s1}) is -E(s1) + E(e)
  CHECK(coeff(c, 1, v_e, edge_e) == -1);
  CHECK(coeff(c, 1, v_s, edge_e) == 1);
  CHECK(coeff(c, 1, v_s, edge_s) == -1);
  CHECK(coeff(c, 1, v_e, edge_s) == 1);
}

TEST_CASE("cell counts and euler characteristics") {
  auto a2 = build_salvetti_complex(make_group_context(parse_type_tag("A2")));
  CHECK(a2.dim(0) == 6);
  CHECK(a2.dim(1) == 12);
  CHECK(a2.dim(2) == 6);
  CHECK(a2.euler_characteristic() == 0);

  auto a3 = build_salvetti_complex(make_group_context(parse_type_tag("A3")));
  CHECK(a3.total_cells() == 192);

  auto t1 = build_toric_complex(make_group_context(parse_type_tag("A~1")));
  CHECK(t1.dim(0) == 2);
  CHECK(t1.dim(1) == 4);
  CHECK(t1.euler_characteristic() == -2);

  auto t2 = build_toric_complex(make_group_context(parse_type_tag("A~2")));
  CHECK(t2.total_cells() == 42);
  CHECK(t2.euler_characteristic() == 6);

  auto g2 = build_toric_complex(make_group_context(parse_type_tag("G~2")));
  CHECK(g2.total_cells() == 84);
  CHECK(g2.euler_characteristic() == 12);
}

TEST_CASE("every toric A~1 edge joins the two classes") {
  auto t1 = build_toric_complex(make_group_context(parse_type_tag("A~1")));
  for (int col = 0; col < t1.dim(1); ++col) {
    long long on0 = coeff(t1, 1, 0, col);
    long long on1 = coeff(t1, 1, 1, col);
    CHECK(on0 * on1 == -1);  // one endpoint each, opposite orientation
  }
}

TEST_CASE("boundary squares to zero across supported types") {
  for (const char* t : {"A1", "A2", "A3", "B2", "B3", "C3", "G2", "F4", "D4"}) {
    ChainComplex c = build_salvetti_complex(make_group_context(parse_type_tag(t)));
    std::string why;
    CHECK_MESSAGE(boundary_squares_to_zero(c, &why), t << ": " << why);
  }
  for (const char* t : {"A~1", "A~2", "A~3", "C~2", "C~3", "G~2", "B~3"}) {
    ChainComplex c = build_toric_complex(make_group_context(parse_type_tag(t)));
    std::string why;
    CHECK_MESSAGE(boundary_squares_to_zero(c, &why), t << ": " << why);
  }
}

TEST_CASE("both mu conventions build the same complex") {
  auto ctx = make_group_context(parse_type_tag("B~3"));
  ComplexBuildOptions a, b;
  a.mu = MuConvention::Index;
  b.mu = MuConvention::Position;
  ChainComplex ca = build_toric_complex(ctx, a);
  ChainComplex cb = build_toric_complex(ctx, b);
  for (int k = 1; k <= ca.top_degree(); ++k)
    CHECK(IMatrix::from_sparse(ca.boundary[k]) == IMatrix::from_sparse(cb.boundary[k]));
}

TEST_CASE("filtration quotients") {
  auto ctx = make_group_context(parse_type_tag("A2"));
  auto c = build_salvetti_complex(ctx);

  // empty requirement: the identity quotient
  ChainComplex q0 = filtration_quotient(c, FiltrationSpec{0});
  CHECK(q0.total_cells() == c.total_cells());
  for (int k = 1; k <= c.top_degree(); ++k)
    CHECK(IMatrix::from_sparse(q0.boundary[k]) == IMatrix::from_sparse(c.boundary[k]));

  // full requirement: only top cells, zero boundary
  ChainComplex qf = filtration_quotient(c, FiltrationSpec{ctx->full_mask()});
  CHECK(qf.total_cells() == 6);
  CHECK(qf.dim(2) == 6);
  CHECK(qf.boundary[2].entries.empty());

  // require s2
  ChainComplex q2 = filtration_quotient(c, FiltrationSpec{ctx->mask_of_labels({2})});
  CHECK(q2.total_cells() == 12);
  CHECK(q2.dim(1) == 6);
  CHECK(q2.dim(2) == 6);
}

TEST_CASE("toric filtration stage of the general two-parameter kind") {
  // cells whose Gamma contains {s0} u {s3}: the mixed required set
  auto ctx = make_group_context(parse_type_tag("A~3"));
  auto t = build_toric_complex(ctx);
  std::uint32_t req = ctx->mask_of_labels({0, 3});
  ChainComplex stage = filtration_quotient(t, FiltrationSpec{req});
  for (int k = 0; k <= stage.top_degree(); ++k)
    for (const Cell& cell : stage.cells[k]) CHECK((cell.gamma & req) == req);
  // degree j count: |W| * C(m+1-2, j-2) over the remaining generators
  CHECK(stage.dim(2) == 24);
  CHECK(stage.dim(3) == 48);
  std::string why;
  CHECK_MESSAGE(boundary_squares_to_zero(stage, &why), why);
}

TEST_CASE("builder guards") {
  CHECK_THROWS_AS(build_salvetti_complex(make_group_context(parse_type_tag("A~2"))), UsageError);
  CHECK_THROWS_AS(build_toric_complex(make_group_context(parse_type_tag("A2"))), UsageError);
  ComplexBuildOptions tiny;
  tiny.max_cells = 10;
  CHECK_THROWS_AS(build_salvetti_complex(make_group_context(parse_type_tag("A3")), tiny), UsageError);
}

TEST_CASE("direct sums") {
  auto ctx = make_group_context(parse_type_tag("A1"));
  auto c = build_salvetti_complex(ctx);
  ChainComplex s = direct_sum(c, 3);
  CHECK(s.dim(0) == 6);
  CHECK(s.dim(1) == 6);
  CHECK(s.copies == 3);
  std::string why;
  CHECK(boundary_squares_to_zero(s, &why));
  CHECK(s.find(0, 2, ctx->group->identity(), 0) >= 0);
}
