#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "torhom/homology.hpp"
#include "torhom/report.hpp"
#include "torhom/serialization.hpp"

using namespace torhom;

TEST_CASE("complex round trip preserves cells, boundaries and homology") {
  auto ctx = make_group_context(parse_type_tag("A~2"));
  ChainComplex c = build_toric_complex(ctx);
  std::string text = complex_to_json(c);
  ChainComplex back = complex_from_json(text);

  CHECK(back.name == c.name);
  CHECK(back.type_tag == "A~2");
  CHECK(back.construction == "toric");
  REQUIRE(back.top_degree() == c.top_degree());
  for (int k = 0; k <= c.top_degree(); ++k) {
    REQUIRE(back.dim(k) == c.dim(k));
    CHECK(IMatrix::from_sparse(back.boundary[k]) == IMatrix::from_sparse(c.boundary[k]));
    for (int i = 0; i < c.dim(k); ++i) {
      CHECK(back.cells[k][i].element == c.cells[k][i].element);
      CHECK(back.cells[k][i].gamma == c.cells[k][i].gamma);
    }
  }
  ComplexHomology h1(std::make_shared<ChainComplex>(c));
  ComplexHomology h2(std::make_shared<ChainComplex>(back));
  for (int k = 0; k <= c.top_degree(); ++k) {
    CHECK(h1.betti(k) == h2.betti(k));
    CHECK(h1.group(k).torsion == h2.group(k).torsion);
  }
}

TEST_CASE("serialization is byte stable") {
  auto ctx = make_group_context(parse_type_tag("B2"));
  ChainComplex c1 = build_salvetti_complex(ctx);
  ChainComplex c2 = build_salvetti_complex(make_group_context(parse_type_tag("B2")));
  CHECK(complex_to_json(c1) == complex_to_json(c2));
}

TEST_CASE("chain map round trip") {
  auto ctx = make_group_context(parse_type_tag("A2"));
  auto c = std::make_shared<ChainComplex>(build_salvetti_complex(ctx));
  auto q = std::make_shared<ChainComplex>(filtration_quotient(*c, FiltrationSpec{ctx->mask_of_labels({2})}));
  ChainMap j = quotient_map(c, q);
  LoadedChainMap back = chain_map_from_json(chain_map_to_json(j));
  CHECK(back.map.shift == 0);
  CHECK(back.map.is_chain_map());
  for (int d = 0; d <= c->top_degree(); ++d) CHECK(back.map.dense(d) == j.dense(d));
}

TEST_CASE("malformed input is rejected") {
  CHECK_THROWS_AS(complex_from_json("{}"), std::exception);
  CHECK_THROWS_AS(complex_from_json("{\"schema\":\"other\"}"), std::exception);
}

TEST_CASE("verification report round trip") {
  CampaignSpec spec;
  spec.types = {parse_type_tag("A1")};
  spec.suites = {"finite-salvetti"};
  VerificationReport r = run_campaign(spec);
  CHECK(r.all_passed());
  VerificationReport back = VerificationReport::from_json(r.to_json());
  CHECK(back.checks.size() == r.checks.size());
  CHECK(back.all_passed());
  CHECK(back.subjects == r.subjects);
  for (std::size_t i = 0; i < r.checks.size(); ++i) CHECK(back.checks[i].name == r.checks[i].name);
}

TEST_CASE("failed checks carry witnesses") {
  CampaignSpec spec;
  spec.types = {parse_type_tag("A2")};
  spec.suites = {"exactness"};
  VerificationReport r = run_campaign(spec);
  for (const auto& c : r.checks)
    if (!c.pass) CHECK(!c.witness.empty());
}
