#include <catch2/catch_amalgamated.hpp>

#include "support.hpp"

using namespace formalat;
using support::generated;

TEST_CASE("Schmidt subgroups of S4") {
  GroupContext ctx(Lattice::build(families::symmetric(4)));
  const auto found = schmidt_subgroups(ctx);
  REQUIRE(found.size() == 5);
  std::size_t s3 = 0, a4 = 0;
  for (auto id : found) {
    const auto order = ctx.lattice().at(id).order;
    if (order == 6) ++s3;
    if (order == 12) ++a4;
    const auto s = schmidt_structure(ctx, id);
    REQUIRE(s);
    CHECK(s->classical_shape);
    CHECK(s->abelian_sylows());
  }
  CHECK(s3 == 4);
  CHECK(a4 == 1);
  CHECK_FALSE(is_schmidt(ctx, ctx.lattice().top()));
}

TEST_CASE("Schmidt structure") {
  struct Case {
    const char* id;
    std::uint64_t p, q;
    bool abelian;
  };
  for (const Case& c : {Case{"S3", 3, 2, true}, Case{"A4", 2, 3, true}, Case{"SL2_3", 2, 3, false},
                        Case{"C7xC3", 7, 3, true}, Case{"C5^2xC3", 5, 3, true}, Case{"C2^2xC9", 2, 3, true},
                        Case{"C3xC8", 3, 2, true}, Case{"C2^3xC7", 2, 7, true}, Case{"C13xC3", 13, 3, true}}) {
    INFO(c.id);
    GroupContext ctx(Lattice::build(support::corpus_group(c.id)));
    const auto s = schmidt_structure(ctx, ctx.lattice().top());
    REQUIRE(s);
    CHECK(s->p == c.p);
    CHECK(s->q == c.q);
    CHECK(s->abelian_sylows() == c.abelian);
    CHECK(s->classical_shape);
  }
  for (const char* id : {"C12", "Q8", "A5", "S4", "D12", "C5xC4", "S3xC3"}) {
    INFO(id);
    GroupContext ctx(Lattice::build(support::corpus_group(id)));
    CHECK_FALSE(is_schmidt(ctx, ctx.lattice().top()));
  }
}

TEST_CASE("Miller-Moreno groups") {
  for (const char* id : {"S3", "Q8", "D08", "C7xC3"}) {
    GroupContext ctx(Lattice::build(support::corpus_group(id)));
    CHECK(is_miller_moreno(ctx, ctx.lattice().top()));
  }
  for (const char* id : {"C06", "S4", "D12", "A4xC2"}) {
    GroupContext ctx(Lattice::build(support::corpus_group(id)));
    CHECK_FALSE(is_miller_moreno(ctx, ctx.lattice().top()));
  }
}

TEST_CASE("critical subgroups for other formations") {
  GroupContext ctx(Lattice::build(families::alternating(5)));
  const auto soluble_critical = f_critical_subgroups(ctx, Formation::soluble());
  REQUIRE(soluble_critical.size() == 1);
  CHECK(soluble_critical.front() == ctx.lattice().top());
  // maximal-subgroup test and full audit agree for hereditary formations
  for (auto id : ctx.lattice().ids()) {
    CHECK(is_f_critical(ctx, Formation::nilpotent(), id) == is_f_critical(ctx, Formation::nilpotent(), id, true));
  }
}
