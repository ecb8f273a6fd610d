#include <catch2/catch_amalgamated.hpp>

#include "support.hpp"

using namespace formalat;
using support::generated;

TEST_CASE("formation descriptors") {
  CHECK(Formation::parse("N") == Formation::nilpotent());
  CHECK(Formation::parse("Nsigma:2,3|*").to_string() == "Nsigma:2,3|*");
  CHECK(Formation::parse("piprime:5,2").to_string() == "piprime:2,5");
  CHECK(Formation::parse("A").kind() == FormationKind::Abelian);
  CHECK(Formation::parse("S").kind() == FormationKind::Soluble);
  CHECK(Formation::parse("all").kind() == FormationKind::All);
  CHECK_THROWS_AS(Formation::parse("Q"), ParseError);
  CHECK_THROWS_AS(Formation::parse("piprime:4"), ParseError);
  CHECK_THROWS_AS(Formation::parse("piprime:"), ParseError);
  CHECK_THROWS_AS(Formation::parse("Nsigma:2|2"), ParseError);
}

TEST_CASE("flag table") {
  CHECK(Formation::nilpotent().meets_theorem_hypotheses());
  CHECK(Formation::soluble().meets_theorem_hypotheses());
  CHECK(Formation::all().meets_theorem_hypotheses());
  CHECK_FALSE(Formation::abelian().meets_theorem_hypotheses());
  CHECK_FALSE(Formation::abelian().flags().saturated);
  CHECK_FALSE(Formation::pi_prime({2}).meets_theorem_hypotheses());
  CHECK(Formation::pi_prime({2}).flags().saturated);
}

TEST_CASE("membership") {
  const auto s3 = CayleyTable::from_perm_group(families::symmetric(3));
  const auto c15 = CayleyTable::from_perm_group(families::cyclic(15));
  CHECK_FALSE(Formation::nilpotent().member(s3));
  CHECK(Formation::parse("Nsigma:2,3|*").member(s3));
  CHECK(Formation::parse("piprime:2").member(c15));
  CHECK_FALSE(Formation::parse("piprime:3").member(c15));
  CHECK(Formation::soluble().member(s3));
  CHECK_FALSE(Formation::soluble().member(CayleyTable::from_perm_group(families::alternating(5))));
}

TEST_CASE("partitions attached to formations") {
  CHECK(sigma_n_of(Formation::nilpotent())->is_finest());
  CHECK(sigma_n_of(Formation::parse("Nsigma:2|3,5|*")) == PrimePartition::parse("2|3,5|*"));
  CHECK_FALSE(sigma_n_of(Formation::soluble()).has_value());
  const auto s = sigma_s_of(Formation::parse("Nsigma:2,3|*"));
  REQUIRE(s);
  CHECK(s->upper_bound);
  CHECK_FALSE(sigma_s_of(Formation::nilpotent())->upper_bound);
  CHECK_FALSE(sigma_s_of(Formation::abelian()).has_value());
}

TEST_CASE("residuals and radicals") {
  const Lattice s4 = Lattice::build(families::symmetric(4));
  const auto a4 = generated(s4, 4, {"(1 2 3)", "(1 2)(3 4)"});
  const auto v4 = generated(s4, 4, {"(1 2)(3 4)", "(1 3)(2 4)"});
  CHECK(residual(s4, Formation::nilpotent()).residual == a4);
  CHECK(residual(s4, Formation::abelian()).residual == a4);
  CHECK(residual(s4, Formation::soluble()).residual == s4.trivial());
  CHECK(residual(s4, Formation::parse("Nsigma:2,3|*")).residual == s4.trivial());
  CHECK(radical(s4, Formation::nilpotent()) == v4);
  CHECK(radical(s4, Formation::all()) == s4.top());
  CHECK(radical(s4, Formation::parse("piprime:2")) == s4.trivial());

  const Lattice a5 = Lattice::build(families::alternating(5));
  CHECK(residual(a5, Formation::nilpotent()).residual == a5.top());
  const Lattice q8 = Lattice::build(families::dicyclic(8));
  CHECK(residual(q8, Formation::nilpotent()).residual == q8.trivial());
  CHECK(q8.at(residual(q8, Formation::abelian()).residual).order == 2);
}
