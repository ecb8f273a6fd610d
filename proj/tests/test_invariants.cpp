#include <catch2/catch_amalgamated.hpp>

#include "support.hpp"

using namespace formalat;
using support::generated;

namespace {

PrimePartition sigma(const char* s) { return PrimePartition::parse(s); }

}  // namespace

TEST_CASE("prime partitions") {
  const auto p = sigma("2,3|5|*");
  CHECK(p.block_of(2) == p.block_of(3));
  CHECK(p.block_of(5) != p.block_of(2));
  CHECK(p.block_of(7) == PrimePartition::kRest);
  CHECK(p.to_string() == "2,3|5|*");
  CHECK(sigma("finest").is_finest());
  CHECK(sigma("*").blocks().empty());
  CHECK_THROWS_AS(sigma("2,3|3"), ParseError);
  CHECK_THROWS_AS(sigma("2,4"), ParseError);
  CHECK_THROWS_AS(sigma("2|*|*"), ParseError);
  CHECK(partition_leq(PrimePartition::finest(), p, {2, 3, 5}));
  CHECK_FALSE(partition_leq(p, PrimePartition::finest(), {2, 3, 5}));
}

TEST_CASE("group-level predicates") {
  const auto s4 = CayleyTable::from_perm_group(families::symmetric(4));
  const auto a5 = CayleyTable::from_perm_group(families::alternating(5));
  const auto q8 = CayleyTable::from_perm_group(families::dicyclic(8));
  CHECK_FALSE(is_abelian(s4));
  CHECK(is_abelian(CayleyTable::from_perm_group(families::elementary_abelian(2, 3))));
  CHECK(is_nilpotent(q8));
  CHECK_FALSE(is_abelian(q8));
  CHECK_FALSE(is_nilpotent(s4));
  CHECK(is_soluble(s4));
  CHECK_FALSE(is_soluble(a5));
  CHECK(derived_series(s4).size() == 4);  // S4 > A4 > V4 > 1
  CHECK(prime_set(a5) == PrimeSet{2, 3, 5});
  CHECK(is_sigma_primary(s4, sigma("2,3|*")));
  CHECK_FALSE(is_sigma_primary(s4, PrimePartition::finest()));
  CHECK(is_sigma_nilpotent(s4, sigma("2,3|*")));
  CHECK_FALSE(is_sigma_nilpotent(s4, sigma("2|3|*")));
  CHECK(is_sigma_nilpotent(a5, PrimePartition::one_block()));
}

TEST_CASE("fitting subgroups") {
  const Lattice s4 = Lattice::build(families::symmetric(4));
  const auto v4 = generated(s4, 4, {"(1 2)(3 4)", "(1 3)(2 4)"});
  CHECK(fitting(s4) == v4);
  CHECK(sigma_fitting(s4, PrimePartition::finest()) == v4);
  CHECK(sigma_fitting(s4, sigma("2,3|*")) == s4.top());
  CHECK(sigma_fitting(s4, PrimePartition::one_block()) == s4.top());
  const Lattice s3 = Lattice::build(families::symmetric(3));
  CHECK(s3.at(fitting(s3)).order == 3);
  const Lattice a5 = Lattice::build(families::alternating(5));
  CHECK(fitting(a5) == a5.trivial());
}

TEST_CASE("largest normal sigma_i-subgroups") {
  const Lattice s4 = Lattice::build(families::symmetric(4));
  const auto p = sigma("2|3|*");
  CHECK(o_sigma(s4, p, p.block_of(2)) == generated(s4, 4, {"(1 2)(3 4)", "(1 3)(2 4)"}));
  CHECK(o_sigma(s4, p, p.block_of(3)) == s4.trivial());
  const auto q = sigma("2,3|*");
  CHECK(o_sigma(s4, q, q.block_of(2)) == s4.top());
}

TEST_CASE("sylow and hall subgroups") {
  const Lattice s4 = Lattice::build(families::symmetric(4));
  CHECK(s4.at(sylow(s4, 2)).order == 8);
  CHECK(s4.at(sylow(s4, 3)).order == 3);
  CHECK_THROWS_AS(sylow(s4, 4), DomainError);
  const Lattice s3 = Lattice::build(families::symmetric(3));
  CHECK(hall(s3, {2, 3}) == s3.top());
  const Lattice a5 = Lattice::build(families::alternating(5));
  CHECK_FALSE(hall(a5, {2, 5}).has_value());
  CHECK(hall(a5, {2, 3}).has_value());
  CHECK(a5.at(sylow(a5, 5)).order == 5);
}

TEST_CASE("chief series and sigma-solubility") {
  const Lattice s4 = Lattice::build(families::symmetric(4));
  const auto cs = chief_series(s4);
  REQUIRE(cs.factors.size() == 3);
  CHECK(cs.factors[0].order == 4);
  CHECK(cs.factors[1].order == 3);
  CHECK(cs.factors[2].order == 2);
  CHECK(is_sigma_soluble(s4, PrimePartition::finest()));

  const Lattice a5 = Lattice::build(families::alternating(5));
  CHECK_FALSE(is_sigma_soluble(a5, PrimePartition::finest()));
  CHECK_FALSE(is_sigma_soluble(a5, sigma("2,3|*")));
  CHECK(is_sigma_soluble(a5, sigma("2,3,5|*")));

  // the factor orders do not depend on which minimal normal subgroup is taken
  const Lattice e = Lattice::build(families::direct_product(families::symmetric(3), families::symmetric(3)));
  const auto lo = chief_series(e, TieBreak::Lowest);
  const auto hi = chief_series(e, TieBreak::Highest);
  std::multiset<std::uint64_t> a, b;
  for (auto& f : lo.factors) a.insert(f.order);
  for (auto& f : hi.factors) b.insert(f.order);
  CHECK(a == b);
}

TEST_CASE("sigma-metanilpotency") {
  CHECK_FALSE(is_sigma_metanilpotent(Lattice::build(families::symmetric(4)), PrimePartition::finest()));
  CHECK(is_sigma_metanilpotent(Lattice::build(families::symmetric(3)), PrimePartition::finest()));
  CHECK(is_sigma_metanilpotent(Lattice::build(families::dicyclic(8)), PrimePartition::finest()));
  CHECK(is_sigma_metanilpotent(Lattice::build(families::symmetric(4)), sigma("2,3|*")));
}
