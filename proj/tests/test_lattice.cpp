#include <catch2/catch_amalgamated.hpp>

#include "support.hpp"

using namespace formalat;
using support::generated;

TEST_CASE("subgroup counts") {
  CHECK(Lattice::build(families::symmetric(3)).size() == 6);
  CHECK(Lattice::build(families::cyclic(4)).size() == 3);
  CHECK(Lattice::build(families::symmetric(4)).size() == 30);
  CHECK(Lattice::build(families::alternating(5)).size() == 59);
  CHECK(Lattice::build(families::dicyclic(8)).size() == 6);
  CHECK(Lattice::build(families::cyclic(1)).size() == 1);
}

TEST_CASE("ids run from trivial to whole group") {
  const Lattice lat = Lattice::build(families::symmetric(4));
  CHECK(lat.at(lat.trivial()).order == 1);
  CHECK(lat.at(lat.top()).order == 24);
  for (std::size_t i = 1; i < lat.size(); ++i) {
    CHECK(lat.at(SubgroupId{static_cast<std::uint32_t>(i - 1)}).order <= lat.at(SubgroupId{static_cast<std::uint32_t>(i)}).order);
  }
}

TEST_CASE("maximal subgroups and chains") {
  const Lattice s4 = Lattice::build(families::symmetric(4));
  CHECK(s4.maximal_subgroups().size() == 8);
  const Lattice q8 = Lattice::build(families::dicyclic(8));
  CHECK(q8.maximal_subgroups().size() == 3);
  const Lattice s3 = Lattice::build(families::symmetric(3));
  const auto chains = s3.maximal_chains(2);
  CHECK(chains.size() == 4);
  for (const auto& c : chains) CHECK(c.members.back() == s3.trivial());
  CHECK(Lattice::build(families::cyclic(7)).maximal_chains(2).empty());
}

TEST_CASE("normality, core and normal closure in S4") {
  const Lattice lat = Lattice::build(families::symmetric(4));
  CHECK(lat.normal_subgroups().size() == 4);
  const auto s3 = generated(lat, 4, {"(1 2 3)", "(1 2)"});
  CHECK(lat.core(s3) == lat.trivial());
  CHECK(lat.core(lat.top()) == lat.top());
  const auto v4 = generated(lat, 4, {"(1 2)(3 4)", "(1 3)(2 4)"});
  CHECK(lat.core(v4) == v4);
  CHECK(lat.normal_closure(generated(lat, 4, {"(1 2)"})) == lat.top());
  CHECK(lat.at(lat.normal_closure(generated(lat, 4, {"(1 2 3)"}))).order == 12);
  CHECK(lat.normal_closure(v4) == v4);
}

TEST_CASE("join, meet and frattini") {
  const Lattice s3 = Lattice::build(families::symmetric(3));
  const auto a = generated(s3, 3, {"(1 2)"});
  const auto b = generated(s3, 3, {"(1 3)"});
  CHECK(s3.join(a, b) == s3.top());
  CHECK(s3.join(a, a) == a);
  CHECK(s3.meet(a, a) == a);
  CHECK(s3.meet(a, b) == s3.trivial());

  const Lattice s4 = Lattice::build(families::symmetric(4));
  const auto a4 = generated(s4, 4, {"(1 2 3)", "(1 2)(3 4)"});
  const auto d8 = generated(s4, 4, {"(1 2 3 4)", "(1 3)"});
  CHECK(s4.meet(a4, d8) == generated(s4, 4, {"(1 2)(3 4)", "(1 3)(2 4)"}));
  CHECK(s4.frattini() == s4.trivial());

  const Lattice c4 = Lattice::build(families::cyclic(4));
  CHECK(c4.at(c4.frattini()).order == 2);
  const Lattice c1 = Lattice::build(families::cyclic(1));
  CHECK(c1.frattini() == c1.top());
}

TEST_CASE("conjugacy classes of subgroups") {
  const Lattice s4 = Lattice::build(families::symmetric(4));
  CHECK(s4.conjugates(generated(s4, 4, {"(1 2 3)", "(1 2)"})).size() == 4);
  CHECK(s4.conjugates(generated(s4, 4, {"(1 2 3 4)", "(1 3)"})).size() == 3);
  CHECK(s4.conjugates(s4.top()).size() == 1);
}

TEST_CASE("interval lattice maps back") {
  const Lattice s4 = Lattice::build(families::symmetric(4));
  const auto a4 = generated(s4, 4, {"(1 2 3)", "(1 2)(3 4)"});
  const auto iv = s4.interval(a4);
  CHECK(iv.lattice.size() == 10);
  CHECK(iv.lift(iv.lattice.top()) == a4);
  CHECK(iv.lift(iv.lattice.trivial()) == s4.trivial());
  CHECK(iv.lift(iv.lattice.at(iv.lattice.top()).elements) == s4.at(a4).elements);
}

TEST_CASE("subgroup cap") {
  Caps caps;
  caps.subgroups = 20;
  CHECK_THROWS_AS(Lattice::build(families::symmetric(4), caps), CapExceeded);
}

TEST_CASE("lattice agrees with brute-force enumeration up to order 24") {
  std::size_t groups = 0;
  for (const auto& e : builtin_corpus()) {
    if (e.group.order() > 24) continue;
    INFO(e.id);
    const Lattice lat = Lattice::build(e.group);
    const auto og = support::oracle_group(e.group);
    const auto expected = oracle::all_subgroups(og);
    std::set<oracle::Set> got;
    for (auto id : lat.ids()) got.insert(support::to_oracle(lat, id, og));
    CHECK(got == expected);
    ++groups;
  }
  CHECK(groups >= 40);
}
