#include <catch2/catch_amalgamated.hpp>

#include "support.hpp"

using namespace formalat;

TEST_CASE("brute-force subgroup counts") {
  CHECK(oracle::all_subgroups(support::oracle_group(families::symmetric(3))).size() == 6);
  CHECK(oracle::all_subgroups(support::oracle_group(families::cyclic(4))).size() == 3);
  CHECK(oracle::all_subgroups(support::oracle_group(families::symmetric(4))).size() == 30);
}

TEST_CASE("brute-force chain search") {
  const auto og = support::oracle_group(families::symmetric(4));
  const auto subs = oracle::all_subgroups(og);
  const std::vector<oracle::Set> universe(subs.begin(), subs.end());
  const auto nil = support::oracle_formations().front().test;
  const oracle::Set g = og.all();
  CHECK(oracle::k_f_subnormal(og, universe, g, g, nil));

  std::vector<oracle::P> gens{Perm::from_cycles(4, "(1 2)").images0()};
  const auto t = og.close({static_cast<int>(std::lower_bound(og.elems.begin(), og.elems.end(), gens[0]) - og.elems.begin())});
  CHECK(t.size() == 2);
  CHECK_FALSE(oracle::k_f_subnormal(og, universe, t, g, nil));

  for (const auto& h : universe) {
    if (og.normal_in(h, g)) CHECK(oracle::k_f_subnormal(og, universe, h, g, nil));
  }
  CHECK(oracle::normal_closure(og, t, g).size() == 24);
}

TEST_CASE("engine agrees with the oracle on small groups") {
  for (const char* id : {"S3", "S4", "A4", "Q8", "D12", "SL2_3", "C3xC8", "E2^3", "C12"}) {
    INFO(id);
    const auto stats = support::compare_k_f(support::corpus_group(id), support::oracle_formations());
    INFO(stats.first_mismatch);
    CHECK(stats.pairs > 0);
    CHECK(stats.mismatches == 0);
  }
}
