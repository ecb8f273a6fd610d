#include <catch2/catch_amalgamated.hpp>

#include "support.hpp"

using namespace formalat;
using support::generated;

TEST_CASE("subnormal series") {
  const Lattice s4 = Lattice::build(families::symmetric(4));
  CHECK(is_subnormal(s4, s4.top()));
  CHECK(is_subnormal(s4, generated(s4, 4, {"(1 2)(3 4)"})));
  CHECK_FALSE(is_subnormal(s4, generated(s4, 4, {"(1 2)"})));
  CHECK_FALSE(is_subnormal(s4, generated(s4, 4, {"(1 2 3)"})));
}

TEST_CASE("K-N-subnormal subgroups of S4") {
  const Lattice s4 = Lattice::build(families::symmetric(4));
  const auto n = Formation::nilpotent();
  CHECK(k_f_subnormal_set(s4, n).size() == 7);
  CHECK_FALSE(is_k_f_subnormal(s4, generated(s4, 4, {"(1 2)"}), n));
  CHECK(is_k_f_subnormal(s4, s4.top(), n));
  CHECK(is_k_f_subnormal(s4, generated(s4, 4, {"(1 2 3)", "(1 2)(3 4)"}), n));
  // every subgroup is K-S-subnormal in a soluble group
  CHECK(k_f_subnormal_set(s4, Formation::soluble()).size() == 30);
}

TEST_CASE("K-N-subnormality is subnormality on the corpus") {
  for (const auto& e : builtin_corpus()) {
    if (e.group.order() > 60) continue;
    INFO(e.id);
    const Lattice lat = Lattice::build(e.group);
    SubnormalitySearch k(lat, Formation::nilpotent());
    SubnormalitySearch finest(lat, Formation::sigma_nilpotent(PrimePartition::finest()));
    for (auto a : lat.ids()) {
      const bool sub = is_subnormal(lat, a);
      CHECK(k.decide(a) == sub);
      CHECK(finest.decide(a) == sub);
    }
  }
}

TEST_CASE("witness chains") {
  const Lattice s4 = Lattice::build(families::symmetric(4));
  SubnormalitySearch search(s4, Formation::parse("Nsigma:2|3|*"));
  for (auto a : s4.ids()) {
    const auto w = search.witness(a);
    CHECK(w.has_value() == search.decide(a));
    if (!w) continue;
    CHECK(w->members.front() == a);
    CHECK(w->members.back() == s4.top());
    CHECK(search.validate(*w));
  }
  WitnessChain forged{{generated(s4, 4, {"(1 2)"}), s4.top()}, {StepKind::Normal}};
  CHECK_FALSE(search.validate(forged));
  CHECK(std::string(to_string(StepKind::FQuotient)) == "F-QUOTIENT");
}

TEST_CASE("sigma-subnormality") {
  const Lattice s4 = Lattice::build(families::symmetric(4));
  const auto t = generated(s4, 4, {"(1 2)"});
  CHECK(is_sigma_subnormal(s4, t, PrimePartition::parse("2,3|*")));
  CHECK_FALSE(is_sigma_subnormal(s4, t, PrimePartition::finest()));
  const Lattice a5 = Lattice::build(families::alternating(5));
  CHECK(k_f_subnormal_set(a5, Formation::parse("Nsigma:2,3|*")).size() == 2);
  CHECK(k_f_subnormal_set(a5, Formation::parse("Nsigma:2,3,5|*")).size() == a5.size());
}

TEST_CASE("quotient-only chains and sigma-primary steps") {
  const Lattice s4 = Lattice::build(families::symmetric(4));
  const auto odd = Formation::parse("piprime:2");
  SubnormalitySearch kegel(s4, odd);
  SubnormalitySearch plain(s4, odd, ChainRule::QuotientOnly);
  for (auto a : s4.ids()) {
    if (plain.decide(a)) CHECK(kegel.decide(a));
  }
  // every quotient on the way up to S4 has even order
  const auto v4 = generated(s4, 4, {"(1 2)(3 4)", "(1 3)(2 4)"});
  CHECK_FALSE(plain.decide(v4));
  CHECK(kegel.decide(v4));
  CHECK(plain.subnormal_set().size() == 1);

  auto primary = SubnormalitySearch::sigma_primary(s4, PrimePartition::parse("2|3|*"));
  CHECK(primary.decide(s4.top()));
  CHECK(primary.decide(generated(s4, 4, {"(1 2 3)", "(1 2)(3 4)"})));
}

TEST_CASE("K-lattice closure") {
  for (const char* id : {"S4", "A5", "S3xS3", "D24", "SL2_3"}) {
    INFO(id);
    const Lattice lat = Lattice::build(support::corpus_group(id));
    CHECK(k_lattice_check(lat, Formation::nilpotent()).ok());
    CHECK(k_lattice_check(lat, Formation::parse("Nsigma:2|3,5|*")).ok());
    CHECK(k_lattice_check(lat, Formation::abelian()).meet_closed);
  }
}

TEST_CASE("chains compose and restrict to intermediate subgroups") {
  for (const char* id : {"S4", "SL2_3", "D24", "A4xC2", "S3xS3", "C7xC3xC2"}) {
    INFO(id);
    const Lattice lat = Lattice::build(support::corpus_group(id));
    for (const auto& f : {Formation::nilpotent(), Formation::parse("Nsigma:2,3|*"), Formation::abelian()}) {
      INFO(f.to_string());
      SubnormalitySearch s(lat, f);
      for (auto b : lat.ids()) {
        if (!s.decide(b)) continue;
        lat.below(b).for_each([&](std::size_t i) {
          const SubgroupId a{static_cast<std::uint32_t>(i)};
          if (s.decide(a, b)) CHECK(s.decide(a));
        });
      }
      for (auto a : lat.ids()) {
        if (!s.decide(a)) continue;
        lat.above(a).for_each([&](std::size_t i) { CHECK(s.decide(a, SubgroupId{static_cast<std::uint32_t>(i)})); });
      }
    }
  }
}

TEST_CASE("larger formations give more K-F-subnormal subgroups") {
  // N lies in every Nsigma, A lies in N, coarser partitions give larger classes
  const std::vector<std::pair<Formation, Formation>> inclusions = {
      {Formation::nilpotent(), Formation::parse("Nsigma:2,3|*")},
      {Formation::nilpotent(), Formation::parse("Nsigma:2|3,5|*")},
      {Formation::abelian(), Formation::nilpotent()},
      {Formation::parse("Nsigma:2|3,5|*"), Formation::parse("Nsigma:2,3,5|*")},
  };
  for (const auto& e : builtin_corpus()) {
    if (e.group.order() > 120) continue;
    INFO(e.id);
    const Lattice lat = Lattice::build(e.group);
    for (const auto& [small, big] : inclusions) {
      const auto lo = k_f_subnormal_set(lat, small);
      const auto hi = k_f_subnormal_set(lat, big);
      CHECK(std::includes(hi.begin(), hi.end(), lo.begin(), lo.end()));
    }
  }
}
