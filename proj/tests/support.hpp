#pragma once

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "formalat.hpp"
#include "oracles.hpp"

namespace support {

inline formalat::PermGroup corpus_group(const std::string& id) {
  for (auto& e : formalat::builtin_corpus()) {
    if (e.id == id) return e.group;
  }
  throw std::runtime_error("no corpus group " + id);
}

inline formalat::PermGroup group_of(std::size_t degree, std::initializer_list<const char*> cycles) {
  std::vector<formalat::Perm> gens;
  for (const char* c : cycles) gens.push_back(formalat::Perm::from_cycles(degree, c));
  return formalat::PermGroup(degree, std::move(gens));
}

inline oracle::Group oracle_group(const formalat::PermGroup& g) {
  std::vector<oracle::P> gens;
  for (const auto& p : g.generators()) gens.push_back(p.images0());
  return oracle::Group(gens, g.degree());
}

/// A lattice subgroup as oracle element indices.
inline oracle::Set to_oracle(const formalat::Lattice& lat, formalat::SubgroupId id, const oracle::Group& og) {
  const auto& perms = *lat.table().perms();
  oracle::Set out;
  lat.at(id).elements.for_each([&](std::size_t x) {
    const auto& img = perms[x].images0();
    out.push_back(static_cast<int>(std::lower_bound(og.elems.begin(), og.elems.end(), img) - og.elems.begin()));
  });
  std::sort(out.begin(), out.end());
  return out;
}

/// Id of the lattice subgroup generated by the given cycle strings.
inline formalat::SubgroupId generated(const formalat::Lattice& lat, std::size_t degree,
                                      std::initializer_list<const char*> cycles) {
  const auto& perms = *lat.table().perms();
  std::vector<formalat::Elem> gens;
  for (const char* c : cycles) {
    const auto p = formalat::Perm::from_cycles(degree, c);
    gens.push_back(static_cast<formalat::Elem>(std::find(perms.begin(), perms.end(), p) - perms.begin()));
  }
  return lat.generated_by(gens);
}

inline oracle::Block finest() {
  return [](std::uint64_t p) { return p; };
}

inline oracle::Block blocks(std::vector<std::vector<std::uint64_t>> bs) {
  return [bs](std::uint64_t p) -> std::uint64_t {
    for (std::size_t i = 0; i < bs.size(); ++i) {
      if (std::find(bs[i].begin(), bs[i].end(), p) != bs[i].end()) return i;
    }
    return 1000;
  };
}

}  // namespace support

namespace support {

struct OracleFormation {
  formalat::Formation formation;
  oracle::Test test;
};

/// Formations with an independent quotient test for the oracle search.
inline std::vector<OracleFormation> oracle_formations() {
  using formalat::Formation;
  return {
      {Formation::nilpotent(), [](const oracle::QuotientView& q) { return oracle::sigma_nilpotent(q, finest()); }},
      {Formation::parse("Nsigma:2,3|*"),
       [](const oracle::QuotientView& q) { return oracle::sigma_nilpotent(q, blocks({{2, 3}})); }},
      {Formation::parse("Nsigma:2|3,5|*"),
       [](const oracle::QuotientView& q) { return oracle::sigma_nilpotent(q, blocks({{2}, {3, 5}})); }},
      {Formation::abelian(), [](const oracle::QuotientView& q) { return oracle::abelian(q); }},
      {Formation::parse("piprime:2"), [](const oracle::QuotientView& q) { return oracle::pi_prime(q, {2}); }},
  };
}

struct PairStats {
  std::size_t pairs = 0;
  std::size_t mismatches = 0;
  std::string first_mismatch;
};

/// Engine vs oracle K-F-subnormality of A in B for every pair A ≤ B.
inline PairStats compare_k_f(const formalat::PermGroup& g, const std::vector<OracleFormation>& forms) {
  using namespace formalat;
  PairStats stats;
  const Lattice lat = Lattice::build(g);
  const auto og = oracle_group(g);
  const auto subs = oracle::all_subgroups(og);
  std::vector<oracle::Set> universe(subs.begin(), subs.end());
  std::vector<oracle::Set> as_oracle;
  for (auto id : lat.ids()) as_oracle.push_back(to_oracle(lat, id, og));
  if (universe.size() != lat.size()) {
    stats.mismatches = 1;
    stats.first_mismatch = "subgroup counts differ";
    return stats;
  }
  for (const auto& of : forms) {
    SubnormalitySearch search(lat, of.formation);
    for (auto b : lat.ids()) {
      lat.below(b).for_each([&](std::size_t i) {
        const SubgroupId a{static_cast<std::uint32_t>(i)};
        ++stats.pairs;
        const bool engine = search.decide(a, b);
        const bool brute = oracle::k_f_subnormal(og, universe, as_oracle[a.value], as_oracle[b.value], of.test);
        if (engine != brute) {
          if (stats.mismatches++ == 0) {
            stats.first_mismatch = of.formation.to_string() + " #" + std::to_string(a.value) + " in #" +
                                   std::to_string(b.value) + (engine ? " engine=yes" : " engine=no");
          }
        }
      });
    }
  }
  return stats;
}

}  // namespace support
