#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "formalat/element_set.hpp"
#include "formalat/error.hpp"
#include "formalat/lattice.hpp"
#include "formalat/partition.hpp"
#include "formalat/table.hpp"

namespace formalat {

inline PrimeSet prime_set(const CayleyTable& t) { return prime_divisors(t.order()); }

inline bool is_abelian(const CayleyTable& t) {
  const auto& g = t.generators();
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (std::size_t j = i + 1; j < g.size(); ++j) {
      if (t.mul(g[i], g[j]) != t.mul(g[j], g[i])) return false;
    }
  }
  return true;
}

/// All prime divisors of |G| in one σ-block. The trivial group counts.
inline bool is_sigma_primary(const CayleyTable& t, const PrimePartition& sigma) {
  return sigma.same_block(prime_set(t));
}

/// σ-nilpotency: for each block meeting π(G), the elements whose order
/// involves only primes of that block form a subgroup, and the orders of
/// these subgroups multiply to |G|.
inline bool is_sigma_nilpotent(const CayleyTable& t, const PrimePartition& sigma) {
  const PrimeSet primes = prime_set(t);
  std::uint64_t product = 1;
  for (auto block : sigma.blocks_meeting(primes)) {
    std::vector<Elem> members;
    for (Elem x = 0; x < t.order(); ++x) {
      bool inside = true;
      for (auto p : prime_divisors(t.element_order(x))) inside = inside && sigma.block_of(p) == block;
      if (inside) members.push_back(x);
    }
    ElementSet s(t.order());
    for (Elem x : members) s.set(x);
    for (Elem a : members) {
      for (Elem b : members) {
        if (!s.test(t.mul(a, b))) return false;
      }
    }
    product *= members.size();
  }
  return product == t.order();
}

/// [N, G] for N = <n_gens> normal in G.
inline ElementSet commutator_with_group(const CayleyTable& t, std::span<const Elem> n_gens) {
  std::vector<Elem> comms;
  for (Elem a : n_gens) {
    for (Elem b : t.generators()) comms.push_back(t.commutator(a, b));
  }
  return t.normal_closure(comms, t.generators());
}

/// Derived subgroup of the subgroup <h_gens> (computed inside that subgroup).
inline ElementSet derived_of(const CayleyTable& t, std::span<const Elem> h_gens) {
  std::vector<Elem> comms;
  for (std::size_t i = 0; i < h_gens.size(); ++i) {
    for (std::size_t j = i + 1; j < h_gens.size(); ++j) comms.push_back(t.commutator(h_gens[i], h_gens[j]));
  }
  return t.normal_closure(comms, h_gens);
}

inline ElementSet derived_subgroup(const CayleyTable& t) { return derived_of(t, t.generators()); }

/// G = G^(0) > G^(1) > ... until it stabilises.
inline std::vector<ElementSet> derived_series(const CayleyTable& t) {
  std::vector<ElementSet> series{t.full()};
  for (;;) {
    const auto gens = t.generators_of(series.back());
    ElementSet next = derived_of(t, gens);
    if (next == series.back()) break;
    series.push_back(std::move(next));
  }
  return series;
}

/// G = γ_1 > γ_2 > ... until it stabilises.
inline std::vector<ElementSet> lower_central_series(const CayleyTable& t) {
  std::vector<ElementSet> series{t.full()};
  for (;;) {
    const auto gens = t.generators_of(series.back());
    ElementSet next = commutator_with_group(t, gens);
    if (next == series.back()) break;
    series.push_back(std::move(next));
  }
  return series;
}

inline bool is_nilpotent(const CayleyTable& t) { return lower_central_series(t).back().count() == 1; }
inline bool is_soluble(const CayleyTable& t) { return derived_series(t).back().count() == 1; }

/// G/N σ-nilpotent where N = F_σ(G) is supplied by the caller.
inline bool quotient_is_sigma_nilpotent(const CayleyTable& t, const ElementSet& n, const PrimePartition& sigma) {
  return is_sigma_nilpotent(t.quotient(t.full(), n).table, sigma);
}

// ---------------------------------------------------------------------------
// Lattice-level invariants

inline CayleyTable subtable(const Lattice& lat, SubgroupId id) {
  return lat.table().subgroup(lat.at(id).elements).table;
}

struct ChiefFactor {
  std::uint64_t order = 1;
  PrimeSet primes;
};

/// 1 = N_0 < N_1 < ... < N_k = G, each N_{i+1}/N_i minimal normal in G/N_i.
struct ChiefSeries {
  std::vector<SubgroupId> members;
  std::vector<ChiefFactor> factors;
};

enum class TieBreak { Lowest, Highest };

/// One chief series; `tie` picks among several minimal candidates by id.
inline ChiefSeries chief_series(const Lattice& lat, TieBreak tie = TieBreak::Lowest) {
  const auto normals = lat.normal_subgroups();
  ChiefSeries series;
  series.members.push_back(lat.trivial());
  while (series.members.back() != lat.top()) {
    const SubgroupId cur = series.members.back();
    std::vector<SubgroupId> candidates;
    for (auto m : normals) {
      if (m == cur || !lat.leq(cur, m)) continue;
      bool minimal = true;
      for (auto k : normals) {
        if (k != cur && k != m && lat.leq(cur, k) && lat.leq(k, m)) {
          minimal = false;
          break;
        }
      }
      if (minimal) candidates.push_back(m);
    }
    const SubgroupId next = tie == TieBreak::Lowest ? candidates.front() : candidates.back();
    const std::uint64_t fo = lat.at(next).order / lat.at(cur).order;
    series.factors.push_back(ChiefFactor{fo, prime_divisors(fo)});
    series.members.push_back(next);
  }
  return series;
}

inline bool is_sigma_soluble(const ChiefSeries& series, const PrimePartition& sigma) {
  return std::all_of(series.factors.begin(), series.factors.end(),
                     [&](const ChiefFactor& f) { return sigma.same_block(f.primes); });
}

inline bool is_sigma_soluble(const Lattice& lat, const PrimePartition& sigma, TieBreak tie = TieBreak::Lowest) {
  return is_sigma_soluble(chief_series(lat, tie), sigma);
}

/// Join of all normal subgroups satisfying `pred` (applied to the
/// subgroup's own table).
template <class Pred>
SubgroupId join_of_normal(const Lattice& lat, Pred&& pred) {
  SubgroupId acc = lat.trivial();
  for (auto n : lat.normal_subgroups()) {
    if (lat.leq(n, acc)) continue;
    if (pred(subtable(lat, n))) acc = lat.join(acc, n);
  }
  return acc;
}

inline SubgroupId fitting(const Lattice& lat) {
  return join_of_normal(lat, [](const CayleyTable& t) { return is_nilpotent(t); });
}

inline SubgroupId sigma_fitting(const Lattice& lat, const PrimePartition& sigma) {
  return join_of_normal(lat, [&](const CayleyTable& t) { return is_sigma_nilpotent(t, sigma); });
}

/// Largest normal subgroup whose order involves only primes of block `key`.
inline SubgroupId o_sigma(const Lattice& lat, const PrimePartition& sigma, std::uint64_t key) {
  SubgroupId best = lat.trivial();
  for (auto n : lat.normal_subgroups()) {
    const auto primes = prime_divisors(lat.at(n).order);
    bool inside = std::all_of(primes.begin(), primes.end(), [&](auto p) { return sigma.block_of(p) == key; });
    if (inside && lat.at(n).order > lat.at(best).order) best = n;
  }
  return best;
}

/// First subgroup (by id) of order equal to the π-part of |G|, if any.
inline std::optional<SubgroupId> hall(const Lattice& lat, const PrimeSet& pi) {
  const std::uint64_t target =
      part_of(lat.order(), [&](std::uint64_t p) { return std::binary_search(pi.begin(), pi.end(), p); });
  for (auto id : lat.ids()) {
    if (lat.at(id).order == target) return id;
  }
  return std::nullopt;
}

inline SubgroupId sylow(const Lattice& lat, std::uint64_t p) {
  if (!is_prime(p)) throw DomainError(std::to_string(p) + " is not prime");
  auto h = hall(lat, PrimeSet{p});
  if (!h) throw DomainError("no Sylow subgroup found; lattice incomplete");
  return *h;
}

inline bool is_sigma_metanilpotent(const Lattice& lat, const PrimePartition& sigma) {
  return quotient_is_sigma_nilpotent(lat.table(), lat.at(sigma_fitting(lat, sigma)).elements, sigma);
}

}  // namespace formalat
