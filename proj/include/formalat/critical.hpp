#pragma once

#include <optional>
#include <vector>

#include "formalat/context.hpp"
#include "formalat/formation.hpp"
#include "formalat/invariants.hpp"
#include "formalat/lattice.hpp"

namespace formalat {

/// Decomposition of a Schmidt group G = P ⋊ Q: P = G^N the normal Sylow
/// p-subgroup, Q a cyclic Sylow q-subgroup.
struct SchmidtStructure {
  std::uint64_t p = 0;
  std::uint64_t q = 0;
  bool p_abelian = false;
  bool q_abelian = false;
  /// |π(G)| = 2, G^N is a normal Sylow p-subgroup, G/G^N is cyclic of
  /// q-power order. Expected to hold for every detection.
  bool classical_shape = false;

  bool abelian_sylows() const noexcept { return p_abelian && q_abelian; }
};

/// h is outside f while its maximal subgroups lie in f. With `audit` every
/// proper subgroup is checked, which also catches wrongly asserted
/// hereditariness.
inline bool is_f_critical(GroupContext& ctx, const Formation& f, SubgroupId h, bool audit = false) {
  if (ctx.member(f, h)) return false;
  const Lattice& lat = ctx.lattice();
  if (!audit) {
    for (auto m : lat.maximal_in(h)) {
      if (!ctx.member(f, m)) return false;
    }
    return true;
  }
  bool all_in = true;
  lat.below(h).for_each([&](std::size_t i) {
    if (all_in && i != h.value && !ctx.member(f, SubgroupId{static_cast<std::uint32_t>(i)})) all_in = false;
  });
  return all_in;
}

/// Structure of h when h is a Schmidt group (N-critical), else nullopt.
inline std::optional<SchmidtStructure> schmidt_structure(GroupContext& ctx, SubgroupId h) {
  const Formation nil = Formation::nilpotent();
  if (!is_f_critical(ctx, nil, h)) return std::nullopt;
  const Lattice& sub = ctx.interval(h).lattice;
  const SubgroupId res = residual(sub, nil).residual;
  const PrimeSet primes = prime_divisors(sub.order());
  const PrimeSet res_primes = prime_divisors(sub.at(res).order);

  SchmidtStructure s;
  if (res_primes.size() == 1 && primes.size() == 2) {
    s.p = res_primes.front();
    s.q = primes.front() == s.p ? primes.back() : primes.front();
    const SubgroupId p_syl = sylow(sub, s.p);
    const SubgroupId q_syl = sylow(sub, s.q);
    s.p_abelian = is_abelian(subtable(sub, p_syl));
    s.q_abelian = is_abelian(subtable(sub, q_syl));
    const CayleyTable top = sub.table().quotient(sub.table().full(), sub.at(res).elements).table;
    bool cyclic_top = false;
    for (Elem x = 0; x < top.order(); ++x) cyclic_top = cyclic_top || top.element_order(x) == top.order();
    s.classical_shape = sub.at(res).order == sub.at(p_syl).order && sub.is_normal(res) && cyclic_top &&
                        prime_divisors(top.order()) == PrimeSet{s.q};
  } else if (primes.size() == 2) {
    s.p = primes.front();
    s.q = primes.back();
  }
  return s;
}

inline bool is_schmidt(GroupContext& ctx, SubgroupId h) { return schmidt_structure(ctx, h).has_value(); }

/// Nonabelian with every proper subgroup abelian.
inline bool is_miller_moreno(GroupContext& ctx, SubgroupId h) {
  return is_f_critical(ctx, Formation::abelian(), h);
}

inline std::vector<SubgroupId> f_critical_subgroups(GroupContext& ctx, const Formation& f) {
  std::vector<SubgroupId> out;
  for (auto id : ctx.lattice().ids()) {
    if (is_f_critical(ctx, f, id)) out.push_back(id);
  }
  return out;
}

inline std::vector<SubgroupId> schmidt_subgroups(GroupContext& ctx) {
  return f_critical_subgroups(ctx, Formation::nilpotent());
}

}  // namespace formalat
