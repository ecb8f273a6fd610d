#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "formalat/formation.hpp"
#include "formalat/lattice.hpp"
#include "formalat/partition.hpp"
#include "formalat/table.hpp"

namespace formalat {

/// A subnormal series A = A_0 ≤ ... ≤ A_k = B via normal closures.
inline bool is_subnormal(const Lattice& lat, SubgroupId a, std::optional<SubgroupId> in = std::nullopt) {
  SubgroupId x = in.value_or(lat.top());
  if (!lat.leq(a, x)) return false;
  for (;;) {
    if (x == a) return true;
    const SubgroupId y = lat.normal_closure(a, x);
    if (y == x) return false;
    x = y;
  }
}

enum class StepKind { Normal, FQuotient };

inline const char* to_string(StepKind k) { return k == StepKind::Normal ? "NORMAL" : "F-QUOTIENT"; }

/// Which steps a chain may use.
///  Kegel:        A_{i-1} ⊴ A_i, or A_i / core(A_{i-1}) passes the quotient test
///  QuotientOnly: every step must pass the quotient test (non-K F-subnormality)
enum class ChainRule { Kegel, QuotientOnly };

/// Ascending chain A = A_0 ≤ A_1 ≤ ... ≤ A_n = B with the kind of each step.
struct WitnessChain {
  std::vector<SubgroupId> members;
  std::vector<StepKind> steps;  // steps[i] links members[i] to members[i+1]
};

struct KLatticeResult {
  bool meet_closed = true;
  bool join_closed = true;
  std::optional<std::pair<SubgroupId, SubgroupId>> meet_failure;
  std::optional<std::pair<SubgroupId, SubgroupId>> join_failure;
  bool ok() const noexcept { return meet_closed && join_closed; }
};

/// Decides K-F-subnormality (and its variants) inside one lattice.
///
/// KSub(A, B) holds iff A = B or some C with A ≤ C < B has KSub(A, C) and a
/// valid step C -> B. Results are memoised per (A, B); witness chains use the
/// first C in ascending id order.
class SubnormalitySearch {
 public:
  using QuotientTest = std::function<bool(const CayleyTable&)>;

  SubnormalitySearch(const Lattice& lat, const Formation& f, ChainRule rule = ChainRule::Kegel)
      : lat_(&lat), test_([f](const CayleyTable& t) { return f.member(t); }), rule_(rule) {}

  SubnormalitySearch(const Lattice& lat, QuotientTest test, ChainRule rule = ChainRule::Kegel)
      : lat_(&lat), test_(std::move(test)), rule_(rule) {}

  /// Chains whose non-normal steps have σ-primary core quotients.
  static SubnormalitySearch sigma_primary(const Lattice& lat, const PrimePartition& sigma) {
    return SubnormalitySearch(lat, [sigma](const CayleyTable& t) { return is_sigma_primary(t, sigma); });
  }

  const Lattice& lattice() const noexcept { return *lat_; }

  /// Kind of the step lower -> upper, or nullopt if it is not allowed.
  std::optional<StepKind> step(SubgroupId lower, SubgroupId upper) {
    const std::uint64_t key = pair_key(lower, upper);
    if (auto it = steps_.find(key); it != steps_.end()) return decode_step(it->second);
    std::optional<StepKind> result;
    if (lat_->leq(lower, upper)) {
      const bool normal = lat_->is_normal_in(lower, upper);
      if (rule_ == ChainRule::Kegel && normal) {
        result = StepKind::Normal;
      } else {
        const SubgroupId c = normal ? lower : lat_->core(lower, upper);
        if (quotient_passes(upper, c)) result = StepKind::FQuotient;
      }
    }
    steps_.emplace(key, encode_step(result));
    return result;
  }

  bool decide(SubgroupId a, std::optional<SubgroupId> in = std::nullopt) {
    return predecessor(a, in.value_or(lat_->top())) >= 0;
  }

  std::optional<WitnessChain> witness(SubgroupId a, std::optional<SubgroupId> in = std::nullopt) {
    SubgroupId b = in.value_or(lat_->top());
    if (predecessor(a, b) < 0) return std::nullopt;
    std::vector<SubgroupId> down{b};
    while (b != a) {
      b = SubgroupId{static_cast<std::uint32_t>(predecessor(a, b))};
      down.push_back(b);
    }
    WitnessChain chain;
    chain.members.assign(down.rbegin(), down.rend());
    for (std::size_t i = 0; i + 1 < chain.members.size(); ++i) {
      chain.steps.push_back(*step(chain.members[i], chain.members[i + 1]));
    }
    return chain;
  }

  /// Every subgroup A ≤ in with KSub(A, in), ascending.
  std::vector<SubgroupId> subnormal_set(std::optional<SubgroupId> in = std::nullopt) {
    const SubgroupId top = in.value_or(lat_->top());
    ElementSet reached(lat_->size());
    reached.set(top.value);
    std::vector<SubgroupId> stack{top};
    while (!stack.empty()) {
      const SubgroupId y = stack.back();
      stack.pop_back();
      lat_->below(y).for_each([&](std::size_t i) {
        if (reached.test(i)) return;
        const SubgroupId x{static_cast<std::uint32_t>(i)};
        if (step(x, y)) {
          reached.set(i);
          stack.push_back(x);
        }
      });
    }
    std::vector<SubgroupId> out;
    reached.for_each([&](std::size_t i) { out.push_back(SubgroupId{static_cast<std::uint32_t>(i)}); });
    return out;
  }

  /// Closure of subnormal_set(in) under join and meet.
  KLatticeResult k_lattice_check(std::optional<SubgroupId> in = std::nullopt) {
    const auto set = subnormal_set(in);
    ElementSet member(lat_->size());
    for (auto id : set) member.set(id.value);
    KLatticeResult r;
    for (std::size_t i = 0; i < set.size(); ++i) {
      for (std::size_t j = i + 1; j < set.size(); ++j) {
        if (lat_->leq(set[i], set[j]) || lat_->leq(set[j], set[i])) continue;
        if (r.meet_closed && !member.test(lat_->meet(set[i], set[j]).value)) {
          r.meet_closed = false;
          r.meet_failure = std::make_pair(set[i], set[j]);
        }
        if (r.join_closed && !member.test(lat_->join(set[i], set[j]).value)) {
          r.join_closed = false;
          r.join_failure = std::make_pair(set[i], set[j]);
        }
        if (!r.meet_closed && !r.join_closed) return r;
      }
    }
    return r;
  }

  /// Re-checks every step of a chain directly, without the caches.
  bool validate(const WitnessChain& chain) const {
    if (chain.members.empty() || chain.steps.size() + 1 != chain.members.size()) return false;
    const CayleyTable& t = lat_->table();
    for (std::size_t i = 0; i < chain.steps.size(); ++i) {
      const Subgroup& lo = lat_->at(chain.members[i]);
      const Subgroup& hi = lat_->at(chain.members[i + 1]);
      if (!lo.elements.subset_of(hi.elements)) return false;
      if (chain.steps[i] == StepKind::Normal) {
        if (rule_ != ChainRule::Kegel) return false;
        for (Elem y : hi.generators) {
          for (Elem x : lo.generators) {
            if (!lo.elements.test(t.conj(x, y))) return false;
          }
        }
      } else {
        const ElementSet core = t.core(lo.elements, hi.generators);
        if (!test_(t.quotient(hi.elements, core).table)) return false;
      }
    }
    return true;
  }

 private:
  static std::uint64_t pair_key(SubgroupId a, SubgroupId b) {
    return (std::uint64_t{a.value} << 32) | b.value;
  }
  static std::int8_t encode_step(std::optional<StepKind> k) {
    return !k ? 0 : (*k == StepKind::Normal ? 1 : 2);
  }
  static std::optional<StepKind> decode_step(std::int8_t v) {
    if (v == 0) return std::nullopt;
    return v == 1 ? StepKind::Normal : StepKind::FQuotient;
  }

  bool quotient_passes(SubgroupId upper, SubgroupId core) {
    const std::uint64_t key = pair_key(core, upper);
    if (auto it = quotients_.find(key); it != quotients_.end()) return it->second;
    const CayleyTable& t = lat_->table();
    const bool ok = test_(t.quotient(lat_->at(upper).elements, lat_->at(core).elements).table);
    quotients_.emplace(key, ok);
    return ok;
  }

  /// -1 if KSub(a, b) fails; otherwise the id of the chosen C (b itself
  /// when a == b).
  std::int64_t predecessor(SubgroupId a, SubgroupId b) {
    if (a == b) return b.value;
    if (!lat_->leq(a, b)) return -1;
    const std::uint64_t key = pair_key(a, b);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    std::int64_t found = -1;
    ElementSet between = lat_->above(a) & lat_->below(b);
    between.reset(b.value);
    between.for_each([&](std::size_t i) {
      if (found >= 0) return;
      const SubgroupId c{static_cast<std::uint32_t>(i)};
      if (!step(c, b)) return;
      if (predecessor(a, c) >= 0) found = static_cast<std::int64_t>(i);
    });
    memo_.emplace(key, found);
    return found;
  }

  const Lattice* lat_;
  QuotientTest test_;
  ChainRule rule_;
  std::unordered_map<std::uint64_t, std::int8_t> steps_;
  std::unordered_map<std::uint64_t, bool> quotients_;
  std::unordered_map<std::uint64_t, std::int64_t> memo_;
};

/// K-F-subnormality of a in `in` (default: the whole group).
inline bool is_k_f_subnormal(const Lattice& lat, SubgroupId a, const Formation& f,
                             std::optional<SubgroupId> in = std::nullopt) {
  SubnormalitySearch search(lat, f);
  return search.decide(a, in);
}

/// σ-subnormality: K-N_σ-subnormality.
inline bool is_sigma_subnormal(const Lattice& lat, SubgroupId a, const PrimePartition& sigma,
                               std::optional<SubgroupId> in = std::nullopt) {
  SubnormalitySearch search(lat, Formation::sigma_nilpotent(sigma));
  return search.decide(a, in);
}

inline std::vector<SubgroupId> k_f_subnormal_set(const Lattice& lat, const Formation& f) {
  SubnormalitySearch search(lat, f);
  return search.subnormal_set();
}

inline KLatticeResult k_lattice_check(const Lattice& lat, const Formation& f) {
  SubnormalitySearch search(lat, f);
  return search.k_lattice_check();
}

}  // namespace formalat
