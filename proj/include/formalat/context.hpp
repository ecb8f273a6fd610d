#pragma once

#include <map>
#include <memory>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "formalat/formation.hpp"
#include "formalat/invariants.hpp"
#include "formalat/lattice.hpp"
#include "formalat/subnormality.hpp"

namespace formalat {

/// Per-group memo tables over one lattice: subgroup tables, formation
/// membership, interval lattices and subnormality searches. Not
/// thread-safe; use one context per worker.
class GroupContext {
 public:
  explicit GroupContext(Lattice lat) : lat_(std::move(lat)) {}

  GroupContext(const GroupContext&) = delete;
  GroupContext& operator=(const GroupContext&) = delete;

  const Lattice& lattice() const noexcept { return lat_; }

  const CayleyTable& subtable(SubgroupId id) {
    auto& slot = tables_[id.value];
    if (!slot) slot = std::make_unique<CayleyTable>(formalat::subtable(lat_, id));
    return *slot;
  }

  /// Membership of the subgroup `id` (as an abstract group) in f.
  bool member(const Formation& f, SubgroupId id) {
    auto& row = membership_[f.to_string()];
    if (row.empty()) row.assign(lat_.size(), -1);
    auto& cell = row[id.value];
    if (cell < 0) cell = f.member(subtable(id)) ? 1 : 0;
    return cell == 1;
  }

  bool in_group_formation(const Formation& f) { return member(f, lat_.top()); }

  /// Lattice of the subgroup `id` as a standalone group.
  const Lattice::Interval& interval(SubgroupId id) {
    auto& slot = intervals_[id.value];
    if (!slot) slot = std::make_unique<Lattice::Interval>(lat_.interval(id));
    return *slot;
  }

  SubnormalitySearch& search(const Formation& f) {
    auto& slot = searches_[f.to_string()];
    if (!slot) slot = std::make_unique<SubnormalitySearch>(lat_, f);
    return *slot;
  }

  /// Chains whose non-normal steps have σ-primary core quotients.
  SubnormalitySearch& primary_search(const PrimePartition& sigma) {
    auto& slot = searches_["primary:" + sigma.to_string()];
    if (!slot) slot = std::make_unique<SubnormalitySearch>(SubnormalitySearch::sigma_primary(lat_, sigma));
    return *slot;
  }

  /// K-F-subnormal subgroups of the whole group as a bitset over ids.
  const ElementSet& subnormal_bits(const Formation& f) {
    auto it = subnormal_sets_.find(f.to_string());
    if (it != subnormal_sets_.end()) return it->second;
    ElementSet bits(lat_.size());
    for (auto id : search(f).subnormal_set()) bits.set(id.value);
    return subnormal_sets_.emplace(f.to_string(), std::move(bits)).first->second;
  }

  SubgroupId join(SubgroupId a, SubgroupId b) {
    if (a > b) std::swap(a, b);
    const std::uint64_t key = (std::uint64_t{a.value} << 32) | b.value;
    if (auto it = joins_.find(key); it != joins_.end()) return SubgroupId{it->second};
    const SubgroupId j = lat_.join(a, b);
    joins_.emplace(key, j.value);
    return j;
  }

 private:
  Lattice lat_;
  std::unordered_map<std::uint32_t, std::unique_ptr<CayleyTable>> tables_;
  std::map<std::string, std::vector<signed char>> membership_;
  std::unordered_map<std::uint32_t, std::unique_ptr<Lattice::Interval>> intervals_;
  std::map<std::string, std::unique_ptr<SubnormalitySearch>> searches_;
  std::map<std::string, ElementSet> subnormal_sets_;
  std::unordered_map<std::uint64_t, std::uint32_t> joins_;
};

}  // namespace formalat
