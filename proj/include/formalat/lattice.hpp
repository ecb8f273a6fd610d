#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "formalat/config.hpp"
#include "formalat/element_set.hpp"
#include "formalat/error.hpp"
#include "formalat/perm_group.hpp"
#include "formalat/table.hpp"

namespace formalat {

/// Index of a subgroup inside one Lattice. Ids are sorted by (order,
/// element set), so the trivial subgroup is 0 and the whole group is last.
struct SubgroupId {
  std::uint32_t value = 0;
  friend auto operator<=>(const SubgroupId&, const SubgroupId&) = default;
};

struct Subgroup {
  ElementSet elements;
  std::vector<Elem> generators;
  std::size_t order = 0;
  bool normal = false;  // normal in the lattice's top group
};

/// Descending chain M_0 = top > M_1 > ... > M_n, each maximal in the previous.
struct MaximalChain {
  std::vector<SubgroupId> members;
  std::size_t length() const noexcept { return members.empty() ? 0 : members.size() - 1; }
};

/// The full subgroup lattice of a small group, with inclusion, maximality
/// and normality. Immutable after construction.
class Lattice {
 public:
  struct Interval;

  Lattice() = default;

  /// Bottom-up enumeration: all cyclic subgroups, then repeated joins with
  /// cyclic subgroups until no new subgroup appears. Throws CapExceeded when
  /// the subgroup count passes caps.subgroups.
  static Lattice build(std::shared_ptr<const CayleyTable> table, const Caps& caps = Caps{}) {
    const CayleyTable& t = *table;
    std::vector<ElementSet> sets;
    std::vector<std::vector<Elem>> gens;
    std::unordered_map<ElementSet, std::uint32_t, ElementSetHash> index;

    auto add = [&](ElementSet s, std::vector<Elem> g) -> bool {
      if (index.contains(s)) return false;
      index.emplace(s, static_cast<std::uint32_t>(sets.size()));
      sets.push_back(std::move(s));
      gens.push_back(std::move(g));
      if (sets.size() > caps.subgroups) throw CapExceeded("subgroup lattice", caps.subgroups, sets.size());
      return true;
    };

    add(t.trivial(), {});
    std::vector<Elem> cyclic_reps;
    for (Elem x = 1; x < t.order(); ++x) {
      const Elem one[] = {x};
      if (add(t.closure(one), {x})) cyclic_reps.push_back(x);
    }
    for (std::size_t i = 0; i < sets.size(); ++i) {
      for (Elem g : cyclic_reps) {
        if (sets[i].test(g)) continue;
        ElementSet joined = t.extend(sets[i], gens[i], g);
        if (index.contains(joined)) continue;
        std::vector<Elem> jg = gens[i];
        jg.push_back(g);
        add(std::move(joined), std::move(jg));
      }
    }
    return Lattice(std::move(table), std::move(sets));
  }

  static Lattice build(const PermGroup& group, const Caps& caps = Caps{}) {
    return build(std::make_shared<const CayleyTable>(CayleyTable::from_perm_group(group, caps)), caps);
  }

  const CayleyTable& table() const noexcept { return *table_; }
  const std::shared_ptr<const CayleyTable>& table_ptr() const noexcept { return table_; }

  std::size_t size() const noexcept { return subs_.size(); }
  const Subgroup& at(SubgroupId id) const { return subs_.at(id.value); }
  SubgroupId trivial() const noexcept { return SubgroupId{0}; }
  SubgroupId top() const noexcept { return SubgroupId{static_cast<std::uint32_t>(subs_.size() - 1)}; }
  std::size_t order() const noexcept { return table_->order(); }

  std::vector<SubgroupId> ids() const {
    std::vector<SubgroupId> out(subs_.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = SubgroupId{static_cast<std::uint32_t>(i)};
    return out;
  }

  std::optional<SubgroupId> find(const ElementSet& s) const {
    auto it = index_.find(s);
    if (it == index_.end()) return std::nullopt;
    return SubgroupId{it->second};
  }

  /// Throws DomainError if `s` is not a subgroup.
  SubgroupId locate(const ElementSet& s) const {
    if (auto id = find(s)) return *id;
    throw DomainError("element set is not a subgroup in the lattice");
  }

  /// Subgroup generated by the given elements.
  SubgroupId generated_by(std::span<const Elem> gens) const { return locate(table_->closure(gens)); }

  /// a ≤ b
  bool leq(SubgroupId a, SubgroupId b) const noexcept { return below_[b.value].test(a.value); }

  /// Ids of all subgroups contained in `id` (including itself), as a bitset.
  const ElementSet& below(SubgroupId id) const { return below_.at(id.value); }
  const ElementSet& above(SubgroupId id) const { return above_.at(id.value); }

  /// Maximal subgroups of `id`, ascending.
  const std::vector<SubgroupId>& maximal_in(SubgroupId id) const { return covers_.at(id.value); }
  const std::vector<SubgroupId>& maximal_subgroups() const { return covers_.back(); }

  /// All maximal chains of length exactly n descending from `from`.
  std::vector<MaximalChain> maximal_chains(std::size_t n, std::optional<SubgroupId> from = std::nullopt) const {
    std::vector<MaximalChain> out;
    MaximalChain current;
    current.members.push_back(from.value_or(top()));
    descend(current, n, out);
    return out;
  }

  /// a ⊴ b, for a ≤ b.
  bool is_normal_in(SubgroupId a, SubgroupId b) const {
    if (!leq(a, b)) return false;
    if (b == top()) return subs_[a.value].normal;
    return table_->normalized_by(subs_[a.value].elements, subs_[a.value].generators, subs_[b.value].generators);
  }

  bool is_normal(SubgroupId a) const { return subs_.at(a.value).normal; }

  std::vector<SubgroupId> normal_subgroups() const {
    std::vector<SubgroupId> out;
    for (std::size_t i = 0; i < subs_.size(); ++i) {
      if (subs_[i].normal) out.push_back(SubgroupId{static_cast<std::uint32_t>(i)});
    }
    return out;
  }

  /// Largest subgroup of h normal in `in` (default: the whole group).
  SubgroupId core(SubgroupId h, std::optional<SubgroupId> in = std::nullopt) const {
    const SubgroupId y = in.value_or(top());
    if (is_normal_in(h, y)) return h;
    return locate(table_->core(subs_[h.value].elements, subs_[y.value].generators));
  }

  /// Smallest subgroup of `in` normal in `in` containing a.
  SubgroupId normal_closure(SubgroupId a, std::optional<SubgroupId> in = std::nullopt) const {
    const SubgroupId y = in.value_or(top());
    if (is_normal_in(a, y)) return a;
    return locate(table_->normal_closure(subs_[a.value].generators, subs_[y.value].generators));
  }

  SubgroupId join(SubgroupId a, SubgroupId b) const {
    if (leq(a, b)) return b;
    if (leq(b, a)) return a;
    std::vector<Elem> gens = subs_[a.value].generators;
    ElementSet s = subs_[a.value].elements;
    for (Elem g : subs_[b.value].generators) {
      if (s.test(g)) continue;
      s = table_->extend(s, gens, g);
      gens.push_back(g);
    }
    return locate(s);
  }

  SubgroupId meet(SubgroupId a, SubgroupId b) const {
    if (leq(a, b)) return a;
    if (leq(b, a)) return b;
    return locate(subs_[a.value].elements & subs_[b.value].elements);
  }

  /// Intersection of the maximal subgroups of `in`; `in` itself when trivial.
  SubgroupId frattini(std::optional<SubgroupId> in = std::nullopt) const {
    const SubgroupId y = in.value_or(top());
    const auto& maxes = covers_[y.value];
    if (maxes.empty()) return y;
    ElementSet s = subs_[maxes.front().value].elements;
    for (auto m : maxes) s &= subs_[m.value].elements;
    return locate(s);
  }

  /// Distinct conjugates of h in the top group, ascending.
  std::vector<SubgroupId> conjugates(SubgroupId h) const {
    std::vector<SubgroupId> out;
    const auto& sub = subs_[h.value];
    for (Elem g = 0; g < table_->order(); ++g) {
      ElementSet c(table_->order());
      sub.elements.for_each([&](std::size_t x) { c.set(table_->conj(static_cast<Elem>(x), g)); });
      const SubgroupId id = locate(c);
      if (std::find(out.begin(), out.end(), id) == out.end()) out.push_back(id);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  /// Lattice of the subgroup h as a standalone group.
  Interval interval(SubgroupId h) const;

 private:
  Lattice(std::shared_ptr<const CayleyTable> table, std::vector<ElementSet> sets) : table_(std::move(table)) {
    std::vector<std::pair<std::size_t, ElementSet>> keyed;
    keyed.reserve(sets.size());
    for (auto& s : sets) {
      const std::size_t c = s.count();
      keyed.emplace_back(c, std::move(s));
    }
    std::sort(keyed.begin(), keyed.end());
    subs_.resize(keyed.size());
    const CayleyTable& t = *table_;
    for (std::size_t i = 0; i < keyed.size(); ++i) {
      Subgroup& sub = subs_[i];
      sub.order = keyed[i].first;
      sub.elements = std::move(keyed[i].second);
      sub.generators = t.generators_of(sub.elements);
      index_.emplace(sub.elements, static_cast<std::uint32_t>(i));
    }
    for (auto& sub : subs_) sub.normal = t.normalized_by(sub.elements, sub.generators, t.generators());

    const std::size_t n = subs_.size();
    below_.assign(n, ElementSet(n));
    above_.assign(n, ElementSet(n));
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t i = 0; i <= j; ++i) {
        if (subs_[j].order % subs_[i].order != 0) continue;
        if (i == j || subs_[i].elements.subset_of(subs_[j].elements)) {
          below_[j].set(i);
          above_[i].set(j);
        }
      }
    }
    covers_.assign(n, {});
    for (std::size_t j = 0; j < n; ++j) {
      ElementSet strict = below_[j];
      strict.reset(j);
      ElementSet deeper(n);
      strict.for_each([&](std::size_t i) {
        ElementSet under = below_[i];
        under.reset(i);
        deeper |= under;
      });
      (strict - deeper).for_each([&](std::size_t i) { covers_[j].push_back(SubgroupId{static_cast<std::uint32_t>(i)}); });
    }
  }

  void descend(MaximalChain& current, std::size_t n, std::vector<MaximalChain>& out) const {
    if (current.length() == n) {
      out.push_back(current);
      return;
    }
    for (SubgroupId m : covers_[current.members.back().value]) {
      current.members.push_back(m);
      descend(current, n, out);
      current.members.pop_back();
    }
  }

  std::shared_ptr<const CayleyTable> table_;
  std::vector<Subgroup> subs_;
  std::unordered_map<ElementSet, std::uint32_t, ElementSetHash> index_;
  std::vector<ElementSet> below_;
  std::vector<ElementSet> above_;
  std::vector<std::vector<SubgroupId>> covers_;
};

/// A subgroup's own lattice, with maps back into the parent lattice.
struct Lattice::Interval {
  Lattice lattice;
  std::vector<SubgroupId> to_parent;  // local subgroup id -> parent id
  std::vector<Elem> elem_to_parent;   // local element -> parent element
  std::vector<Elem> elem_to_local;    // parent element -> local, kNoElem outside

  ElementSet lift(const ElementSet& local) const {
    ElementSet out(elem_to_local.size());
    local.for_each([&](std::size_t x) { out.set(elem_to_parent[x]); });
    return out;
  }
  SubgroupId lift(SubgroupId local) const { return to_parent.at(local.value); }
};

inline Lattice::Interval Lattice::interval(SubgroupId h) const {
  auto sub = table_->subgroup(subs_.at(h.value).elements);
  auto table = std::make_shared<const CayleyTable>(std::move(sub.table));
  std::vector<ElementSet> sets;
  std::vector<SubgroupId> parents;
  below_[h.value].for_each([&](std::size_t i) {
    ElementSet local(table->order());
    subs_[i].elements.for_each([&](std::size_t x) { local.set(sub.to_local[x]); });
    sets.push_back(std::move(local));
    parents.push_back(SubgroupId{static_cast<std::uint32_t>(i)});
  });
  Lattice lat(table, sets);
  std::vector<SubgroupId> to_parent(lat.size());
  for (std::size_t k = 0; k < sets.size(); ++k) to_parent[lat.locate(sets[k]).value] = parents[k];
  return Interval{std::move(lat), std::move(to_parent), std::move(sub.to_parent), std::move(sub.to_local)};
}

}  // namespace formalat
