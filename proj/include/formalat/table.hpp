#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <memory>
#include <numeric>
#include <optional>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "formalat/config.hpp"
#include "formalat/element_set.hpp"
#include "formalat/error.hpp"
#include "formalat/perm_group.hpp"

namespace formalat {

using Elem = std::uint32_t;

inline constexpr Elem kNoElem = std::numeric_limits<Elem>::max();

/// A finite group given by its multiplication table. Element 0 is the
/// identity. Subgroups are ElementSets over 0..order()-1.
///
/// Products follow the permutation convention: mul(a, b) is "a then b".
class CayleyTable {
 public:
  struct Sub;
  struct Quotient;

  CayleyTable() = default;

  static CayleyTable from_perm_group(const PermGroup& group, const Caps& caps = Caps{}) {
    if (group.order() > caps.table) {
      throw CapExceeded("multiplication table", caps.table, static_cast<std::size_t>(group.order()));
    }
    auto elements = group.elements(caps.elements);
    std::unordered_map<Perm, Elem, PermHash> index;
    index.reserve(elements.size() * 2);
    for (std::size_t i = 0; i < elements.size(); ++i) index.emplace(elements[i], static_cast<Elem>(i));
    const std::size_t n = elements.size();
    std::vector<Elem> mul(n * n);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) mul[a * n + b] = index.at(elements[a] * elements[b]);
    }
    CayleyTable t(n, std::move(mul));
    t.perms_ = std::make_shared<const std::vector<Perm>>(std::move(elements));
    t.gens_.clear();
    for (const Perm& g : group.generators()) {
      const Elem e = index.at(g);
      if (e != 0 && std::find(t.gens_.begin(), t.gens_.end(), e) == t.gens_.end()) t.gens_.push_back(e);
    }
    return t;
  }

  /// From a row-major table with identity at index 0.
  static CayleyTable from_products(std::size_t n, std::vector<Elem> mul) {
    if (n == 0 || mul.size() != n * n) throw DomainError("multiplication table has wrong shape");
    CayleyTable t(n, std::move(mul));
    t.gens_ = t.generators_of(t.full());
    return t;
  }

  std::size_t order() const noexcept { return n_; }
  Elem mul(Elem a, Elem b) const noexcept { return mul_[std::size_t{a} * n_ + b]; }
  Elem inv(Elem a) const noexcept { return inv_[a]; }
  std::uint64_t element_order(Elem a) const noexcept { return ord_[a]; }
  /// a^g = g^-1 a g
  Elem conj(Elem a, Elem g) const noexcept { return mul(mul(inv_[g], a), g); }
  /// [a, b] = a^-1 b^-1 a b
  Elem commutator(Elem a, Elem b) const noexcept { return mul(mul(inv_[a], inv_[b]), mul(a, b)); }

  /// A generating set of the whole group.
  const std::vector<Elem>& generators() const noexcept { return gens_; }

  /// Permutations behind each element when built from a PermGroup.
  const std::vector<Perm>* perms() const noexcept { return perms_.get(); }

  ElementSet full() const {
    ElementSet s(n_);
    for (std::size_t i = 0; i < n_; ++i) s.set(i);
    return s;
  }
  ElementSet trivial() const {
    ElementSet s(n_);
    s.set(0);
    return s;
  }

  /// <h, g> where h is a subgroup generated by `h_gens`.
  ElementSet extend(const ElementSet& h, std::span<const Elem> h_gens, Elem g) const {
    if (h.test(g)) return h;
    ElementSet out = h;
    const auto members = h.to_vector();
    std::vector<Elem> gens(h_gens.begin(), h_gens.end());
    gens.push_back(g);
    std::vector<Elem> reps{0};
    for (std::size_t r = 0; r < reps.size(); ++r) {
      for (Elem s : gens) {
        const Elem y = mul(s, reps[r]);
        if (out.test(y)) continue;
        for (Elem x : members) out.set(mul(y, x));
        reps.push_back(y);
      }
    }
    return out;
  }

  ElementSet closure(std::span<const Elem> gens) const {
    ElementSet s = trivial();
    std::vector<Elem> used;
    for (Elem g : gens) {
      if (s.test(g)) continue;
      s = extend(s, used, g);
      used.push_back(g);
    }
    return s;
  }

  /// Smallest subgroup containing <a_gens> and normalised by `by`.
  ElementSet normal_closure(std::span<const Elem> a_gens, std::span<const Elem> by) const {
    std::vector<Elem> gens;
    ElementSet s = trivial();
    for (Elem g : a_gens) {
      if (s.test(g)) continue;
      s = extend(s, gens, g);
      gens.push_back(g);
    }
    for (std::size_t i = 0; i < gens.size(); ++i) {
      for (Elem t : by) {
        const Elem y = conj(gens[i], t);
        if (s.test(y)) continue;
        s = extend(s, gens, y);
        gens.push_back(y);
      }
    }
    return s;
  }

  /// A small generating set for the subgroup h (greedy, high orders first).
  std::vector<Elem> generators_of(const ElementSet& h) const {
    auto members = h.to_vector();
    std::stable_sort(members.begin(), members.end(),
                     [&](Elem a, Elem b) { return ord_[a] > ord_[b]; });
    const std::size_t target = members.size();
    ElementSet s = trivial();
    std::vector<Elem> gens;
    for (Elem x : members) {
      if (s.count() == target) break;
      if (s.test(x)) continue;
      s = extend(s, gens, x);
      gens.push_back(x);
    }
    return gens;
  }

  bool is_subgroup(const ElementSet& h) const {
    if (!h.test(0)) return false;
    bool closed = true;
    h.for_each([&](std::size_t a) {
      if (!closed) return;
      h.for_each([&](std::size_t b) {
        if (closed && !h.test(mul(static_cast<Elem>(a), static_cast<Elem>(b)))) closed = false;
      });
    });
    return closed;
  }

  /// True if conjugation by every element of `by` maps <h_gens> = h into h.
  bool normalized_by(const ElementSet& h, std::span<const Elem> h_gens, std::span<const Elem> by) const {
    for (Elem t : by) {
      for (Elem x : h_gens) {
        if (!h.test(conj(x, t))) return false;
      }
    }
    return true;
  }

  /// Largest subset of h closed under conjugation by `by`; for a subgroup h
  /// and a generating set `by` of a group Y this is the core h_Y.
  ElementSet core(const ElementSet& h, std::span<const Elem> by) const {
    ElementSet c = h;
    for (bool changed = true; changed;) {
      changed = false;
      std::vector<Elem> drop;
      c.for_each([&](std::size_t x) {
        for (Elem t : by) {
          if (!c.test(conj(static_cast<Elem>(x), t))) {
            drop.push_back(static_cast<Elem>(x));
            break;
          }
        }
      });
      for (Elem x : drop) c.reset(x);
      changed = !drop.empty();
    }
    return c;
  }

  /// Set of products {a*b : a in x, b in y}.
  ElementSet product_set(const ElementSet& x, const ElementSet& y) const {
    ElementSet out(n_);
    const auto ys = y.to_vector();
    x.for_each([&](std::size_t a) {
      for (Elem b : ys) out.set(mul(static_cast<Elem>(a), b));
    });
    return out;
  }

  Sub subgroup(const ElementSet& h) const;
  /// y / k for a subgroup y and a subgroup k normal in y.
  Quotient quotient(const ElementSet& y, const ElementSet& k) const;

 private:
  CayleyTable(std::size_t n, std::vector<Elem> mul) : n_(n), mul_(std::move(mul)), inv_(n), ord_(n) {
    for (std::size_t a = 0; a < n_; ++a) {
      for (std::size_t b = 0; b < n_; ++b) {
        if (mul_[a * n_ + b] == 0) {
          inv_[a] = static_cast<Elem>(b);
          break;
        }
      }
      std::uint64_t k = 1;
      for (Elem x = static_cast<Elem>(a); x != 0; x = mul_[x * n_ + a]) ++k;
      ord_[a] = k;
    }
  }

  std::size_t n_ = 0;
  std::vector<Elem> mul_;
  std::vector<Elem> inv_;
  std::vector<std::uint64_t> ord_;
  std::vector<Elem> gens_;
  std::shared_ptr<const std::vector<Perm>> perms_;
};

/// A subgroup re-indexed as a standalone group.
struct CayleyTable::Sub {
  CayleyTable table;
  std::vector<Elem> to_parent;  // local -> parent
  std::vector<Elem> to_local;   // parent -> local, kNoElem outside
};

/// A quotient group with the coset map from the parent.
struct CayleyTable::Quotient {
  CayleyTable table;
  std::vector<Elem> coset_of;  // parent element -> coset, kNoElem outside y
  std::vector<Elem> reps;      // coset -> representative

  ElementSet image(const ElementSet& s) const {
    ElementSet out(table.order());
    s.for_each([&](std::size_t x) {
      if (coset_of[x] != kNoElem) out.set(coset_of[x]);
    });
    return out;
  }
};

inline CayleyTable::Sub CayleyTable::subgroup(const ElementSet& h) const {
  Sub sub;
  sub.to_parent = h.to_vector();
  sub.to_local.assign(n_, kNoElem);
  for (std::size_t i = 0; i < sub.to_parent.size(); ++i) sub.to_local[sub.to_parent[i]] = static_cast<Elem>(i);
  const std::size_t m = sub.to_parent.size();
  std::vector<Elem> table(m * m);
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) table[a * m + b] = sub.to_local[mul(sub.to_parent[a], sub.to_parent[b])];
  }
  CayleyTable t(m, std::move(table));
  for (Elem g : generators_of(h)) t.gens_.push_back(sub.to_local[g]);
  sub.table = std::move(t);
  return sub;
}

inline CayleyTable::Quotient CayleyTable::quotient(const ElementSet& y, const ElementSet& k) const {
  Quotient q;
  q.coset_of.assign(n_, kNoElem);
  const auto kernel = k.to_vector();
  y.for_each([&](std::size_t x) {
    if (q.coset_of[x] != kNoElem) return;
    const auto c = static_cast<Elem>(q.reps.size());
    q.reps.push_back(static_cast<Elem>(x));
    for (Elem m : kernel) q.coset_of[mul(m, static_cast<Elem>(x))] = c;
  });
  const std::size_t m = q.reps.size();
  std::vector<Elem> table(m * m);
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) table[a * m + b] = q.coset_of[mul(q.reps[a], q.reps[b])];
  }
  CayleyTable t(m, std::move(table));
  t.gens_ = t.generators_of(t.full());
  q.table = std::move(t);
  return q;
}

}  // namespace formalat
