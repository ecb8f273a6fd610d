#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "formalat/config.hpp"
#include "formalat/error.hpp"
#include "formalat/perm.hpp"

namespace formalat {

namespace detail {

/// One level of a stabilizer chain: the orbit of `base` under the strong
/// generators fixing all earlier base points, with a transversal.
struct ChainLevel {
  std::uint32_t base = 0;
  std::vector<Perm> gens;
  std::vector<std::int32_t> slot;  // point -> index in orbit, or -1
  std::vector<std::uint32_t> orbit;
  std::vector<Perm> transversal;  // transversal[k] maps base to orbit[k]

  void rebuild_orbit(std::size_t degree) {
    slot.assign(degree, -1);
    orbit.assign(1, base);
    transversal.assign(1, Perm(degree));
    slot[base] = 0;
    for (std::size_t k = 0; k < orbit.size(); ++k) {
      for (const Perm& s : gens) {
        const std::uint32_t img = s.image0(orbit[k]);
        if (slot[img] >= 0) continue;
        slot[img] = static_cast<std::int32_t>(orbit.size());
        orbit.push_back(img);
        transversal.push_back(transversal[k] * s);
      }
    }
  }
};

}  // namespace detail

/// A permutation group given by generators, with a deterministic
/// stabilizer chain (base points picked as the smallest moved point).
class PermGroup {
 public:
  PermGroup() = default;

  /// Throws DomainError when degree is 0 or a generator has another degree.
  PermGroup(std::size_t degree, std::vector<Perm> gens) : degree_(degree), gens_(std::move(gens)) {
    if (degree_ == 0) throw DomainError("group degree must be positive");
    for (const Perm& g : gens_) {
      if (g.degree() != degree_) {
        throw DomainError("generator " + g.to_cycles() + " has degree " + std::to_string(g.degree()) +
                          ", expected " + std::to_string(degree_));
      }
    }
    build_chain();
  }

  std::size_t degree() const noexcept { return degree_; }
  const std::vector<Perm>& generators() const noexcept { return gens_; }
  std::uint64_t order() const noexcept { return order_; }
  Perm identity() const { return Perm(degree_); }

  /// Base points, 1-based.
  std::vector<std::uint32_t> base() const {
    std::vector<std::uint32_t> out;
    for (const auto& level : levels_) out.push_back(level.base + 1);
    return out;
  }

  bool contains(const Perm& g) const {
    if (g.degree() != degree_) return false;
    auto [residue, depth] = strip(g, 0);
    return depth == levels_.size() && residue.is_identity();
  }

  /// All elements, identity first. Throws CapExceeded above `cap`.
  std::vector<Perm> elements(std::size_t cap = Caps{}.elements) const {
    if (order_ > cap) throw CapExceeded("element enumeration", cap, static_cast<std::size_t>(order_));
    std::vector<Perm> out;
    out.reserve(static_cast<std::size_t>(order_));
    std::vector<std::size_t> digit(levels_.size(), 0);
    for (;;) {
      Perm g(degree_);
      for (std::size_t l = levels_.size(); l-- > 0;) g = g * levels_[l].transversal[digit[l]];
      out.push_back(std::move(g));
      std::size_t l = 0;
      while (l < levels_.size() && ++digit[l] == levels_[l].orbit.size()) digit[l++] = 0;
      if (l == levels_.size()) break;
    }
    return out;
  }

  /// Least k >= 1 with g^k = 1. Throws DomainError if g is not in the group.
  std::uint64_t element_order(const Perm& g) const {
    if (!contains(g)) throw DomainError("element " + g.to_cycles() + " is not in the group");
    return g.order();
  }

  /// {g^-1 h g : h in subset}, sorted. Requires g in the group.
  std::vector<Perm> conjugate(const std::vector<Perm>& subset, const Perm& g) const {
    if (!contains(g)) throw DomainError("conjugating element " + g.to_cycles() + " is not in the group");
    const Perm gi = g.inverse();
    std::vector<Perm> out;
    out.reserve(subset.size());
    for (const Perm& h : subset) out.push_back(gi * h * g);
    std::sort(out.begin(), out.end());
    return out;
  }

  /// True if every generator of `sub` lies in this group.
  bool contains_group(const PermGroup& sub) const {
    if (sub.degree() != degree_) return false;
    for (const Perm& g : sub.generators()) {
      if (!contains(g)) return false;
    }
    return true;
  }

  /// True if `sub` is a subgroup normalised by every generator.
  bool normalizes(const PermGroup& sub) const {
    if (!contains_group(sub)) return false;
    for (const Perm& s : gens_) {
      const Perm si = s.inverse();
      for (const Perm& n : sub.generators()) {
        if (!sub.contains(si * n * s)) return false;
      }
    }
    return true;
  }

 private:
  std::pair<Perm, std::size_t> strip(Perm g, std::size_t from) const {
    for (std::size_t l = from; l < levels_.size(); ++l) {
      const auto& level = levels_[l];
      const std::uint32_t beta = g.image0(level.base);
      const std::int32_t k = level.slot[beta];
      if (k < 0) return {std::move(g), l};
      g = g * level.transversal[static_cast<std::size_t>(k)].inverse();
    }
    return {std::move(g), levels_.size()};
  }

  void add_base_point(std::uint32_t point) {
    detail::ChainLevel level;
    level.base = point;
    level.rebuild_orbit(degree_);
    levels_.push_back(std::move(level));
  }

  void build_chain() {
    std::vector<Perm> strong;
    for (const Perm& g : gens_) {
      if (!g.is_identity()) strong.push_back(g);
    }
    for (const Perm& s : strong) {
      bool fixes_base = true;
      for (const auto& level : levels_) {
        if (s.image0(level.base) != level.base) {
          fixes_base = false;
          break;
        }
      }
      if (fixes_base) add_base_point(static_cast<std::uint32_t>(s.first_moved()));
    }
    for (std::size_t l = 0; l < levels_.size(); ++l) {
      for (const Perm& s : strong) {
        bool fixes = true;
        for (std::size_t m = 0; m < l; ++m) fixes = fixes && s.image0(levels_[m].base) == levels_[m].base;
        if (fixes) levels_[l].gens.push_back(s);
      }
      levels_[l].rebuild_orbit(degree_);
    }

    // Schreier-Sims: verify every Schreier generator of level i sifts
    // through the levels below it, adding residues as new strong generators.
    std::size_t i = levels_.size();
    while (i-- > 0) {
      bool restarted = false;
      for (std::size_t k = 0; k < levels_[i].orbit.size() && !restarted; ++k) {
        for (std::size_t gi = 0; gi < levels_[i].gens.size(); ++gi) {
          const auto& level = levels_[i];
          const Perm& s = level.gens[gi];
          const Perm& u = level.transversal[k];
          const std::uint32_t img = s.image0(level.orbit[k]);
          const Perm& v = level.transversal[static_cast<std::size_t>(level.slot[img])];
          Perm h = u * s * v.inverse();
          auto [residue, depth] = strip(std::move(h), i + 1);
          if (depth == levels_.size() && residue.is_identity()) continue;
          if (depth == levels_.size()) add_base_point(static_cast<std::uint32_t>(residue.first_moved()));
          for (std::size_t l = i + 1; l <= depth; ++l) {
            levels_[l].gens.push_back(residue);
            levels_[l].rebuild_orbit(degree_);
          }
          i = depth + 1;  // loop decrement resumes at `depth`
          restarted = true;
          break;
        }
      }
    }

    order_ = 1;
    for (const auto& level : levels_) order_ *= level.orbit.size();
  }

  std::size_t degree_ = 1;
  std::vector<Perm> gens_;
  std::vector<detail::ChainLevel> levels_;
  std::uint64_t order_ = 1;
};

/// Convenience wrapper with the argument order used throughout the docs.
inline PermGroup make_group(std::size_t degree, std::vector<Perm> gens) {
  return PermGroup(degree, std::move(gens));
}

/// G/N realised by the right-coset action of G on the cosets of N.
struct QuotientHandle {
  PermGroup parent;
  PermGroup kernel;
  PermGroup quotient;
  std::vector<Perm> coset_reps;  // one representative per coset, coset 0 = N
  std::unordered_map<Perm, std::uint32_t, PermHash> coset_of;

  /// Image of a parent element under G -> G/N.
  Perm project(const Perm& g) const {
    std::vector<std::uint32_t> images(coset_reps.size());
    for (std::size_t c = 0; c < coset_reps.size(); ++c) images[c] = coset_of.at(coset_reps[c] * g) + 1;
    return Perm::from_images(images);
  }
};

/// Throws DomainError if `kernel` is not a normal subgroup of `group`.
inline QuotientHandle quotient(const PermGroup& group, const PermGroup& kernel, const Caps& caps = Caps{}) {
  if (!group.normalizes(kernel)) throw DomainError("quotient kernel is not a normal subgroup");
  QuotientHandle q{group, kernel, PermGroup(), {}, {}};
  const auto elements = group.elements(caps.elements);
  const auto kernel_elements = kernel.elements(caps.elements);
  for (const Perm& g : elements) {
    if (q.coset_of.contains(g)) continue;
    const auto c = static_cast<std::uint32_t>(q.coset_reps.size());
    q.coset_reps.push_back(g);
    for (const Perm& n : kernel_elements) q.coset_of.emplace(n * g, c);
  }
  std::vector<Perm> gens;
  for (const Perm& s : group.generators()) gens.push_back(q.project(s));
  q.quotient = PermGroup(q.coset_reps.size(), std::move(gens));
  return q;
}

}  // namespace formalat
