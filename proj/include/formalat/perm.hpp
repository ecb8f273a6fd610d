#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <string>
#include <string_view>
#include <vector>

#include "formalat/error.hpp"

namespace formalat {

/// A permutation of the points 1..degree.
///
/// Products compose left to right: `(a * b)(x) == b(a(x))`, so conjugation
/// `g.inverse() * h * g` is the usual right-action conjugate h^g.
class Perm {
 public:
  Perm() = default;

  /// Identity on `degree` points.
  explicit Perm(std::size_t degree) : images_(degree) {
    std::iota(images_.begin(), images_.end(), 0u);
  }

  /// From 1-based images: `images[i]` is the image of point i+1.
  static Perm from_images(const std::vector<std::uint32_t>& images) {
    Perm p;
    p.images_.resize(images.size());
    std::vector<bool> hit(images.size(), false);
    for (std::size_t i = 0; i < images.size(); ++i) {
      const std::uint32_t img = images[i];
      if (img < 1 || img > images.size() || hit[img - 1]) {
        throw DomainError("images do not form a bijection on 1.." + std::to_string(images.size()));
      }
      hit[img - 1] = true;
      p.images_[i] = img - 1;
    }
    return p;
  }

  /// Parse disjoint-cycle notation such as "(1 2)(3 4 5)" or "(1,2)".
  /// "()" and the empty string denote the identity. A point may appear in at
  /// most one cycle.
  static Perm from_cycles(std::size_t degree, std::string_view text) {
    Perm p(degree);
    std::vector<bool> used(degree, false);
    std::size_t pos = 0;
    auto skip_ws = [&] {
      while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t' || text[pos] == '\r')) ++pos;
    };
    skip_ws();
    while (pos < text.size()) {
      if (text[pos] != '(') throw ParseError("expected '(' in cycle notation: " + std::string(text));
      ++pos;
      std::vector<std::uint32_t> cycle;
      for (;;) {
        skip_ws();
        if (pos < text.size() && text[pos] == ',') {
          ++pos;
          skip_ws();
        }
        if (pos >= text.size()) throw ParseError("unterminated cycle: " + std::string(text));
        if (text[pos] == ')') {
          ++pos;
          break;
        }
        if (text[pos] < '0' || text[pos] > '9') {
          throw ParseError("unexpected character '" + std::string(1, text[pos]) + "' in cycle notation");
        }
        std::uint64_t value = 0;
        while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
          value = value * 10 + static_cast<std::uint64_t>(text[pos] - '0');
          if (value > degree) break;
          ++pos;
        }
        if (value < 1 || value > degree) {
          throw ParseError("point out of range 1.." + std::to_string(degree) + " in: " + std::string(text));
        }
        const auto point = static_cast<std::uint32_t>(value - 1);
        if (used[point]) {
          throw ParseError("point " + std::to_string(value) + " repeated; images not a bijection");
        }
        used[point] = true;
        cycle.push_back(point);
      }
      for (std::size_t i = 0; i < cycle.size(); ++i) {
        p.images_[cycle[i]] = cycle[(i + 1) % cycle.size()];
      }
      skip_ws();
    }
    return p;
  }

  std::size_t degree() const noexcept { return images_.size(); }

  /// Image of the 1-based point `x`.
  std::uint32_t operator()(std::uint32_t x) const { return images_.at(x - 1) + 1; }

  /// Image of the 0-based point `x`.
  std::uint32_t image0(std::uint32_t x) const noexcept { return images_[x]; }

  const std::vector<std::uint32_t>& images0() const noexcept { return images_; }

  bool is_identity() const noexcept {
    for (std::size_t i = 0; i < images_.size(); ++i) {
      if (images_[i] != i) return false;
    }
    return true;
  }

  /// Smallest 0-based point moved, or degree() for the identity.
  std::size_t first_moved() const noexcept {
    for (std::size_t i = 0; i < images_.size(); ++i) {
      if (images_[i] != i) return i;
    }
    return images_.size();
  }

  Perm inverse() const {
    Perm q;
    q.images_.resize(images_.size());
    for (std::size_t i = 0; i < images_.size(); ++i) q.images_[images_[i]] = static_cast<std::uint32_t>(i);
    return q;
  }

  friend Perm operator*(const Perm& a, const Perm& b) {
    if (a.degree() != b.degree()) throw DomainError("degree mismatch in permutation product");
    Perm c;
    c.images_.resize(a.images_.size());
    for (std::size_t i = 0; i < a.images_.size(); ++i) c.images_[i] = b.images_[a.images_[i]];
    return c;
  }

  Perm pow(std::uint64_t k) const {
    Perm result(degree());
    Perm base = *this;
    while (k > 0) {
      if (k & 1u) result = result * base;
      base = base * base;
      k >>= 1u;
    }
    return result;
  }

  /// Order as an lcm of cycle lengths.
  std::uint64_t order() const {
    std::vector<bool> seen(images_.size(), false);
    std::uint64_t result = 1;
    for (std::size_t i = 0; i < images_.size(); ++i) {
      if (seen[i]) continue;
      std::uint64_t len = 0;
      for (std::size_t j = i; !seen[j]; j = images_[j]) {
        seen[j] = true;
        ++len;
      }
      result = std::lcm(result, len);
    }
    return result;
  }

  /// Disjoint-cycle notation with 1-based points; fixed points omitted.
  std::string to_cycles() const {
    std::string out;
    std::vector<bool> seen(images_.size(), false);
    for (std::size_t i = 0; i < images_.size(); ++i) {
      if (seen[i] || images_[i] == i) continue;
      out += '(';
      for (std::size_t j = i; !seen[j]; j = images_[j]) {
        seen[j] = true;
        if (j != i) out += ' ';
        out += std::to_string(j + 1);
      }
      out += ')';
    }
    return out.empty() ? "()" : out;
  }

  friend bool operator==(const Perm&, const Perm&) = default;
  friend auto operator<=>(const Perm& a, const Perm& b) {
    if (auto c = a.images_.size() <=> b.images_.size(); c != 0) return c;
    return a.images_ <=> b.images_;
  }

  std::size_t hash() const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (auto v : images_) {
      h ^= v;
      h *= 1099511628211ull;
    }
    return h;
  }

 private:
  std::vector<std::uint32_t> images_;
};

struct PermHash {
  std::size_t operator()(const Perm& p) const noexcept { return p.hash(); }
};

}  // namespace formalat
