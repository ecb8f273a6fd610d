#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "formalat/error.hpp"

namespace formalat {

using PrimeSet = std::vector<std::uint64_t>;  // sorted, unique

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

/// Prime divisors of n, ascending.
inline PrimeSet prime_divisors(std::uint64_t n) {
  PrimeSet out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d != 0) continue;
    out.push_back(d);
    while (n % d == 0) n /= d;
  }
  if (n > 1) out.push_back(n);
  return out;
}

/// Largest divisor of n whose prime divisors lie in `primes`.
template <class Pred>
std::uint64_t part_of(std::uint64_t n, Pred&& in_set) {
  std::uint64_t part = 1;
  for (std::uint64_t p : prime_divisors(n)) {
    if (!in_set(p)) continue;
    while (n % p == 0) {
      n /= p;
      part *= p;
    }
  }
  return part;
}

/// A partition σ of all primes: finitely many explicit blocks plus one
/// implicit "rest" block holding every unlisted prime. The finest
/// partition (every prime alone) is a separate mode.
///
/// Block keys returned by block_of() identify blocks within one partition:
/// explicit blocks are 0..k-1, the rest block is kRest, and in the finest
/// partition the key is the prime itself.
class PrimePartition {
 public:
  static constexpr std::uint64_t kRest = std::numeric_limits<std::uint64_t>::max();

  static PrimePartition finest() {
    PrimePartition p;
    p.finest_ = true;
    return p;
  }
  static PrimePartition one_block() { return PrimePartition{}; }

  /// Explicit blocks, rest implied. Throws DomainError on overlap or
  /// non-primes.
  static PrimePartition from_blocks(std::vector<PrimeSet> blocks, bool rest_written = true) {
    PrimePartition p;
    std::set<std::uint64_t> seen;
    for (auto& block : blocks) {
      std::sort(block.begin(), block.end());
      block.erase(std::unique(block.begin(), block.end()), block.end());
      if (block.empty()) throw DomainError("empty block in prime partition");
      for (auto q : block) {
        if (!is_prime(q)) throw DomainError(std::to_string(q) + " is not prime");
        if (!seen.insert(q).second) throw DomainError("prime " + std::to_string(q) + " appears in two blocks");
      }
    }
    p.blocks_ = std::move(blocks);
    p.rest_written_ = rest_written;
    return p;
  }

  /// Grammar: blocks separated by '|', primes by ',', '*' is the rest block,
  /// e.g. "2,3|5|*". Keywords "finest" and "one-block".
  static PrimePartition parse(std::string_view text) {
    const std::string s = trim(text);
    if (s == "finest") return finest();
    if (s == "one-block" || s == "*") return one_block();
    std::vector<PrimeSet> blocks;
    bool rest = false;
    std::stringstream in(s);
    std::string part;
    while (std::getline(in, part, '|')) {
      part = trim(part);
      if (part == "*") {
        if (rest) throw ParseError("'*' appears twice in partition: " + s);
        rest = true;
        continue;
      }
      PrimeSet block;
      std::stringstream items(part);
      std::string item;
      while (std::getline(items, item, ',')) {
        item = trim(item);
        if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos) {
          throw ParseError("bad prime '" + item + "' in partition: " + s);
        }
        block.push_back(std::stoull(item));
      }
      blocks.push_back(std::move(block));
    }
    if (blocks.empty()) throw ParseError("empty partition: " + s);
    try {
      return from_blocks(std::move(blocks), rest);
    } catch (const DomainError& e) {
      throw ParseError(std::string(e.what()) + " in partition: " + s);
    }
  }

  bool is_finest() const noexcept { return finest_; }
  const std::vector<PrimeSet>& blocks() const noexcept { return blocks_; }

  std::uint64_t block_of(std::uint64_t p) const {
    if (finest_) return p;
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
      if (std::binary_search(blocks_[i].begin(), blocks_[i].end(), p)) return i;
    }
    return kRest;
  }

  /// Distinct block keys met by `primes`, in order of first appearance.
  std::vector<std::uint64_t> blocks_meeting(const PrimeSet& primes) const {
    std::vector<std::uint64_t> out;
    for (auto p : primes) {
      const auto b = block_of(p);
      if (std::find(out.begin(), out.end(), b) == out.end()) out.push_back(b);
    }
    return out;
  }

  /// The primes of `primes` lying in block `key`.
  PrimeSet restrict(std::uint64_t key, const PrimeSet& primes) const {
    PrimeSet out;
    for (auto p : primes) {
      if (block_of(p) == key) out.push_back(p);
    }
    return out;
  }

  bool same_block(const PrimeSet& primes) const { return blocks_meeting(primes).size() <= 1; }

  std::string to_string() const {
    if (finest_) return "finest";
    if (blocks_.empty()) return "one-block";
    std::string out;
    for (const auto& block : blocks_) {
      if (!out.empty()) out += '|';
      for (std::size_t i = 0; i < block.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(block[i]);
      }
    }
    if (rest_written_) out += "|*";
    return out;
  }

  friend bool operator==(const PrimePartition& a, const PrimePartition& b) {
    return a.finest_ == b.finest_ && a.blocks_ == b.blocks_;
  }

 private:
  static std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t");
    return std::string(s.substr(b, e - b + 1));
  }

  bool finest_ = false;
  bool rest_written_ = true;
  std::vector<PrimeSet> blocks_;
};

/// σ0 ≤ σ restricted to `primes`: every σ0-block (intersected with `primes`)
/// lies inside a single σ-block.
inline bool partition_leq(const PrimePartition& finer, const PrimePartition& coarser, const PrimeSet& primes) {
  for (std::size_t i = 0; i < primes.size(); ++i) {
    for (std::size_t j = i + 1; j < primes.size(); ++j) {
      if (finer.block_of(primes[i]) == finer.block_of(primes[j]) &&
          coarser.block_of(primes[i]) != coarser.block_of(primes[j])) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace formalat
