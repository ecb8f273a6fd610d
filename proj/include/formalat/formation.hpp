#pragma once

#include <algorithm>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "formalat/error.hpp"
#include "formalat/invariants.hpp"
#include "formalat/lattice.hpp"
#include "formalat/partition.hpp"
#include "formalat/table.hpp"

namespace formalat {

enum class FormationKind { Nilpotent, SigmaNilpotent, Abelian, Soluble, PiPrime, All };

/// Asserted metadata per kind. Only used to gate which checks a formation
/// may be plugged into.
struct FormationFlags {
  bool hereditary = false;
  bool saturated = false;
  bool contains_nilpotents = false;
};

/// A supported formation descriptor. Textual forms:
/// `N`, `Nsigma:<partition>`, `A`, `S`, `piprime:<p1,p2,...>`, `all`.
class Formation {
 public:
  static Formation nilpotent() { return Formation(FormationKind::Nilpotent); }
  static Formation sigma_nilpotent(PrimePartition sigma) {
    Formation f(FormationKind::SigmaNilpotent);
    f.sigma_ = std::move(sigma);
    return f;
  }
  static Formation abelian() { return Formation(FormationKind::Abelian); }
  static Formation soluble() { return Formation(FormationKind::Soluble); }
  static Formation pi_prime(PrimeSet pi) {
    std::sort(pi.begin(), pi.end());
    pi.erase(std::unique(pi.begin(), pi.end()), pi.end());
    if (pi.empty()) throw DomainError("piprime needs a non-empty prime set");
    for (auto p : pi) {
      if (!is_prime(p)) throw DomainError(std::to_string(p) + " is not prime");
    }
    Formation f(FormationKind::PiPrime);
    f.pi_ = std::move(pi);
    return f;
  }
  static Formation all() { return Formation(FormationKind::All); }

  static Formation parse(std::string_view text) {
    const std::string s(text);
    if (s == "N") return nilpotent();
    if (s == "A") return abelian();
    if (s == "S") return soluble();
    if (s == "all") return all();
    if (s.rfind("Nsigma:", 0) == 0) return sigma_nilpotent(PrimePartition::parse(s.substr(7)));
    if (s.rfind("piprime:", 0) == 0) {
      PrimeSet pi;
      std::stringstream in(s.substr(8));
      std::string item;
      while (std::getline(in, item, ',')) {
        if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos) {
          throw ParseError("bad prime '" + item + "' in formation: " + s);
        }
        pi.push_back(std::stoull(item));
      }
      try {
        return pi_prime(std::move(pi));
      } catch (const DomainError& e) {
        throw ParseError(std::string(e.what()) + " in formation: " + s);
      }
    }
    throw ParseError("unknown formation '" + s + "'");
  }

  FormationKind kind() const noexcept { return kind_; }
  const PrimePartition& sigma() const noexcept { return sigma_; }
  const PrimeSet& pi() const noexcept { return pi_; }

  FormationFlags flags() const noexcept {
    switch (kind_) {
      case FormationKind::Abelian:
        return {true, false, false};
      case FormationKind::PiPrime:
        return {true, true, false};
      default:
        return {true, true, true};
    }
  }

  /// Hereditary, saturated and containing all nilpotent groups.
  bool meets_theorem_hypotheses() const noexcept {
    const auto f = flags();
    return f.hereditary && f.saturated && f.contains_nilpotents;
  }

  bool member(const CayleyTable& t) const {
    switch (kind_) {
      case FormationKind::Nilpotent:
        return is_nilpotent(t);
      case FormationKind::SigmaNilpotent:
        return is_sigma_nilpotent(t, sigma_);
      case FormationKind::Abelian:
        return is_abelian(t);
      case FormationKind::Soluble:
        return is_soluble(t);
      case FormationKind::PiPrime: {
        for (auto p : prime_set(t)) {
          if (std::binary_search(pi_.begin(), pi_.end(), p)) return false;
        }
        return true;
      }
      case FormationKind::All:
        return true;
    }
    return false;
  }

  std::string to_string() const {
    switch (kind_) {
      case FormationKind::Nilpotent:
        return "N";
      case FormationKind::SigmaNilpotent:
        return "Nsigma:" + sigma_.to_string();
      case FormationKind::Abelian:
        return "A";
      case FormationKind::Soluble:
        return "S";
      case FormationKind::PiPrime: {
        std::string out = "piprime:";
        for (std::size_t i = 0; i < pi_.size(); ++i) out += (i ? "," : "") + std::to_string(pi_[i]);
        return out;
      }
      case FormationKind::All:
        return "all";
    }
    return "?";
  }

  friend bool operator==(const Formation& a, const Formation& b) {
    return a.kind_ == b.kind_ && a.sigma_ == b.sigma_ && a.pi_ == b.pi_;
  }

 private:
  explicit Formation(FormationKind kind) : kind_(kind) {}

  FormationKind kind_;
  PrimePartition sigma_ = PrimePartition::finest();
  PrimeSet pi_;
};

/// Σ_n(F): nullopt for kinds without a supported value.
inline std::optional<PrimePartition> sigma_n_of(const Formation& f) {
  switch (f.kind()) {
    case FormationKind::Nilpotent:
      return PrimePartition::finest();
    case FormationKind::SigmaNilpotent:
      return f.sigma();
    default:
      return std::nullopt;
  }
}

/// Σ_s(F), or a partition known to be at least as coarse as it.
struct SolubilityPartition {
  PrimePartition partition;
  bool upper_bound = false;
};

inline std::optional<SolubilityPartition> sigma_s_of(const Formation& f) {
  switch (f.kind()) {
    case FormationKind::Nilpotent:
      return SolubilityPartition{PrimePartition::finest(), false};
    case FormationKind::SigmaNilpotent:
      return SolubilityPartition{f.sigma(), true};
    default:
      return std::nullopt;
  }
}

struct ResidualResult {
  SubgroupId residual;
  std::vector<SubgroupId> witnesses;  // normal N with G/N in F
};

/// G^F: intersection of all normal N with G/N in F.
inline ResidualResult residual(const Lattice& lat, const Formation& f) {
  ResidualResult out;
  const CayleyTable& t = lat.table();
  ElementSet acc = t.full();
  for (auto n : lat.normal_subgroups()) {
    if (!f.member(t.quotient(t.full(), lat.at(n).elements).table)) continue;
    out.witnesses.push_back(n);
    acc &= lat.at(n).elements;
  }
  out.residual = lat.locate(acc);
  return out;
}

/// G_F: join of all normal N with N in F.
inline SubgroupId radical(const Lattice& lat, const Formation& f) {
  return join_of_normal(lat, [&](const CayleyTable& t) { return f.member(t); });
}

}  // namespace formalat
