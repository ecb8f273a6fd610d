#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "formalat/config.hpp"
#include "formalat/context.hpp"
#include "formalat/corpus.hpp"
#include "formalat/critical.hpp"
#include "formalat/error.hpp"
#include "formalat/formation.hpp"
#include "formalat/group_io.hpp"
#include "formalat/invariants.hpp"
#include "formalat/lattice.hpp"
#include "formalat/subnormality.hpp"

namespace formalat {

enum class Hypothesis { Holds, Fails, Vacuous };
enum class Conclusion { Holds, Fails, NotEvaluated };
enum class Verdict { Confirmed, Vacuous, Counterexample, SkippedCap };

inline const char* to_string(Hypothesis h) {
  switch (h) {
    case Hypothesis::Holds: return "HOLDS";
    case Hypothesis::Fails: return "FAILS";
    default: return "VACUOUS";
  }
}
inline const char* to_string(Conclusion c) {
  switch (c) {
    case Conclusion::Holds: return "HOLDS";
    case Conclusion::Fails: return "FAILS";
    default: return "NOT_EVALUATED";
  }
}
inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Confirmed: return "CONFIRMED";
    case Verdict::Vacuous: return "VACUOUS";
    case Verdict::Counterexample: return "COUNTEREXAMPLE";
    default: return "SKIPPED_CAP";
  }
}

struct CheckOutcome {
  std::string check_id;
  std::string group_id;
  std::string formation;
  Hypothesis hypothesis = Hypothesis::Vacuous;
  Conclusion conclusion = Conclusion::NotEvaluated;
  Verdict verdict = Verdict::SkippedCap;
  std::string evidence;
  std::string detail;  // full evidence, only kept for counterexamples
  std::size_t check_rank = 0;
  std::size_t formation_rank = 0;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Every check id in report order.
inline const std::vector<std::string>& all_check_ids() {
  static const std::vector<std::string> ids{
      "A1",    "A2",     "B1",    "B2",    "C1.1",  "C1.2",  "C1.3",  "C1.4",      "C1.5",     "C1.6",
      "C1.7",  "L2.1i",  "L2.1ii", "L2.2", "L2.3",  "L2.4i", "L2.4ii", "L2.5", "L2.6", "L2.7", "KLAT-MEET",
      "KLAT-JOIN"};
  return ids;
}

inline std::size_t check_rank(const std::string& id) {
  const auto& ids = all_check_ids();
  return static_cast<std::size_t>(std::find(ids.begin(), ids.end(), id) - ids.begin());
}

/// Expands `all`, group names (`theorems`, `corollaries`, `lemmas`,
/// `klattice`) and single ids; result in report order.
inline std::vector<std::string> expand_checks(const std::vector<std::string>& requested) {
  std::vector<bool> on(all_check_ids().size(), false);
  for (const auto& r : requested) {
    const auto& ids = all_check_ids();
    auto mark = [&](auto pred) {
      for (std::size_t i = 0; i < ids.size(); ++i) {
        if (pred(ids[i])) on[i] = true;
      }
    };
    if (r == "all") mark([](const std::string&) { return true; });
    else if (r == "theorems") mark([](const std::string& s) { return s[0] == 'A' || s[0] == 'B'; });
    else if (r == "corollaries") mark([](const std::string& s) { return s[0] == 'C'; });
    else if (r == "lemmas") mark([](const std::string& s) { return s[0] == 'L'; });
    else if (r == "klattice") mark([](const std::string& s) { return s[0] == 'K'; });
    else if (check_rank(r) < ids.size()) on[check_rank(r)] = true;
    else throw ConfigError("unknown check '" + r + "'");
  }
  std::vector<std::string> out;
  for (std::size_t i = 0; i < on.size(); ++i) {
    if (on[i]) out.push_back(all_check_ids()[i]);
  }
  return out;
}

struct VerifyConfig {
  std::string corpus_label = "builtin";
  std::vector<std::string> checks = {"all"};
  std::vector<Formation> formations;
  std::vector<PrimePartition> sigmas;
  std::optional<PrimePartition> sigma_check;
  Caps caps;
  bool force = false;
  unsigned jobs = 1;
};

/// Config after validation: explicit check list plus the notes that go
/// into the report header.
struct ResolvedConfig {
  VerifyConfig config;
  std::vector<std::string> checks;
  std::vector<PrimeSet> pis;  // explicit blocks of the σ list, deduplicated
  std::vector<std::string> notes;
};

inline std::string pi_to_string(const PrimeSet& pi) {
  std::string s;
  for (std::size_t i = 0; i < pi.size(); ++i) s += (i ? "," : "") + std::to_string(pi[i]);
  return s;
}

inline ResolvedConfig resolve_config(const VerifyConfig& cfg) {
  ResolvedConfig r{cfg, {}, {}, {}};
  const bool wants_all =
      std::find(cfg.checks.begin(), cfg.checks.end(), "all") != cfg.checks.end() ||
      std::find(cfg.checks.begin(), cfg.checks.end(), "corollaries") != cfg.checks.end();
  r.checks = expand_checks(cfg.checks);
  if (r.checks.empty()) throw ConfigError("no checks selected");
  if (cfg.formations.empty()) throw ConfigError("at least one formation is required");
  if (cfg.jobs == 0) throw ConfigError("--jobs must be positive");

  auto has = [&](const std::string& id) { return std::find(r.checks.begin(), r.checks.end(), id) != r.checks.end(); };
  const bool theorem_checks = has("A1") || has("A2") || has("B1") || has("B2");
  for (const auto& f : cfg.formations) {
    if (theorem_checks && !f.meets_theorem_hypotheses()) {
      if (!cfg.force) {
        throw ConfigError("formation " + f.to_string() +
                          " is not hereditary + saturated + containing all nilpotent groups; use --force");
      }
      r.notes.push_back("forced: " + f.to_string() + " run through theorem checks without meeting their hypotheses");
    }
  }
  if (has("B2")) {
    for (const auto& f : cfg.formations) {
      const auto s = sigma_s_of(f);
      if (!s && !cfg.sigma_check) {
        throw ConfigError("B2: solubility partition of " + f.to_string() + " is UNSUPPORTED; pass --sigma-check");
      }
      if (cfg.sigma_check) continue;
      if (s->upper_bound) {
        r.notes.push_back("B2 for " + f.to_string() + " checks sigma-solubility against " + s->partition.to_string() +
                          ", an UPPER_BOUND of the exact solubility partition");
      }
    }
    if (cfg.sigma_check) r.notes.push_back("B2 uses the explicit partition " + cfg.sigma_check->to_string());
  }
  const bool sigma_checks = has("C1.3") || has("C1.6") || has("C1.7") || has("L2.5") || has("L2.6") || has("L2.7");
  if (sigma_checks && cfg.sigmas.empty()) throw ConfigError("checks C1.3, C1.6, C1.7, L2.5-L2.7 need --sigma");

  for (const auto& s : cfg.sigmas) {
    for (const auto& block : s.blocks()) {
      if (std::find(r.pis.begin(), r.pis.end(), block) == r.pis.end()) r.pis.push_back(block);
    }
  }
  if ((has("C1.6") || has("C1.7")) && r.pis.empty()) {
    throw ConfigError("C1.6/C1.7 need a partition with at least one explicit block");
  }
  if (has("C1.6")) {
    if (!cfg.force) {
      if (!wants_all) throw ConfigError("C1.6 uses the pi'-group formation, which lacks the nilpotent groups; use --force");
      r.checks.erase(std::find(r.checks.begin(), r.checks.end(), "C1.6"));
      r.notes.push_back("C1.6 skipped: needs --force (pi'-groups do not contain all nilpotent groups)");
    } else {
      r.notes.push_back(
          "C1.6 hypothesis mismatch: the pi'-group formation does not contain all nilpotent groups, "
          "which the maximal-chain solubility theorem assumes; run under --force, not adjudicated");
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Per-group checks

namespace detail {

inline std::string ids_text(const std::vector<SubgroupId>& ids, std::size_t limit = 8) {
  std::string s;
  for (std::size_t i = 0; i < ids.size() && i < limit; ++i) s += (i ? "," : "") + std::string("#") + std::to_string(ids[i].value);
  if (ids.size() > limit) s += ",...";
  return s.empty() ? "-" : s;
}

inline std::string chain_text(const MaximalChain& c) {
  std::string s;
  for (std::size_t i = 0; i < c.members.size(); ++i) s += (i ? ">" : "") + std::string("#") + std::to_string(c.members[i].value);
  return s;
}

inline bool quotient_in(const Lattice& lat, const Formation& f, SubgroupId n) {
  const CayleyTable& t = lat.table();
  return f.member(t.quotient(t.full(), lat.at(n).elements).table);
}

inline bool quotient_abelian(const Lattice& lat, SubgroupId n) {
  const CayleyTable& t = lat.table();
  return is_abelian(t.quotient(t.full(), lat.at(n).elements).table);
}

inline bool quotient_nilpotent(const Lattice& lat, SubgroupId n) {
  const CayleyTable& t = lat.table();
  return is_nilpotent(t.quotient(t.full(), lat.at(n).elements).table);
}

/// First maximal chain of length n none of whose proper members is in `good`.
inline std::optional<MaximalChain> chain_missing(const Lattice& lat, std::size_t n, const ElementSet& good) {
  for (const auto& c : lat.maximal_chains(n)) {
    bool hit = false;
    for (std::size_t i = 1; i < c.members.size() && !hit; ++i) hit = good.test(c.members[i].value);
    if (!hit) return c;
  }
  return std::nullopt;
}

/// σ with one block per prime of π and π' as the rest: π-solubility.
inline PrimePartition pi_soluble_partition(const PrimeSet& pi) {
  std::vector<PrimeSet> blocks;
  for (auto p : pi) blocks.push_back(PrimeSet{p});
  return PrimePartition::from_blocks(blocks);
}

inline PrimePartition pi_separable_partition(const PrimeSet& pi) { return PrimePartition::from_blocks({pi}); }

inline std::string subgroup_listing(const Lattice& lat, const std::vector<SubgroupId>& ids) {
  std::string out;
  const CayleyTable& t = lat.table();
  for (auto id : ids) {
    out += "subgroup #" + std::to_string(id.value) + " order " + std::to_string(lat.at(id).order) + ":";
    if (t.perms()) {
      lat.at(id).elements.for_each([&](std::size_t x) { out += " " + (*t.perms())[x].to_cycles(); });
    }
    out += '\n';
  }
  return out;
}

}  // namespace detail

/// Runs the selected checks on one group.
class GroupVerifier {
 public:
  GroupVerifier(const ResolvedConfig& cfg, const CorpusEntry& entry, GroupContext& ctx)
      : cfg_(cfg), entry_(entry), ctx_(ctx), lat_(ctx.lattice()) {}

  std::vector<CheckOutcome> run() {
    for (const auto& id : cfg_.checks) dispatch(id);
    return std::move(out_);
  }

 private:
  struct Eval {
    bool hypothesis = false;
    std::function<bool()> conclusion;  // evaluated only when the hypothesis holds
    std::string evidence;
    std::vector<SubgroupId> involved;
  };

  void emit(const std::string& check, const std::string& formation, std::size_t formation_rank, Eval e) {
    CheckOutcome o;
    o.check_id = check;
    o.group_id = entry_.id;
    o.formation = formation;
    o.check_rank = check_rank(check);
    o.formation_rank = formation_rank;
    o.evidence = e.evidence.empty() ? "-" : e.evidence;
    if (!e.hypothesis) {
      o.hypothesis = Hypothesis::Fails;
      o.conclusion = Conclusion::NotEvaluated;
      o.verdict = Verdict::Vacuous;
    } else {
      o.hypothesis = Hypothesis::Holds;
      const bool ok = e.conclusion();
      o.conclusion = ok ? Conclusion::Holds : Conclusion::Fails;
      o.verdict = ok ? Verdict::Confirmed : Verdict::Counterexample;
      if (!ok) {
        o.detail = "check " + check + " group " + entry_.id + " formation " + formation + "\n" + "evidence " +
                   o.evidence + "\n\n" + format_group(entry_.group, entry_.id) + "\n" +
                   detail::subgroup_listing(lat_, e.involved);
      }
    }
    out_.push_back(std::move(o));
  }

  void dispatch(const std::string& id) {
    const auto& fs = cfg_.config.formations;
    const auto& sigmas = cfg_.config.sigmas;
    if (id == "A1") for_formations([&](const Formation& f, std::size_t r) { emit(id, f.to_string(), r, a1(f)); });
    else if (id == "A2") for_formations([&](const Formation& f, std::size_t r) { emit(id, f.to_string(), r, a2(f)); });
    else if (id == "B1") for_formations([&](const Formation& f, std::size_t r) { emit(id, f.to_string(), r, b1(f)); });
    else if (id == "B2") for_formations([&](const Formation& f, std::size_t r) { emit(id, f.to_string(), r, b2(f)); });
    else if (id == "C1.1") emit(id, "N", 0, c11());
    else if (id == "C1.2") emit(id, "N", 0, c12());
    else if (id == "C1.3") {
      for (std::size_t i = 0; i < sigmas.size(); ++i) emit(id, sigma_label(sigmas[i]), i, c13(sigmas[i]));
    } else if (id == "C1.4") emit(id, "N", 0, c14());
    else if (id == "C1.5") emit(id, "N", 0, c15());
    else if (id == "C1.6") {
      for (std::size_t i = 0; i < cfg_.pis.size(); ++i) {
        const Formation f = Formation::pi_prime(cfg_.pis[i]);
        emit(id, f.to_string(), i, c16(f, cfg_.pis[i]));
      }
    } else if (id == "C1.7") {
      for (std::size_t i = 0; i < cfg_.pis.size(); ++i) {
        const Formation f = Formation::sigma_nilpotent(detail::pi_separable_partition(cfg_.pis[i]));
        emit(id, f.to_string(), i, c17(f, cfg_.pis[i]));
      }
    } else if (id == "L2.1i") for_formations([&](const Formation& f, std::size_t r) { emit(id, f.to_string(), r, l21i(f)); });
    else if (id == "L2.1ii") for_formations([&](const Formation& f, std::size_t r) { emit(id, f.to_string(), r, l21ii(f)); });
    else if (id == "L2.2") for_formations([&](const Formation& f, std::size_t r) { emit(id, f.to_string(), r, l22(f)); });
    else if (id == "L2.3") for_formations([&](const Formation& f, std::size_t r) { emit(id, f.to_string(), r, l23(f)); });
    else if (id == "L2.4i") for_formations([&](const Formation& f, std::size_t r) { emit(id, f.to_string(), r, l24i(f)); });
    else if (id == "L2.4ii") for_formations([&](const Formation& f, std::size_t r) { emit(id, f.to_string(), r, l24ii(f)); });
    else if (id == "L2.5") {
      for (std::size_t i = 0; i < sigmas.size(); ++i) emit(id, sigma_label(sigmas[i]), i, l25(sigmas[i]));
    } else if (id == "L2.6") {
      for (std::size_t i = 0; i < sigmas.size(); ++i) emit(id, sigma_label(sigmas[i]), i, l26(sigmas[i]));
    } else if (id == "L2.7") {
      for (std::size_t i = 0; i < sigmas.size(); ++i) emit(id, sigma_label(sigmas[i]), i, l27(sigmas[i]));
    } else if (id == "KLAT-MEET") for_formations([&](const Formation& f, std::size_t r) { emit(id, f.to_string(), r, klat(f, true)); });
    else if (id == "KLAT-JOIN") for_formations([&](const Formation& f, std::size_t r) { emit(id, f.to_string(), r, klat(f, false)); });
    (void)fs;
  }

  template <class Fn>
  void for_formations(Fn&& fn) {
    const auto& fs = cfg_.config.formations;
    for (std::size_t i = 0; i < fs.size(); ++i) fn(fs[i], i);
  }

  static std::string sigma_label(const PrimePartition& s) { return Formation::sigma_nilpotent(s).to_string(); }

  /// Ids (as a bitset) of the subgroups subnormal in G, via normal closures.
  const ElementSet& subnormal_bits() {
    if (!subnormal_) {
      ElementSet bits(lat_.size());
      for (auto id : lat_.ids()) {
        if (is_subnormal(lat_, id)) bits.set(id.value);
      }
      subnormal_ = std::move(bits);
    }
    return *subnormal_;
  }

  const std::vector<SubgroupId>& schmidts() {
    if (!schmidts_) schmidts_ = schmidt_subgroups(ctx_);
    return *schmidts_;
  }

  /// H/F(H) in f, computed in H's own lattice.
  bool top_over_fitting_in(const Formation& f, SubgroupId h) {
    const Lattice& sub = ctx_.interval(h).lattice;
    return detail::quotient_in(sub, f, fitting(sub));
  }

  Eval schmidt_all_in(const ElementSet& good) {
    Eval e;
    std::vector<SubgroupId> bad;
    for (auto h : schmidts()) {
      if (!good.test(h.value)) bad.push_back(h);
    }
    e.hypothesis = bad.empty();
    e.evidence = "schmidt=" + std::to_string(schmidts().size());
    if (!bad.empty()) e.evidence += ";not_subnormal=" + detail::ids_text(bad);
    e.involved = schmidts();
    return e;
  }

  Eval chain_hypothesis(std::size_t n, const ElementSet& good) {
    Eval e;
    const auto miss = detail::chain_missing(lat_, n, good);
    e.hypothesis = !miss;
    e.evidence = miss ? "chain=" + detail::chain_text(*miss) : "chains=" + std::to_string(lat_.maximal_chains(n).size());
    if (miss) e.involved = miss->members;
    return e;
  }

  Eval a1(const Formation& f) {
    Eval e;
    const auto crit = f_critical_subgroups(ctx_, f);
    const ElementSet& ks = ctx_.subnormal_bits(f);
    std::vector<SubgroupId> not_sub, bad_top;
    for (auto h : crit) {
      if (!ks.test(h.value)) not_sub.push_back(h);
      else if (!top_over_fitting_in(f, h)) bad_top.push_back(h);
    }
    e.hypothesis = not_sub.empty() && bad_top.empty();
    e.evidence = "critical=" + std::to_string(crit.size());
    if (!not_sub.empty()) e.evidence += ";not_k_subnormal=" + detail::ids_text(not_sub);
    if (!bad_top.empty()) e.evidence += ";quotient_outside=" + detail::ids_text(bad_top);
    e.involved = crit;
    e.involved.push_back(fitting(lat_));
    e.conclusion = [this, f] { return detail::quotient_in(lat_, f, fitting(lat_)); };
    return e;
  }

  Eval a2(const Formation& f) {
    Eval e = schmidt_all_in(ctx_.subnormal_bits(f));
    const SubgroupId rad = radical(lat_, f);
    e.evidence += ";radical=#" + std::to_string(rad.value);
    e.involved.push_back(rad);
    e.conclusion = [this, rad] { return detail::quotient_abelian(lat_, rad); };
    return e;
  }

  Eval b1(const Formation& f) {
    Eval e;
    const auto miss = detail::chain_missing(lat_, 2, ctx_.subnormal_bits(f));
    const bool lhs = !miss;
    bool rhs = ctx_.in_group_formation(f);
    std::string why = rhs ? "in_F" : "not_in_F";
    if (!rhs) {
      const auto s = schmidt_structure(ctx_, lat_.top());
      if (!s) {
        why += ",not_schmidt";
      } else {
        rhs = s->abelian_sylows();
        why += rhs ? ",schmidt_abelian_sylows" : ",schmidt_nonabelian_sylow";
      }
    }
    e.hypothesis = true;
    e.evidence = std::string("lhs=") + (lhs ? "true" : "false") + ";rhs=" + (rhs ? "true" : "false") + ";" + why;
    if (miss) {
      e.evidence += ";chain=" + detail::chain_text(*miss);
      e.involved = miss->members;
    }
    e.conclusion = [lhs, rhs] { return lhs == rhs; };
    return e;
  }

  Eval b2(const Formation& f) {
    const PrimePartition sigma = cfg_.config.sigma_check ? *cfg_.config.sigma_check : sigma_s_of(f)->partition;
    Eval e = chain_hypothesis(3, ctx_.subnormal_bits(f));
    e.evidence += ";sigma=" + sigma.to_string();
    e.conclusion = [this, sigma] { return is_sigma_soluble(lat_, sigma); };
    return e;
  }

  Eval c11() {
    Eval e = schmidt_all_in(subnormal_bits());
    e.conclusion = [this] { return detail::quotient_nilpotent(lat_, fitting(lat_)); };
    return e;
  }

  Eval c12() {
    Eval e = schmidt_all_in(subnormal_bits());
    e.conclusion = [this] { return detail::quotient_abelian(lat_, fitting(lat_)); };
    return e;
  }

  Eval c13(const PrimePartition& sigma) {
    Eval e = schmidt_all_in(ctx_.subnormal_bits(Formation::sigma_nilpotent(sigma)));
    const SubgroupId fs = sigma_fitting(lat_, sigma);
    e.evidence += ";sigma_fitting=#" + std::to_string(fs.value);
    e.conclusion = [this, fs] { return detail::quotient_abelian(lat_, fs); };
    return e;
  }

  Eval c14() {
    Eval e = chain_hypothesis(3, subnormal_bits());
    e.conclusion = [this] { return is_soluble(lat_.table()); };
    return e;
  }

  Eval c15() {
    if (is_nilpotent(lat_.table())) {
      Eval e;
      e.hypothesis = false;
      e.evidence = "nilpotent";
      return e;
    }
    Eval e = chain_hypothesis(2, subnormal_bits());
    e.conclusion = [this] {
      const auto s = schmidt_structure(ctx_, lat_.top());
      return s && s->abelian_sylows();
    };
    return e;
  }

  Eval c16(const Formation& f, const PrimeSet& pi) {
    Eval e = chain_hypothesis(3, ctx_.subnormal_bits(f));
    e.conclusion = [this, pi] { return is_sigma_soluble(lat_, detail::pi_soluble_partition(pi)); };
    return e;
  }

  Eval c17(const Formation& f, const PrimeSet& pi) {
    Eval e = chain_hypothesis(3, ctx_.subnormal_bits(f));
    e.conclusion = [this, pi] { return is_sigma_soluble(lat_, detail::pi_separable_partition(pi)); };
    return e;
  }

  /// Aggregates per-instance results: the hypothesis holds when at least
  /// one instance applies, the conclusion when every instance passes.
  static Eval instances(std::size_t applicable, std::vector<SubgroupId> failing, std::string extra = {}) {
    Eval e;
    e.hypothesis = applicable > 0;
    e.evidence = "instances=" + std::to_string(applicable);
    if (!failing.empty()) e.evidence += ";failing=" + detail::ids_text(failing);
    if (!extra.empty()) e.evidence += ";" + extra;
    e.involved = failing;
    const bool ok = failing.empty();
    e.conclusion = [ok] { return ok; };
    return e;
  }

  const Lattice& quotient_lattice(SubgroupId n) {
    auto& slot = quotients_[n.value];
    if (!slot.lattice) {
      auto q = lat_.table().quotient(lat_.table().full(), lat_.at(n).elements);
      slot.map = q;
      slot.lattice = std::make_unique<Lattice>(Lattice::build(std::make_shared<const CayleyTable>(std::move(q.table)), cfg_.config.caps));
    }
    return *slot.lattice;
  }

  Eval l21i(const Formation& f) {
    const ElementSet res = lat_.at(residual(lat_, f).residual).elements;
    std::size_t applicable = 0;
    std::vector<SubgroupId> failing;
    for (auto n : lat_.normal_subgroups()) {
      if (n == lat_.trivial() || n == lat_.top()) continue;
      ++applicable;
      const Lattice& q = quotient_lattice(n);
      const ElementSet image = quotients_[n.value].map->image(res);
      if (!(q.at(residual(q, f).residual).elements == image)) failing.push_back(n);
    }
    return instances(applicable, failing);
  }

  Eval l21ii(const Formation& f) {
    const SubgroupId res = residual(lat_, f).residual;
    std::size_t applicable = 0;
    std::vector<SubgroupId> failing;
    std::map<std::uint32_t, SubgroupId> u_residuals;
    for (auto n : lat_.normal_subgroups()) {
      if (n == lat_.trivial() || n == lat_.top()) continue;
      const SubgroupId gn = ctx_.join(res, n);
      for (auto u : lat_.ids()) {
        if (u == lat_.top() || ctx_.join(n, u) != lat_.top()) continue;
        ++applicable;
        auto it = u_residuals.find(u.value);
        if (it == u_residuals.end()) {
          const auto& iv = ctx_.interval(u);
          it = u_residuals.emplace(u.value, iv.lift(residual(iv.lattice, f).residual)).first;
        }
        if (ctx_.join(it->second, n) != gn) failing.push_back(u);
      }
    }
    return instances(applicable, failing);
  }

  Eval l22(const Formation& f) {
    const auto flags = f.flags();
    if (!flags.saturated || !flags.contains_nilpotents) {
      Eval e;
      e.evidence = "formation_not_saturated_with_nilpotents";
      return e;
    }
    const SubgroupId phi = lat_.frattini();
    std::size_t applicable = 0;
    std::vector<SubgroupId> failing;
    for (auto n : lat_.normal_subgroups()) {
      if (n == lat_.trivial()) continue;
      const SubgroupId m = lat_.meet(n, phi);
      const CayleyTable& t = lat_.table();
      if (!f.member(t.quotient(lat_.at(n).elements, lat_.at(m).elements).table)) continue;
      ++applicable;
      if (!ctx_.member(f, n)) failing.push_back(n);
    }
    return instances(applicable, failing, "frattini=#" + std::to_string(phi.value));
  }

  Eval l23(const Formation& f) {
    if (!sigma_n_of(f)) {
      Eval e;
      e.evidence = "formation_not_k_lattice";
      return e;
    }
    std::size_t applicable = 0;
    std::vector<SubgroupId> failing;
    for (auto h : f_critical_subgroups(ctx_, f)) {
      if (!top_over_fitting_in(f, h)) continue;
      ++applicable;
      if (!is_schmidt(ctx_, h)) failing.push_back(h);
    }
    return instances(applicable, failing);
  }

  Eval l24i(const Formation& f) {
    const auto sigma = sigma_n_of(f);
    if (!sigma) {
      Eval e;
      e.evidence = "formation_not_k_lattice";
      return e;
    }
    std::size_t applicable = 0;
    std::vector<SubgroupId> failing;
    for (auto h : lat_.ids()) {
      if (h == lat_.trivial()) continue;
      const PrimeSet primes = prime_divisors(lat_.at(h).order);
      if (sigma->blocks_meeting(primes).size() != 1) continue;
      if (!is_soluble(ctx_.subtable(h))) continue;
      ++applicable;
      if (!ctx_.member(f, h)) failing.push_back(h);
    }
    return instances(applicable, failing);
  }

  Eval l24ii(const Formation& f) {
    if (!sigma_n_of(f)) {
      Eval e;
      e.evidence = "formation_not_k_lattice";
      return e;
    }
    std::vector<SubgroupId> cands;
    const ElementSet& ks = ctx_.subnormal_bits(f);
    ks.for_each([&](std::size_t i) {
      const SubgroupId id{static_cast<std::uint32_t>(i)};
      if (ctx_.member(f, id)) cands.push_back(id);
    });
    std::size_t applicable = 0;
    std::vector<SubgroupId> failing;
    for (std::size_t i = 0; i < cands.size(); ++i) {
      for (std::size_t j = i + 1; j < cands.size(); ++j) {
        if (lat_.leq(cands[i], cands[j]) || lat_.leq(cands[j], cands[i])) continue;
        ++applicable;
        const SubgroupId join = ctx_.join(cands[i], cands[j]);
        if (!ctx_.member(f, join)) {
          failing.push_back(cands[i]);
          failing.push_back(cands[j]);
        }
      }
    }
    return instances(applicable, failing);
  }

  Eval l25(const PrimePartition& sigma) {
    Eval e;
    e.hypothesis = is_sigma_soluble(lat_, sigma);
    if (!e.hypothesis) {
      e.evidence = "not_sigma_soluble";
      return e;
    }
    const PrimeSet primes = prime_divisors(lat_.at(lat_.top()).order);
    std::string found;
    bool all = true;
    for (auto key : sigma.blocks_meeting(primes)) {
      const PrimeSet pi = sigma.restrict(key, primes);
      const auto h = hall(lat_, pi);
      found += (found.empty() ? "" : ",") + pi_to_string(pi) + (h ? ":#" + std::to_string(h->value) : std::string(":ABSENT"));
      if (!h) all = false;
    }
    e.evidence = "hall=" + (found.empty() ? std::string("-") : found);
    e.conclusion = [all] { return all; };
    return e;
  }

  Eval l26(const PrimePartition& sigma) {
    const ElementSet& ss = ctx_.subnormal_bits(Formation::sigma_nilpotent(sigma));
    std::size_t applicable = 0;
    std::vector<SubgroupId> failing;
    ss.for_each([&](std::size_t i) {
      const SubgroupId a{static_cast<std::uint32_t>(i)};
      if (a == lat_.trivial() || lat_.at(a).normal) return;
      const Lattice& al = ctx_.interval(a).lattice;
      const bool nil = is_sigma_nilpotent(ctx_.subtable(a), sigma);
      if (!nil && !is_sigma_metanilpotent(al, sigma)) return;
      ++applicable;
      const SubgroupId closure = lat_.normal_closure(a);
      const Lattice& cl = ctx_.interval(closure).lattice;
      bool ok = is_sigma_metanilpotent(cl, sigma);
      if (nil) ok = ok && is_sigma_nilpotent(ctx_.subtable(closure), sigma);
      if (!ok) failing.push_back(a);
    });
    return instances(applicable, failing);
  }

  Eval l27(const PrimePartition& sigma) {
    const ElementSet& ss = ctx_.subnormal_bits(Formation::sigma_nilpotent(sigma));
    std::size_t applicable = 0;
    std::vector<SubgroupId> failing;
    ss.for_each([&](std::size_t i) {
      const SubgroupId a{static_cast<std::uint32_t>(i)};
      if (a == lat_.trivial()) return;
      const auto keys = sigma.blocks_meeting(prime_divisors(lat_.at(a).order));
      if (keys.size() != 1) return;
      ++applicable;
      if (!lat_.leq(a, o_sigma(lat_, sigma, keys.front()))) failing.push_back(a);
    });
    return instances(applicable, failing);
  }

  Eval klat(const Formation& f, bool meet) {
    Eval e;
    const KLatticeResult r = ctx_.search(f).k_lattice_check();
    const auto failure = meet ? r.meet_failure : r.join_failure;
    const bool closed = meet ? r.meet_closed : r.join_closed;
    // meet closure needs only a hereditary formation; join closure is the
    // K-lattice property, asserted for N, N_sigma and the class of all groups
    e.hypothesis = meet ? f.flags().hereditary
                        : (f.kind() == FormationKind::Nilpotent || f.kind() == FormationKind::SigmaNilpotent ||
                           f.kind() == FormationKind::All);
    e.evidence = "k_subnormal=" + std::to_string(ctx_.subnormal_bits(f).count()) + (closed ? ";closed=true" : ";closed=false");
    if (failure) {
      e.evidence += ";pair=#" + std::to_string(failure->first.value) + ",#" + std::to_string(failure->second.value);
      e.involved = {failure->first, failure->second};
    }
    e.conclusion = [closed] { return closed; };
    return e;
  }

  struct QuotientSlot {
    std::optional<CayleyTable::Quotient> map;
    std::unique_ptr<Lattice> lattice;
  };

  const ResolvedConfig& cfg_;
  const CorpusEntry& entry_;
  GroupContext& ctx_;
  const Lattice& lat_;
  std::vector<CheckOutcome> out_;
  std::optional<ElementSet> subnormal_;
  std::optional<std::vector<SubgroupId>> schmidts_;
  std::map<std::uint32_t, QuotientSlot> quotients_;
};

// ---------------------------------------------------------------------------
// Corpus run and report

struct VerificationReport {
  ResolvedConfig config;
  std::size_t group_count = 0;
  std::vector<std::pair<std::string, std::string>> load_errors;
  std::vector<CheckOutcome> outcomes;
  double load_ms = 0;
  double lattice_ms = 0;
  double check_ms = 0;
  double wall_ms = 0;

  std::size_t count(Verdict v) const {
    return static_cast<std::size_t>(std::count_if(outcomes.begin(), outcomes.end(), [v](const auto& o) { return o.verdict == v; }));
  }
  bool has_counterexample() const { return count(Verdict::Counterexample) > 0; }
};

/// Outcomes of one group, or SKIPPED_CAP records when the group is over a cap.
inline std::vector<CheckOutcome> verify_group(const ResolvedConfig& cfg, const CorpusEntry& entry, double* lattice_ms = nullptr,
                                              double* check_ms = nullptr) {
  using Clock = std::chrono::steady_clock;
  const auto t0 = Clock::now();
  std::unique_ptr<GroupContext> ctx;
  std::string cap_reason;
  try {
    if (entry.group.order() > cfg.config.caps.elements) {
      throw CapExceeded("element enumeration", cfg.config.caps.elements, entry.group.order());
    }
    ctx = std::make_unique<GroupContext>(Lattice::build(entry.group, cfg.config.caps));
  } catch (const CapExceeded& e) {
    cap_reason = e.what();
  }
  const auto t1 = Clock::now();
  std::vector<CheckOutcome> out;
  if (ctx) {
    out = GroupVerifier(cfg, entry, *ctx).run();
  } else {
    // one record per (check, formation) the group would have produced
    const CorpusEntry trivial{entry.id, entry.description, PermGroup(1, {})};
    GroupContext tctx(Lattice::build(trivial.group));
    out = GroupVerifier(cfg, trivial, tctx).run();
    std::string reason = cap_reason;
    std::replace(reason.begin(), reason.end(), '\t', ' ');
    std::replace(reason.begin(), reason.end(), ' ', '_');
    for (auto& o : out) {
      o.hypothesis = Hypothesis::Vacuous;
      o.conclusion = Conclusion::NotEvaluated;
      o.verdict = Verdict::SkippedCap;
      o.evidence = "cap:" + reason;
      o.detail.clear();
    }
  }
  const auto t2 = Clock::now();
  if (lattice_ms) *lattice_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
  if (check_ms) *check_ms = std::chrono::duration<double, std::milli>(t2 - t1).count();
  return out;
}

/// Verifies every entry with a pool of cfg.jobs workers. Output order is
/// (group id, check, formation) regardless of scheduling.
inline VerificationReport run_corpus(const VerifyConfig& config, std::vector<CorpusEntry> entries,
                                     std::vector<std::pair<std::string, std::string>> load_errors = {},
                                     double load_ms = 0) {
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  VerificationReport report;
  report.config = resolve_config(config);
  report.load_errors = std::move(load_errors);
  report.load_ms = load_ms;
  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
  report.group_count = entries.size();

  std::vector<std::vector<CheckOutcome>> slots(entries.size());
  std::vector<double> lat_ms(entries.size()), chk_ms(entries.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < entries.size(); i = next++) {
      slots[i] = verify_group(report.config, entries[i], &lat_ms[i], &chk_ms[i]);
    }
  };
  const unsigned n = std::max(1u, std::min<unsigned>(config.jobs, static_cast<unsigned>(std::max<std::size_t>(1, entries.size()))));
  std::vector<std::thread> pool;
  for (unsigned k = 1; k < n; ++k) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  for (std::size_t i = 0; i < entries.size(); ++i) {
    auto& s = slots[i];
    std::stable_sort(s.begin(), s.end(), [](const auto& a, const auto& b) {
      return std::tie(a.check_rank, a.formation_rank) < std::tie(b.check_rank, b.formation_rank);
    });
    report.lattice_ms += lat_ms[i];
    report.check_ms += chk_ms[i];
    for (auto& o : s) report.outcomes.push_back(std::move(o));
  }
  report.wall_ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  return report;
}

inline std::string counterexample_file_name(const CheckOutcome& o) {
  std::string s = o.check_id + "_" + o.group_id + "_" + o.formation + ".txt";
  for (char& c : s) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '_' || c == '-')) c = '_';
  }
  return s;
}

/// Line-oriented report. `evidence_dir` (relative name) is referenced from
/// counterexample records.
inline std::string format_report(const VerificationReport& r, const std::string& evidence_dir = "", bool with_timing = true) {
  std::ostringstream out;
  const auto& c = r.config.config;
  out << "# formalat verification report\n";
  out << "# corpus: " << c.corpus_label << " (" << r.group_count << " groups)\n";
  out << "# checks:";
  for (const auto& id : r.config.checks) out << ' ' << id;
  out << "\n# formations:";
  for (const auto& f : c.formations) out << ' ' << f.to_string();
  out << "\n# partitions:";
  for (const auto& s : c.sigmas) out << ' ' << s.to_string();
  out << "\n# caps: elements=" << c.caps.elements << " subgroups=" << c.caps.subgroups << " table=" << c.caps.table << '\n';
  out << "# force: " << (c.force ? "yes" : "no") << '\n';
  for (const auto& n : r.config.notes) out << "# note: " << n << '\n';
  for (const auto& [file, msg] : r.load_errors) out << "# load-error: " << file << ": " << msg << '\n';
  out << "check-id\tgroup-id\tformation\thypothesis\tconclusion\tverdict\tevidence\n";
  for (const auto& o : r.outcomes) {
    out << o.check_id << '\t' << o.group_id << '\t' << o.formation << '\t' << to_string(o.hypothesis) << '\t'
        << to_string(o.conclusion) << '\t' << to_string(o.verdict) << '\t' << o.evidence;
    if (o.verdict == Verdict::Counterexample && !evidence_dir.empty()) {
      out << ";file=" << evidence_dir << '/' << counterexample_file_name(o);
    }
    out << '\n';
  }

  out << "# summary\n";
  const std::array<Verdict, 4> verdicts{Verdict::Confirmed, Verdict::Vacuous, Verdict::Counterexample, Verdict::SkippedCap};
  for (const auto& id : r.config.checks) {
    out << "# " << id;
    for (auto v : verdicts) {
      const auto k = std::count_if(r.outcomes.begin(), r.outcomes.end(),
                                   [&](const auto& o) { return o.check_id == id && o.verdict == v; });
      out << ' ' << to_string(v) << '=' << k;
    }
    out << '\n';
  }
  out << "# total";
  for (auto v : verdicts) out << ' ' << to_string(v) << '=' << r.count(v);
  out << '\n';
  if (with_timing) {
    out << "# timing load_ms=" << static_cast<long long>(r.load_ms) << " lattice_ms=" << static_cast<long long>(r.lattice_ms)
        << " checks_ms=" << static_cast<long long>(r.check_ms) << " wall_ms=" << static_cast<long long>(r.wall_ms) << '\n';
  }
  return out.str();
}

/// Writes the report and one evidence file per counterexample into
/// `<report>.evidence/`.
inline void write_report(const VerificationReport& r, const std::filesystem::path& path) {
  const std::string dir_name = path.filename().string() + ".evidence";
  const bool any = r.has_counterexample();
  if (any) {
    const auto dir = path.parent_path() / dir_name;
    std::filesystem::create_directories(dir);
    for (const auto& o : r.outcomes) {
      if (o.verdict != Verdict::Counterexample) continue;
      std::ofstream ev(dir / counterexample_file_name(o), std::ios::binary);
      ev << o.detail;
    }
  }
  if (!path.parent_path().empty()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  out << format_report(r, any ? dir_name : "");
  if (!out) throw Error("cannot write report " + path.string());
}

/// Report text up to (not including) the timing block.
inline std::string strip_timing(const std::string& report) {
  const auto pos = report.find("\n# timing");
  return pos == std::string::npos ? report : report.substr(0, pos + 1);
}

}  // namespace formalat
