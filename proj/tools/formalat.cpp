// formalat: command-line front end.
//
//   formalat analyze <file> [--formation F] [--sigma P]
//   formalat subnormal <file> --gen "(1 2)" ... [--formation F]
//   formalat verify [--corpus dir|builtin] [--checks list] [--formation F]... [--sigma P]...
//                   [--sigma-check P] [--report path] [--jobs n] [--force]
//   formalat corpus --out dir

#include <chrono>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "formalat.hpp"

using namespace formalat;

namespace {

constexpr int kConfigError = 2;

std::string yes_no(bool b) { return b ? "yes" : "no"; }

void row(const std::string& key, const std::string& value) { std::cout << key << '\t' << value << '\n'; }

std::string orders_of(const Lattice& lat, const std::vector<SubgroupId>& ids) {
  std::string s;
  for (auto id : ids) s += (s.empty() ? "" : ",") + std::to_string(lat.at(id).order);
  return s.empty() ? "-" : s;
}

int analyze(const std::string& file, const std::optional<std::string>& formation, const std::optional<std::string>& sigma_text) {
  const Caps caps = Caps::from_env();
  const PermGroup g = load_group_file(file);
  std::optional<Formation> f;
  if (formation) f = Formation::parse(*formation);
  std::optional<PrimePartition> sigma;
  if (sigma_text) sigma = PrimePartition::parse(*sigma_text);

  GroupContext ctx(Lattice::build(g, caps));
  const Lattice& lat = ctx.lattice();
  const CayleyTable& t = lat.table();
  row("degree", std::to_string(g.degree()));
  row("order", std::to_string(g.order()));
  row("subgroups", std::to_string(lat.size()));
  row("maximal", std::to_string(lat.maximal_subgroups().size()));
  row("normal", orders_of(lat, lat.normal_subgroups()));
  row("frattini", std::to_string(lat.at(lat.frattini()).order));
  row("fitting", std::to_string(lat.at(fitting(lat)).order));
  row("derived", std::to_string(derived_subgroup(t).count()));
  for (auto p : prime_divisors(g.order())) row("sylow " + std::to_string(p), std::to_string(lat.at(sylow(lat, p)).order));
  row("abelian", yes_no(is_abelian(t)));
  row("nilpotent", yes_no(is_nilpotent(t)));
  row("soluble", yes_no(is_soluble(t)));
  const auto s = schmidt_structure(ctx, lat.top());
  if (s) {
    row("schmidt", "yes p=" + std::to_string(s->p) + " q=" + std::to_string(s->q) +
                       (s->abelian_sylows() ? " abelian-sylows" : " nonabelian-sylow"));
  } else {
    row("schmidt", "no");
  }
  row("schmidt-subgroups", std::to_string(schmidt_subgroups(ctx).size()));
  row("miller-moreno", yes_no(is_miller_moreno(ctx, lat.top())));
  if (f) {
    row("formation", f->to_string());
    row("member", yes_no(ctx.in_group_formation(*f)));
    row("residual", std::to_string(lat.at(residual(lat, *f).residual).order));
    row("radical", std::to_string(lat.at(radical(lat, *f)).order));
    row("k-subnormal", std::to_string(ctx.subnormal_bits(*f).count()));
  }
  if (sigma) {
    row("sigma", sigma->to_string());
    row("sigma-nilpotent", yes_no(is_sigma_nilpotent(t, *sigma)));
    row("sigma-soluble", yes_no(is_sigma_soluble(lat, *sigma)));
    row("sigma-fitting", std::to_string(lat.at(sigma_fitting(lat, *sigma)).order));
  }
  return 0;
}

int subnormal(const std::string& file, const std::vector<std::string>& gens, const std::string& formation) {
  const Caps caps = Caps::from_env();
  const PermGroup g = load_group_file(file);
  const Formation f = Formation::parse(formation);
  const Lattice lat = Lattice::build(g, caps);
  const auto& perms = *lat.table().perms();
  std::vector<Elem> elems;
  for (const auto& text : gens) {
    const Perm p = Perm::from_cycles(g.degree(), text);
    const auto it = std::find(perms.begin(), perms.end(), p);
    if (it == perms.end()) throw ConfigError("generator " + p.to_cycles() + " is not in the group");
    elems.push_back(static_cast<Elem>(it - perms.begin()));
  }
  const SubgroupId a = lat.generated_by(elems);
  SubnormalitySearch search(lat, f);
  const auto chain = search.witness(a);
  if (!chain) {
    std::cout << "NO\n";
    return 0;
  }
  std::cout << "YES\n";
  const CayleyTable& t = lat.table();
  for (std::size_t i = 0; i < chain->members.size(); ++i) {
    const SubgroupId m = chain->members[i];
    std::cout << "#" << m.value << " order " << lat.at(m).order;
    if (i + 1 < chain->members.size()) {
      const SubgroupId up = chain->members[i + 1];
      std::cout << "  " << to_string(chain->steps[i]);
      if (chain->steps[i] == StepKind::FQuotient) {
        const ElementSet core = t.core(lat.at(m).elements, lat.at(up).generators);
        std::cout << " core " << core.count() << " quotient " << lat.at(up).order / core.count();
      }
    }
    std::cout << '\n';
  }
  return 0;
}

int verify(VerifyConfig cfg, const std::string& corpus, const std::string& report_path) {
  using Clock = std::chrono::steady_clock;
  const auto t0 = Clock::now();
  std::vector<CorpusEntry> entries;
  std::vector<std::pair<std::string, std::string>> errors;
  if (corpus == "builtin") {
    entries = builtin_corpus();
  } else {
    auto loaded = load_corpus(corpus, cfg.caps);
    entries = std::move(loaded.entries);
    errors = std::move(loaded.errors);
  }
  cfg.corpus_label = corpus;
  const double load_ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
  const VerificationReport report = run_corpus(cfg, std::move(entries), std::move(errors), load_ms);
  if (report_path.empty() || report_path == "-") {
    std::cout << format_report(report);
  } else {
    write_report(report, report_path);
  }
  std::cerr << "groups " << report.group_count << ", outcomes " << report.outcomes.size() << ", confirmed "
            << report.count(Verdict::Confirmed) << ", vacuous " << report.count(Verdict::Vacuous) << ", skipped "
            << report.count(Verdict::SkippedCap) << ", counterexamples " << report.count(Verdict::Counterexample) << '\n';
  for (const auto& [file, msg] : report.load_errors) std::cerr << "load error: " << file << ": " << msg << '\n';
  return report.has_counterexample() ? 1 : 0;
}

std::vector<std::string> split_commas(const std::vector<std::string>& items) {
  std::vector<std::string> out;
  for (const auto& item : items) {
    std::stringstream in(item);
    std::string part;
    while (std::getline(in, part, ',')) {
      if (!part.empty()) out.push_back(part);
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite group lattices, K-F-subnormality and corpus verification"};
  app.require_subcommand(1);

  auto* an = app.add_subcommand("analyze", "structural profile of one group file");
  std::string an_file;
  std::optional<std::string> an_formation, an_sigma;
  an->add_option("file", an_file, "group file")->required();
  an->add_option("--formation", an_formation, "formation descriptor, e.g. N or Nsigma:2,3|*");
  an->add_option("--sigma", an_sigma, "prime partition, e.g. 2,3|*");

  auto* sn = app.add_subcommand("subnormal", "decide K-F-subnormality of a subgroup");
  std::string sn_file, sn_formation = "N";
  std::vector<std::string> sn_gens;
  sn->add_option("file", sn_file, "group file")->required();
  sn->add_option("--gen", sn_gens, "subgroup generator in cycle notation (repeatable)")->required();
  sn->add_option("--formation", sn_formation, "formation descriptor");

  auto* vf = app.add_subcommand("verify", "run the checks over a corpus");
  std::string vf_corpus = "builtin", vf_report;
  std::vector<std::string> vf_checks{"all"};
  std::vector<std::string> vf_formations{"N", "Nsigma:2,3|*"};
  std::vector<std::string> vf_sigmas{"2,3|*"};
  std::optional<std::string> vf_sigma_check;
  unsigned vf_jobs = 1;
  bool vf_force = false;
  vf->add_option("--corpus", vf_corpus, "corpus directory or 'builtin'");
  vf->add_option("--checks", vf_checks, "check ids or groups: all, theorems, corollaries, lemmas, klattice");
  vf->add_option("--formation", vf_formations, "formation descriptor (repeatable)");
  vf->add_option("--sigma", vf_sigmas, "prime partition (repeatable)");
  vf->add_option("--sigma-check", vf_sigma_check, "partition for the length-3 chain solubility check");
  vf->add_option("--report", vf_report, "report path ('-' or empty for stdout)");
  vf->add_option("--jobs", vf_jobs, "worker threads");
  vf->add_flag("--force", vf_force, "run checks whose formation hypotheses are not met");

  auto* cp = app.add_subcommand("corpus", "write the builtin corpus and its manifest");
  std::string cp_out;
  cp->add_option("--out", cp_out, "output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigError;
  }

  try {
    if (*an) return analyze(an_file, an_formation, an_sigma);
    if (*sn) return subnormal(sn_file, sn_gens, sn_formation);
    if (*vf) {
      VerifyConfig cfg;
      cfg.caps = Caps::from_env();
      cfg.checks = split_commas(vf_checks);
      for (const auto& f : vf_formations) cfg.formations.push_back(Formation::parse(f));
      for (const auto& s : vf_sigmas) cfg.sigmas.push_back(PrimePartition::parse(s));
      if (vf_sigma_check) cfg.sigma_check = PrimePartition::parse(*vf_sigma_check);
      cfg.force = vf_force;
      cfg.jobs = vf_jobs;
      return verify(cfg, vf_corpus, vf_report);
    }
    if (*cp) {
      std::cout << write_corpus(builtin_corpus(), cp_out, Caps::from_env());
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfigError;
  }
  return kConfigError;
}
