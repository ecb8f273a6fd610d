#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "support.hpp"

using namespace formalat;

namespace {

VerifyConfig base_config() {
  VerifyConfig cfg;
  cfg.formations = {Formation::nilpotent(), Formation::parse("Nsigma:2,3|*")};
  cfg.sigmas = {PrimePartition::parse("2,3|*"), PrimePartition::parse("2|3|*")};
  return cfg;
}

std::vector<CorpusEntry> small_corpus() {
  std::vector<CorpusEntry> out;
  for (auto& e : builtin_corpus()) {
    if (e.group.order() <= 24 || e.id == "A5") out.push_back(e);
  }
  return out;
}

const CheckOutcome& find(const VerificationReport& r, const std::string& check, const std::string& group,
                         const std::string& formation) {
  for (const auto& o : r.outcomes) {
    if (o.check_id == check && o.group_id == group && o.formation == formation) return o;
  }
  throw std::runtime_error("no outcome " + check + " " + group + " " + formation);
}

}  // namespace

TEST_CASE("check selection") {
  CHECK(expand_checks({"all"}).size() == all_check_ids().size());
  CHECK(expand_checks({"theorems"}) == std::vector<std::string>{"A1", "A2", "B1", "B2"});
  CHECK(expand_checks({"B1", "A1"}) == std::vector<std::string>{"A1", "B1"});
  CHECK_THROWS_AS(expand_checks({"Z9"}), ConfigError);
}

TEST_CASE("configuration errors") {
  VerifyConfig cfg = base_config();
  cfg.formations = {Formation::abelian()};
  cfg.checks = {"A1"};
  CHECK_THROWS_AS(resolve_config(cfg), ConfigError);
  cfg.force = true;
  CHECK_NOTHROW(resolve_config(cfg));

  VerifyConfig klat = base_config();
  klat.formations = {Formation::abelian(), Formation::parse("piprime:2")};
  klat.checks = {"klattice"};
  CHECK_NOTHROW(resolve_config(klat));

  VerifyConfig b2 = base_config();
  b2.formations = {Formation::soluble()};
  b2.checks = {"B2"};
  CHECK_THROWS_AS(resolve_config(b2), ConfigError);
  b2.sigma_check = PrimePartition::finest();
  CHECK_NOTHROW(resolve_config(b2));

  VerifyConfig c16 = base_config();
  c16.checks = {"C1.6"};
  CHECK_THROWS_AS(resolve_config(c16), ConfigError);
  c16.checks = {"all"};
  const auto r = resolve_config(c16);
  CHECK(std::find(r.checks.begin(), r.checks.end(), "C1.6") == r.checks.end());
  c16.force = true;
  const auto forced = resolve_config(c16);
  CHECK(std::find(forced.checks.begin(), forced.checks.end(), "C1.6") != forced.checks.end());
  bool note = false;
  for (const auto& n : forced.notes) note = note || n.find("C1.6 hypothesis mismatch") != std::string::npos;
  CHECK(note);

  VerifyConfig none = base_config();
  none.formations.clear();
  CHECK_THROWS_AS(resolve_config(none), ConfigError);
}

TEST_CASE("spot outcomes") {
  VerifyConfig cfg = base_config();
  cfg.force = true;
  const auto report = run_corpus(cfg, small_corpus());
  CHECK_FALSE(report.has_counterexample());

  const auto& a1 = find(report, "A1", "S4", "N");
  CHECK(a1.hypothesis == Hypothesis::Fails);
  CHECK(a1.conclusion == Conclusion::NotEvaluated);

  const auto& a2 = find(report, "A2", "S3", "N");
  CHECK(a2.verdict == Verdict::Confirmed);
  const auto& a2nil = find(report, "A2", "Q8", "N");
  CHECK(a2nil.hypothesis == Hypothesis::Holds);
  CHECK(a2nil.verdict == Verdict::Confirmed);

  const auto& b1 = find(report, "B1", "SL2_3", "N");
  CHECK(b1.verdict == Verdict::Confirmed);
  CHECK(b1.evidence.find("lhs=false;rhs=false") != std::string::npos);
  CHECK(find(report, "B1", "C07", "N").evidence.find("lhs=true;rhs=true") != std::string::npos);
  CHECK(find(report, "B1", "S3", "N").evidence.find("schmidt_abelian_sylows") != std::string::npos);

  const auto& b2 = find(report, "B2", "A5", "N");
  CHECK(b2.hypothesis == Hypothesis::Fails);

  CHECK(find(report, "C1.1", "S3", "N").verdict == Verdict::Confirmed);
  CHECK(find(report, "C1.5", "S3", "N").verdict == Verdict::Confirmed);
  CHECK(find(report, "C1.5", "C12", "N").hypothesis == Hypothesis::Fails);
  CHECK(find(report, "C1.4", "A5", "N").hypothesis == Hypothesis::Fails);

  const auto& l25 = find(report, "L2.5", "S4", "Nsigma:2|3|*");
  CHECK(l25.verdict == Verdict::Confirmed);
  CHECK(l25.evidence.find("2:#") != std::string::npos);
  CHECK(l25.evidence.find("3:#") != std::string::npos);
}

TEST_CASE("verdict algebra and summary counts") {
  VerifyConfig cfg = base_config();
  const auto report = run_corpus(cfg, small_corpus());
  for (const auto& o : report.outcomes) {
    CHECK((o.verdict == Verdict::Counterexample) ==
          (o.hypothesis == Hypothesis::Holds && o.conclusion == Conclusion::Fails));
    if (o.conclusion == Conclusion::NotEvaluated) CHECK(o.hypothesis != Hypothesis::Holds);
  }
  const std::string text = format_report(report);
  std::size_t records = 0;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] != '#' && line.rfind("check-id", 0) != 0) ++records;
  }
  CHECK(records == report.outcomes.size());
  std::size_t total = 0;
  for (auto v : {Verdict::Confirmed, Verdict::Vacuous, Verdict::Counterexample, Verdict::SkippedCap}) total += report.count(v);
  CHECK(total == report.outcomes.size());
}

TEST_CASE("reports do not depend on scheduling") {
  VerifyConfig one = base_config();
  VerifyConfig four = base_config();
  four.jobs = 4;
  const auto a = format_report(run_corpus(one, small_corpus()), "", false);
  const auto b = format_report(run_corpus(four, small_corpus()), "", false);
  CHECK(a == b);
  auto shuffled = small_corpus();
  std::reverse(shuffled.begin(), shuffled.end());
  CHECK(format_report(run_corpus(one, shuffled), "", false) == a);
  CHECK(strip_timing(format_report(run_corpus(one, small_corpus()))) == a);
}

TEST_CASE("groups over a cap are kept as skipped") {
  VerifyConfig cfg = base_config();
  cfg.caps.table = 20;
  std::vector<CorpusEntry> corpus{{"S4", "", families::symmetric(4)}, {"S3", "", families::symmetric(3)}};
  const auto report = run_corpus(cfg, corpus);
  std::size_t skipped = 0;
  for (const auto& o : report.outcomes) {
    if (o.group_id == "S4") {
      CHECK(o.verdict == Verdict::SkippedCap);
      ++skipped;
    } else {
      CHECK(o.verdict != Verdict::SkippedCap);
    }
  }
  CHECK(skipped > 0);
}

TEST_CASE("counterexample evidence files") {
  VerificationReport r;
  r.config = resolve_config(base_config());
  CheckOutcome o;
  o.check_id = "A1";
  o.group_id = "X";
  o.formation = "N";
  o.hypothesis = Hypothesis::Holds;
  o.conclusion = Conclusion::Fails;
  o.verdict = Verdict::Counterexample;
  o.evidence = "critical=0";
  o.detail = "degree 3\n";
  r.outcomes.push_back(o);
  const auto dir = std::filesystem::temp_directory_path() / "formalat_test_report";
  std::filesystem::remove_all(dir);
  write_report(r, dir / "report.tsv");
  CHECK(std::filesystem::exists(dir / "report.tsv.evidence" / counterexample_file_name(o)));
  std::ifstream in(dir / "report.tsv");
  std::ostringstream text;
  text << in.rdbuf();
  CHECK(text.str().find("file=report.tsv.evidence/A1_X_N.txt") != std::string::npos);
}
