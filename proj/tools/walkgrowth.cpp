// walkgrowth: growth constants of lattice walks confined to an orthant.
//
//   walkgrowth analyze "N,SW,S,SE"
//   walkgrowth survey --format csv
//   walkgrowth verify --suite census
//   walkgrowth count "N,E,S,W" --nmax 20

#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "walkgrowth/verify.hpp"
#include "walkgrowth/walkgrowth.hpp"

namespace {

enum Exit { kOk = 0, kFailure = 1, kParse = 2, kInessential = 3, kIntegrity = 4 };

int run_analyze(const std::string& model, const walkgrowth::AnalyzeOptions& opt) {
  const auto s = walkgrowth::parse_stepset(model);
  const auto report = walkgrowth::analyze(s, opt);
  std::cout << walkgrowth::report_json(report).dump(2) << '\n';
  return kOk;
}

int run_survey(const std::string& format) {
  const auto rows = walkgrowth::enumerate_small_models();
  if (format == "csv")
    walkgrowth::write_survey_csv(std::cout, rows);
  else
    std::cout << walkgrowth::survey_json(rows).dump(2) << '\n';
  return kOk;
}

int run_verify(const std::vector<std::string>& only) {
  bool all = true;
  std::size_t ran = 0;
  for (const auto& suite : walkgrowth::verify::suites()) {
    if (!only.empty() && std::find(only.begin(), only.end(), suite.name) == only.end()) continue;
    ++ran;
    const auto r = walkgrowth::verify::run(suite);
    std::printf("%-20s %s  %7.3fs  %s\n", r.name.c_str(), r.passed ? "pass" : "FAIL", r.seconds, r.summary.c_str());
    for (const auto& f : r.failures) std::printf("    %s\n", f.c_str());
    all &= r.passed;
  }
  if (ran == 0) {
    std::cerr << "no suite matched\n";
    return kFailure;
  }
  return all ? kOk : kFailure;
}

int run_count(const std::string& model, std::size_t n_max) {
  const auto s = walkgrowth::parse_stepset(model);
  walkgrowth::write_csv(std::cout, walkgrowth::count_orthant(s, n_max));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Growth constants of orthant lattice walks"};
  app.require_subcommand(1);

  std::string model;
  walkgrowth::AnalyzeOptions aopt;
  std::string format = "json";
  auto* analyze = app.add_subcommand("analyze", "Bounds, enumeration and verdict for one model (JSON)");
  analyze->add_option("model", model, "Step set, e.g. \"N,SW,S,SE\" or \"(0,1);(1,-1)x2\"")->required();
  analyze->add_option("--nmax", aopt.n_max, "Enumeration length (default 24 in 2D, 16 in 3D)");
  analyze->add_option("--grid", aopt.grid, "Theta grid points for the sanity sweep")->check(CLI::Range(2, 1000000));
  analyze->add_option("--tol", aopt.tolerance, "Ledger resolution tolerance")->check(CLI::PositiveNumber);
  analyze->add_option("--format", format, "Output format")->check(CLI::IsMember({"json"}));
  analyze->add_flag("--force", aopt.force, "Analyze models that fail the essentiality test");

  std::string survey_format = "csv";
  auto* survey = app.add_subcommand("survey", "All non-trivial small-step quarter-plane models");
  survey->add_option("--format", survey_format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  std::vector<std::string> suites;
  auto* verify = app.add_subcommand("verify", "Run property suites");
  verify->add_option("--suite", suites, "Suite name (repeatable); all when omitted");

  std::size_t count_nmax = 24;
  auto* count = app.add_subcommand("count", "Exact orthant walk counts as CSV");
  count->add_option("model", model, "Step set")->required();
  count->add_option("--nmax", count_nmax, "Largest length");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kParse;
  }

  try {
    if (*analyze) return run_analyze(model, aopt);
    if (*survey) return run_survey(survey_format);
    if (*verify) return run_verify(suites);
    if (*count) return run_count(model, count_nmax);
  } catch (const walkgrowth::parse_error& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kParse;
  } catch (const walkgrowth::inessential_model& e) {
    std::cerr << e.what() << '\n';
    return kInessential;
  } catch (const walkgrowth::integrity_error& e) {
    std::cerr << "integrity error: " << e.what() << '\n';
    return kIntegrity;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kFailure;
}
