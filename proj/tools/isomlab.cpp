#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "isomlab/error.hpp"
#include "isomlab/report.hpp"
#include "isomlab/suites.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Isometry-group verification suites for invariant matrix norms"};
  app.set_version_flag("--version", std::string(isomlab::library_version()));

  std::string suite = "all";
  isomlab::SuiteConfig config;
  std::vector<int> n_values;
  std::vector<std::string> norms;
  std::vector<std::string> tol_pairs;
  std::string output;
  std::string format = "json";

  app.add_option("suite", suite, "invariance | dimension | decompose | skew | cnr | all")
      ->check(CLI::IsMember({"invariance", "dimension", "decompose", "skew", "cnr", "all"}));
  app.add_option("--n", n_values, "matrix sizes (repeat or comma-separate)")->delimiter(',');
  // Norm grammar uses commas inside cspec, so --norm is repeated rather than split.
  app.add_option("--norm", norms, "frobenius | schatten:<p|inf> | kyfan:<k> | cspec:<c1,c2,...> (repeatable)");
  app.add_option("--samples", config.samples, "trials per randomized check")->check(CLI::PositiveNumber);
  app.add_option("--restarts", config.restarts, "random restarts for the radius optimizer")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", config.seed, "master seed");
  app.add_option("--tol", tol_pairs, "tolerance override key=value (repeatable)");
  app.add_option("--output", output, "report path (default: stdout)");
  app.add_option("--format", format, "json | text")->check(CLI::IsMember({"json", "text"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    config.suite = isomlab::parse_suite(suite);
    if (!n_values.empty()) config.n_values = n_values;
    config.norms = norms;
    for (const std::string& pair : tol_pairs) {
      const auto eq = pair.find('=');
      if (eq == std::string::npos) throw isomlab::ConfigError("--tol expects key=value, got '" + pair + "'");
      std::size_t used = 0;
      const std::string value = pair.substr(eq + 1);
      double v = 0.0;
      try {
        v = std::stod(value, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0 || used != value.size()) throw isomlab::ConfigError("bad tolerance value in '" + pair + "'");
      config.tol[pair.substr(0, eq)] = v;
    }
    if (!output.empty()) config.output = output;
    isomlab::validate(config);
  } catch (const isomlab::ConfigError& e) {
    std::cerr << "isomlab: " << e.what() << "\n";
    return kExitUsage;
  }

  const isomlab::ReportFormat fmt = format == "text" ? isomlab::ReportFormat::text : isomlab::ReportFormat::json;
  try {
    const isomlab::ReportDocument doc = isomlab::run_suite(config);
    isomlab::write_report(doc, fmt, output);
    return doc.pass ? kExitPass : kExitFail;
  } catch (const isomlab::IoError& e) {
    std::cerr << "isomlab: " << e.what() << "\n";
    return kExitIo;
  } catch (const isomlab::ConfigError& e) {
    std::cerr << "isomlab: " << e.what() << "\n";
    return kExitUsage;
  }
}
