// ged verify: run verification suites from a JSON plan.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ged/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Verification of energy-density inequalities for maps between Hermitian manifolds"};
  app.require_subcommand(1);

  auto* verify = app.add_subcommand("verify", "run verification suites from a plan");
  std::string config_path, report, format;
  std::vector<std::string> suites;
  std::optional<int> samples, quadrature_order, workers;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol_relative;
  verify->add_option("--config,-c", config_path, "JSON plan")->required()->check(CLI::ExistingFile);
  verify->add_option("--suite,-s", suites, "suites to run (overrides the plan)");
  verify->add_option("--samples", samples, "sample points per suite")->check(CLI::PositiveNumber);
  verify->add_option("--seed", seed, "master seed");
  verify->add_option("--quadrature-order", quadrature_order, "fiber quadrature order")->check(CLI::Range(1, 64));
  verify->add_option("--tol-relative", tol_relative, "relative tolerance for form and trace suites")
      ->check(CLI::PositiveNumber);
  verify->add_option("--workers", workers, "worker threads (0 = hardware)")->check(CLI::NonNegativeNumber);
  verify->add_option("--report,-o", report, "report file");
  verify->add_option("--format", format, "report format")->check(CLI::IsMember({"text", "structured"}));

  auto* list = app.add_subcommand("list", "list suites and zoo entries");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  if (*list) {
    std::cout << "suites:";
    for (auto s : ged::kAllSuites) std::cout << " " << ged::suite_name(s);
    std::cout << "\nzoo metrics:";
    for (const auto& n : ged::zoo_metric_names()) std::cout << " " << n;
    std::cout << "\nzoo maps:";
    for (const auto& n : ged::zoo_map_names()) std::cout << " " << n;
    std::cout << "\n";
    return 0;
  }

  try {
    ged::RunConfig cfg = ged::load_config(config_path);
    if (!suites.empty()) {
      cfg.suites.clear();
      for (const auto& name : suites) {
        const auto s = ged::parse_suite(name);
        if (!s) throw ged::ConfigError(ged::ConfigError::Kind::semantic, "--suite", "unknown suite '" + name + "'");
        cfg.suites.push_back(*s);
      }
    }
    if (samples) cfg.samples = *samples;
    if (seed) cfg.seed = *seed;
    if (quadrature_order) cfg.quadrature_order = *quadrature_order;
    if (tol_relative) cfg.tol.relative = *tol_relative;
    if (workers) cfg.workers = *workers;
    if (!report.empty()) cfg.report = report;
    if (!format.empty()) cfg.format = format;

    const ged::ExecutionResult r = ged::execute(cfg);
    std::cout << ged::text_report(r);
    if (!cfg.report.empty() && !ged::write_report(r, cfg.report, cfg.format)) {
      std::cerr << "error: cannot write report " << cfg.report << "\n";
      return 2;
    }
    return r.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
