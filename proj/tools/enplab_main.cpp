#include "enplab/config.hpp"
#include "enplab/la.hpp"
#include "enplab/runner.hpp"
#include "enplab/spectra.hpp"
#include "enplab/version.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <string>

int main(int argc, char** argv) {
  // Default to single-threaded BLAS so identical configs give bitwise
  // identical artifacts; an explicit environment setting wins.
  enplab::la::pin_blas_runtime();

  CLI::App app{"compactness diagnostics for elastic Neumann-Poincare operators"};
  app.require_subcommand(1);

  std::string config_path;
  auto* run_cmd = app.add_subcommand("run", "run the experiment described by a config file");
  run_cmd->add_option("config", config_path, "path to the config file")->required();

  bool machine = false;
  auto* list_cmd = app.add_subcommand("list-cases", "list the available suite cases");
  list_cmd->add_flag("--machine", machine, "tab-separated output for scripts");

  auto* version_cmd = app.add_subcommand("version", "print the library version");

  CLI11_PARSE(app, argc, argv);

  if (version_cmd->parsed()) {
    std::printf("enplab %s\n", enplab::kVersion);
    return 0;
  }

  if (list_cmd->parsed()) {
    for (auto c : enplab::spectra::all_cases()) {
      const auto name = enplab::spectra::case_name(c);
      const auto summary = enplab::spectra::case_summary(c);
      const char* domain = enplab::spectra::is_planar(c) ? "planar" : "sphere";
      if (machine)
        std::printf("%.*s\t%s\t%d\t%.*s\n", static_cast<int>(name.size()), name.data(), domain,
                    enplab::spectra::report_count(c), static_cast<int>(summary.size()),
                    summary.data());
      else
        std::printf("%-20.*s %-6s %.*s\n", static_cast<int>(name.size()), name.data(), domain,
                    static_cast<int>(summary.size()), summary.data());
    }
    return 0;
  }

  try {
    const auto cfg = enplab::config::load_config(config_path);
    const auto res = enplab::runner::run(cfg);
    std::fputs(res.summary.c_str(), stdout);
    std::printf("artifacts: %s\n", res.output_dir.string().c_str());
    return res.exit_code;
  } catch (const enplab::config::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "numeric failure: %s\n", e.what());
    return 2;
  }
}
