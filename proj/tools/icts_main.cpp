// icts command-line front end. Everything substantive happens behind the
// shared-library C API; this binary only parses arguments, loads the config
// file and renders the report.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "icts/icts.h"

namespace {

struct CommonArgs {
  std::string config_path;
  std::string out_dir = ".";
  std::int64_t seed = -1;
  std::string format;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config_path, "JSON configuration file")
      ->required();
  cmd->add_option("--out", args.out_dir, "output directory");
  cmd->add_option("--seed", args.seed, "override the config seed");
  cmd->add_option("--format", args.format, "csv | json | both")
      ->check(CLI::IsMember({"csv", "json", "both"}));
}

int exit_code_of(icts_status status) {
  switch (status) {
    case ICTS_OK:
      return 0;
    case ICTS_E_VALIDATION:
      return 1;
    case ICTS_E_CONFIG:
    case ICTS_E_INVALID_ARGUMENT:
      return 2;
    case ICTS_E_IO:
      return 3;
    default:
      return 4;
  }
}

void print_report(const std::string& command, const std::string& report_text) {
  nlohmann::json report;
  try {
    report = nlohmann::json::parse(report_text);
  } catch (const nlohmann::json::exception&) {
    std::cout << report_text << "\n";
    return;
  }

  if (command == "validate" && report.contains("checks")) {
    for (const auto& check : report["checks"]) {
      std::cout << (check["pass"].get<bool>() ? "PASS" : "FAIL") << "  "
                << check["name"].get<std::string>() << "  (measured "
                << check["measured"].get<double>() << ", tolerance "
                << check["tolerance"].get<double>() << ")\n";
    }
    std::cout << (report["all_pass"].get<bool>() ? "all checks passed"
                                                 : "some checks FAILED")
              << "\n";
    return;
  }

  std::cout << report.dump(2) << "\n";
}

int run(const std::string& command, const CommonArgs& args) {
  std::ifstream in(args.config_path, std::ios::binary);
  if (!in) {
    std::cerr << "error: cannot read config file " << args.config_path << "\n";
    return 3;
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  const std::string config_text = buffer.str();

  icts_sim* sim = nullptr;
  icts_status status = icts_sim_create(config_text.c_str(), &sim);
  if (status != ICTS_OK) {
    std::cerr << "error: " << icts_last_error() << "\n";
    return exit_code_of(status);
  }

  char* report = nullptr;
  status = icts_sim_run(sim, command.c_str(), args.out_dir.c_str(), args.seed,
                        args.format.empty() ? nullptr : args.format.c_str(),
                        &report);
  if (report) {
    print_report(command, report);
    icts_string_free(report);
  }
  if (status != ICTS_OK && status != ICTS_E_VALIDATION)
    std::cerr << "error: " << icts_last_error() << "\n";
  icts_sim_destroy(sim);
  return exit_code_of(status);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"induced-coherence tomography simulator"};
  app.set_version_flag("--version", icts_version());
  app.require_subcommand(1);

  CommonArgs args;
  const char* commands[] = {"coherence", "spectrum", "scan", "validate"};
  const char* descriptions[] = {
      "three-route degree-of-coherence grid",
      "idler spectrum and correlation-vs-delay export",
      "synthetic axial scan and layer reconstruction",
      "run the invariant suite and report pass/fail"};
  for (int i = 0; i < 4; ++i) add_common(app.add_subcommand(commands[i], descriptions[i]), args);

  CLI11_PARSE(app, argc, argv);

  for (const char* command : commands) {
    if (app.got_subcommand(command)) return run(command, args);
  }
  return 2;
}
