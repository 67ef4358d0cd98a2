#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "icts/config.hpp"

namespace icts::runner {

inline constexpr const char* kVersion = "0.1.0";

struct RunOutcome {
  int exit_code = 0;  // 0 ok, 1 validation failure (2/3 arrive as exceptions)
  nlohmann::json report;
};

// Executes one of the CLI commands (coherence | spectrum | scan | validate)
// against a parsed config, writing data products under out_dir.
// seed_override / format_override replace the config values when set.
// Throws ConfigError for missing sections and IoError for file failures.
RunOutcome run_command(const cfg::RunConfig& config, const std::string& command,
                       const std::string& out_dir,
                       std::optional<std::uint64_t> seed_override,
                       std::optional<std::string> format_override);

}  // namespace icts::runner
